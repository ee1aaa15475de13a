#pragma once

#include <string>
#include <vector>

#include "stdgt/diagnostics.hpp"

namespace stdgt {

/// Writes "# stdgt csv v1 <name>", a comma-separated header, then the rows
/// with full double precision. Throws std::runtime_error on I/O failure.
void write_csv(const std::string& path, const std::string& name,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

void write_energy_csv(const std::string& path,
                      const std::vector<EnergyRecord>& records);

void write_residuals_csv(const std::string& path,
                         const std::vector<StepRecord>& steps);

void write_monitor_csv(const std::string& path,
                       const std::vector<TagDissipationRecord>& records);

struct ErrorSample {
  int p = 0;
  double h = 0.0;
  double tau = 0.0;
  double error = 0.0;
};

void write_errors_csv(const std::string& path,
                      const std::vector<ErrorSample>& samples);

void write_rates_csv(const std::string& path,
                     const std::vector<std::pair<int, double>>& rates);

/// Solution fields (E; H) at a point inside the mesh at a slab-local time.
Vec6 eval_solution(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
                   const Eigen::VectorXd& coefficients, const Vec3& r,
                   double local_time);

/// Rasterizes (x, y, Ez, Hx, Hy) on an n x n grid of cell midpoints.
void write_snapshot_csv(const std::string& path, const Mesh& mesh,
                        const std::vector<TrefftzBasis>& bases,
                        const Eigen::VectorXd& coefficients, double local_time,
                        int raster);

}  // namespace stdgt
