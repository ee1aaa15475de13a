#pragma once

#include <functional>
#include <vector>

#include "stdgt/stepper.hpp"

namespace stdgt {

/// Electromagnetic energy 1/2 int (eps |E|^2 + mu |H|^2) dx of the
/// coefficient vector evaluated at one slab-local time. An optional element
/// subset restricts the integral to those elements.
double discrete_energy(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
                       const Eigen::VectorXd& coefficients, double local_time,
                       int quad_degree,
                       const std::vector<int>* element_subset = nullptr);

/// Energy of explicit initial fields over the mesh, integrated with
/// points_per_axis Gauss points per direction.
double initial_energy(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
                      const InitialData& data, int points_per_axis);

struct EnergyRecord {
  int slab = 0;           // 0 carries the initial state
  double t = 0.0;
  double energy = 0.0;
  double jump_dissipation = 0.0;      // temporal interface jump, >= 0
  double boundary_dissipation = 0.0;  // int (b + Poynting - r), signed
  double identity_residual = 0.0;
};

/// Per-slab energy balance: checks that the end-of-slab energy equals the
/// previous energy minus the temporal jump minus the boundary outflow. The
/// residual of that identity lands in identity_residual; it stays below
/// 1e-10 x max(1, energy) when the linear solves are converged. Uses the
/// same quadrature rules as assembly/projection so the balance is exact up
/// to the solver residual.
std::vector<EnergyRecord> energy_audit(const Mesh& mesh,
                                       const std::vector<TrefftzBasis>& bases,
                                       const BoundarySpecMap& specs,
                                       const RunResult& result,
                                       const InitialData& initial,
                                       int quad_degree, int init_points_per_axis);

struct TagDissipationRecord {
  int slab = 0;
  double t = 0.0;
  BoundaryTag tag = BoundaryTag::Left;
  double dissipation = 0.0;
  bool negative = false;  // flags dissipation < -1e-12
};

/// Integrated energy flux (b + Poynting density) through each boundary
/// tag, per slab. Negative totals are flagged; they indicate an
/// energy-inflating boundary condition.
std::vector<TagDissipationRecord> boundary_dissipation_by_tag(
    const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
    const BoundarySpecMap& specs, const RunResult& result, int quad_degree);

/// Relative space-time L2 error of the E_z component against a reference
/// field over the whole run:  |Ez_h - ref| / |ref|  in the space-time norm.
/// Falls back to the absolute norm for an identically zero reference.
double l2_spacetime_error(const Mesh& mesh,
                          const std::vector<TrefftzBasis>& bases,
                          const RunResult& result,
                          const std::function<double(const Vec3&, double)>& ref_Ez,
                          int quad_degree = 0);

/// Least-squares slope of log(error) against log(h). Requires at least two
/// samples with positive h and error, h strictly decreasing.
double convergence_rate(const std::vector<std::pair<double, double>>& h_error);

}  // namespace stdgt
