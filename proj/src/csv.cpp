#include "stdgt/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace stdgt {

void write_csv(const std::string& path, const std::string& name,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_csv: cannot open " + path);
  os << "# stdgt csv v1 " << name << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << columns[i] << (i + 1 < columns.size() ? ',' : '\n');
  }
  os.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 < row.size() ? ',' : '\n');
    }
  }
  if (!os) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_energy_csv(const std::string& path,
                      const std::vector<EnergyRecord>& records) {
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back({static_cast<double>(r.slab), r.t, r.energy,
                    r.boundary_dissipation, r.jump_dissipation,
                    r.identity_residual});
  }
  write_csv(path, "energy",
            {"slab", "t", "energy", "boundary_dissipation", "jump_dissipation",
             "identity_residual"},
            rows);
}

void write_residuals_csv(const std::string& path,
                         const std::vector<StepRecord>& steps) {
  std::vector<std::vector<double>> rows;
  rows.reserve(steps.size());
  for (const auto& s : steps) {
    rows.push_back({static_cast<double>(s.slab), s.t_end, s.rhs_norm,
                    s.residual, static_cast<double>(s.iterations)});
  }
  write_csv(path, "residuals", {"slab", "t", "rhs_norm", "residual", "iterations"},
            rows);
}

void write_monitor_csv(const std::string& path,
                       const std::vector<TagDissipationRecord>& records) {
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back({static_cast<double>(r.slab), r.t,
                    static_cast<double>(static_cast<int>(r.tag)), r.dissipation,
                    r.negative ? 1.0 : 0.0});
  }
  write_csv(path, "boundary_monitor", {"slab", "t", "tag", "dissipation", "negative"},
            rows);
}

void write_errors_csv(const std::string& path,
                      const std::vector<ErrorSample>& samples) {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) {
    rows.push_back({static_cast<double>(s.p), s.h, s.tau, s.error});
  }
  write_csv(path, "errors", {"p", "h", "tau", "error"}, rows);
}

void write_rates_csv(const std::string& path,
                     const std::vector<std::pair<int, double>>& rates) {
  std::vector<std::vector<double>> rows;
  rows.reserve(rates.size());
  for (const auto& [p, rate] : rates) {
    rows.push_back({static_cast<double>(p), rate});
  }
  write_csv(path, "rates", {"p", "rate"}, rows);
}

namespace {

int locate_element(const Mesh& mesh, double x, double y) {
  const Domain2D& dom = mesh.domain();
  const double hx = dom.width() / mesh.nx();
  const double hy = dom.height() / mesh.ny();
  int ix = static_cast<int>(std::floor((x - dom.x_min) / hx));
  int iy = static_cast<int>(std::floor((y - dom.y_min) / hy));
  ix = std::clamp(ix, 0, mesh.nx() - 1);
  iy = std::clamp(iy, 0, mesh.ny() - 1);
  return iy * mesh.nx() + ix;
}

}  // namespace

Vec6 eval_solution(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
                   const Eigen::VectorXd& coefficients, const Vec3& r,
                   double local_time) {
  const DofMap map = make_dof_map(bases);
  const int e = locate_element(mesh, r.x(), r.y());
  const auto c = coefficients.segment(map.begin(e), map.size(e));
  Vec6 out = Vec6::Zero();
  for (int j = 0; j < bases[e].size(); ++j) {
    out += c(j) * bases[e].functions[j].eval(r, local_time);
  }
  return out;
}

void write_snapshot_csv(const std::string& path, const Mesh& mesh,
                        const std::vector<TrefftzBasis>& bases,
                        const Eigen::VectorXd& coefficients, double local_time,
                        int raster) {
  if (raster < 1) throw std::invalid_argument("write_snapshot_csv: raster >= 1");
  const Domain2D& dom = mesh.domain();
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(raster) * raster);
  const DofMap map = make_dof_map(bases);
  for (int j = 0; j < raster; ++j) {
    for (int i = 0; i < raster; ++i) {
      const double x = dom.x_min + (i + 0.5) * dom.width() / raster;
      const double y = dom.y_min + (j + 0.5) * dom.height() / raster;
      const int e = locate_element(mesh, x, y);
      const auto c = coefficients.segment(map.begin(e), map.size(e));
      Vec6 v = Vec6::Zero();
      for (int k = 0; k < bases[e].size(); ++k) {
        v += c(k) * bases[e].functions[k].eval(Vec3(x, y, 0.0), local_time);
      }
      rows.push_back({x, y, v(2), v(3), v(4)});
    }
  }
  write_csv(path, "snapshot", {"x", "y", "Ez", "Hx", "Hy"}, rows);
}

}  // namespace stdgt
