#include "stdgt/fluxes.hpp"

#include <stdexcept>

namespace stdgt {

namespace {

void require_nonnegative(double weight, const char* name) {
  if (weight < 0.0) {
    throw std::invalid_argument(std::string(name) + " must be non-negative");
  }
}

void require_incoming(const TraceSample& s) {
  if (!s.has_incoming) {
    throw std::invalid_argument(
        "transparent flux requires incoming-part traces");
  }
}

double electric_wall(const TraceSample& trial, const TraceSample& test,
                     const Vec3& n, double beta) {
  return -n.cross(trial.E).dot(test.H) +
         beta * n.cross(trial.H).dot(n.cross(test.H));
}

double magnetic_wall(const TraceSample& trial, const TraceSample& test,
                     const Vec3& n, double beta_prime) {
  return n.cross(trial.H).dot(test.E) +
         beta_prime * n.cross(trial.E).dot(n.cross(test.E));
}

}  // namespace

double boundary_bilinear_density(const BoundarySpec& spec,
                                 const TraceSample& trial,
                                 const TraceSample& test, const Vec3& n,
                                 double Z) {
  return std::visit(
      [&](const auto& bc) -> double {
        using T = std::decay_t<decltype(bc)>;
        if constexpr (std::is_same_v<T, PECLike>) {
          require_nonnegative(bc.beta, "PECLike beta");
          return electric_wall(trial, test, n, bc.beta);
        } else if constexpr (std::is_same_v<T, PMCLike>) {
          require_nonnegative(bc.beta_prime, "PMCLike beta_prime");
          return magnetic_wall(trial, test, n, bc.beta_prime);
        } else if constexpr (std::is_same_v<T, SilverMueller>) {
          return 0.5 * (electric_wall(trial, test, n, Z) +
                        magnetic_wall(trial, test, n, 1.0 / Z));
        } else {
          require_incoming(trial);
          require_incoming(test);
          TraceSample trial_in, test_in;
          trial_in.E = trial.E_in;
          trial_in.H = trial.H_in;
          test_in.E = test.E_in;
          test_in.H = test.H_in;
          return 0.5 * (electric_wall(trial_in, test_in, n, Z) +
                        magnetic_wall(trial_in, test_in, n, 1.0 / Z));
        }
      },
      spec);
}

double boundary_linear_density(const BoundarySpec& spec, const TraceSample& test,
                               const Vec3& n, const Vec3& point, double t) {
  return std::visit(
      [&](const auto& bc) -> double {
        using T = std::decay_t<decltype(bc)>;
        if constexpr (std::is_same_v<T, PECLike>) {
          if (!bc.g) return 0.0;
          return -n.cross(bc.g(point, t)).dot(test.H);
        } else if constexpr (std::is_same_v<T, PMCLike>) {
          if (!bc.g_prime) return 0.0;
          return n.cross(bc.g_prime(point, t)).dot(test.E);
        } else {
          return 0.0;
        }
      },
      spec);
}

double dissipation_density(const BoundarySpec& spec, const TraceSample& trace,
                           const Vec3& n, double Z) {
  return boundary_bilinear_density(spec, trace, trace, n, Z) +
         n.cross(trace.E).dot(trace.H);
}

}  // namespace stdgt
