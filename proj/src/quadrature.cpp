#include "stdgt/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace stdgt {

namespace {

constexpr int kMaxPoints = 32;

// Evaluates the Legendre polynomial P_n and its derivative at x by the
// three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = p0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadRule1D compute_gauss_legendre(int n) {
  QuadRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess for the i-th root, then Newton iteration.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    legendre(n, x, p, dp);
    rule.nodes[n - 1 - i] = x;  // cos ordering is descending; store ascending
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

}  // namespace

const QuadRule1D& gauss_legendre(int n) {
  if (n < 1 || n > kMaxPoints) {
    throw std::invalid_argument("gauss_legendre: point count must be in [1, 32]");
  }
  static QuadRule1D cache[kMaxPoints + 1];
  static std::once_flag flags[kMaxPoints + 1];
  std::call_once(flags[n], [n] { cache[n] = compute_gauss_legendre(n); });
  return cache[n];
}

int points_for_degree(int degree) {
  if (degree < 0) {
    throw std::invalid_argument("points_for_degree: degree must be non-negative");
  }
  return degree / 2 + 1;
}

std::vector<QuadPoint2> element_rule(const Element& element, int degree) {
  const QuadRule1D& r = gauss_legendre(points_for_degree(degree));
  const int n = static_cast<int>(r.nodes.size());
  std::vector<QuadPoint2> points;
  points.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      QuadPoint2 q;
      q.x = element.center[0] + element.half[0] * r.nodes[i];
      q.y = element.center[1] + element.half[1] * r.nodes[j];
      q.w = element.half[0] * element.half[1] * r.weights[i] * r.weights[j];
      points.push_back(q);
    }
  }
  return points;
}

std::vector<QuadPoint3> face_time_rule(const std::array<double, 2>& a,
                                       const std::array<double, 2>& b,
                                       const TimeInterval& slab, int degree) {
  const QuadRule1D& r = gauss_legendre(points_for_degree(degree));
  const int n = static_cast<int>(r.nodes.size());
  const double mx = 0.5 * (a[0] + b[0]), dx = 0.5 * (b[0] - a[0]);
  const double my = 0.5 * (a[1] + b[1]), dy = 0.5 * (b[1] - a[1]);
  const double half_len = std::hypot(dx, dy);
  const double mt = 0.5 * (slab.t_begin + slab.t_end);
  const double dt = 0.5 * slab.tau();
  std::vector<QuadPoint3> points;
  points.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      QuadPoint3 q;
      q.x = mx + dx * r.nodes[i];
      q.y = my + dy * r.nodes[i];
      q.t = mt + dt * r.nodes[j];
      q.w = half_len * dt * r.weights[i] * r.weights[j];
      points.push_back(q);
    }
  }
  return points;
}

std::vector<QuadPoint3> volume_time_rule(const Element& element,
                                         const TimeInterval& slab, int degree) {
  const QuadRule1D& r = gauss_legendre(points_for_degree(degree));
  const int n = static_cast<int>(r.nodes.size());
  const double mt = 0.5 * (slab.t_begin + slab.t_end);
  const double dt = 0.5 * slab.tau();
  std::vector<QuadPoint3> points;
  points.reserve(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        QuadPoint3 q;
        q.x = element.center[0] + element.half[0] * r.nodes[i];
        q.y = element.center[1] + element.half[1] * r.nodes[j];
        q.t = mt + dt * r.nodes[k];
        q.w = element.half[0] * element.half[1] * dt * r.weights[i] *
              r.weights[j] * r.weights[k];
        points.push_back(q);
      }
    }
  }
  return points;
}

std::vector<QuadPoint4> box_time_rule(const std::array<double, 3>& lo,
                                      const std::array<double, 3>& hi,
                                      const TimeInterval& slab, int degree) {
  const QuadRule1D& r = gauss_legendre(points_for_degree(degree));
  const int n = static_cast<int>(r.nodes.size());
  std::array<double, 3> mid, half;
  for (int d = 0; d < 3; ++d) {
    mid[d] = 0.5 * (lo[d] + hi[d]);
    half[d] = 0.5 * (hi[d] - lo[d]);
  }
  const double mt = 0.5 * (slab.t_begin + slab.t_end);
  const double dt = 0.5 * slab.tau();
  std::vector<QuadPoint4> points;
  points.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          QuadPoint4 q;
          q.x = mid[0] + half[0] * r.nodes[i];
          q.y = mid[1] + half[1] * r.nodes[j];
          q.z = mid[2] + half[2] * r.nodes[k];
          q.t = mt + dt * r.nodes[l];
          q.w = half[0] * half[1] * half[2] * dt * r.weights[i] * r.weights[j] *
                r.weights[k] * r.weights[l];
          points.push_back(q);
        }
      }
    }
  }
  return points;
}

}  // namespace stdgt
