#pragma once

#include <array>
#include <vector>

#include "stdgt/geometry.hpp"

namespace stdgt {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct QuadRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the cached n-point Gauss-Legendre rule, 1 <= n <= 32.
/// Nodes are ascending; weights sum to 2 within 1e-14.
const QuadRule1D& gauss_legendre(int n);

struct QuadPoint2 {
  double x, y, w;
};

struct QuadPoint3 {
  double x, y, t, w;
};

struct QuadPoint4 {
  double x, y, z, t, w;
};

/// Tensor rule over a rectangular element, exact for bivariate polynomials
/// of the given total-per-variable degree. Weights sum to the element area.
std::vector<QuadPoint2> element_rule(const Element& element, int degree);

/// Tensor rule over (face segment) x (time slab); x/y are positions along
/// the segment, t runs through the slab. Weights sum to length x tau.
std::vector<QuadPoint3> face_time_rule(const std::array<double, 2>& a,
                                       const std::array<double, 2>& b,
                                       const TimeInterval& slab, int degree);

/// Tensor rule over element x slab. Weights sum to area x tau.
std::vector<QuadPoint3> volume_time_rule(const Element& element,
                                         const TimeInterval& slab, int degree);

/// Tensor rule over an axis-aligned 3D box x slab (used by the 3D basis
/// rank checks). Weights sum to volume x tau.
std::vector<QuadPoint4> box_time_rule(const std::array<double, 3>& lo,
                                      const std::array<double, 3>& hi,
                                      const TimeInterval& slab, int degree);

/// Number of 1D points needed for exactness at `degree`: ceil((degree+1)/2).
int points_for_degree(int degree);

}  // namespace stdgt
