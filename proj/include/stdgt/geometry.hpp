#pragma once

#include <algorithm>
#include <array>
#include <string_view>
#include <vector>

namespace stdgt {

/// One time slab [t_begin, t_end].
struct TimeInterval {
  double t_begin = 0.0;
  double t_end = 0.0;

  double tau() const { return t_end - t_begin; }
};

/// Axis-aligned rectangular computational domain.
struct Domain2D {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
};

enum class BoundaryTag { Left, Right, Bottom, Top };

std::string_view to_string(BoundaryTag tag);

/// Axis-aligned rectangular cell of the Cartesian mesh.
struct Element {
  int id = -1;
  std::array<double, 2> center{0.0, 0.0};
  std::array<double, 2> half{0.0, 0.0};  // half-widths along x and y

  double area() const { return 4.0 * half[0] * half[1]; }
  double max_side() const { return 2.0 * std::max(half[0], half[1]); }
};

/// Face between two elements. The normal is a unit vector pointing from
/// element `left` into element `right`, with left < right.
struct InteriorFace {
  std::array<double, 2> a{0.0, 0.0};
  std::array<double, 2> b{0.0, 0.0};
  int left = -1;
  int right = -1;
  std::array<double, 2> normal{0.0, 0.0};

  double length() const;
};

/// Face on the domain boundary; the normal is the outward unit normal.
struct BoundaryFace {
  std::array<double, 2> a{0.0, 0.0};
  std::array<double, 2> b{0.0, 0.0};
  int element = -1;
  std::array<double, 2> normal{0.0, 0.0};
  BoundaryTag tag = BoundaryTag::Left;

  double length() const;
};

class Mesh {
 public:
  Mesh(Domain2D domain, int nx, int ny, std::vector<Element> elements,
       std::vector<InteriorFace> interior, std::vector<BoundaryFace> boundary);

  const Domain2D& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<InteriorFace>& interior_faces() const { return interior_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return boundary_; }

 private:
  Domain2D domain_;
  int nx_;
  int ny_;
  std::vector<Element> elements_;
  std::vector<InteriorFace> interior_;
  std::vector<BoundaryFace> boundary_;
};

/// Builds the uniform nx-by-ny Cartesian mesh of `domain`. Elements are
/// numbered row-major with x running fastest. Throws std::invalid_argument
/// for non-positive subdivision counts or a degenerate domain.
Mesh build_uniform_mesh(const Domain2D& domain, int nx, int ny);

}  // namespace stdgt
