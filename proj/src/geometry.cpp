#include "stdgt/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace stdgt {

namespace {

double segment_length(const std::array<double, 2>& a,
                      const std::array<double, 2>& b) {
  return std::hypot(b[0] - a[0], b[1] - a[1]);
}

}  // namespace

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Left:
      return "left";
    case BoundaryTag::Right:
      return "right";
    case BoundaryTag::Bottom:
      return "bottom";
    case BoundaryTag::Top:
      return "top";
  }
  return "unknown";
}

double InteriorFace::length() const { return segment_length(a, b); }

double BoundaryFace::length() const { return segment_length(a, b); }

Mesh::Mesh(Domain2D domain, int nx, int ny, std::vector<Element> elements,
           std::vector<InteriorFace> interior, std::vector<BoundaryFace> boundary)
    : domain_(domain),
      nx_(nx),
      ny_(ny),
      elements_(std::move(elements)),
      interior_(std::move(interior)),
      boundary_(std::move(boundary)) {}

Mesh build_uniform_mesh(const Domain2D& domain, int nx, int ny) {
  if (nx <= 0 || ny <= 0) {
    throw std::invalid_argument("build_uniform_mesh: subdivision counts must be positive");
  }
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw std::invalid_argument("build_uniform_mesh: domain must have positive extent");
  }

  const double hx = domain.width() / nx;
  const double hy = domain.height() / ny;

  auto node_x = [&](int ix) { return domain.x_min + ix * hx; };
  auto node_y = [&](int iy) { return domain.y_min + iy * hy; };
  auto elem_id = [&](int ix, int iy) { return iy * nx + ix; };

  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      Element e;
      e.id = elem_id(ix, iy);
      e.center = {node_x(ix) + 0.5 * hx, node_y(iy) + 0.5 * hy};
      e.half = {0.5 * hx, 0.5 * hy};
      elements.push_back(e);
    }
  }

  std::vector<InteriorFace> interior;
  interior.reserve(static_cast<std::size_t>(nx) * (ny - 1) +
                   static_cast<std::size_t>(nx - 1) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (ix + 1 < nx) {  // vertical face shared with the right neighbour
        InteriorFace f;
        f.a = {node_x(ix + 1), node_y(iy)};
        f.b = {node_x(ix + 1), node_y(iy + 1)};
        f.left = elem_id(ix, iy);
        f.right = elem_id(ix + 1, iy);
        f.normal = {1.0, 0.0};
        interior.push_back(f);
      }
      if (iy + 1 < ny) {  // horizontal face shared with the upper neighbour
        InteriorFace f;
        f.a = {node_x(ix), node_y(iy + 1)};
        f.b = {node_x(ix + 1), node_y(iy + 1)};
        f.left = elem_id(ix, iy);
        f.right = elem_id(ix, iy + 1);
        f.normal = {0.0, 1.0};
        interior.push_back(f);
      }
    }
  }

  std::vector<BoundaryFace> boundary;
  boundary.reserve(2 * static_cast<std::size_t>(nx + ny));
  for (int iy = 0; iy < ny; ++iy) {
    BoundaryFace f;
    f.a = {domain.x_min, node_y(iy)};
    f.b = {domain.x_min, node_y(iy + 1)};
    f.element = elem_id(0, iy);
    f.normal = {-1.0, 0.0};
    f.tag = BoundaryTag::Left;
    boundary.push_back(f);
  }
  for (int iy = 0; iy < ny; ++iy) {
    BoundaryFace f;
    f.a = {domain.x_max, node_y(iy)};
    f.b = {domain.x_max, node_y(iy + 1)};
    f.element = elem_id(nx - 1, iy);
    f.normal = {1.0, 0.0};
    f.tag = BoundaryTag::Right;
    boundary.push_back(f);
  }
  for (int ix = 0; ix < nx; ++ix) {
    BoundaryFace f;
    f.a = {node_x(ix), domain.y_min};
    f.b = {node_x(ix + 1), domain.y_min};
    f.element = elem_id(ix, 0);
    f.normal = {0.0, -1.0};
    f.tag = BoundaryTag::Bottom;
    boundary.push_back(f);
  }
  for (int ix = 0; ix < nx; ++ix) {
    BoundaryFace f;
    f.a = {node_x(ix), domain.y_max};
    f.b = {node_x(ix + 1), domain.y_max};
    f.element = elem_id(ix, ny - 1);
    f.normal = {0.0, 1.0};
    f.tag = BoundaryTag::Top;
    boundary.push_back(f);
  }

  return Mesh(domain, nx, ny, std::move(elements), std::move(interior),
              std::move(boundary));
}

}  // namespace stdgt
