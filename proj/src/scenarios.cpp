#include "stdgt/scenarios.hpp"

#include <cmath>

namespace stdgt {

Vec3 tag_normal(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Left:
      return Vec3(-1, 0, 0);
    case BoundaryTag::Right:
      return Vec3(1, 0, 0);
    case BoundaryTag::Bottom:
      return Vec3(0, -1, 0);
    case BoundaryTag::Top:
      return Vec3(0, 1, 0);
  }
  return Vec3::Zero();
}

namespace {

double wrap_angle(double theta) {
  const double two_pi = 2.0 * M_PI;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  return theta;
}

}  // namespace

double element_theta0(const DirectionPolicy& policy, const Element& element) {
  if (policy.kind == DirectionPolicy::Kind::Fixed) {
    return wrap_angle(policy.theta0);
  }
  const double dx = element.center[0] - policy.origin.x();
  const double dy = element.center[1] - policy.origin.y();
  if (dx == 0.0 && dy == 0.0) return 0.0;
  return wrap_angle(std::atan2(dy, dx));
}

std::vector<TrefftzBasis> build_all_bases(const Mesh& mesh, double tau, int p,
                                          const Material& material,
                                          const DirectionPolicy& policy) {
  std::vector<TrefftzBasis> bases;
  bases.reserve(mesh.elements().size());
  for (const auto& element : mesh.elements()) {
    bases.push_back(build_element_basis(element, tau, p, material,
                                        element_theta0(policy, element)));
  }
  return bases;
}

namespace plane_wave {

Vec3 direction() {
  const double s = 1.0 / std::sqrt(2.0);
  return Vec3(-s, -s, 0.0);
}

Domain2D domain() { return {0.0, 10.0, 0.0, 10.0}; }

double Ez(const Vec3& r, double t) {
  const Vec3 k = direction();
  const double xi = k.x() * r.x() + k.y() * r.y() - t + 8.0;
  return std::exp(-xi * xi / 4.0);
}

Vec3 E(const Vec3& r, double t) { return Vec3(0.0, 0.0, Ez(r, t)); }

Vec3 H(const Vec3& r, double t) {
  const Vec3 k = direction();
  const double e = Ez(r, t);
  return Vec3(k.y() * e, -k.x() * e, 0.0);
}

InitialData initial() {
  return {[](const Vec3& r) { return E(r, 0.0); },
          [](const Vec3& r) { return H(r, 0.0); }};
}

double theta_star() {
  const Vec3 k = direction();
  double theta = std::atan2(k.y(), k.x());
  if (theta < 0.0) theta += 2.0 * M_PI;
  return theta;
}

BoundarySpec inflow(BoundaryTag tag, double beta) {
  const Vec3 n = tag_normal(tag);
  return PECLike{beta, [n, beta](const Vec3& r, double t) {
                   return (E(r, t) + beta * n.cross(H(r, t))).eval();
                 }};
}

BoundarySpec exact_trace() {
  return PECLike{0.0, [](const Vec3& r, double t) { return E(r, t); }};
}

}  // namespace plane_wave

namespace cylindrical {

Domain2D domain() { return {-10.0, 10.0, -10.0, 10.0}; }

Domain2D reference_domain() { return {-30.0, 30.0, -30.0, 30.0}; }

double Ez0(const Vec3& r) {
  return std::exp(-(r.x() * r.x() + r.y() * r.y()) / 18.0);
}

InitialData initial() {
  return {[](const Vec3& r) { return Vec3(0.0, 0.0, Ez0(r)); }, nullptr};
}

std::vector<int> elements_inside(const Mesh& big, const Domain2D& window) {
  std::vector<int> ids;
  for (const auto& e : big.elements()) {
    if (e.center[0] > window.x_min && e.center[0] < window.x_max &&
        e.center[1] > window.y_min && e.center[1] < window.y_max) {
      ids.push_back(e.id);
    }
  }
  return ids;
}

}  // namespace cylindrical

}  // namespace stdgt
