#pragma once

// Shared fixtures: element bases over a mesh, boundary spec maps, and an
// exact polynomial wave with its expansion coefficients in rotated fans.

#include <cmath>
#include <vector>

#include "stdgt/assembly.hpp"

namespace stdgt::testsupport {

inline std::vector<TrefftzBasis> make_bases(const Mesh& mesh, double tau,
                                            int p, const Material& material,
                                            double theta0) {
  std::vector<TrefftzBasis> bases;
  bases.reserve(mesh.elements().size());
  for (const auto& e : mesh.elements()) {
    bases.push_back(build_element_basis(e, tau, p, material, theta0));
  }
  return bases;
}

inline BoundarySpecMap all_sides(const BoundarySpec& spec) {
  return {{BoundaryTag::Left, spec},
          {BoundaryTag::Right, spec},
          {BoundaryTag::Bottom, spec},
          {BoundaryTag::Top, spec}};
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
  return r;
}

inline Vec3 side_normal(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Left: return {-1.0, 0.0, 0.0};
    case BoundaryTag::Right: return {1.0, 0.0, 0.0};
    case BoundaryTag::Bottom: return {0.0, -1.0, 0.0};
    default: return {0.0, 1.0, 0.0};
  }
}

/// Global solution (E; H) = (z_hat; h/Z) (d.r - c t + s)^q with h = d x z_hat.
struct PolynomialWave {
  Vec3 d = Vec3::UnitX();
  double s = 0.0;
  int q = 1;
  Material material{1.0, 1.0};

  double P(const Vec3& r, double t) const {
    return std::pow(d.dot(r) - material.wave_speed() * t + s, q);
  }
  Vec3 E(const Vec3& r, double t) const {
    return Vec3(0.0, 0.0, P(r, t));
  }
  Vec3 H(const Vec3& r, double t) const {
    return Vec3(d.cross(Vec3::UnitZ()) / material.impedance() * P(r, t));
  }
};

/// Coefficients reproducing the wave on every element in slab-local time
/// starting at t_begin. Requires fans rotated so wave.d is the first
/// direction of each fan and wave.q <= basis order.
inline Eigen::VectorXd wave_coefficients(const Mesh& mesh,
                                         const std::vector<TrefftzBasis>& bases,
                                         const PolynomialWave& wave,
                                         double t_begin) {
  const DofMap map = make_dof_map(bases);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(map.total());
  for (std::size_t e = 0; e < bases.size(); ++e) {
    const TrefftzBasis& basis = bases[e];
    const double Z = basis.material.impedance();
    const double speed = basis.material.wave_speed();
    const Vec3 h = wave.d.cross(Vec3::UnitZ());
    const Vec3 xc(mesh.elements()[e].center[0], mesh.elements()[e].center[1],
                  0.0);
    const double sigma = wave.d.dot(xc) - speed * t_begin + wave.s;
    auto seg = c.segment(map.begin(int(e)), map.size(int(e)));
    for (int j = 0; j < basis.size(); ++j) {
      const BasisFunction& f = basis.functions[j];
      if (f.order == 0) {
        const double w = std::pow(sigma, wave.q);
        if (f.constant(2) == 1.0) seg(j) = w;              // E_z
        if (f.constant(3) == 1.0) seg(j) = w * h.x() / Z;  // H_x
        if (f.constant(4) == 1.0) seg(j) = w * h.y() / Z;  // H_y
      } else if (f.order <= wave.q && (f.triple.d - wave.d).norm() < 1e-12) {
        seg(j) = binomial(wave.q, f.order) * std::pow(f.scale, f.order) *
                 std::pow(sigma, wave.q - f.order);
      }
    }
  }
  return c;
}

/// Electric walls with the impedance-consistent datum g = E + beta (n x H)
/// built from the wave, one spec per side; the wave then satisfies the slab
/// equations exactly.
inline BoundarySpecMap wave_walls(const PolynomialWave& wave, double beta) {
  BoundarySpecMap specs;
  for (BoundaryTag tag : {BoundaryTag::Left, BoundaryTag::Right,
                          BoundaryTag::Bottom, BoundaryTag::Top}) {
    const Vec3 n = side_normal(tag);
    auto g = [wave, beta, n](const Vec3& r, double t) -> Vec3 {
      return wave.E(r, t) + beta * n.cross(wave.H(r, t));
    };
    specs.emplace(tag, PECLike{beta, g});
  }
  return specs;
}

}  // namespace stdgt::testsupport
