#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "stdgt/geometry.hpp"
#include "stdgt/quadrature.hpp"

namespace stdgt {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

/// Homogeneous, isotropic material parameters.
class Material {
 public:
  Material() = default;
  Material(double epsilon, double mu);

  double epsilon() const { return epsilon_; }
  double mu() const { return mu_; }
  double impedance() const;   // sqrt(mu / epsilon)
  double wave_speed() const;  // 1 / sqrt(epsilon * mu)

 private:
  double epsilon_ = 1.0;
  double mu_ = 1.0;
};

/// Orthonormal propagation/polarization frame with d = e x h.
struct DirectionTriple {
  Vec3 d = Vec3::UnitX();
  Vec3 e = Vec3::UnitZ();
  Vec3 h = -Vec3::UnitY();

  /// Builds the frame from a unit propagation direction and a unit
  /// polarization orthogonal to it, setting h = d x e (so that d = e x h).
  static DirectionTriple from_d_e(const Vec3& d, const Vec3& e);
};

/// Equispaced fan of 2k+3 in-plane directions for polynomial order k,
/// first direction at angle theta0, polarization e = z-hat.
std::vector<DirectionTriple> directions_2d(int k, double theta0);

/// 3D direction/polarization set for order k: 2(k+1)(k+3) triples on k+1
/// latitude rings with 2m+3 azimuths each and two polarizations per
/// direction.
std::vector<DirectionTriple> directions_3d(int k);

/// One basis field: for order k >= 1 a polynomial plane wave
///   (E, H)(r, t) = (e, h/Z) * ((d.(r - r0) - c (t - t0)) / l)^k,
/// for order 0 a constant 6-vector field.
struct BasisFunction {
  int order = 0;
  DirectionTriple triple;
  Vec6 constant = Vec6::Zero();
  Vec3 shift_r = Vec3::Zero();
  double shift_t = 0.0;
  double scale = 1.0;
  double impedance = 1.0;
  double wave_speed = 1.0;

  /// Scaled phase ((d.(r - r0) - c (t - t0)) / l).
  double phase(const Vec3& r, double t) const;

  /// Field values stacked as (E; H).
  Vec6 eval(const Vec3& r, double t) const;
};

/// Residual of the first-order Maxwell system at (r, t), stacked as
/// (eps dE/dt - curl H; mu dH/dt + curl E; div E; div H).
Vec8 maxwell_residual(const BasisFunction& f, const Vec3& r, double t);

/// Local space-time Trefftz space of one element over one slab.
struct TrefftzBasis {
  int element_id = -1;
  Material material;
  std::vector<BasisFunction> functions;

  int size() const { return static_cast<int>(functions.size()); }
  int max_order() const;
};

/// Dimension (p+1)(p+3) of the quasi-2D TM space of order p.
int trefftz_dim_2d(int p);

/// Dimension (p+1)(p+2)(2p+9)/3 of the full 3D space of order p.
int trefftz_dim_3d(int p);

/// Builds the order-p TM basis on an element for a slab of length tau:
/// 3 constant fields plus direction fans for k = 1..p, all rotated by
/// theta0, scaled by l = max(h_K, c tau) / 2 and anchored at (center,
/// slab begin). Basis fields use slab-local time (shift_t = 0).
TrefftzBasis build_element_basis(const Element& element, double tau, int p,
                                 const Material& material, double theta0);

struct Box3 {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
};

/// 3D analogue of build_element_basis: 6 constants plus 3D fans.
TrefftzBasis build_element_basis_3d(const Box3& box, double tau, int p,
                                    const Material& material);

/// Rank of the space-time L2 Gram matrix over element x [0, tau], using
/// quadrature exact for degree 2p and the threshold 1e-10 x (largest
/// singular value).
int gram_rank(const TrefftzBasis& basis, const Element& element, double tau);

/// Same over a 3D box.
int gram_rank_3d(const TrefftzBasis& basis, const Box3& box, double tau);

/// Marks basis functions whose propagation direction enters the domain
/// through a face with outward normal n: order >= 1 and d.n < -1e-12.
/// Constants and grazing directions are outgoing.
std::vector<bool> incoming_mask(const TrefftzBasis& basis, const Vec3& n);

}  // namespace stdgt
