#pragma once

#include "stdgt/fluxes.hpp"
#include "stdgt/stepper.hpp"

namespace stdgt {

/// Outward unit normal of a rectangular domain side.
Vec3 tag_normal(BoundaryTag tag);

/// Per-element rotation of the direction fans.
struct DirectionPolicy {
  enum class Kind {
    Fixed,   // same theta0 everywhere
    Radial,  // first direction points from `origin` through the element center
  };
  Kind kind = Kind::Fixed;
  double theta0 = 0.0;
  Vec3 origin = Vec3::Zero();
};

/// Fan rotation angle for one element, normalized to [0, 2 pi). Radial
/// policy falls back to 0 for an element centered at the origin.
double element_theta0(const DirectionPolicy& policy, const Element& element);

/// Builds one order-p basis per mesh element with the policy's rotations.
std::vector<TrefftzBasis> build_all_bases(const Mesh& mesh, double tau, int p,
                                          const Material& material,
                                          const DirectionPolicy& policy);

/// Gaussian plane pulse travelling along (-1,-1,0)/sqrt(2):
///   E_z = exp(-(k.r - t + 8)^2 / 4),  H = (k_2, -k_1, 0) E_z
/// on the domain (0,10)^2. The pulse enters through the top and right
/// sides and leaves through the bottom and left.
namespace plane_wave {

Vec3 direction();
Domain2D domain();
double Ez(const Vec3& r, double t);
Vec3 E(const Vec3& r, double t);
Vec3 H(const Vec3& r, double t);
InitialData initial();

/// Propagation angle of the pulse (225 degrees), the natural fan rotation.
double theta_star();

/// Inflow condition for a tagged side: electric wall with beta and the
/// impedance-consistent datum g = E + beta (n x H) built from the pulse.
BoundarySpec inflow(BoundaryTag tag, double beta);

/// Electric wall with beta = 0 and g = E taken from the pulse; the exact
/// Dirichlet benchmark condition.
BoundarySpec exact_trace();

}  // namespace plane_wave

/// Cylindrical expansion test: E_z(0) = exp(-(x^2+y^2)/18), H(0) = 0, on
/// the truncated domain (-10,10)^2; the reference domain (-30,30)^2 is
/// large enough that nothing returns from the far boundary before t = 40.
namespace cylindrical {

Domain2D domain();
Domain2D reference_domain();
double Ez0(const Vec3& r);
InitialData initial();

/// Elements of `big` lying inside `window`; used to compare energies of
/// runs on nested domains.
std::vector<int> elements_inside(const Mesh& big, const Domain2D& window);

}  // namespace cylindrical

}  // namespace stdgt
