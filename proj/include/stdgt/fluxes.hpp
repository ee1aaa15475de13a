#pragma once

#include <functional>
#include <map>
#include <variant>

#include "stdgt/basis.hpp"
#include "stdgt/geometry.hpp"

namespace stdgt {

/// Prescribed tangential boundary data as a function of position and time.
using BoundaryField = std::function<Vec3(const Vec3&, double)>;

/// Electric-wall family: weakly imposes n x E = n x g with penalty
/// weight beta >= 0 on the magnetic trace. g == nullptr means g = 0.
struct PECLike {
  double beta = 0.0;
  BoundaryField g;
};

/// Magnetic-wall family: weakly imposes n x H = n x g' with penalty
/// weight beta' >= 0 on the electric trace.
struct PMCLike {
  double beta_prime = 0.0;
  BoundaryField g_prime;
};

/// First-order absorbing condition: impedance-weighted average of the
/// electric and magnetic wall fluxes with beta = Z, beta' = 1/Z, g = 0.
struct SilverMueller {};

/// Absorbing flux that acts only on the incoming part of the traces.
struct Transparent {};

using BoundarySpec = std::variant<PECLike, PMCLike, SilverMueller, Transparent>;

/// Boundary condition per mesh boundary tag.
using BoundarySpecMap = std::map<BoundaryTag, BoundarySpec>;

/// Field trace at one boundary quadrature point. For the transparent flux
/// the incoming-part fields must be supplied and flagged.
struct TraceSample {
  Vec3 E = Vec3::Zero();
  Vec3 H = Vec3::Zero();
  Vec3 E_in = Vec3::Zero();
  Vec3 H_in = Vec3::Zero();
  bool has_incoming = false;
};

/// Pointwise density of the boundary bilinear form b(trial, test) for the
/// given condition, outward normal n and impedance Z. Throws
/// std::invalid_argument for negative penalty weights, or for the
/// transparent flux when incoming parts were not supplied.
double boundary_bilinear_density(const BoundarySpec& spec,
                                 const TraceSample& trial,
                                 const TraceSample& test, const Vec3& n,
                                 double Z);

/// Pointwise density of the boundary data functional r(g; test) at (point,
/// t). Zero for absorbing conditions and for null data.
double boundary_linear_density(const BoundarySpec& spec, const TraceSample& test,
                               const Vec3& n, const Vec3& point, double t);

/// Energy flux density b(trace, trace) + (n x E).H leaving the domain
/// through the boundary; non-negative for the wall and Silver-Mueller
/// conditions with zero data.
double dissipation_density(const BoundarySpec& spec, const TraceSample& trace,
                           const Vec3& n, double Z);

}  // namespace stdgt
