#include "stdgt/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace stdgt {

namespace {

// Energy density 1/2 (eps |E|^2 + mu |H|^2) of the expanded solution on
// one element at a slab-local time, integrated with the element rule.
double element_energy(const Element& element, const TrefftzBasis& basis,
                      Eigen::Ref<const Eigen::VectorXd> coeffs,
                      double local_time, int quad_degree) {
  const double eps = basis.material.epsilon();
  const double mu = basis.material.mu();
  double energy = 0.0;
  Eigen::Matrix3Xd E, H;
  for (const auto& q : element_rule(element, quad_degree)) {
    eval_basis_fields(basis, Vec3(q.x, q.y, 0.0), local_time, E, H);
    const Vec3 Ef = E * coeffs;
    const Vec3 Hf = H * coeffs;
    energy += 0.5 * q.w * (eps * Ef.squaredNorm() + mu * Hf.squaredNorm());
  }
  return energy;
}

}  // namespace

double discrete_energy(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
                       const Eigen::VectorXd& coefficients, double local_time,
                       int quad_degree, const std::vector<int>* element_subset) {
  const DofMap map = make_dof_map(bases);
  if (coefficients.size() != map.total()) {
    throw std::invalid_argument("discrete_energy: coefficient size mismatch");
  }
  double energy = 0.0;
  auto add = [&](int e) {
    energy += element_energy(mesh.elements()[e], bases[e],
                             coefficients.segment(map.begin(e), map.size(e)),
                             local_time, quad_degree);
  };
  if (element_subset != nullptr) {
    for (int e : *element_subset) add(e);
  } else {
    for (int e = 0; e < static_cast<int>(mesh.elements().size()); ++e) add(e);
  }
  return energy;
}

double initial_energy(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
                      const InitialData& data, int points_per_axis) {
  const int degree = 2 * points_per_axis - 2;
  double energy = 0.0;
  for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
    const double eps = bases[e].material.epsilon();
    const double mu = bases[e].material.mu();
    for (const auto& q : element_rule(mesh.elements()[e], degree)) {
      const Vec3 r(q.x, q.y, 0.0);
      const Vec3 e0 = data.E0 ? data.E0(r) : Vec3::Zero();
      const Vec3 h0 = data.H0 ? data.H0(r) : Vec3::Zero();
      energy += 0.5 * q.w * (eps * e0.squaredNorm() + mu * h0.squaredNorm());
    }
  }
  return energy;
}

namespace {

// Temporal jump energy 1/2 int eps |E_n(0) - E_prev|^2 + mu |...|^2 where
// the previous state is either the prior slab's end values or the initial
// data. The quadrature rule mirrors the one used to build the right-hand
// side, which keeps the energy identity exact.
double jump_energy(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
                   const DofMap& map, const Eigen::VectorXd& current,
                   const Eigen::VectorXd* previous, const InitialData* initial,
                   double tau_prev, int quad_degree, int init_points) {
  double jump = 0.0;
  for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
    const TrefftzBasis& basis = bases[e];
    const double eps = basis.material.epsilon();
    const double mu = basis.material.mu();
    const auto cur = current.segment(map.begin(e), map.size(e));
    const int degree =
        previous != nullptr ? quad_degree : 2 * init_points - 2;
    Eigen::Matrix3Xd E, H;
    for (const auto& q : element_rule(mesh.elements()[e], degree)) {
      const Vec3 r(q.x, q.y, 0.0);
      eval_basis_fields(basis, r, 0.0, E, H);
      Vec3 dE = E * cur;
      Vec3 dH = H * cur;
      if (previous != nullptr) {
        const auto prev = previous->segment(map.begin(e), map.size(e));
        eval_basis_fields(basis, r, tau_prev, E, H);
        dE -= E * prev;
        dH -= H * prev;
      } else if (initial != nullptr) {
        if (initial->E0) dE -= initial->E0(r);
        if (initial->H0) dH -= initial->H0(r);
      }
      jump += 0.5 * q.w * (eps * dE.squaredNorm() + mu * dH.squaredNorm());
    }
  }
  return jump;
}

struct BoundaryTerms {
  double flux = 0.0;            // int (b + Poynting - r), signed
  std::vector<double> by_tag = std::vector<double>(4, 0.0);  // b + Poynting
};

BoundaryTerms boundary_flux(const Mesh& mesh,
                            const std::vector<TrefftzBasis>& bases,
                            const DofMap& map, const BoundarySpecMap& specs,
                            const Eigen::VectorXd& coeffs,
                            const TimeInterval& slab, int quad_degree) {
  BoundaryTerms out;
  for (const auto& face : mesh.boundary_faces()) {
    const TrefftzBasis& basis = bases[face.element];
    const auto spec_it = specs.find(face.tag);
    if (spec_it == specs.end()) {
      throw std::invalid_argument("boundary_flux: missing boundary condition");
    }
    const BoundarySpec& spec = spec_it->second;
    const Vec3 n(face.normal[0], face.normal[1], 0.0);
    const double Z = basis.material.impedance();
    const bool transparent = std::holds_alternative<Transparent>(spec);
    std::vector<bool> mask;
    if (transparent) mask = incoming_mask(basis, n);
    const auto c = coeffs.segment(map.begin(face.element),
                                  map.size(face.element));

    Eigen::Matrix3Xd E, H;
    for (const auto& q :
         face_time_rule(face.a, face.b, slab, quad_degree)) {
      const double t_local = q.t - slab.t_begin;
      eval_basis_fields(basis, Vec3(q.x, q.y, 0.0), t_local, E, H);
      TraceSample trace;
      trace.E = E * c;
      trace.H = H * c;
      if (transparent) {
        trace.has_incoming = true;
        for (int j = 0; j < basis.size(); ++j) {
          if (mask[j]) {
            trace.E_in += c(j) * E.col(j);
            trace.H_in += c(j) * H.col(j);
          }
        }
      }
      const double diss = dissipation_density(spec, trace, n, Z);
      const double r_val =
          boundary_linear_density(spec, trace, n, Vec3(q.x, q.y, 0.0), q.t);
      out.flux += q.w * (diss - r_val);
      out.by_tag[static_cast<int>(face.tag)] += q.w * diss;
    }
  }
  return out;
}

}  // namespace

std::vector<EnergyRecord> energy_audit(const Mesh& mesh,
                                       const std::vector<TrefftzBasis>& bases,
                                       const BoundarySpecMap& specs,
                                       const RunResult& result,
                                       const InitialData& initial,
                                       int quad_degree,
                                       int init_points_per_axis) {
  const DofMap map = make_dof_map(bases);
  std::vector<EnergyRecord> records;
  records.reserve(result.slabs.size() + 1);

  EnergyRecord start;
  start.slab = 0;
  start.t = result.slabs.empty() ? 0.0 : result.slabs.front().interval.t_begin;
  start.energy = initial_energy(mesh, bases, initial, init_points_per_axis);
  records.push_back(start);

  double previous_energy = start.energy;
  const Eigen::VectorXd* previous = nullptr;
  for (const auto& slab : result.slabs) {
    const double tau = slab.interval.tau();
    EnergyRecord rec;
    rec.slab = slab.index;
    rec.t = slab.interval.t_end;
    rec.energy = discrete_energy(mesh, bases, slab.coefficients, tau,
                                 quad_degree);
    rec.jump_dissipation = jump_energy(
        mesh, bases, map, slab.coefficients, previous,
        previous == nullptr ? &initial : nullptr, tau, quad_degree,
        init_points_per_axis);
    const BoundaryTerms boundary =
        boundary_flux(mesh, bases, map, specs, slab.coefficients,
                      slab.interval, quad_degree);
    rec.boundary_dissipation = boundary.flux;
    rec.identity_residual =
        rec.energy - previous_energy + rec.jump_dissipation + boundary.flux;
    records.push_back(rec);

    previous_energy = rec.energy;
    previous = &slab.coefficients;
  }
  return records;
}

std::vector<TagDissipationRecord> boundary_dissipation_by_tag(
    const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
    const BoundarySpecMap& specs, const RunResult& result, int quad_degree) {
  const DofMap map = make_dof_map(bases);
  std::vector<TagDissipationRecord> records;
  records.reserve(result.slabs.size() * 4);
  for (const auto& slab : result.slabs) {
    const BoundaryTerms boundary = boundary_flux(
        mesh, bases, map, specs, slab.coefficients, slab.interval, quad_degree);
    for (int tag = 0; tag < 4; ++tag) {
      TagDissipationRecord rec;
      rec.slab = slab.index;
      rec.t = slab.interval.t_end;
      rec.tag = static_cast<BoundaryTag>(tag);
      rec.dissipation = boundary.by_tag[tag];
      rec.negative = rec.dissipation < -1e-12;
      records.push_back(rec);
    }
  }
  return records;
}

double l2_spacetime_error(const Mesh& mesh,
                          const std::vector<TrefftzBasis>& bases,
                          const RunResult& result,
                          const std::function<double(const Vec3&, double)>& ref_Ez,
                          int quad_degree) {
  if (!ref_Ez) {
    throw std::invalid_argument("l2_spacetime_error: reference field required");
  }
  const DofMap map = make_dof_map(bases);
  int p = 0;
  for (const auto& b : bases) p = std::max(p, b.max_order());
  // The reference is usually not polynomial; use a few extra points.
  const int degree = quad_degree > 0 ? quad_degree : std::max(2 * p + 3, 9);

  double num = 0.0, den = 0.0;
  Eigen::Matrix3Xd E, H;
  for (const auto& slab : result.slabs) {
    for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
      const auto c = slab.coefficients.segment(map.begin(e), map.size(e));
      for (const auto& q :
           volume_time_rule(mesh.elements()[e], slab.interval, degree)) {
        const Vec3 r(q.x, q.y, 0.0);
        const double t_local = q.t - slab.interval.t_begin;
        eval_basis_fields(bases[e], r, t_local, E, H);
        const double Ez = (E * c)(2);
        const double ref = ref_Ez(r, q.t);
        num += q.w * (Ez - ref) * (Ez - ref);
        den += q.w * ref * ref;
      }
    }
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

double convergence_rate(const std::vector<std::pair<double, double>>& h_error) {
  if (h_error.size() < 2) {
    throw std::invalid_argument("convergence_rate: at least two samples required");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(h_error.size());
  for (std::size_t i = 0; i < h_error.size(); ++i) {
    const auto& [h, err] = h_error[i];
    if (!(h > 0.0) || !(err > 0.0)) {
      throw std::invalid_argument("convergence_rate: samples must be positive");
    }
    if (i > 0 && !(h < h_error[i - 1].first)) {
      throw std::invalid_argument("convergence_rate: h must strictly decrease");
    }
    const double x = std::log(h), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace stdgt
