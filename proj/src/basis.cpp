#include "stdgt/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace stdgt {

namespace {

double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

Material::Material(double epsilon, double mu) : epsilon_(epsilon), mu_(mu) {
  if (!(epsilon > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("Material: epsilon and mu must be positive");
  }
}

double Material::impedance() const { return std::sqrt(mu_ / epsilon_); }

double Material::wave_speed() const { return 1.0 / std::sqrt(epsilon_ * mu_); }

DirectionTriple DirectionTriple::from_d_e(const Vec3& d, const Vec3& e) {
  DirectionTriple t;
  t.d = d;
  t.e = e;
  t.h = d.cross(e);
  return t;
}

std::vector<DirectionTriple> directions_2d(int k, double theta0) {
  if (k < 1) {
    throw std::invalid_argument("directions_2d: order must be at least 1");
  }
  const int n = 2 * k + 3;
  std::vector<DirectionTriple> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double theta = theta0 + 2.0 * M_PI * i / n;
    const Vec3 d(std::cos(theta), std::sin(theta), 0.0);
    out.push_back(DirectionTriple::from_d_e(d, Vec3::UnitZ()));
  }
  return out;
}

std::vector<DirectionTriple> directions_3d(int k) {
  if (k < 1) {
    throw std::invalid_argument("directions_3d: order must be at least 1");
  }
  // Latitude levels: Chebyshev points cos(pi (m + 1/2) / (k + 1)), assigned
  // to rings through the interleaved ordering that alternates hemispheres.
  const int levels = k + 1;
  std::vector<double> ascending(levels);
  for (int j = 0; j < levels; ++j) {
    ascending[j] = std::cos(M_PI * (levels - j - 0.5) / levels);
  }
  std::vector<int> ring_of_position;
  ring_of_position.reserve(levels);
  for (int m = k; m >= 0; m -= 2) ring_of_position.push_back(m);
  std::reverse(ring_of_position.begin(), ring_of_position.end());
  for (int m = k - 1; m >= 0; m -= 2) ring_of_position.push_back(m);
  std::vector<double> z_of_ring(levels);
  for (int j = 0; j < levels; ++j) {
    z_of_ring[ring_of_position[j]] = ascending[j];
  }

  std::vector<DirectionTriple> out;
  out.reserve(2 * (k + 1) * (k + 3));
  for (int m = 0; m <= k; ++m) {
    const int n_azimuth = 2 * m + 3;
    const double z = z_of_ring[m];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phase = M_PI * m / n_azimuth;
    for (int i = 0; i < n_azimuth; ++i) {
      const double theta = phase + 2.0 * M_PI * i / n_azimuth;
      const Vec3 d(rho * std::cos(theta), rho * std::sin(theta), z);
      Vec3 ref = Vec3::UnitZ();
      if ((d - ref).norm() < 1e-8 || (d + ref).norm() < 1e-8) {
        ref = Vec3::UnitX();
      }
      const Vec3 e1 = (ref - ref.dot(d) * d).normalized();
      out.push_back(DirectionTriple::from_d_e(d, e1));
      out.push_back(DirectionTriple::from_d_e(d, d.cross(e1)));
    }
  }
  return out;
}

double BasisFunction::phase(const Vec3& r, double t) const {
  return (triple.d.dot(r - shift_r) - wave_speed * (t - shift_t)) / scale;
}

Vec6 BasisFunction::eval(const Vec3& r, double t) const {
  if (order == 0) return constant;
  const double phi = pow_int(phase(r, t), order);
  Vec6 out;
  out.head<3>() = triple.e * phi;
  out.tail<3>() = (triple.h / impedance) * phi;
  return out;
}

Vec8 maxwell_residual(const BasisFunction& f, const Vec3& r, double t) {
  Vec8 res = Vec8::Zero();
  if (f.order == 0) return res;
  const double dphi = f.order * pow_int(f.phase(r, t), f.order - 1) / f.scale;
  const Vec3 grad_phi = dphi * f.triple.d;
  const double dphi_dt = -dphi * f.wave_speed;
  const Vec3 h_field = f.triple.h / f.impedance;
  // E = e phi, H = (h/Z) phi; curl(v phi) = grad(phi) x v for constant v.
  const double eps = 1.0 / (f.impedance * f.wave_speed);
  const double mu = f.impedance / f.wave_speed;
  res.segment<3>(0) = eps * dphi_dt * f.triple.e - grad_phi.cross(h_field);
  res.segment<3>(3) = mu * dphi_dt * h_field + grad_phi.cross(f.triple.e);
  res(6) = grad_phi.dot(f.triple.e);
  res(7) = grad_phi.dot(h_field);
  return res;
}

int TrefftzBasis::max_order() const {
  int m = 0;
  for (const auto& f : functions) m = std::max(m, f.order);
  return m;
}

int trefftz_dim_2d(int p) { return (p + 1) * (p + 3); }

int trefftz_dim_3d(int p) { return (p + 1) * (p + 2) * (2 * p + 9) / 3; }

namespace {

void append_constants_2d(TrefftzBasis& basis, const BasisFunction& proto) {
  // TM constants: E_z, H_x, H_y.
  for (int comp : {2, 3, 4}) {
    BasisFunction f = proto;
    f.order = 0;
    f.constant = Vec6::Zero();
    f.constant(comp) = 1.0;
    basis.functions.push_back(f);
  }
}

void append_constants_3d(TrefftzBasis& basis, const BasisFunction& proto) {
  for (int comp = 0; comp < 6; ++comp) {
    BasisFunction f = proto;
    f.order = 0;
    f.constant = Vec6::Zero();
    f.constant(comp) = 1.0;
    basis.functions.push_back(f);
  }
}

}  // namespace

TrefftzBasis build_element_basis(const Element& element, double tau, int p,
                                 const Material& material, double theta0) {
  if (p < 0) {
    throw std::invalid_argument("build_element_basis: order must be non-negative");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("build_element_basis: slab length must be positive");
  }
  TrefftzBasis basis;
  basis.element_id = element.id;
  basis.material = material;
  basis.functions.reserve(trefftz_dim_2d(p));

  BasisFunction proto;
  proto.shift_r = Vec3(element.center[0], element.center[1], 0.0);
  proto.shift_t = 0.0;
  proto.scale = std::max(element.max_side(), material.wave_speed() * tau) / 2.0;
  proto.impedance = material.impedance();
  proto.wave_speed = material.wave_speed();

  append_constants_2d(basis, proto);
  for (int k = 1; k <= p; ++k) {
    for (const auto& triple : directions_2d(k, theta0)) {
      BasisFunction f = proto;
      f.order = k;
      f.triple = triple;
      basis.functions.push_back(f);
    }
  }
  return basis;
}

TrefftzBasis build_element_basis_3d(const Box3& box, double tau, int p,
                                    const Material& material) {
  if (p < 0) {
    throw std::invalid_argument("build_element_basis_3d: order must be non-negative");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("build_element_basis_3d: slab length must be positive");
  }
  TrefftzBasis basis;
  basis.element_id = 0;
  basis.material = material;
  basis.functions.reserve(trefftz_dim_3d(p));

  double max_side = 0.0;
  Vec3 center;
  for (int d = 0; d < 3; ++d) {
    max_side = std::max(max_side, box.hi[d] - box.lo[d]);
    center(d) = 0.5 * (box.lo[d] + box.hi[d]);
  }

  BasisFunction proto;
  proto.shift_r = center;
  proto.shift_t = 0.0;
  proto.scale = std::max(max_side, material.wave_speed() * tau) / 2.0;
  proto.impedance = material.impedance();
  proto.wave_speed = material.wave_speed();

  append_constants_3d(basis, proto);
  for (int k = 1; k <= p; ++k) {
    for (const auto& triple : directions_3d(k)) {
      BasisFunction f = proto;
      f.order = k;
      f.triple = triple;
      basis.functions.push_back(f);
    }
  }
  return basis;
}

namespace {

int rank_from_gram(Eigen::MatrixXd& gram) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = 1e-10 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

int gram_rank(const TrefftzBasis& basis, const Element& element, double tau) {
  const int n = basis.size();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd vals(6, n);
  const auto rule =
      volume_time_rule(element, TimeInterval{0.0, tau}, 2 * basis.max_order());
  for (const auto& q : rule) {
    const Vec3 r(q.x, q.y, 0.0);
    for (int j = 0; j < n; ++j) vals.col(j) = basis.functions[j].eval(r, q.t);
    gram.noalias() += q.w * vals.transpose() * vals;
  }
  return rank_from_gram(gram);
}

int gram_rank_3d(const TrefftzBasis& basis, const Box3& box, double tau) {
  const int n = basis.size();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd vals(6, n);
  const auto rule =
      box_time_rule(box.lo, box.hi, TimeInterval{0.0, tau}, 2 * basis.max_order());
  for (const auto& q : rule) {
    const Vec3 r(q.x, q.y, q.z);
    for (int j = 0; j < n; ++j) vals.col(j) = basis.functions[j].eval(r, q.t);
    gram.noalias() += q.w * vals.transpose() * vals;
  }
  return rank_from_gram(gram);
}

std::vector<bool> incoming_mask(const TrefftzBasis& basis, const Vec3& n) {
  std::vector<bool> mask(basis.functions.size(), false);
  for (std::size_t i = 0; i < basis.functions.size(); ++i) {
    const auto& f = basis.functions[i];
    mask[i] = f.order >= 1 && f.triple.d.dot(n) < -1e-12;
  }
  return mask;
}

}  // namespace stdgt
