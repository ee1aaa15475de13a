#include "stdgt/assembly.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "stdgt/parallel.hpp"

namespace stdgt {

DofMap::DofMap(const std::vector<int>& block_sizes) {
  offsets_.resize(block_sizes.size() + 1);
  offsets_[0] = 0;
  for (std::size_t i = 0; i < block_sizes.size(); ++i) {
    if (block_sizes[i] < 0) {
      throw std::invalid_argument("DofMap: negative block size");
    }
    offsets_[i + 1] = offsets_[i] + block_sizes[i];
  }
}

DofMap make_dof_map(const std::vector<TrefftzBasis>& bases) {
  std::vector<int> sizes;
  sizes.reserve(bases.size());
  for (const auto& b : bases) sizes.push_back(b.size());
  return DofMap(sizes);
}

BlockSparseMatrix::BlockSparseMatrix(DofMap row_map, DofMap col_map)
    : row_map_(std::move(row_map)),
      col_map_(std::move(col_map)),
      rows_(row_map_.blocks()) {}

Eigen::MatrixXd& BlockSparseMatrix::block(int row_elem, int col_elem) {
  auto& row = rows_.at(row_elem);
  auto it = std::lower_bound(
      row.begin(), row.end(), col_elem,
      [](const auto& entry, int col) { return entry.first < col; });
  if (it == row.end() || it->first != col_elem) {
    it = row.insert(it, {col_elem, Eigen::MatrixXd::Zero(
                                       row_map_.size(row_elem),
                                       col_map_.size(col_elem))});
  }
  return it->second;
}

const Eigen::MatrixXd* BlockSparseMatrix::find_block(int row_elem,
                                                     int col_elem) const {
  const auto& row = rows_.at(row_elem);
  auto it = std::lower_bound(
      row.begin(), row.end(), col_elem,
      [](const auto& entry, int col) { return entry.first < col; });
  if (it == row.end() || it->first != col_elem) return nullptr;
  return &it->second;
}

void BlockSparseMatrix::multiply(const Eigen::VectorXd& x,
                                 Eigen::VectorXd& y) const {
  y.setZero(rows());
  for (int r = 0; r < row_map_.blocks(); ++r) {
    auto seg = y.segment(row_map_.begin(r), row_map_.size(r));
    for (const auto& [c, m] : rows_[r]) {
      seg.noalias() += m * x.segment(col_map_.begin(c), col_map_.size(c));
    }
  }
}

Eigen::SparseMatrix<double> BlockSparseMatrix::to_sparse() const {
  std::vector<Eigen::Triplet<double>> triplets;
  std::size_t nnz = 0;
  for (const auto& row : rows_) {
    for (const auto& [c, m] : row) nnz += m.size();
  }
  triplets.reserve(nnz);
  for (int r = 0; r < row_map_.blocks(); ++r) {
    const int r0 = row_map_.begin(r);
    for (const auto& [c, m] : rows_[r]) {
      const int c0 = col_map_.begin(c);
      for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < m.rows(); ++i) {
          triplets.emplace_back(r0 + i, c0 + j, m(i, j));
        }
      }
    }
  }
  Eigen::SparseMatrix<double> out(rows(), cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

void BlockSparseMatrix::write_coordinate(std::ostream& os) const {
  for (int r = 0; r < row_map_.blocks(); ++r) {
    const int r0 = row_map_.begin(r);
    for (const auto& [c, m] : rows_[r]) {
      const int c0 = col_map_.begin(c);
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
          os << r0 + i << ' ' << c0 + j << ' ' << m(i, j) << '\n';
        }
      }
    }
  }
}

void eval_basis_fields(const TrefftzBasis& basis, const Vec3& r, double t,
                       Eigen::Matrix3Xd& E, Eigen::Matrix3Xd& H) {
  const int n = basis.size();
  E.resize(3, n);
  H.resize(3, n);
  for (int j = 0; j < n; ++j) {
    const Vec6 v = basis.functions[j].eval(r, t);
    E.col(j) = v.head<3>();
    H.col(j) = v.tail<3>();
  }
}

int default_quadrature_degree(const std::vector<TrefftzBasis>& bases) {
  int p = 0;
  for (const auto& b : bases) p = std::max(p, b.max_order());
  return 2 * p + 1;
}

namespace {

Vec3 face_normal3(const std::array<double, 2>& n) { return Vec3(n[0], n[1], 0.0); }

const BoundarySpec& spec_for_tag(const BoundarySpecMap& specs, BoundaryTag tag) {
  auto it = specs.find(tag);
  if (it == specs.end()) {
    throw std::invalid_argument(
        std::string("no boundary condition given for tag '") +
        std::string(to_string(tag)) + "'");
  }
  return it->second;
}

void cross_columns(const Vec3& n, const Eigen::Matrix3Xd& in,
                   Eigen::Matrix3Xd& out) {
  out.resize(3, in.cols());
  for (int j = 0; j < in.cols(); ++j) out.col(j) = n.cross(in.col(j));
}

// Mass-type block: sum_q w (eps E_j.E_i + mu H_j.H_i), with trial columns
// evaluated at t_col and test rows at t_row.
Eigen::MatrixXd mass_block(const TrefftzBasis& row_basis,
                           const TrefftzBasis& col_basis,
                           const Element& element, double t_row, double t_col,
                           int quad_degree) {
  Eigen::MatrixXd block =
      Eigen::MatrixXd::Zero(row_basis.size(), col_basis.size());
  const double eps = col_basis.material.epsilon();
  const double mu = col_basis.material.mu();
  Eigen::Matrix3Xd Er, Hr, Ec, Hc;
  for (const auto& q : element_rule(element, quad_degree)) {
    const Vec3 r(q.x, q.y, 0.0);
    eval_basis_fields(row_basis, r, t_row, Er, Hr);
    if (t_row == t_col && &row_basis == &col_basis) {
      block.noalias() += q.w * (eps * Er.transpose() * Er).eval();
      block.noalias() += q.w * (mu * Hr.transpose() * Hr).eval();
    } else {
      eval_basis_fields(col_basis, r, t_col, Ec, Hc);
      block.noalias() += q.w * (eps * Er.transpose() * Ec).eval();
      block.noalias() += q.w * (mu * Hr.transpose() * Hc).eval();
    }
  }
  return block;
}

struct InteriorFaceBlocks {
  Eigen::MatrixXd LL, LR, RL, RR;
};

// Face coupling: jump of the trial tangential traces against the average
// of the test traces,
//   sum_q w [n x H_j] . {E_i} - [n x E_j] . {H_i},
// with the stored normal pointing from `left` into `right`.
InteriorFaceBlocks interior_face_blocks(const InteriorFace& face,
                                        const TrefftzBasis& left,
                                        const TrefftzBasis& right, double tau,
                                        int quad_degree) {
  InteriorFaceBlocks out;
  out.LL = Eigen::MatrixXd::Zero(left.size(), left.size());
  out.LR = Eigen::MatrixXd::Zero(left.size(), right.size());
  out.RL = Eigen::MatrixXd::Zero(right.size(), left.size());
  out.RR = Eigen::MatrixXd::Zero(right.size(), right.size());

  const Vec3 n = face_normal3(face.normal);
  Eigen::Matrix3Xd EL, HL, ER, HR, NxEL, NxHL, NxER, NxHR;
  for (const auto& q : face_time_rule(face.a, face.b, {0.0, tau}, quad_degree)) {
    const Vec3 r(q.x, q.y, 0.0);
    eval_basis_fields(left, r, q.t, EL, HL);
    eval_basis_fields(right, r, q.t, ER, HR);
    cross_columns(n, EL, NxEL);
    cross_columns(n, HL, NxHL);
    cross_columns(n, ER, NxER);
    cross_columns(n, HR, NxHR);
    const double wl = 0.5 * q.w;   // trial on the left, sign +1
    const double wr = -0.5 * q.w;  // trial on the right, sign -1
    out.LL.noalias() += wl * (EL.transpose() * NxHL - HL.transpose() * NxEL);
    out.RL.noalias() += wl * (ER.transpose() * NxHL - HR.transpose() * NxEL);
    out.LR.noalias() += wr * (EL.transpose() * NxHR - HL.transpose() * NxER);
    out.RR.noalias() += wr * (ER.transpose() * NxHR - HR.transpose() * NxER);
  }
  return out;
}

std::vector<TraceSample> make_trace_samples(const Eigen::Matrix3Xd& E,
                                            const Eigen::Matrix3Xd& H,
                                            const std::vector<bool>* mask) {
  std::vector<TraceSample> samples(E.cols());
  for (int j = 0; j < E.cols(); ++j) {
    TraceSample& s = samples[j];
    s.E = E.col(j);
    s.H = H.col(j);
    if (mask) {
      s.has_incoming = true;
      if ((*mask)[j]) {
        s.E_in = s.E;
        s.H_in = s.H;
      }
    }
  }
  return samples;
}

Eigen::MatrixXd boundary_face_block(const BoundaryFace& face,
                                    const TrefftzBasis& basis,
                                    const BoundarySpec& spec, double tau,
                                    int quad_degree) {
  const int n = basis.size();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
  const Vec3 normal = face_normal3(face.normal);
  const double Z = basis.material.impedance();
  const bool transparent = std::holds_alternative<Transparent>(spec);
  std::vector<bool> mask;
  if (transparent) mask = incoming_mask(basis, normal);

  Eigen::Matrix3Xd E, H;
  for (const auto& q : face_time_rule(face.a, face.b, {0.0, tau}, quad_degree)) {
    eval_basis_fields(basis, Vec3(q.x, q.y, 0.0), q.t, E, H);
    const auto samples =
        make_trace_samples(E, H, transparent ? &mask : nullptr);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        block(i, j) += q.w * boundary_bilinear_density(spec, samples[j],
                                                       samples[i], normal, Z);
      }
    }
  }
  return block;
}

}  // namespace

BlockSparseMatrix assemble_temporal_mass(const Mesh& mesh,
                                         const std::vector<TrefftzBasis>& bases,
                                         double local_time, int quad_degree,
                                         int threads) {
  if (bases.size() != mesh.elements().size()) {
    throw std::invalid_argument("assemble_temporal_mass: one basis per element required");
  }
  const DofMap map = make_dof_map(bases);
  BlockSparseMatrix mass(map, map);
  const int ne = static_cast<int>(mesh.elements().size());
  for (int e = 0; e < ne; ++e) mass.block(e, e);  // reserve in index order
  parallel_for(0, ne, threads, [&](int e) {
    mass.block(e, e) = mass_block(bases[e], bases[e], mesh.elements()[e],
                                  local_time, local_time, quad_degree);
  });
  return mass;
}

BlockSparseMatrix assemble_system_matrix(const Mesh& mesh,
                                         const std::vector<TrefftzBasis>& bases,
                                         const BoundarySpecMap& specs,
                                         double tau, int quad_degree,
                                         int threads) {
  if (bases.size() != mesh.elements().size()) {
    throw std::invalid_argument("assemble_system_matrix: one basis per element required");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("assemble_system_matrix: slab length must be positive");
  }
  for (const auto& f : mesh.boundary_faces()) spec_for_tag(specs, f.tag);

  const DofMap map = make_dof_map(bases);
  BlockSparseMatrix A(map, map);

  // Create all blocks up front, in deterministic order, so the parallel
  // fill below only writes into preexisting storage.
  const int ne = static_cast<int>(mesh.elements().size());
  for (int e = 0; e < ne; ++e) A.block(e, e);
  for (const auto& f : mesh.interior_faces()) {
    A.block(f.left, f.left);
    A.block(f.left, f.right);
    A.block(f.right, f.left);
    A.block(f.right, f.right);
  }

  // Element-diagonal part: start-of-slab mass plus boundary fluxes.
  std::vector<std::vector<const BoundaryFace*>> faces_of(ne);
  for (const auto& f : mesh.boundary_faces()) faces_of[f.element].push_back(&f);
  parallel_for(0, ne, threads, [&](int e) {
    Eigen::MatrixXd& diag = A.block(e, e);
    diag = mass_block(bases[e], bases[e], mesh.elements()[e], 0.0, 0.0,
                      quad_degree);
    for (const BoundaryFace* f : faces_of[e]) {
      diag += boundary_face_block(*f, bases[e], spec_for_tag(specs, f->tag),
                                  tau, quad_degree);
    }
  });

  // Interior faces: compute per-face blocks in parallel, scatter serially.
  const auto& faces = mesh.interior_faces();
  const int nf = static_cast<int>(faces.size());
  const int batch = 512;
  std::vector<InteriorFaceBlocks> locals(std::min(batch, std::max(nf, 1)));
  for (int base = 0; base < nf; base += batch) {
    const int count = std::min(batch, nf - base);
    parallel_for(0, count, threads, [&](int k) {
      const auto& f = faces[base + k];
      locals[k] =
          interior_face_blocks(f, bases[f.left], bases[f.right], tau, quad_degree);
    });
    for (int k = 0; k < count; ++k) {
      const auto& f = faces[base + k];
      A.block(f.left, f.left) += locals[k].LL;
      A.block(f.left, f.right) += locals[k].LR;
      A.block(f.right, f.left) += locals[k].RL;
      A.block(f.right, f.right) += locals[k].RR;
    }
  }
  return A;
}

BlockSparseMatrix assemble_transfer_matrix(
    const Mesh& mesh, const std::vector<TrefftzBasis>& current,
    const std::vector<TrefftzBasis>& previous, double tau_previous,
    int quad_degree, int threads) {
  if (current.size() != mesh.elements().size() ||
      previous.size() != mesh.elements().size()) {
    throw std::invalid_argument("assemble_transfer_matrix: one basis per element required");
  }
  BlockSparseMatrix B(make_dof_map(current), make_dof_map(previous));
  const int ne = static_cast<int>(mesh.elements().size());
  for (int e = 0; e < ne; ++e) B.block(e, e);
  parallel_for(0, ne, threads, [&](int e) {
    // Rows test the current slab at its start; columns carry the previous
    // slab's end values.
    B.block(e, e) = mass_block(current[e], previous[e], mesh.elements()[e],
                               0.0, tau_previous, quad_degree);
  });
  return B;
}

Eigen::VectorXd assemble_boundary_load(const Mesh& mesh,
                                       const std::vector<TrefftzBasis>& bases,
                                       const BoundarySpecMap& specs,
                                       const TimeInterval& slab,
                                       int quad_degree, int threads) {
  if (bases.size() != mesh.elements().size()) {
    throw std::invalid_argument("assemble_boundary_load: one basis per element required");
  }
  const DofMap map = make_dof_map(bases);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(map.total());
  const auto& faces = mesh.boundary_faces();
  const int nf = static_cast<int>(faces.size());
  std::vector<Eigen::VectorXd> locals(nf);
  parallel_for(0, nf, threads, [&](int fi) {
    const auto& face = faces[fi];
    const TrefftzBasis& basis = bases[face.element];
    const BoundarySpec& spec = spec_for_tag(specs, face.tag);
    const Vec3 normal = face_normal3(face.normal);
    Eigen::VectorXd local = Eigen::VectorXd::Zero(basis.size());
    Eigen::Matrix3Xd E, H;
    for (const auto& q : face_time_rule(face.a, face.b, slab, quad_degree)) {
      // Basis functions live in slab-local time; data g in global time.
      const double t_local = q.t - slab.t_begin;
      eval_basis_fields(basis, Vec3(q.x, q.y, 0.0), t_local, E, H);
      const auto samples = make_trace_samples(E, H, nullptr);
      const Vec3 point(q.x, q.y, 0.0);
      for (int i = 0; i < basis.size(); ++i) {
        local(i) += q.w * boundary_linear_density(spec, samples[i], normal,
                                                  point, q.t);
      }
    }
    locals[fi] = std::move(local);
  });
  for (int fi = 0; fi < nf; ++fi) {
    const int e = faces[fi].element;
    load.segment(map.begin(e), map.size(e)) += locals[fi];
  }
  return load;
}

}  // namespace stdgt
