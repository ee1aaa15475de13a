#include "stdgt/stepper.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stdgt/parallel.hpp"

namespace stdgt {

Eigen::VectorXd project_initial(const Mesh& mesh,
                                const std::vector<TrefftzBasis>& bases,
                                const InitialData& data, int points_per_axis,
                                int threads) {
  if (bases.size() != mesh.elements().size()) {
    throw std::invalid_argument("project_initial: one basis per element required");
  }
  if (points_per_axis < 1 || points_per_axis > 32) {
    throw std::invalid_argument("project_initial: points per axis must be in [1, 32]");
  }
  const DofMap map = make_dof_map(bases);
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(map.total());
  if (!data.E0 && !data.H0) return moments;
  const int degree = 2 * points_per_axis - 2;
  const int ne = static_cast<int>(mesh.elements().size());
  parallel_for(0, ne, threads, [&](int e) {
    const TrefftzBasis& basis = bases[e];
    const double eps = basis.material.epsilon();
    const double mu = basis.material.mu();
    auto seg = moments.segment(map.begin(e), map.size(e));
    Eigen::Matrix3Xd E, H;
    for (const auto& q : element_rule(mesh.elements()[e], degree)) {
      const Vec3 r(q.x, q.y, 0.0);
      const Vec3 e0 = data.E0 ? data.E0(r) : Vec3::Zero();
      const Vec3 h0 = data.H0 ? data.H0(r) : Vec3::Zero();
      eval_basis_fields(basis, r, 0.0, E, H);
      seg.noalias() += q.w * (eps * E.transpose() * e0 + mu * H.transpose() * h0);
    }
  });
  return moments;
}

SlabSolver::SlabSolver(const BlockSparseMatrix& A, SolverOptions options)
    : options_(options), map_(A.row_map()) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("SlabSolver: matrix must be square");
  }
  switch (options_.mode) {
    case SolverOptions::Mode::Direct:
      iterative_ = false;
      break;
    case SolverOptions::Mode::Iterative:
      iterative_ = true;
      break;
    case SolverOptions::Mode::Auto:
      iterative_ = A.rows() > options_.direct_dof_limit;
      break;
  }
  if (iterative_) {
    matrix_ = Eigen::SparseMatrix<double, Eigen::RowMajor>(A.to_sparse());
    block_inverses_.resize(map_.blocks());
    for (int e = 0; e < map_.blocks(); ++e) {
      const Eigen::MatrixXd* diag = A.find_block(e, e);
      if (diag == nullptr) {
        throw std::runtime_error("SlabSolver: missing diagonal block " +
                                 std::to_string(e));
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(*diag);
      block_inverses_[e] = lu.inverse();
    }
  } else {
    const Eigen::SparseMatrix<double> sparse = A.to_sparse();
    lu_.compute(sparse);
    if (lu_.info() != Eigen::Success) {
      throw std::runtime_error(
          std::string("SlabSolver: sparse LU factorization failed: ") +
          lu_.lastErrorMessage());
    }
  }
}

void SlabSolver::apply_preconditioner(const Eigen::VectorXd& in,
                                      Eigen::VectorXd& out) const {
  out.resize(in.size());
  for (int e = 0; e < map_.blocks(); ++e) {
    out.segment(map_.begin(e), map_.size(e)).noalias() =
        block_inverses_[e] * in.segment(map_.begin(e), map_.size(e));
  }
}

Eigen::VectorXd SlabSolver::solve(const Eigen::VectorXd& rhs,
                                  const Eigen::VectorXd* initial_guess) const {
  if (!iterative_) {
    last_iterations_ = 0;
    Eigen::VectorXd x = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success) {
      throw std::runtime_error("SlabSolver: sparse LU solve failed");
    }
    return x;
  }
  return solve_gmres(rhs, initial_guess);
}

Eigen::VectorXd SlabSolver::solve_gmres(
    const Eigen::VectorXd& rhs, const Eigen::VectorXd* initial_guess) const {
  const int n = static_cast<int>(rhs.size());
  const double tol =
      std::max(options_.rtol * rhs.norm(), options_.atol);
  const int restart = std::min(options_.restart, n);

  Eigen::VectorXd x =
      initial_guess != nullptr ? *initial_guess : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = rhs - matrix_ * x;
  double beta = r.norm();
  last_iterations_ = 0;

  Eigen::MatrixXd V(n, restart + 1);
  Eigen::MatrixXd Hes = Eigen::MatrixXd::Zero(restart + 1, restart);
  Eigen::VectorXd cs(restart), sn(restart), g(restart + 1);
  Eigen::VectorXd z(n), w(n);

  while (beta > tol) {
    if (last_iterations_ >= options_.max_iterations) {
      std::ostringstream msg;
      msg << "GMRES did not converge: residual " << beta << " > " << tol
          << " after " << last_iterations_ << " iterations";
      throw std::runtime_error(msg.str());
    }
    V.col(0) = r / beta;
    g.setZero();
    g(0) = beta;
    int j = 0;
    for (; j < restart && last_iterations_ < options_.max_iterations; ++j) {
      ++last_iterations_;
      apply_preconditioner(V.col(j), z);
      w.noalias() = matrix_ * z;
      for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
        Hes(i, j) = V.col(i).dot(w);
        w -= Hes(i, j) * V.col(i);
      }
      Hes(j + 1, j) = w.norm();
      if (Hes(j + 1, j) > 0.0) V.col(j + 1) = w / Hes(j + 1, j);
      for (int i = 0; i < j; ++i) {  // apply stored Givens rotations
        const double t = cs(i) * Hes(i, j) + sn(i) * Hes(i + 1, j);
        Hes(i + 1, j) = -sn(i) * Hes(i, j) + cs(i) * Hes(i + 1, j);
        Hes(i, j) = t;
      }
      const double denom = std::hypot(Hes(j, j), Hes(j + 1, j));
      if (denom == 0.0) {  // exact breakdown: solution reached
        ++j;
        break;
      }
      cs(j) = Hes(j, j) / denom;
      sn(j) = Hes(j + 1, j) / denom;
      Hes(j, j) = denom;
      Hes(j + 1, j) = 0.0;
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);
      if (std::abs(g(j + 1)) <= tol) {
        ++j;
        break;
      }
    }
    const Eigen::VectorXd y = Hes.topLeftCorner(j, j)
                                  .triangularView<Eigen::Upper>()
                                  .solve(g.head(j));
    apply_preconditioner(V.leftCols(j) * y, z);
    x += z;
    r = rhs - matrix_ * x;  // true residual for the stopping decision
    beta = r.norm();
  }
  return x;
}

RunResult run(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
              const BoundarySpecMap& specs, const InitialData& initial,
              const RunParams& params) {
  if (!(params.tau > 0.0)) {
    throw std::invalid_argument("run: slab length must be positive");
  }
  if (params.T < 0.0) {
    throw std::invalid_argument("run: final time must be non-negative");
  }
  const double steps_real = params.T / params.tau;
  const int m = static_cast<int>(std::lround(steps_real));
  if (std::abs(m * params.tau - params.T) > 1e-9 * std::max(1.0, params.T)) {
    throw std::invalid_argument("run: final time must be a multiple of tau");
  }

  RunResult result;
  if (m == 0) return result;

  int p = 0;
  for (const auto& b : bases) p = std::max(p, b.max_order());
  const int quad_degree =
      params.quad_degree > 0 ? params.quad_degree : default_quadrature_degree(bases);
  const int init_points = params.init_points_per_axis > 0
                              ? params.init_points_per_axis
                              : std::max(p + 2, 10);

  const BlockSparseMatrix A = assemble_system_matrix(
      mesh, bases, specs, params.tau, quad_degree, params.threads);
  const BlockSparseMatrix B = assemble_transfer_matrix(
      mesh, bases, bases, params.tau, quad_degree, params.threads);

  SolverOptions solver_options = params.solver;
  solver_options.threads = params.threads;
  const SlabSolver solver(A, solver_options);
  result.iterative_path = solver.uses_iterative();

  Eigen::VectorXd carry = project_initial(mesh, bases, initial,
                                          init_points, params.threads);
  Eigen::VectorXd previous;  // previous slab coefficients (warm start)
  result.slabs.reserve(m);
  result.steps.reserve(m);

  for (int n = 1; n <= m; ++n) {
    const TimeInterval slab{(n - 1) * params.tau, n * params.tau};
    Eigen::VectorXd rhs = carry + assemble_boundary_load(
                                      mesh, bases, specs, slab, quad_degree,
                                      params.threads);
    const Eigen::VectorXd c =
        solver.solve(rhs, previous.size() == rhs.size() ? &previous : nullptr);

    Eigen::VectorXd Ac(rhs.size());
    A.multiply(c, Ac);
    const double residual = (Ac - rhs).norm();
    const double rhs_norm = rhs.norm();
    const double bound =
        std::max(params.residual_rtol * rhs_norm, params.residual_atol);
    if (!(residual <= bound)) {
      std::ostringstream msg;
      msg << "run: slab " << n << " residual " << residual
          << " exceeds bound " << bound;
      throw std::runtime_error(msg.str());
    }

    StepRecord record{n, slab.t_end, rhs_norm, residual,
                      solver.last_iteration_count()};
    SlabSolution solution{n, slab, c};
    if (params.observer) params.observer(solution, record);
    result.steps.push_back(record);
    result.slabs.push_back(std::move(solution));

    previous = c;
    B.multiply(c, carry);  // transfer term for the next slab
  }
  return result;
}

void write_checkpoint(const std::string& path, const Eigen::VectorXd& c,
                      bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw std::runtime_error("write_checkpoint: cannot open " + path);
  const std::int64_t size = c.size();
  if (binary) {
    os.write(reinterpret_cast<const char*>(&size), sizeof(size));
    os.write(reinterpret_cast<const char*>(c.data()),
             static_cast<std::streamsize>(size * sizeof(double)));
  } else {
    os << size << '\n';
    os.precision(17);
    for (std::int64_t i = 0; i < size; ++i) os << c(i) << '\n';
  }
  if (!os) throw std::runtime_error("write_checkpoint: write failed for " + path);
}

Eigen::VectorXd read_checkpoint(const std::string& path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw std::runtime_error("read_checkpoint: cannot open " + path);
  std::int64_t size = 0;
  Eigen::VectorXd c;
  if (binary) {
    is.read(reinterpret_cast<char*>(&size), sizeof(size));
    if (!is || size < 0) throw std::runtime_error("read_checkpoint: bad header");
    c.resize(size);
    is.read(reinterpret_cast<char*>(c.data()),
            static_cast<std::streamsize>(size * sizeof(double)));
  } else {
    is >> size;
    if (!is || size < 0) throw std::runtime_error("read_checkpoint: bad header");
    c.resize(size);
    for (std::int64_t i = 0; i < size; ++i) is >> c(i);
  }
  if (!is) throw std::runtime_error("read_checkpoint: truncated file " + path);
  return c;
}

}  // namespace stdgt
