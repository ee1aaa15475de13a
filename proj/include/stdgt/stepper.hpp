#pragma once

#include <Eigen/SparseLU>
#include <functional>
#include <optional>
#include <vector>

#include "stdgt/assembly.hpp"

namespace stdgt {

/// Initial fields as functions of position; null members mean zero fields.
struct InitialData {
  std::function<Vec3(const Vec3&)> E0;
  std::function<Vec3(const Vec3&)> H0;
};

/// Moment vector of the initial data against the slab-1 basis at local
/// time 0, with entries  int_K eps E0.E_i + mu H0.H_i dx . Replaces the
/// transfer term on the first slab. Uses a tensor Gauss rule with
/// points_per_axis points per direction.
Eigen::VectorXd project_initial(const Mesh& mesh,
                                const std::vector<TrefftzBasis>& bases,
                                const InitialData& data, int points_per_axis,
                                int threads = 1);

struct SolverOptions {
  enum class Mode { Auto, Direct, Iterative };
  Mode mode = Mode::Auto;
  /// Auto mode switches to the iterative path above this system size.
  int direct_dof_limit = 20000;
  double rtol = 1e-12;
  double atol = 1e-14;
  int max_iterations = 5000;
  int restart = 200;
  int threads = 1;
};

/// Factorizes or preconditions one slab matrix and solves against many
/// right-hand sides. The direct path is a sparse LU with partial pivoting;
/// the iterative path is restarted GMRES, right-preconditioned with the
/// inverted element-diagonal blocks, converged on the true residual
/// |b - A x| <= max(rtol |b|, atol).
class SlabSolver {
 public:
  SlabSolver(const BlockSparseMatrix& A, SolverOptions options);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs,
                        const Eigen::VectorXd* initial_guess = nullptr) const;

  bool uses_iterative() const { return iterative_; }
  int last_iteration_count() const { return last_iterations_; }

 private:
  Eigen::VectorXd solve_gmres(const Eigen::VectorXd& rhs,
                              const Eigen::VectorXd* initial_guess) const;
  void apply_preconditioner(const Eigen::VectorXd& in,
                            Eigen::VectorXd& out) const;

  SolverOptions options_;
  bool iterative_ = false;
  DofMap map_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;  // iterative matvec
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  std::vector<Eigen::MatrixXd> block_inverses_;
  mutable int last_iterations_ = 0;
};

struct SlabSolution {
  int index = 0;  // n >= 1
  TimeInterval interval;
  Eigen::VectorXd coefficients;
};

struct StepRecord {
  int slab = 0;
  double t_end = 0.0;
  double rhs_norm = 0.0;
  double residual = 0.0;
  int iterations = 0;  // 0 on the direct path
};

struct RunResult {
  std::vector<SlabSolution> slabs;
  std::vector<StepRecord> steps;
  bool iterative_path = false;
};

struct RunParams {
  double T = 1.0;
  double tau = 0.5;
  int quad_degree = 0;          // 0: matched to the basis order (2p+1)
  int init_points_per_axis = 0; // 0: max(p+2, 10)
  double residual_rtol = 1e-11;
  double residual_atol = 1e-13;
  SolverOptions solver;
  int threads = 1;
  /// Called after each accepted slab.
  std::function<void(const SlabSolution&, const StepRecord&)> observer;
};

/// Marches m = T / tau uniform slabs: assembles the slab system and
/// transfer matrix once, factorizes once, then per slab assembles the
/// boundary load, solves, and enforces the residual bound
/// |A c - rhs| <= max(residual_rtol |rhs|, residual_atol).
/// Throws std::invalid_argument if T is not an integer multiple of tau and
/// std::runtime_error if a solve fails or violates the bound.
RunResult run(const Mesh& mesh, const std::vector<TrefftzBasis>& bases,
              const BoundarySpecMap& specs, const InitialData& initial,
              const RunParams& params);

/// Writes/reads one coefficient vector; format "text" stores one value per
/// line with a size header, "binary" stores a size-prefixed raw dump.
void write_checkpoint(const std::string& path, const Eigen::VectorXd& c,
                      bool binary);
Eigen::VectorXd read_checkpoint(const std::string& path, bool binary);

}  // namespace stdgt
