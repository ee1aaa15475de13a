#pragma once

#include <Eigen/Sparse>
#include <iosfwd>
#include <vector>

#include "stdgt/basis.hpp"
#include "stdgt/fluxes.hpp"
#include "stdgt/geometry.hpp"

namespace stdgt {

/// Maps element ids to contiguous coefficient ranges.
class DofMap {
 public:
  DofMap() = default;
  explicit DofMap(const std::vector<int>& block_sizes);

  int blocks() const { return static_cast<int>(offsets_.size()) - 1; }
  int begin(int block) const { return offsets_[block]; }
  int size(int block) const { return offsets_[block + 1] - offsets_[block]; }
  int total() const { return offsets_.empty() ? 0 : offsets_.back(); }

 private:
  std::vector<int> offsets_{0};
};

DofMap make_dof_map(const std::vector<TrefftzBasis>& bases);

/// Sparse matrix stored as dense element-pair blocks; rows and columns are
/// grouped by element. Block lookup is by (row element, column element).
class BlockSparseMatrix {
 public:
  BlockSparseMatrix() = default;
  BlockSparseMatrix(DofMap row_map, DofMap col_map);

  const DofMap& row_map() const { return row_map_; }
  const DofMap& col_map() const { return col_map_; }
  int rows() const { return row_map_.total(); }
  int cols() const { return col_map_.total(); }

  /// Returns the block, inserting a zero block if absent.
  Eigen::MatrixXd& block(int row_elem, int col_elem);

  /// Returns nullptr if the block is absent.
  const Eigen::MatrixXd* find_block(int row_elem, int col_elem) const;

  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

  Eigen::SparseMatrix<double> to_sparse() const;

  /// Dumps nonzeros as "row col value" lines (0-based indices).
  void write_coordinate(std::ostream& os) const;

  template <class Fn>
  void for_each_block(Fn&& fn) const {
    for (int r = 0; r < row_map_.blocks(); ++r) {
      for (const auto& [c, m] : rows_[r]) fn(r, c, m);
    }
  }

 private:
  DofMap row_map_;
  DofMap col_map_;
  // Per row element: (column element, block), sorted by column element.
  std::vector<std::vector<std::pair<int, Eigen::MatrixXd>>> rows_;
};

/// Fills E and H (3 x n) with the element basis traces at (r, t).
void eval_basis_fields(const TrefftzBasis& basis, const Vec3& r, double t,
                       Eigen::Matrix3Xd& E, Eigen::Matrix3Xd& H);

/// Quadrature degree matched to products of two order-p bases plus the
/// extra face dimension: 2p + 1.
int default_quadrature_degree(const std::vector<TrefftzBasis>& bases);

/// Mass-type coupling at one slab-local time: block-diagonal matrix with
/// entries  int_K (eps E_j.E_i + mu H_j.H_i) dx  evaluated at local_time.
BlockSparseMatrix assemble_temporal_mass(const Mesh& mesh,
                                         const std::vector<TrefftzBasis>& bases,
                                         double local_time, int quad_degree,
                                         int threads = 1);

/// Slab system matrix: start-of-slab mass plus interior jump/average face
/// coupling plus boundary flux terms. Time-independent for a fixed slab
/// length, so one matrix serves every slab of a uniform march.
BlockSparseMatrix assemble_system_matrix(const Mesh& mesh,
                                         const std::vector<TrefftzBasis>& bases,
                                         const BoundarySpecMap& specs,
                                         double tau, int quad_degree,
                                         int threads = 1);

/// Couples the previous slab's end values to the current slab's start:
/// block-diagonal with entries int_K (eps e_j(tau_prev).e_i(0) + ...) dx.
BlockSparseMatrix assemble_transfer_matrix(
    const Mesh& mesh, const std::vector<TrefftzBasis>& current,
    const std::vector<TrefftzBasis>& previous, double tau_previous,
    int quad_degree, int threads = 1);

/// Boundary data functional over one slab in global time.
Eigen::VectorXd assemble_boundary_load(const Mesh& mesh,
                                       const std::vector<TrefftzBasis>& bases,
                                       const BoundarySpecMap& specs,
                                       const TimeInterval& slab,
                                       int quad_degree, int threads = 1);

}  // namespace stdgt
