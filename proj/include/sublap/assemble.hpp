#pragma once

#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "sublap/domain.hpp"
#include "sublap/fields.hpp"

namespace sublap {

using SparseMat = Eigen::SparseMatrix<double>;

/// Discrete directional derivative of one field on the grid: one row per
/// lattice edge incident to the interior, (G u)(edge along axis k at z) =
/// a_k(z + h_k/2 e_k) (u(z+e_k) - u(z)) / h_k, with homogeneous Dirichlet
/// zero extension for endpoints outside the interior.
struct DiscreteField {
  int rows = 0;  // number of edges
  int cols = 0;  // number of interior nodes
  std::vector<Eigen::Triplet<double>> triplets;

  SparseMat matrix() const {
    SparseMat G(rows, cols);
    G.setFromTriplets(triplets.begin(), triplets.end());
    return G;
  }
};

DiscreteField discretize_field(const VectorFieldExpr& field, const Grid& grid);

/// Sparse symmetric PSD matrix of the Dirichlet quadratic form
/// u^T A u ~ integral of |X u|^2 (volume weights cancel against the L^2 norm
/// on a uniform grid). Assembled symmetrically: each off-diagonal pair is the
/// same accumulated double.
struct DiscreteOperator {
  int size = 0;
  SparseMat matrix;
  double volume_element = 1;
  bool connected = true;  // interior coupling graph connectivity

  /// Coordinate-format dump, one "row col value" per line, 17 significant digits.
  void dump_coo(const std::string& path) const;
};

DiscreteOperator assemble_operator(const FieldSystem& sys, const Grid& grid);

}  // namespace sublap
