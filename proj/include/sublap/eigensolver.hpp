#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sublap/assemble.hpp"

namespace sublap {

/// Sorted lowest eigenvalues with residuals, plus the grid metadata needed to
/// interpret the eigenvectors as L2-normalized functions.
struct Spectrum {
  std::vector<double> values;    // ascending
  std::vector<double> residuals; // ||A v - lambda v|| per pair
  Eigen::MatrixXd vectors;       // N x K, unit columns; empty if not kept
  double volume_element = 1.0;
  int grid_size = 0;

  int k() const { return (int)values.size(); }
  bool has_vectors() const { return vectors.size() > 0; }

  /// L2-normalized eigenfunction value at a node: phi_j(x) = v_j(x)/sqrt(vol).
  double phi(int j, int node) const { return vectors(node, j) / std::sqrt(volume_element); }
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg, std::vector<double> res = {})
      : std::runtime_error(msg), residuals(std::move(res)) {}
  std::vector<double> residuals;
};

/// Deterministic lowest-K eigenpairs of a sparse symmetric PSD operator.
/// Shift-invert Lanczos with full reorthogonalization and explicit deflation
/// restarts; every reported pair satisfies ||A v - lambda v|| <= tol*max(1, lambda_K).
Spectrum smallest_k(const DiscreteOperator& op, int K, double tol, uint64_t seed,
                    bool keep_vectors = true);

/// N(lambda) = #{ j : lambda_j <= lambda }; rejects queries beyond the
/// computed part of the spectrum.
inline int counting_function(const Spectrum& spec, double lambda) {
  if (spec.values.empty()) throw std::invalid_argument("counting_function: empty spectrum");
  if (lambda > spec.values.back())
    throw std::invalid_argument("counting_function: beyond computed spectrum");
  int c = 0;
  for (double v : spec.values)
    if (v <= lambda) ++c;
  return c;
}

}  // namespace sublap
