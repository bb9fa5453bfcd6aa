#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "sublap/exact_scalar.hpp"

namespace sublap {

using ExactMatrix = std::vector<std::vector<ExactScalar>>;

namespace detail {

inline Eigen::MatrixXd to_dense(const ExactMatrix& m) {
  Eigen::MatrixXd d(m.size(), m.empty() ? 0 : m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) d(i, j) = m[i][j].approx;
  return d;
}

inline int svd_rank(const Eigen::MatrixXd& d, double rel_tol) {
  if (d.rows() == 0 || d.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

}  // namespace detail

/// Default relative singular-value threshold for the floating fallback path.
inline constexpr double kRankRelTol = 1e-10;

/// Rank of a matrix of ExactScalar entries. Uses exact fraction arithmetic as
/// long as every pivot decision is certified (rational entries, or irrational
/// entries with proven sign); falls back to an SVD threshold otherwise.
/// Elimination never combines two uncertified entries: a pivot of unknown
/// zeroness aborts the exact path instead of guessing.
inline int exact_rank(ExactMatrix m, double rel_tol = kRankRelTol) {
  const int rows = (int)m.size();
  const int cols = rows ? (int)m[0].size() : 0;
  Eigen::MatrixXd dense = detail::to_dense(m);  // kept for the fallback
  int rank = 0;
  std::vector<bool> used(rows, false);
  for (int c = 0; c < cols && rank < rows; ++c) {
    // prefer rational pivots; accept sign-certified irrational ones
    int pivot = -1;
    bool pivot_rational = false;
    bool saw_uncertified = false;
    for (int r = 0; r < rows; ++r) {
      if (used[r]) continue;
      const ExactScalar& e = m[r][c];
      if (e.is_exact() && e.q != 0) {
        if (pivot < 0 || !pivot_rational) {
          pivot = r;
          pivot_rational = true;
        }
      } else if (e.provably_nonzero()) {
        if (pivot < 0) pivot = r;
      } else if (!e.is_exact_zero()) {
        saw_uncertified = true;
      }
    }
    if (pivot < 0) {
      if (saw_uncertified) return detail::svd_rank(dense, rel_tol);
      continue;  // column is exactly zero below the used rows
    }
    used[pivot] = true;
    ++rank;
    for (int r = 0; r < rows; ++r) {
      if (used[r] || m[r][c].is_exact_zero()) continue;
      ExactScalar f = m[r][c] / m[pivot][c];
      // combining two uncertified values loses the exactness guarantee
      for (int j = c; j < cols; ++j) {
        ExactScalar upd = m[r][j] - f * m[pivot][j];
        if (!upd.is_exact() && !m[r][j].is_exact() && !m[pivot][j].is_exact_zero() &&
            !m[pivot][j].is_exact())
          return detail::svd_rank(dense, rel_tol);
        m[r][j] = upd;
      }
      if (!m[r][c].is_exact_zero()) m[r][c] = ExactScalar(Rational(0));
    }
  }
  return rank;
}

/// Determinant of a square ExactMatrix. Exact when the elimination stays
/// certified; otherwise the double determinant with a Hadamard-relative zero
/// threshold decides sign/zeroness.
inline ExactScalar exact_det(ExactMatrix m, double rel_tol = kRankRelTol) {
  const int n = (int)m.size();
  if (n == 0) return ExactScalar(Rational(1));
  Eigen::MatrixXd dense = detail::to_dense(m);
  auto fallback = [&]() {
    double d = dense.determinant();
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale *= dense.row(i).norm();
    if (scale == 0.0 || std::abs(d) <= rel_tol * scale) return ExactScalar(Rational(0));
    return d > 0 ? ExactScalar::positive(d) : ExactScalar::negative(d);
  };
  ExactScalar det(Rational(1));
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    bool pivot_rational = false, saw_uncertified = false;
    for (int r = c; r < n; ++r) {
      const ExactScalar& e = m[r][c];
      if (e.is_exact() && e.q != 0) {
        if (pivot < 0 || !pivot_rational) {
          pivot = r;
          pivot_rational = true;
        }
      } else if (e.provably_nonzero()) {
        if (pivot < 0) pivot = r;
      } else if (!e.is_exact_zero()) {
        saw_uncertified = true;
      }
    }
    if (pivot < 0) {
      if (saw_uncertified) return fallback();
      return ExactScalar(Rational(0));
    }
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      sign = -sign;
    }
    det = det * m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c].is_exact_zero()) continue;
      ExactScalar f = m[r][c] / m[c][c];
      for (int j = c + 1; j < n; ++j) {
        ExactScalar upd = m[r][j] - f * m[c][j];
        if (!upd.is_exact() && !m[r][j].is_exact() && !m[c][j].is_exact_zero() &&
            !m[c][j].is_exact())
          return fallback();
        m[r][j] = upd;
      }
      m[r][c] = ExactScalar(Rational(0));
    }
  }
  return sign > 0 ? det : -det;
}

}  // namespace sublap
