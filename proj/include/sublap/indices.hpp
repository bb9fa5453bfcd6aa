#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sublap/commutator.hpp"
#include "sublap/exact_linalg.hpp"

namespace sublap {

/// det(Y_{i1},...,Y_{in})(x) for an n-tuple of basis entries, as the
/// determinant of their coefficient rows. Exact for rational data.
inline ExactScalar lambda_I(const CommutatorBasis& basis, const std::vector<int>& tuple,
                            const RationalVec& x) {
  const int n = basis.dim;
  if ((int)tuple.size() != n) throw std::invalid_argument("lambda_I: tuple size must equal dim");
  ExactMatrix m(n);
  for (int r = 0; r < n; ++r) m[r] = basis[tuple[r]].expr.eval_exact(x);
  return exact_det(m);
}

/// Volume series Lambda(x,r) = sum_I |lambda_I(x)| r^{d(I)} over all ordered
/// n-tuples of basis entries (with repetition; repeated rows vanish).
/// Collected exactly as coefficients per total degree.
inline std::vector<Rational> capital_lambda_coeffs(const CommutatorBasis& basis,
                                                   const RationalVec& x) {
  const int n = basis.dim;
  const int q = basis.size();
  int maxd = n * basis.max_degree;
  std::vector<Rational> by_degree(maxd + 1, Rational(0));
  // iterate over nondecreasing index combinations; ordered tuples with i
  // distinct permutations contribute multiplicity n!/(multiset repeats)
  std::vector<int> comb;
  auto multiplicity = [&](const std::vector<int>& c) {
    // permutations of a multiset
    long long fact = 1;
    for (int i = 2; i <= (int)c.size(); ++i) fact *= i;
    int run = 1;
    for (size_t i = 1; i <= c.size(); ++i) {
      if (i < c.size() && c[i] == c[i - 1]) {
        ++run;
      } else {
        for (int j = 2; j <= run; ++j) fact /= j;
        run = 1;
      }
    }
    return fact;
  };
  std::vector<std::vector<ExactScalar>> rows(q);
  for (int i = 0; i < q; ++i) rows[i] = basis[i].expr.eval_exact(x);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      bool repeated = false;
      for (size_t i = 1; i < comb.size(); ++i)
        if (comb[i] == comb[i - 1]) repeated = true;
      if (repeated) return;  // repeated rows: determinant is identically zero
      int d = 0;
      bool anyzero = false;
      for (int idx : comb) {
        d += basis[idx].degree;
        anyzero |= basis[idx].zero;
      }
      if (anyzero) return;
      ExactMatrix m(n);
      for (int r = 0; r < n; ++r) m[r] = rows[comb[r]];
      ExactScalar det = exact_det(m);
      if (det.is_exact()) {
        by_degree[d] += rational_abs(det.q) * multiplicity(comb);
      } else {
        throw std::domain_error("capital_lambda: non-rational determinant; use the double path");
      }
      return;
    }
    for (int i = start; i < q; ++i) {
      comb.push_back(i);
      rec(i, depth + 1);
      comb.pop_back();
    }
  };
  rec(0, 0);
  return by_degree;
}

/// Exact Lambda(x,r) at a rational radius.
inline Rational capital_lambda_exact(const CommutatorBasis& basis, const RationalVec& x,
                                     const Rational& r) {
  if (r <= 0) throw std::invalid_argument("capital_lambda: r must be positive");
  auto coeffs = capital_lambda_coeffs(basis, x);
  Rational acc = 0, rp = 1;
  for (size_t d = 0; d < coeffs.size(); ++d) {
    if (d > 0) rp *= r;
    if (coeffs[d] != 0) acc += coeffs[d] * rp;
  }
  return acc;
}

/// Lambda(x,r) in doubles (valid for any system, including the analytic ones).
inline double capital_lambda(const CommutatorBasis& basis, const RationalVec& x, double r) {
  if (r <= 0) throw std::invalid_argument("capital_lambda: r must be positive");
  const int n = basis.dim;
  const int q = basis.size();
  std::vector<std::vector<double>> rows(q);
  auto xd = to_double_vec(x);
  for (int i = 0; i < q; ++i) rows[i] = basis[i].expr.eval(xd);
  double acc = 0;
  std::vector<int> comb;
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      bool repeated = false;
      for (size_t i = 1; i < comb.size(); ++i)
        if (comb[i] == comb[i - 1]) repeated = true;
      if (repeated) return;
      int d = 0;
      bool anyzero = false;
      for (int idx : comb) {
        d += basis[idx].degree;
        anyzero |= basis[idx].zero;
      }
      if (anyzero) return;
      Eigen::MatrixXd m(n, n);
      for (int r2 = 0; r2 < n; ++r2)
        for (int c = 0; c < n; ++c) m(r2, c) = rows[comb[r2]][c];
      double det = m.determinant();
      if (det != 0) {
        long long mult = 1;
        for (int i = 2; i <= n; ++i) mult *= i;
        int run = 1;
        for (size_t i = 1; i <= comb.size(); ++i) {
          if (i < comb.size() && comb[i] == comb[i - 1]) {
            ++run;
          } else {
            for (int j = 2; j <= run; ++j) mult /= j;
            run = 1;
          }
        }
        acc += mult * std::abs(det) * std::pow(r, d);
      }
      return;
    }
    for (int i = start; i < q; ++i) {
      comb.push_back(i);
      rec(i, depth + 1);
      comb.pop_back();
    }
  };
  rec(0, 0);
  return acc;
}

/// Layer dimensions, pointwise homogeneous dimension and the Hormander flag
/// at a point.
struct PointIndices {
  RationalVec point;
  std::vector<int> layer_dims;  // nu_1(x) .. nu_Q(x)
  int nu = 0;
  bool hormander_ok = false;
};

inline PointIndices point_indices(const CommutatorBasis& basis, const RationalVec& x) {
  if ((int)x.size() != basis.dim) throw std::invalid_argument("point_indices: bad point arity");
  PointIndices out;
  out.point = x;
  const int n = basis.dim;
  std::vector<std::vector<ExactScalar>> rows(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    if (!basis[i].zero) rows[i] = basis[i].expr.eval_exact(x);
  int prev = 0;
  for (int d = 1; d <= basis.max_degree; ++d) {
    ExactMatrix m;
    for (int i = 0; i < basis.size(); ++i)
      if (!basis[i].zero && basis[i].degree <= d) m.push_back(rows[i]);
    int rank = prev == n ? n : exact_rank(m);
    out.layer_dims.push_back(rank);
    out.nu += d * (rank - prev);
    prev = rank;
  }
  out.hormander_ok = (prev == n);
  return out;
}

/// min{ d(I) : lambda_I(x) != 0 }, the determinant route to nu(x).
inline int nu_via_determinants(const CommutatorBasis& basis, const RationalVec& x) {
  const int n = basis.dim;
  std::vector<std::vector<ExactScalar>> rows(basis.size());
  std::vector<int> alive;
  for (int i = 0; i < basis.size(); ++i)
    if (!basis[i].zero) {
      rows[i] = basis[i].expr.eval_exact(x);
      alive.push_back(i);
    }
  int best = -1;
  std::vector<int> comb;
  std::function<void(int, int, int)> rec = [&](int start, int depth, int dsum) {
    if (best >= 0 && dsum >= best) return;  // degrees only grow along the tuple
    if (depth == n) {
      ExactMatrix m(n);
      for (int r = 0; r < n; ++r) m[r] = rows[comb[r]];
      ExactScalar det = exact_det(m);
      // Unknown-kind results only arise through the double fallback, which
      // already applied its zero threshold; accept its verdict.
      if (!det.is_exact_zero() && (best < 0 || dsum < best)) best = dsum;
      return;
    }
    for (size_t ii = start; ii < alive.size(); ++ii) {
      int i = alive[ii];
      comb.push_back(i);
      rec((int)ii + 1, depth + 1, dsum + basis[i].degree);
      comb.pop_back();
    }
  };
  // iterate combinations ordered by the enumeration (degrees nondecreasing),
  // pruning once a minimum is known
  rec(0, 0, 0);
  if (best < 0)
    throw std::domain_error("Hormander condition fails at the point within the declared bound");
  return best;
}

/// Sample-max Metivier index with per-sample attainment flags.
struct MetivierResult {
  int nu_tilde = 0;
  std::vector<int> nu;        // nu(x) per sample
  std::vector<bool> h_flags;  // attains the max
};

inline MetivierResult metivier_index(const CommutatorBasis& basis,
                                     const std::vector<RationalVec>& samples) {
  if (samples.empty()) throw std::invalid_argument("metivier_index: no samples");
  MetivierResult res;
  for (auto& x : samples) {
    PointIndices pi = point_indices(basis, x);
    if (!pi.hormander_ok)
      throw std::domain_error("Hormander condition fails at a sample point");
    res.nu.push_back(pi.nu);
    res.nu_tilde = std::max(res.nu_tilde, pi.nu);
  }
  for (int v : res.nu) res.h_flags.push_back(v == res.nu_tilde);
  return res;
}

/// Necessary check for Metivier's constancy condition: is each layer dimension
/// constant across the samples?
inline std::vector<bool> metivier_condition_check(const CommutatorBasis& basis,
                                                  const std::vector<RationalVec>& samples) {
  if (samples.empty()) throw std::invalid_argument("metivier_condition_check: no samples");
  std::vector<bool> constant(basis.max_degree, true);
  std::vector<int> ref;
  for (auto& x : samples) {
    PointIndices pi = point_indices(basis, x);
    if (ref.empty()) {
      ref = pi.layer_dims;
    } else {
      for (int d = 0; d < basis.max_degree; ++d)
        if (pi.layer_dims[d] != ref[d]) constant[d] = false;
    }
  }
  return constant;
}

}  // namespace sublap
