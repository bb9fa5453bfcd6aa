#pragma once

#include <cmath>
#include <stdexcept>

#include "sublap/rational.hpp"

namespace sublap {

/// Scalar with exactness tracking, for rank/determinant decisions on matrices
/// whose entries are rational except where the bundled analytic (non-polynomial)
/// coefficients appear. Irrational values carry a double approximation plus what
/// is provably known about their sign; a rank routine may pivot on an entry only
/// when it is provably nonzero.
struct ExactScalar {
  enum Kind {
    kRational,     // value is exactly `q`
    kPositive,     // irrational, provably > 0
    kNegative,     // irrational, provably < 0
    kUnknown,      // irrational, sign (and zeroness) not certified
  };

  Kind kind = kRational;
  Rational q = 0;
  double approx = 0.0;

  ExactScalar() = default;
  ExactScalar(const Rational& r) : kind(kRational), q(r), approx(to_double(r)) {}
  ExactScalar(int v) : ExactScalar(Rational(v)) {}

  static ExactScalar positive(double a) { return {kPositive, 0, a}; }
  static ExactScalar negative(double a) { return {kNegative, 0, a}; }
  static ExactScalar unknown(double a) { return {kUnknown, 0, a}; }

  bool is_exact() const { return kind == kRational; }
  bool is_exact_zero() const { return kind == kRational && q == 0; }
  bool provably_nonzero() const {
    return kind == kPositive || kind == kNegative || (kind == kRational && q != 0);
  }

 private:
  ExactScalar(Kind k, const Rational& r, double a) : kind(k), q(r), approx(a) {}
};

inline ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_exact() && b.is_exact()) return ExactScalar(Rational(a.q + b.q));
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  double s = a.approx + b.approx;
  auto nonneg = [](const ExactScalar& x) {
    return x.kind == ExactScalar::kPositive || (x.is_exact() && x.q > 0);
  };
  auto nonpos = [](const ExactScalar& x) {
    return x.kind == ExactScalar::kNegative || (x.is_exact() && x.q < 0);
  };
  if (nonneg(a) && nonneg(b)) return ExactScalar::positive(s);
  if (nonpos(a) && nonpos(b)) return ExactScalar::negative(s);
  return ExactScalar::unknown(s);
}

inline ExactScalar operator-(const ExactScalar& a) {
  switch (a.kind) {
    case ExactScalar::kRational: return ExactScalar(Rational(-a.q));
    case ExactScalar::kPositive: return ExactScalar::negative(-a.approx);
    case ExactScalar::kNegative: return ExactScalar::positive(-a.approx);
    default: return ExactScalar::unknown(-a.approx);
  }
}

inline ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

inline ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_exact_zero() || b.is_exact_zero()) return ExactScalar(Rational(0));
  if (a.is_exact() && b.is_exact()) return ExactScalar(Rational(a.q * b.q));
  double p = a.approx * b.approx;
  int sa = a.kind == ExactScalar::kPositive ? 1
           : a.kind == ExactScalar::kNegative ? -1
           : a.is_exact() ? rational_sign(a.q)
                          : 0;
  int sb = b.kind == ExactScalar::kPositive ? 1
           : b.kind == ExactScalar::kNegative ? -1
           : b.is_exact() ? rational_sign(b.q)
                          : 0;
  if (sa && sb) return sa * sb > 0 ? ExactScalar::positive(p) : ExactScalar::negative(p);
  return ExactScalar::unknown(p);
}

inline ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (!b.provably_nonzero()) throw std::domain_error("division by possibly-zero scalar");
  if (a.is_exact() && b.is_exact()) return ExactScalar(Rational(a.q / b.q));
  ExactScalar inv = b;
  inv.approx = 1.0 / b.approx;
  if (b.is_exact()) inv.kind = b.q > 0 ? ExactScalar::kPositive : ExactScalar::kNegative;
  return a * inv;
}

inline ExactScalar exact_abs(const ExactScalar& a) {
  switch (a.kind) {
    case ExactScalar::kRational: return ExactScalar(rational_abs(a.q));
    case ExactScalar::kNegative: return ExactScalar::positive(-a.approx);
    case ExactScalar::kPositive: return a;
    default: return ExactScalar::unknown(std::abs(a.approx));
  }
}

}  // namespace sublap
