#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "sublap/exact_scalar.hpp"
#include "sublap/polynomial.hpp"

namespace sublap {

/// One analytic (non-polynomial) factor from the bundled field family:
/// a flat bump b(u) = exp(-(log u)^2) for u > 0 (and 0 for u <= 0) composed
/// with one of three gauges u(x), or a first partial derivative of that
/// composition. The bump and all its derivatives vanish identically on the
/// closed set {u <= 0}, and that zero test is an exact rational comparison,
/// which is what keeps index computations exact off the degeneracy boundary.
class BumpFn {
 public:
  enum Gauge {
    kRadial,   // u = sqrt(x1^2+x2^2) - 3/2
    kUpper,    // u = x3
    kLower,    // u = -x3 - 1
  };

  BumpFn(Gauge g, int deriv_var = -1) : gauge_(g), deriv_(deriv_var) {}

  Gauge gauge() const { return gauge_; }
  int deriv_var() const { return deriv_; }

  /// Exact: does the factor vanish at x (closure of the flat region)?
  bool vanishes(const RationalVec& x) const {
    switch (gauge_) {
      case kRadial: return x[0] * x[0] + x[1] * x[1] <= Rational(9, 4);
      case kUpper: return x[2] <= 0;
      case kLower: return x[2] >= -1;
    }
    return true;
  }

  double value(const std::vector<double>& x) const {
    double u, b;
    switch (gauge_) {
      case kRadial: {
        double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
        u = rho - 1.5;
        if (u <= 0) return 0.0;
        double L = std::log(u);
        b = std::exp(-L * L);
        if (deriv_ < 0) return b;
        if (deriv_ > 1) return 0.0;
        return b * (-2.0 * L / u) * (x[deriv_] / rho);
      }
      case kUpper: {
        u = x[2];
        if (u <= 0) return 0.0;
        double L = std::log(u);
        b = std::exp(-L * L);
        if (deriv_ < 0) return b;
        if (deriv_ != 2) return 0.0;
        return b * (-2.0 * L / u);
      }
      case kLower: {
        u = -x[2] - 1.0;
        if (u <= 0) return 0.0;
        double L = std::log(u);
        b = std::exp(-L * L);
        if (deriv_ < 0) return b;
        if (deriv_ != 2) return 0.0;
        return b * (2.0 * L / u);
      }
    }
    return 0.0;
  }

  /// Exact evaluation when possible: exact zero on the flat region, a
  /// sign-certified positive for the underived bump, unknown sign otherwise.
  ExactScalar exact_value(const RationalVec& x) const {
    if (vanishes(x)) return ExactScalar(Rational(0));
    double v = value(to_double_vec(x));
    if (deriv_ < 0) return ExactScalar::positive(v);
    if (v == 0.0) return ExactScalar(Rational(0));  // derivative factor off-support axis
    return ExactScalar::unknown(v);
  }

  /// Partial derivative; only first derivatives of the base bump occur in the
  /// bundled systems (bracket depth is capped by their step-2 structure).
  BumpFn derivative(int k) const {
    if (deriv_ >= 0)
      throw std::logic_error("second derivatives of bump coefficients are not supported");
    return BumpFn(gauge_, k);
  }

  /// Is the k-th partial identically zero?
  bool derivative_is_zero(int k) const {
    switch (gauge_) {
      case kRadial: return k > 1;
      case kUpper:
      case kLower: return k != 2;
    }
    return true;
  }

 private:
  Gauge gauge_;
  int deriv_;  // -1: the bump itself; otherwise d/dx_k of it
};

/// Coefficient function of one vector-field component: a polynomial plus a sum
/// of polynomial-weighted analytic bump terms. Purely polynomial coefficients
/// (the common case) carry no terms.
class Coefficient {
 public:
  struct Term {
    Polynomial weight;
    BumpFn fn;
  };

  Coefficient() : poly_(0) {}
  Coefficient(Polynomial p) : poly_(std::move(p)) {}
  Coefficient(Polynomial p, std::vector<Term> terms)
      : poly_(std::move(p)), terms_(std::move(terms)) {}

  int nvars() const { return poly_.nvars(); }
  const Polynomial& poly() const { return poly_; }
  const std::vector<Term>& bump_terms() const { return terms_; }
  bool is_polynomial() const { return terms_.empty(); }
  bool is_zero() const { return poly_.is_zero() && terms_.empty(); }

  double value(const std::vector<double>& x) const {
    double v = poly_.eval_double(x);
    for (const auto& t : terms_) v += t.weight.eval_double(x) * t.fn.value(x);
    return v;
  }

  ExactScalar exact_value(const RationalVec& x) const {
    ExactScalar v{poly_.eval_rational(x)};
    for (const auto& t : terms_) {
      Rational w = t.weight.eval_rational(x);
      v = v + ExactScalar(w) * t.fn.exact_value(x);
    }
    return v;
  }

  Coefficient operator+(const Coefficient& o) const {
    Coefficient r(poly_ + o.poly_, terms_);
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.prune();
    return r;
  }

  Coefficient operator-(const Coefficient& o) const { return *this + (-o); }

  Coefficient operator-() const {
    Coefficient r(-poly_, terms_);
    for (auto& t : r.terms_) t.weight = -t.weight;
    return r;
  }

  Coefficient scaled(const Rational& c) const {
    Coefficient r(poly_ * c, terms_);
    for (auto& t : r.terms_) t.weight = t.weight * c;
    r.prune();
    return r;
  }

  /// Product; at most one operand may carry bump terms.
  Coefficient operator*(const Coefficient& o) const {
    if (!terms_.empty() && !o.terms_.empty())
      throw std::logic_error("product of two non-polynomial coefficients is not supported");
    const Coefficient& withbumps = terms_.empty() ? o : *this;
    const Polynomial& plain = terms_.empty() ? poly_ : o.poly_;
    Coefficient r(withbumps.poly_ * plain, withbumps.terms_);
    for (auto& t : r.terms_) t.weight = t.weight * plain;
    r.prune();
    return r;
  }

  Coefficient derivative(int k) const {
    Coefficient r(poly_.derivative(k));
    for (const auto& t : terms_) {
      Polynomial dw = t.weight.derivative(k);
      if (!dw.is_zero()) r.terms_.push_back({dw, t.fn});
      if (!t.fn.derivative_is_zero(k)) r.terms_.push_back({t.weight, t.fn.derivative(k)});
    }
    r.prune();
    return r;
  }

  bool operator==(const Coefficient& o) const {
    if (!(poly_ == o.poly_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].weight == o.terms_[i].weight)) return false;
      if (terms_[i].fn.gauge() != o.terms_[i].fn.gauge() ||
          terms_[i].fn.deriv_var() != o.terms_[i].fn.deriv_var())
        return false;
    }
    return true;
  }

 private:
  void prune() {
    std::vector<Term> keep;
    for (auto& t : terms_)
      if (!t.weight.is_zero()) keep.push_back(std::move(t));
    terms_ = std::move(keep);
  }

  Polynomial poly_;
  std::vector<Term> terms_;
};

}  // namespace sublap
