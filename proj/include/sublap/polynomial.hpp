#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sublap/rational.hpp"

namespace sublap {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are keyed by the exponent tuple; zero coefficients are never stored,
/// so the representation is canonical and equality is structural.
class Polynomial {
 public:
  using Expo = std::vector<uint32_t>;

  Polynomial() : nvars_(0) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_[Expo(nvars, 0)] = c;
    return p;
  }

  /// The coordinate monomial x_k.
  static Polynomial variable(int nvars, int k) {
    Polynomial p(nvars);
    Expo e(nvars, 0);
    e.at(k) = 1;
    p.terms_[e] = 1;
    return p;
  }

  static Polynomial monomial(int nvars, const Rational& c, const Expo& e) {
    if ((int)e.size() != nvars) throw std::invalid_argument("exponent arity mismatch");
    Polynomial p(nvars);
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, Rational>& terms() const { return terms_; }

  void add_term(const Rational& c, const Expo& e) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator+(const Polynomial& o) const {
    check_arity(o);
    Polynomial r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(c, e);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const {
    check_arity(o);
    Polynomial r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(-c, e);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_arity(o);
    Polynomial r(nvars_);
    for (auto& [ea, ca] : terms_)
      for (auto& [eb, cb] : o.terms_) {
        Expo e(nvars_);
        for (int k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(ca * cb, e);
      }
    return r;
  }

  Polynomial operator*(const Rational& c) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    for (auto& [e, cc] : terms_) r.terms_[e] = cc * c;
    return r;
  }

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  Polynomial derivative(int k) const {
    Polynomial r(nvars_);
    for (auto& [e, c] : terms_) {
      if (e.at(k) == 0) continue;
      Expo d = e;
      d[k] -= 1;
      r.add_term(c * int64_t(e[k]), d);
    }
    return r;
  }

  template <typename Scalar>
  Scalar eval(const std::vector<Scalar>& x) const {
    if ((int)x.size() != nvars_) throw std::invalid_argument("eval arity mismatch");
    Scalar acc = Scalar(0);
    for (auto& [e, c] : terms_) {
      Scalar t = coeff_cast<Scalar>(c);
      for (int k = 0; k < nvars_; ++k)
        for (uint32_t j = 0; j < e[k]; ++j) t = t * x[k];
      acc = acc + t;
    }
    return acc;
  }

  Rational eval_rational(const RationalVec& x) const { return eval<Rational>(x); }

  double eval_double(const std::vector<double>& x) const { return eval<double>(x); }

  uint32_t total_degree() const {
    uint32_t d = 0;
    for (auto& [e, c] : terms_) {
      uint32_t s = 0;
      for (auto u : e) s += u;
      if (s > d) d = s;
    }
    return d;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << rational_str(c);
      for (int k = 0; k < nvars_; ++k)
        if (e[k]) {
          os << "*x" << k + 1;
          if (e[k] > 1) os << "^" << e[k];
        }
    }
    return os.str();
  }

 private:
  template <typename Scalar>
  static Scalar coeff_cast(const Rational& c) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      return c;
    else
      return Scalar(to_double(c));
  }

  void check_arity(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  }

  int nvars_;
  std::map<Expo, Rational> terms_;
};

}  // namespace sublap
