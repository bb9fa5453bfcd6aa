#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sublap/coefficient.hpp"

namespace sublap {

/// First-order differential operator sum_k a_k(x) d/dx_k, stored by its
/// coefficient functions.
class VectorFieldExpr {
 public:
  VectorFieldExpr() = default;
  explicit VectorFieldExpr(int dim) : comps_(dim, Coefficient(Polynomial(dim))) {}
  explicit VectorFieldExpr(std::vector<Coefficient> comps) : comps_(std::move(comps)) {}

  static VectorFieldExpr zero(int dim) { return VectorFieldExpr(dim); }

  /// The constant field d/dx_k.
  static VectorFieldExpr coordinate(int dim, int k) {
    VectorFieldExpr v(dim);
    v.comps_[k] = Coefficient(Polynomial::constant(dim, 1));
    return v;
  }

  int dim() const { return (int)comps_.size(); }
  const Coefficient& component(int k) const { return comps_.at(k); }
  Coefficient& component(int k) { return comps_.at(k); }

  bool is_zero() const {
    for (auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool is_polynomial() const {
    for (auto& c : comps_)
      if (!c.is_polynomial()) return false;
    return true;
  }

  VectorFieldExpr scaled(const Rational& c) const {
    VectorFieldExpr r = *this;
    for (auto& comp : r.comps_) comp = comp.scaled(c);
    return r;
  }

  VectorFieldExpr operator+(const VectorFieldExpr& o) const {
    check_dim(o);
    VectorFieldExpr r = *this;
    for (int k = 0; k < dim(); ++k) r.comps_[k] = r.comps_[k] + o.comps_[k];
    return r;
  }

  bool operator==(const VectorFieldExpr& o) const { return comps_ == o.comps_; }

  /// Row of coefficient values at a point, double precision.
  std::vector<double> eval(const std::vector<double>& x) const {
    std::vector<double> row(dim());
    for (int k = 0; k < dim(); ++k) row[k] = comps_[k].value(x);
    return row;
  }

  std::vector<ExactScalar> eval_exact(const RationalVec& x) const {
    std::vector<ExactScalar> row(dim());
    for (int k = 0; k < dim(); ++k) row[k] = comps_[k].exact_value(x);
    return row;
  }

 private:
  void check_dim(const VectorFieldExpr& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("vector field dimension mismatch");
  }

  std::vector<Coefficient> comps_;
};

/// Lie bracket [v,w]_k = sum_l ( v_l d_l w_k - w_l d_l v_k ), exact.
inline VectorFieldExpr bracket(const VectorFieldExpr& v, const VectorFieldExpr& w) {
  if (v.dim() != w.dim()) throw std::invalid_argument("bracket: dimension mismatch");
  if (v == w) return VectorFieldExpr::zero(v.dim());
  const int n = v.dim();
  VectorFieldExpr r(n);
  for (int k = 0; k < n; ++k) {
    Coefficient acc{Polynomial(n)};
    for (int l = 0; l < n; ++l) {
      if (!v.component(l).is_zero()) acc = acc + v.component(l) * w.component(k).derivative(l);
      if (!w.component(l).is_zero()) acc = acc - w.component(l) * v.component(k).derivative(l);
    }
    r.component(k) = acc;
  }
  return r;
}

/// A system of Hormander vector fields with its declared bracket-step bound.
struct FieldSystem {
  int dim = 0;
  std::vector<VectorFieldExpr> fields;
  int hormander_bound = 1;  // Q

  int m() const { return (int)fields.size(); }

  void validate() const {
    if (fields.empty()) throw std::invalid_argument("field system needs at least one field");
    if (hormander_bound < 1) throw std::invalid_argument("hormander bound must be >= 1");
    for (auto& f : fields)
      if (f.dim() != dim) throw std::invalid_argument("field dimension mismatch");
  }
};

}  // namespace sublap
