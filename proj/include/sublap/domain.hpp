#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sublap/polynomial.hpp"

namespace sublap {

/// Axis-aligned box, optionally intersected with { g < 0 } for a level-set
/// polynomial g. Bounds are kept rational so lattice nodes and cell centers
/// are exact sample points.
struct DomainSpec {
  RationalVec lo, hi;
  std::optional<Polynomial> mask;

  int dim() const { return (int)lo.size(); }

  void validate() const {
    if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("bad domain box");
    for (size_t k = 0; k < lo.size(); ++k)
      if (!(lo[k] < hi[k])) throw std::invalid_argument("empty domain box");
    if (mask && mask->nvars() != dim())
      throw std::invalid_argument("mask arity does not match the box");
  }

  Rational box_volume() const {
    Rational v = 1;
    for (size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
    return v;
  }

  bool inside(const RationalVec& x) const {
    for (size_t k = 0; k < lo.size(); ++k)
      if (!(lo[k] < x[k] && x[k] < hi[k])) return false;
    if (mask && mask->eval_rational(x) >= 0) return false;
    return true;
  }

  bool inside(const std::vector<double>& x) const {
    for (size_t k = 0; k < lo.size(); ++k)
      if (!(to_double(lo[k]) < x[k] && x[k] < to_double(hi[k]))) return false;
    if (mask && mask->eval_double(x) >= 0) return false;
    return true;
  }
};

/// Uniform lattice over the box; interior nodes are strictly inside the box
/// (lattice lines 1..R-1) and strictly inside the mask.
class Grid {
 public:
  Grid(const DomainSpec& spec, std::vector<int> resolution) : spec_(spec), res_(resolution) {
    spec.validate();
    const int n = spec.dim();
    if ((int)resolution.size() != n) throw std::invalid_argument("resolution arity mismatch");
    for (int r : resolution)
      if (r < 4) throw std::runtime_error("empty interior: grid resolution below the minimum of 4");
    h_.resize(n);
    hd_.resize(n);
    for (int k = 0; k < n; ++k) {
      h_[k] = (spec.hi[k] - spec.lo[k]) / resolution[k];
      hd_[k] = to_double(h_[k]);
    }
    strides_.assign(n, 1);
    for (int k = n - 2; k >= 0; --k) strides_[k] = strides_[k + 1] * (int64_t)(res_[k + 1] + 1);
    int64_t total = strides_[0] * (res_[0] + 1);
    index_.assign(total, -1);
    std::vector<int> iv(n, 1);
    // lexicographic scan over interior lattice points
    while (true) {
      RationalVec x = node_point(iv);
      bool in = true;
      for (int k = 0; k < n; ++k)
        if (iv[k] <= 0 || iv[k] >= res_[k]) in = false;
      if (in && spec.mask && spec.mask->eval_rational(x) >= 0) in = false;
      if (in) {
        index_[flat(iv)] = (int)nodes_.size();
        nodes_.push_back(iv);
      }
      int k = n - 1;
      while (k >= 0 && ++iv[k] > res_[k] - 1) iv[k--] = 1;
      if (k < 0) break;
    }
    if (nodes_.empty()) throw std::runtime_error("empty interior");
    vol_ = 1;
    for (int k = 0; k < n; ++k) vol_ *= hd_[k];
  }

  int dim() const { return spec_.dim(); }
  int size() const { return (int)nodes_.size(); }
  const DomainSpec& spec() const { return spec_; }
  const std::vector<int>& resolution() const { return res_; }
  const std::vector<double>& spacing() const { return hd_; }
  const RationalVec& spacing_exact() const { return h_; }
  double volume_element() const { return vol_; }

  const std::vector<int>& node(int i) const { return nodes_.at(i); }

  /// Interior row index of a lattice point, or -1.
  int index_of(const std::vector<int>& iv) const {
    for (int k = 0; k < dim(); ++k)
      if (iv[k] < 0 || iv[k] > res_[k]) return -1;
    return index_[flat(iv)];
  }

  RationalVec node_point(const std::vector<int>& iv) const {
    RationalVec x(dim());
    for (int k = 0; k < dim(); ++k) x[k] = spec_.lo[k] + h_[k] * iv[k];
    return x;
  }

  std::vector<double> node_point_d(const std::vector<int>& iv) const {
    return to_double_vec(node_point(iv));
  }

  /// Nearest interior node to a target point, by max-metric on lattice steps.
  int nearest_node(const std::vector<double>& x) const {
    double best = 1e300;
    int arg = -1;
    for (int i = 0; i < size(); ++i) {
      auto p = node_point_d(nodes_[i]);
      double d = 0;
      for (int k = 0; k < dim(); ++k) d = std::max(d, std::abs(p[k] - x[k]));
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    return arg;
  }

 private:
  int64_t flat(const std::vector<int>& iv) const {
    int64_t f = 0;
    for (int k = 0; k < dim(); ++k) f += strides_[k] * iv[k];
    return f;
  }

  DomainSpec spec_;
  std::vector<int> res_;
  RationalVec h_;
  std::vector<double> hd_;
  std::vector<int64_t> strides_;
  std::vector<int> index_;
  std::vector<std::vector<int>> nodes_;
  double vol_ = 1;
};

/// Cell centers of the R-per-axis partition of the box that lie inside the
/// domain; rational, for exact index evaluation in measure and quadrature.
inline std::vector<RationalVec> cell_centers(const DomainSpec& spec,
                                             const std::vector<int>& resolution,
                                             bool apply_mask = true) {
  spec.validate();
  const int n = spec.dim();
  RationalVec h(n);
  for (int k = 0; k < n; ++k) h[k] = (spec.hi[k] - spec.lo[k]) / resolution[k];
  std::vector<RationalVec> out;
  std::vector<int> iv(n, 0);
  while (true) {
    RationalVec x(n);
    for (int k = 0; k < n; ++k) x[k] = spec.lo[k] + h[k] * (2 * iv[k] + 1) / 2;
    if (!apply_mask || !spec.mask || spec.mask->eval_rational(x) < 0) out.push_back(x);
    int k = n - 1;
    while (k >= 0 && ++iv[k] >= resolution[k]) iv[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

inline Rational cell_volume(const DomainSpec& spec, const std::vector<int>& resolution) {
  Rational v = 1;
  for (int k = 0; k < spec.dim(); ++k) v *= (spec.hi[k] - spec.lo[k]) / resolution[k];
  return v;
}

inline Grid build_grid(const DomainSpec& spec, const std::vector<int>& resolution) {
  return Grid(spec, resolution);
}

}  // namespace sublap
