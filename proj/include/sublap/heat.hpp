#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sublap/eigensolver.hpp"
#include "sublap/fit.hpp"

namespace sublap {

/// Truncated heat trace Z_K(t) = sum_{j<=K} exp(-lambda_j t) with the window
/// on which the truncation tail is provably below 1e-6 of the value and at
/// least a few modes still contribute.
struct HeatTrace {
  std::vector<double> t;
  std::vector<double> z;
  std::vector<bool> in_window;
  double t_min = 0, t_max = 0;
  int k_used = 0;
};

inline double trace_value(const std::vector<double>& lambda, double t) {
  double s = 0;
  for (double l : lambda) s += std::exp(-l * t);
  return s;
}

/// Window rule: t_min from lambda_K t >= log(1e6 K) (absolute tail <= 1e-6,
/// relative tail <= 1e-6 wherever Z >= 1); t_max where Z_K(t) >= 3.
inline void trace_window(const std::vector<double>& lambda, double& t_min, double& t_max) {
  const int K = (int)lambda.size();
  double lamK = lambda.back();
  if (!(lamK > 0)) throw std::invalid_argument("trace window needs a positive spectrum");
  t_min = std::log(1e6 * K) / lamK;
  if (trace_value(lambda, t_min) < 3.0) {
    t_max = t_min;  // empty
    return;
  }
  double lo = t_min, hi = t_min;
  while (trace_value(lambda, hi) >= 3.0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (trace_value(lambda, mid) >= 3.0)
      lo = mid;
    else
      hi = mid;
  }
  t_max = lo;
}

inline HeatTrace heat_trace(const Spectrum& spec, const std::vector<double>& t_grid) {
  if (spec.values.empty()) throw std::invalid_argument("heat_trace: empty spectrum");
  for (double t : t_grid)
    if (!(t > 0)) throw std::invalid_argument("heat_trace: t grid must be positive");
  HeatTrace tr;
  tr.k_used = spec.k();
  trace_window(spec.values, tr.t_min, tr.t_max);
  bool any = false;
  for (double t : t_grid) {
    tr.t.push_back(t);
    tr.z.push_back(trace_value(spec.values, t));
    bool in = tr.t_max > tr.t_min && t >= tr.t_min && t <= tr.t_max;
    tr.in_window.push_back(in);
    any |= in;
  }
  if (!(tr.t_max > tr.t_min) || !any)
    throw std::runtime_error("heat trace window is empty: spectrum too short for the t range");
  return tr;
}

/// Geometric t grid over the small-t end of the trace window. The power law
/// is a t -> 0 limit, so the default grid stays within a fixed factor of
/// t_min; the upper part of the window carries the largest pre-asymptotic
/// bias and is left to callers who want it.
inline std::vector<double> default_t_grid(const std::vector<double>& lambda, int inside = 24,
                                          double span = 2.5) {
  double t_min, t_max;
  trace_window(lambda, t_min, t_max);
  if (!(t_max > t_min))
    throw std::runtime_error("heat trace window is empty: spectrum too short for the t range");
  double hi = std::min(t_max, span * t_min);
  std::vector<double> out;
  for (int i = 0; i < inside; ++i)
    out.push_back(t_min * std::pow(hi / t_min, i / double(inside - 1)));
  return out;
}

struct TraceFit {
  double exponent = 0;
  double amplitude = 0;  // exp(intercept): Z ~ amplitude * t^exponent
};

inline TraceFit trace_exponent_fit(const HeatTrace& tr) {
  std::vector<double> x, y;
  for (size_t i = 0; i < tr.t.size(); ++i)
    if (tr.in_window[i]) {
      x.push_back(std::log(tr.t[i]));
      y.push_back(std::log(tr.z[i]));
    }
  if (x.size() < 5) throw std::runtime_error("trace window too narrow for a fit");
  LineFit f = line_fit(x, y);
  return {f.slope, std::exp(f.intercept)};
}

/// Plateau estimate of lim t^{r} Z(t) over the window (geometric mean).
inline double trace_amplitude(const HeatTrace& tr, double r) {
  double acc = 0;
  int n = 0;
  for (size_t i = 0; i < tr.t.size(); ++i)
    if (tr.in_window[i]) {
      acc += std::log(std::pow(tr.t[i], r) * tr.z[i]);
      ++n;
    }
  if (n == 0) throw std::runtime_error("trace window is empty");
  return std::exp(acc / n);
}

/// Truncated diagonal kernel h_K(x,x,t) at one node, with the tail rule using
/// the measured sup norms of the eigenfunctions.
struct DiagonalKernel {
  std::vector<double> t;
  std::vector<double> h;
  std::vector<bool> in_window;
  int node = -1;
};

inline DiagonalKernel diagonal_kernel(const Spectrum& spec, int node,
                                      const std::vector<double>& t_grid) {
  if (!spec.has_vectors()) throw std::invalid_argument("diagonal_kernel needs eigenvectors");
  if (node < 0 || node >= spec.grid_size) throw std::invalid_argument("bad node");
  const int K = spec.k();
  double smax2 = 0;
  for (int j = 0; j < K; ++j) {
    double m = spec.vectors.col(j).cwiseAbs().maxCoeff();
    smax2 = std::max(smax2, m * m / spec.volume_element);
  }
  double lamK = spec.values.back();
  DiagonalKernel dk;
  dk.node = node;
  bool any = false;
  for (double t : t_grid) {
    if (!(t > 0)) throw std::invalid_argument("diagonal_kernel: t must be positive");
    double h = 0;
    for (int j = 0; j < K; ++j) {
      double p = spec.phi(j, node);
      h += std::exp(-spec.values[j] * t) * p * p;
    }
    double tail = K * std::exp(-lamK * t) * smax2;
    bool in = h > 0 && tail <= 1e-6 * h;
    dk.t.push_back(t);
    dk.h.push_back(h);
    dk.in_window.push_back(in);
    any |= in;
  }
  if (!any) throw std::runtime_error("diagonal kernel window is empty");
  return dk;
}

inline LineFit kernel_slope_fit(const DiagonalKernel& dk) {
  std::vector<double> x, y;
  for (size_t i = 0; i < dk.t.size(); ++i)
    if (dk.in_window[i] && dk.h[i] > 0) {
      x.push_back(std::log(dk.t[i]));
      y.push_back(std::log(dk.h[i]));
    }
  if (x.size() < 5) throw std::runtime_error("kernel window too narrow for a fit");
  return line_fit(x, y);
}

}  // namespace sublap
