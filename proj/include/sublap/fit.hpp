#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sublap {

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

inline LineFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("line_fit: bad data");
  const int n = (int)x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("line_fit: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Shared "stabilizes" rule: over the last half of the sequence, every value
/// stays within a factor 2 of that half's median.
inline bool stabilizes(const std::vector<double>& v) {
  if (v.size() < 4) return false;
  std::vector<double> tail(v.begin() + v.size() / 2, v.end());
  double med = median(tail);
  if (!(med > 0)) return false;
  for (double t : tail)
    if (t < 0.5 * med || t > 2.0 * med) return false;
  return true;
}

/// Adaptive Simpson quadrature with absolute/relative tolerance.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double rel_tol, int max_depth = 40) {
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
          int depth) -> double {
    double m = 0.5 * (lo + hi);
    double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
    double flm = f(lm), frm = f(rm);
    double left = (m - lo) / 6 * (flo + 4 * flm + fmid);
    double right = (hi - m) / 6 * (fmid + 4 * frm + fhi);
    double delta = left + right - whole;
    if (depth <= 0) throw std::runtime_error("quadrature did not converge");
    if (std::abs(delta) <= 15 * rel_tol * (std::abs(left) + std::abs(right) + 1e-300))
      return left + right + delta / 15;
    return rec(lo, m, flo, flm, fmid, left, depth - 1) +
           rec(m, hi, fmid, frm, fhi, right, depth - 1);
  };
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return rec(a, b, fa, fm, fb, whole, max_depth);
}

/// Composite Gauss-Legendre (7 point) on uniform panels; the independent
/// cross-check rule for the quadrature pair.
inline double gauss7_panels(const std::function<double(double)>& f, double a, double b,
                            int panels) {
  static const double xs[7] = {-0.9491079123427585, -0.7415311855993945,
                               -0.4058451513773972, 0.0,
                               0.4058451513773972,  0.7415311855993945,
                               0.9491079123427585};
  static const double ws[7] = {0.1294849661688697, 0.2797053914892766,
                               0.3818300505051189, 0.4179591836734694,
                               0.3818300505051189, 0.2797053914892766,
                               0.1294849661688697};
  double h = (b - a) / panels, acc = 0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h, c = lo + 0.5 * h;
    for (int i = 0; i < 7; ++i) acc += ws[i] * f(c + 0.5 * h * xs[i]);
  }
  return acc * 0.5 * h;
}

/// alpha_n = integral over (0,inf) of (theta/sinh theta)^n; the integrand is
/// smooth at 0 (value 1) and decays like (2 theta)^n e^{-n theta}.
inline double alpha_n(int n, double rel_tol = 1e-9) {
  if (n < 1) throw std::invalid_argument("alpha_n: n >= 1");
  auto f = [n](double t) {
    if (t == 0.0) return 1.0;
    if (t > 1e-8) {
      double r = t / std::sinh(t);
      return std::pow(r, n);
    }
    double r = 1.0 - t * t / 6.0;
    return std::pow(r, n);
  };
  double T = 50.0 + 10.0 * n;  // tail below 1e-16 of the total
  return adaptive_simpson(f, 0.0, T, rel_tol);
}

/// Same integral by the independent fixed-rule route.
inline double alpha_n_gauss(int n, int panels = 4000) {
  auto f = [n](double t) {
    if (t == 0.0) return 1.0;
    return std::pow(t / std::sinh(t), n);
  };
  double T = 50.0 + 10.0 * n;
  return gauss7_panels(f, 0.0, T, panels);
}

/// C_n = sum over j1..jn >= 0 of (2(j1+...+jn)+n)^{-(n+1)}, summed by shells
/// s = j1+...+jn with multiplicity C(s+n-1, n-1). Finite truncation plus an
/// Euler-Maclaurin tail whose proven remainder is below `tail_bound`.
inline double heisenberg_series_constant(int n, double tail_bound = 1e-10) {
  if (n < 1) throw std::invalid_argument("series constant: n >= 1");
  auto binom_shell = [n](double s) {  // C(s+n-1, n-1) extended to real s
    double v = 1;
    for (int i = 1; i <= n - 1; ++i) v *= (s + n - i) / i;
    return v;
  };
  auto f = [&](double s) { return binom_shell(s) / std::pow(2 * s + n, n + 1); };
  double acc = 0;
  long S = 200000;
  for (long s = 0; s <= S; ++s) acc += f((double)s);
  // tail: sum_{s>S} f(s) = int_{S+1}^inf f + f(S+1)/2 - f'(S+1)/12 + R,
  // |R| <= |f''(S+1)|/12 for monotone convex f''; all terms tiny at S=2e5
  double fS = f((double)S + 1);
  double df = (f((double)S + 1 + 1e-3) - f((double)S + 1 - 1e-3)) / 2e-3;
  // integral of p(s)/(2s+n)^{n+1} via expansion of p in powers of u = 2s+n
  double U = 2.0 * (S + 1) + n;
  // p(s) = binom_shell(s): evaluate the integral numerically to high accuracy
  // with the substitution s = (u - n)/2; integrand decays like u^{-2}
  double tail_int = adaptive_simpson(
      [&](double x) {  // x in (0,1]: u = U/x, ds = U dx / (2 x^2)
        double u = U / x;
        double s = (u - n) / 2.0;
        return binom_shell(s) / std::pow(u, n + 1) * U / (2.0 * x * x);
      },
      1e-12, 1.0, 1e-12);
  double est_err = std::abs(df) / 12.0 + 1e-14 * acc;
  if (est_err > tail_bound)
    throw std::runtime_error("series tail bound not achievable within the summation cap");
  return acc + tail_int + fS / 2.0 - df / 12.0;
}

}  // namespace sublap
