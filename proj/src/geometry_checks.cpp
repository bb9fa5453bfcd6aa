#include "sublap/geometry_checks.hpp"

#include <algorithm>
#include <stdexcept>

namespace sublap {

namespace {

// Project a point onto { g = 0 } with damped gradient steps (two damped
// steps to enter the basin, then full steps).
bool project_to_level_set(const Polynomial& g, std::vector<double>& x) {
  const int n = (int)x.size();
  std::vector<Polynomial> grad;
  for (int k = 0; k < n; ++k) grad.push_back(g.derivative(k));
  for (int it = 0; it < 10; ++it) {
    double gv = g.eval_double(x);
    double n2 = 0;
    std::vector<double> gr(n);
    for (int k = 0; k < n; ++k) {
      gr[k] = grad[k].eval_double(x);
      n2 += gr[k] * gr[k];
    }
    if (n2 < 1e-24) return false;
    double damp = it < 2 ? 0.7 : 1.0;
    double step = damp * gv / n2;
    for (int k = 0; k < n; ++k) x[k] -= step * gr[k];
  }
  return true;
}

double line_fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = (int)xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0) return 0;
  return (n * sxy - sx * sy) / den;
}

}  // namespace

CharacteristicReport characteristic_check(const DomainSpec& spec, const FieldSystem& sys,
                                          int boundary_samples) {
  spec.validate();
  sys.validate();
  if (!spec.mask)
    throw std::invalid_argument("characteristic_check requires a level-set boundary");
  const int n = spec.dim();
  const Polynomial& g = *spec.mask;
  std::vector<Polynomial> grad;
  for (int k = 0; k < n; ++k) grad.push_back(g.derivative(k));

  // seed candidates: lattice points near the zero level set, projected onto it
  int per_axis = std::max(4, (int)std::ceil(std::pow((double)boundary_samples * 8, 1.0 / n)));
  double diam = 0;
  for (int k = 0; k < n; ++k) {
    double w = to_double(spec.hi[k] - spec.lo[k]);
    diam += w * w;
  }
  diam = std::sqrt(diam);
  std::vector<std::vector<double>> samples;
  std::vector<int> iv(n, 0);
  double grad_scale = 0;
  bool degenerate_gradient = false;
  while ((int)samples.size() < boundary_samples) {
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k)
      x[k] = to_double(spec.lo[k]) +
             (to_double(spec.hi[k]) - to_double(spec.lo[k])) * (iv[k] + 0.5) / per_axis;
    double scale = 0;
    for (int k = 0; k < n; ++k) {
      double gk = grad[k].eval_double(x);
      scale += gk * gk;
    }
    grad_scale = std::max(grad_scale, std::sqrt(scale));
    double gv = g.eval_double(x);
    if (scale > 0 &&
        std::abs(gv) / std::sqrt(scale) < 1.5 * diam / per_axis) {
      std::vector<double> p = x;
      if (project_to_level_set(g, p)) {
        double gn = 0;
        for (int k = 0; k < n; ++k) {
          double gk = grad[k].eval_double(p);
          gn += gk * gk;
        }
        gn = std::sqrt(gn);
        double dist_est = std::abs(g.eval_double(p)) / std::max(gn, 1e-300);
        bool inbox = true;
        for (int k = 0; k < n; ++k)
          if (p[k] < to_double(spec.lo[k]) - 1e-9 || p[k] > to_double(spec.hi[k]) + 1e-9)
            inbox = false;
        if (inbox && dist_est < 1e-7 * diam) {
          samples.push_back(p);
        } else if (inbox && gn < 1e-3 * std::max(grad_scale, 1e-300)) {
          degenerate_gradient = true;  // projection stalls where the gradient dies
        }
      } else {
        degenerate_gradient = true;
      }
    }
    int k = n - 1;
    while (k >= 0 && ++iv[k] >= per_axis) iv[k--] = 0;
    if (k < 0) break;
  }
  if (samples.empty()) {
    if (degenerate_gradient)
      throw std::runtime_error("characteristic_check: vanishing mask gradient at a sample");
    throw std::runtime_error("characteristic_check: no boundary samples found");
  }

  auto score_at = [&](const std::vector<double>& p) {
    double n2 = 0;
    std::vector<double> nor(n);
    for (int k = 0; k < n; ++k) {
      nor[k] = grad[k].eval_double(p);
      n2 += nor[k] * nor[k];
    }
    if (n2 < 1e-24)
      throw std::runtime_error("characteristic_check: vanishing mask gradient at a sample");
    double inv = 1.0 / std::sqrt(n2);
    double score2 = 0;
    for (auto& f : sys.fields) {
      auto row = f.eval(p);
      double dot = 0;
      for (int k = 0; k < n; ++k) dot += row[k] * nor[k] * inv;
      score2 += dot * dot;
    }
    return std::sqrt(score2);
  };

  CharacteristicReport rep;
  rep.min_score = 1e300;
  rep.samples = (int)samples.size();
  for (auto& p : samples) {
    double score = score_at(p);
    if (score < rep.min_score) {
      rep.min_score = score;
      rep.worst_point = p;
    }
  }

  // polish the worst sample by tangent descent along the boundary, so a
  // genuinely characteristic point is approached rather than straddled by
  // the lattice projections
  {
    std::vector<double> p = rep.worst_point;
    double best = rep.min_score;
    for (double step = 0.05 * diam; step > 1e-12 * diam; step *= 0.5) {
      bool improved = true;
      int guard = 0;
      while (improved && guard++ < 2 * n) {
        improved = false;
        // orthonormal tangent frame from the normal
        std::vector<double> nor(n);
        double n2 = 0;
        for (int k = 0; k < n; ++k) {
          nor[k] = grad[k].eval_double(p);
          n2 += nor[k] * nor[k];
        }
        if (n2 < 1e-24) break;
        for (auto& v : nor) v /= std::sqrt(n2);
        for (int axis = 0; axis < n; ++axis) {
          std::vector<double> t(n, 0.0);
          t[axis] = 1.0;
          double dot = 0;
          for (int k = 0; k < n; ++k) dot += t[k] * nor[k];
          double tn = 0;
          for (int k = 0; k < n; ++k) {
            t[k] -= dot * nor[k];
            tn += t[k] * t[k];
          }
          if (tn < 1e-12) continue;
          for (auto& v : t) v /= std::sqrt(tn);
          for (double sgn : {1.0, -1.0}) {
            std::vector<double> q = p;
            for (int k = 0; k < n; ++k) q[k] += sgn * step * t[k];
            if (!project_to_level_set(g, q)) continue;
            bool inbox = true;
            for (int k = 0; k < n; ++k)
              if (q[k] < to_double(spec.lo[k]) - 1e-9 || q[k] > to_double(spec.hi[k]) + 1e-9)
                inbox = false;
            if (!inbox) continue;
            double s = score_at(q);
            if (s < best) {
              best = s;
              p = q;
              improved = true;
            }
          }
        }
      }
    }
    if (best < rep.min_score) {
      rep.min_score = best;
      rep.worst_point = p;
    }
  }

  rep.warning = rep.min_score < CharacteristicReport::kThreshold;
  return rep;
}

MeasureHResult measure_H(const CommutatorBasis& basis, const DomainSpec& spec,
                         const std::vector<int>& resolution, int nu_tilde) {
  MeasureHResult res;
  for (int stage = 0; stage < 3; ++stage) {
    std::vector<int> r = resolution;
    for (auto& v : r) v <<= stage;
    auto centers = cell_centers(spec, r);
    if (centers.empty()) throw std::runtime_error("measure_H: empty domain");
    long hits = 0;
    for (auto& x : centers)
      if (point_indices(basis, x).nu == nu_tilde) ++hits;
    res.stages.push_back((double)hits / (double)centers.size());
  }
  res.fraction = res.stages.back();
  double f0 = res.stages[0], f1 = res.stages[1], f2 = res.stages[2];
  if (f2 == 0.0) {
    res.verdict = "zero";
  } else if (f1 > 0 && std::abs(f1 - f2) <= 0.1 * f2) {
    res.verdict = "positive";  // last refinement pair stabilizes within 10%
  } else if (f0 >= 1.8 * f1 && f1 >= 1.8 * f2) {
    res.verdict = "zero";  // decays by >= 1.8x per refinement
  } else {
    res.verdict = "inconclusive";
  }
  res.is_positive = res.verdict == "positive";
  return res;
}

ConditionAResult condition_A_integral(const FieldSystem& sys, const DomainSpec& spec,
                                      const std::vector<int>& resolution) {
  sys.validate();
  spec.validate();
  ConditionAResult res;
  const int n = spec.dim();
  if (sys.m() < n) {
    // no n-combination of the fields exists; the sum is empty, hence zero
    res.verdict = "divergent";
    res.zero_denominator_set = true;
    return res;
  }
  // all n-combinations of the original fields
  std::vector<std::vector<int>> combos;
  std::vector<int> c;
  std::function<void(int)> rec = [&](int start) {
    if ((int)c.size() == n) {
      combos.push_back(c);
      return;
    }
    for (int i = start; i < sys.m(); ++i) {
      c.push_back(i);
      rec(i + 1);
      c.pop_back();
    }
  };
  rec(0);

  auto centers = cell_centers(spec, resolution);
  if (centers.empty()) throw std::runtime_error("condition_A: empty domain");
  Rational cv = cell_volume(spec, resolution);
  double dv = to_double(cv);
  std::vector<double> denom(centers.size());
  long zero_cells = 0;
  for (size_t i = 0; i < centers.size(); ++i) {
    auto xd = to_double_vec(centers[i]);
    double s = 0;
    for (auto& combo : combos) {
      Eigen::MatrixXd m(n, n);
      for (int r = 0; r < n; ++r) {
        auto row = sys.fields[combo[r]].eval(xd);
        for (int k = 0; k < n; ++k) m(r, k) = row[k];
      }
      s += std::abs(m.determinant());
    }
    denom[i] = s;
    if (s == 0.0) ++zero_cells;
  }
  // a positive fraction of exactly-zero cells marks a fat degeneracy set
  if ((double)zero_cells / (double)centers.size() > 0.01) {
    res.verdict = "divergent";
    res.zero_denominator_set = true;
    return res;
  }

  // excised integrals I_j over { denom >= eps_j }, eps_j = 2^-j
  const int j0 = 2, j1 = 40;
  std::vector<long> counts;
  for (int j = j0; j <= j1; ++j) {
    double eps = std::ldexp(1.0, -j);
    double I = 0;
    long cnt = 0;
    for (double s : denom)
      if (s >= eps) {
        I += dv / s;
        ++cnt;
      }
    res.excised.push_back(I);
    counts.push_back(cnt);
  }
  // increments per halving of eps; a convergent integral has geometrically
  // decaying increments, a log divergence has constant ones. Octaves whose
  // increment rests on a handful of cells are below the grid's resolving
  // power and are excluded from the fit.
  std::vector<double> lx, ly;
  for (size_t j = 0; j + 1 < res.excised.size(); ++j) {
    double d = res.excised[j + 1] - res.excised[j];
    long dc = counts[j + 1] - counts[j];
    if (d > 0 && dc >= 8) {
      lx.push_back((double)(j0 + j) * std::log(2.0));  // log(1/eps)
      ly.push_back(std::log(d));
    }
  }
  double Ifin = res.excised.back();
  if (lx.size() < 3) {
    // increments vanished immediately: denominator bounded below on the grid
    res.verdict = "convergent";
    res.estimate = Ifin;
    res.growth_exponent = 1.0;
    return res;
  }
  // d(eps) ~ eps^alpha  =>  slope of log d vs log(1/eps) is -alpha
  double alpha = -line_fit_slope(lx, ly);
  res.growth_exponent = alpha;
  if (alpha >= 0.05) {
    res.verdict = "convergent";
    double tail = std::exp(ly.back()) / (std::pow(2.0, alpha) - 1.0);
    res.estimate = Ifin + tail;
  } else {
    res.verdict = "divergent";
  }
  return res;
}

}  // namespace sublap
