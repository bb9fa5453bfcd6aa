#include "sublap/eigensolver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

namespace sublap {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---- tridiagonal eigen tools -------------------------------------------
// T is given by diagonals a[0..M-1] and off-diagonals b[0..M-2].

// number of eigenvalues of T strictly below x (Sturm count)
int sturm_count(const std::vector<double>& a, const std::vector<double>& b, double x,
                double pivmin) {
  int count = 0;
  double d = 1.0;
  const int M = (int)a.size();
  for (int i = 0; i < M; ++i) {
    double bb = i ? b[i - 1] * b[i - 1] : 0.0;
    d = a[i] - x - (i ? bb / d : 0.0);
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
  }
  return count;
}

// the eigenvalues of T with ascending indices lo..hi (0-based), by bisection
std::vector<double> tridiag_eigenvalues(const std::vector<double>& a,
                                        const std::vector<double>& b, int lo, int hi) {
  const int M = (int)a.size();
  double gl = a[0], gu = a[0];
  for (int i = 0; i < M; ++i) {
    double r = (i ? std::abs(b[i - 1]) : 0.0) + (i + 1 < M ? std::abs(b[i]) : 0.0);
    gl = std::min(gl, a[i] - r);
    gu = std::max(gu, a[i] + r);
  }
  double scale = std::max({std::abs(gl), std::abs(gu), 1e-300});
  double pivmin = 1e-292 * scale;
  std::vector<double> out;
  for (int idx = lo; idx <= hi; ++idx) {
    double l = gl - 1e-3 * scale, u = gu + 1e-3 * scale;
    for (int it = 0; it < 90 && (u - l) > 1e-14 * scale; ++it) {
      double mid = 0.5 * (l + u);
      if (sturm_count(a, b, mid, pivmin) > idx)
        u = mid;
      else
        l = mid;
    }
    out.push_back(0.5 * (l + u));
  }
  return out;
}

// eigenvector of T for an isolated (or cluster-orthogonalized) eigenvalue,
// by inverse iteration with a deterministic start
VectorXd tridiag_eigenvector(const std::vector<double>& a, const std::vector<double>& b,
                             double theta, const std::vector<VectorXd>& cluster) {
  const int M = (int)a.size();
  // LU of (T - theta I) with partial pivoting, tridiagonal storage
  std::vector<double> dl(M, 0), dd(M, 0), du(M, 0), du2(M, 0);
  std::vector<int> piv(M, 0);
  for (int i = 0; i < M; ++i) {
    dd[i] = a[i] - theta;
    if (i + 1 < M) {
      dl[i] = b[i];
      du[i] = b[i];
    }
  }
  double scale = 0;
  for (int i = 0; i < M; ++i) scale = std::max(scale, std::abs(a[i]) + 2 * (i ? std::abs(b[i - 1]) : 0));
  double tiny = 1e-290 * std::max(scale, 1.0);
  // factorization (dgttrf style)
  for (int i = 0; i < M - 1; ++i) {
    if (std::abs(dd[i]) >= std::abs(dl[i])) {
      piv[i] = 0;
      if (std::abs(dd[i]) < tiny) dd[i] = tiny;
      double f = dl[i] / dd[i];
      dd[i + 1] -= f * du[i];
      dl[i] = f;  // store multiplier
      du2[i] = 0;
    } else {
      piv[i] = 1;
      double f = dd[i] / dl[i];
      dd[i] = dl[i];
      double tmp = dd[i + 1];
      dd[i + 1] = du[i] - f * tmp;
      du2[i] = (i + 2 < M) ? du[i + 1] : 0.0;
      du[i] = tmp;
      if (i + 2 < M) du[i + 1] = -f * du2[i];
      dl[i] = f;
    }
  }
  if (std::abs(dd[M - 1]) < tiny) dd[M - 1] = tiny;
  auto solve = [&](VectorXd y) {
    for (int i = 0; i < M - 1; ++i) {
      if (piv[i] == 0) {
        y[i + 1] -= dl[i] * y[i];
      } else {
        double tmp = y[i];
        y[i] = y[i + 1];
        y[i + 1] = tmp - dl[i] * y[i];
      }
    }
    y[M - 1] /= dd[M - 1];
    if (M > 1) y[M - 2] = (y[M - 2] - du[M - 2] * y[M - 1]) / dd[M - 2];
    for (int i = M - 3; i >= 0; --i)
      y[i] = (y[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / dd[i];
    return y;
  };
  VectorXd y = VectorXd::Ones(M) / std::sqrt((double)M);
  for (int it = 0; it < 3; ++it) {
    y = solve(y);
    for (const auto& c : cluster) y -= c.dot(y) * c;
    double nrm = y.norm();
    if (nrm == 0 || !std::isfinite(nrm)) {
      y = VectorXd::Ones(M) / std::sqrt((double)M);
      continue;
    }
    y /= nrm;
  }
  return y;
}

// ---- dense fallback ------------------------------------------------------

Spectrum dense_solve(const DiscreteOperator& op, int K, double tol, bool keep_vectors) {
  MatrixXd A = MatrixXd(op.matrix);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
  Spectrum out;
  out.volume_element = op.volume_element;
  out.grid_size = op.size;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + K);
  MatrixXd V = es.eigenvectors().leftCols(K);
  out.residuals.resize(K);
  double lamK = std::max(1.0, std::abs(out.values.back()));
  std::vector<double> bad;
  for (int j = 0; j < K; ++j) {
    out.residuals[j] = (op.matrix * V.col(j) - out.values[j] * V.col(j)).norm();
    if (out.residuals[j] > tol * lamK) bad.push_back(out.residuals[j]);
  }
  if (!bad.empty())
    throw SolverError("eigensolver did not reach the requested tolerance", out.residuals);
  if (keep_vectors) out.vectors = std::move(V);
  return out;
}

}  // namespace

namespace {
struct PhaseClock {
  bool on = std::getenv("SUBLAP_PROFILE") != nullptr;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double solve = 0, recur = 0, gemm = 0, screen = 0, harvest = 0;
  double mark() {
    auto t1 = std::chrono::steady_clock::now();
    double dt = std::chrono::duration<double>(t1 - t0).count();
    t0 = t1;
    return dt;
  }
  void report(long steps, int M) const {
    if (on)
      std::fprintf(stderr,
                   "[solver] steps=%ld M=%d solve=%.1fs recur=%.1fs gemm=%.1fs screen=%.1fs "
                   "harvest=%.1fs\n",
                   steps, M, solve, recur, gemm, screen, harvest);
  }
};
}  // namespace

Spectrum smallest_k(const DiscreteOperator& op, int K, double tol, uint64_t seed,
                    bool keep_vectors) {
  const int N = op.size;
  if (K < 1 || 4 * K > N)
    throw std::invalid_argument("smallest_k: K must satisfy 1 <= K <= N/4");
  if (tol <= 0) throw std::invalid_argument("smallest_k: tol must be positive");

  if (N <= 800) return dense_solve(op, K, tol, keep_vectors);

  double anorm = 0;  // infinity norm
  {
    VectorXd rowsum = VectorXd::Zero(N);
    for (int c = 0; c < op.matrix.outerSize(); ++c)
      for (SparseMat::InnerIterator it(op.matrix, c); it; ++it)
        rowsum[it.row()] += std::abs(it.value());
    anorm = rowsum.maxCoeff();
  }
  if (anorm == 0.0) {
    // zero operator: spectrum is identically zero
    Spectrum out;
    out.volume_element = op.volume_element;
    out.grid_size = N;
    out.values.assign(K, 0.0);
    out.residuals.assign(K, 0.0);
    if (keep_vectors) out.vectors = MatrixXd::Identity(N, K);
    return out;
  }

  Eigen::SimplicialLDLT<SparseMat> ldlt;
  ldlt.compute(op.matrix);
  if (ldlt.info() != Eigen::Success) {
    SparseMat shifted = op.matrix;
    double sigma = 1e-10 * anorm;
    for (int i = 0; i < N; ++i) shifted.coeffRef(i, i) += sigma;
    ldlt.compute(shifted);
    if (ldlt.info() != Eigen::Success)
      throw SolverError("shift-invert factorization failed");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  PhaseClock clock;

  MatrixXd Q(N, 0);
  std::vector<double> vals, resids;
  long steps = 0;
  const long step_cap = 16L * K + 6000;

  for (int pass = 0; pass < 8 && (int)vals.size() < K; ++pass) {
    const int need = K - (int)vals.size();
    const long mcap =
        std::min<long>((long)N - Q.cols(), std::min<long>(5L * need + 500, step_cap - steps));
    if (mcap <= 1) break;
    const int chunk = std::max<int>(200, need / 4);

    MatrixXd V(N, std::min<long>(mcap, chunk) + 1);
    std::vector<double> al, be;
    {
      VectorXd v(N);
      for (int i = 0; i < N; ++i) v[i] = nd(rng);
      for (int p = 0; p < 2; ++p) {
        if (Q.cols()) v.noalias() -= Q * (Q.transpose() * v);
      }
      v.normalize();
      V.col(0) = v;
    }
    // orthogonality is maintained by the three-term recurrence plus a batched
    // block correction against the older basis (keeps the reorthogonalization
    // in matrix-matrix form); a drift audit falls back to per-step correction
    int batch = 16;
    int batch_start = 0;  // columns <= batch_start are fully corrected
    auto batch_correct = [&](int upto) {
      // correct columns (batch_start, upto] against columns [0, batch_start]
      int nb = upto - batch_start;
      if (nb <= 0 || batch_start + 1 <= 0) return;
      auto Vold = V.leftCols(batch_start + 1);
      auto W = V.middleCols(batch_start + 1, nb);
      MatrixXd C = Vold.transpose() * W;
      double drift = C.cwiseAbs().maxCoeff();
      W.noalias() -= Vold * C;
      if (drift > 1e-10) {
        MatrixXd C2 = Vold.transpose() * W;
        W.noalias() -= Vold * C2;
      }
      if (drift > 1e-7) batch = 1;  // safe mode for ill-behaved runs
      for (int c = 0; c < nb; ++c) {
        double nrm = W.col(c).norm();
        if (nrm > 0 && std::abs(nrm - 1.0) > 1e-14) W.col(c) /= nrm;
      }
      batch_start = upto;
    };

    int M = 0;
    bool harvested = false;
    while (M < mcap && !harvested) {
      int target = (int)std::min<long>(mcap, M + chunk);
      if (V.cols() < target + 1) {
        MatrixXd V2(N, target + 1);
        V2.leftCols(M + 1) = V.leftCols(M + 1);
        V.swap(V2);
      }
      for (int j = M; j < target; ++j) {
        clock.mark();
        VectorXd w = ldlt.solve(V.col(j));
        clock.solve += clock.mark();
        double a = w.dot(V.col(j));
        al.push_back(a);
        // three-term recurrence plus explicit orthogonalization against the
        // uncorrected recent columns and the deflated space
        w.noalias() -= a * V.col(j);
        if (j > 0) w.noalias() -= be[j - 1] * V.col(j - 1);
        int recent = j - batch_start;
        if (recent > 0) {
          auto R = V.middleCols(batch_start, recent);
          w.noalias() -= R * (R.transpose() * w);
        }
        if (Q.cols()) {
          w.noalias() -= Q * (Q.transpose() * w);
          w.noalias() -= Q * (Q.transpose() * w);
        }
        double bnorm = w.norm();
        clock.recur += clock.mark();
        ++steps;
        double bscale = std::abs(al[0]);
        for (double av : al) bscale = std::max(bscale, std::abs(av));
        if (bnorm < 1e-13 * std::max(bscale, 1e-300)) {
          // invariant subspace exhausted; continue in a fresh direction
          batch_correct(j);
          for (int i = 0; i < N; ++i) w[i] = nd(rng);
          for (int p = 0; p < 2; ++p) {
            if (Q.cols()) w.noalias() -= Q * (Q.transpose() * w);
            w.noalias() -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
          }
          bnorm = w.norm();
          be.push_back(0.0);
          V.col(j + 1) = w / bnorm;
          batch_start = j + 1;
        } else {
          be.push_back(bnorm);
          V.col(j + 1) = w / bnorm;
          if (j + 1 - batch_start >= batch) {
            clock.mark();
            batch_correct(j + 1);
            clock.gemm += clock.mark();
          }
        }
      }
      clock.mark();
      batch_correct(target);
      clock.gemm += clock.mark();
      M = target;

      if (M < std::min<long>(need, mcap) && M < mcap) continue;  // cannot have converged yet
      // Ritz screening: largest mu of T correspond to the smallest lambda
      clock.mark();
      int cand = std::min(need + 8, M);
      std::vector<double> boff(be.begin(), be.begin() + (M - 1));
      auto mus = tridiag_eigenvalues(al, boff, M - cand, M - 1);  // ascending
      std::reverse(mus.begin(), mus.end());                      // descending mu
      double beta_last = be[M - 1];

      // lambda_K estimate from harvested values plus current Ritz values
      std::vector<double> allv(vals);
      for (double mu : mus)
        if (mu > 0) allv.push_back(1.0 / mu);
      std::sort(allv.begin(), allv.end());
      double lamK_est =
          (int)allv.size() >= K ? allv[K - 1] : (allv.empty() ? 1.0 : allv.back());
      double thresh = tol * std::max(1.0, lamK_est);

      // convergence estimates via inverse-iteration eigenvectors of T
      std::vector<VectorXd> ys;
      int nconv = 0;
      {
        std::vector<VectorXd> cluster;
        double mu_scale = std::abs(mus.empty() ? 1.0 : mus[0]);
        for (int i = 0; i < (int)mus.size(); ++i) {
          if (mus[i] <= 0) break;
          bool close = i > 0 && std::abs(mus[i - 1] - mus[i]) < 1e-8 * mu_scale;
          if (!close) cluster.clear();
          VectorXd y = tridiag_eigenvector(al, boff, mus[i], cluster);
          cluster.push_back(y);
          ys.push_back(y);
          double rmu = std::abs(beta_last * y[M - 1]);
          double rl_est = rmu / (mus[i] * mus[i]);
          if (rl_est <= 0.5 * thresh && nconv == i)
            ++nconv;
        }
      }

      clock.screen += clock.mark();
      if (nconv >= need || M >= mcap) {
        int h = std::min(nconv, need);
        if (h == 0 && M >= mcap) break;
        if (h > 0) {
          MatrixXd Y(M, h);
          for (int i = 0; i < h; ++i) Y.col(i) = ys[i];
          MatrixXd cQ = V.leftCols(M) * Y;
          // verify true residuals; keep the passing prefix
          int keep = 0;
          std::vector<double> lams(h), rs(h);
          for (int i = 0; i < h; ++i) {
            VectorXd q = cQ.col(i);
            if (Q.cols()) q -= Q * (Q.transpose() * q);
            // also against candidates already kept in this harvest
            for (int p = 0; p < keep; ++p) q -= cQ.col(p).dot(q) * cQ.col(p);
            double nrm = q.norm();
            if (nrm < 0.5) break;  // direction already captured
            q /= nrm;
            VectorXd Aq = op.matrix * q;
            double lam = q.dot(Aq);
            double tr = (Aq - lam * q).norm();
            if (tr > thresh) break;
            cQ.col(i) = q;
            lams[i] = lam;
            rs[i] = tr;
            keep = i + 1;
          }
          clock.harvest += clock.mark();
          if (keep > 0) {
            MatrixXd Q2(N, Q.cols() + keep);
            Q2.leftCols(Q.cols()) = Q;
            Q2.rightCols(keep) = cQ.leftCols(keep);
            Q.swap(Q2);
            for (int i = 0; i < keep; ++i) {
              vals.push_back(lams[i]);
              resids.push_back(rs[i]);
            }
            harvested = true;
          } else if (M >= mcap) {
            break;
          }
        }
      }
    }
    if (steps >= step_cap) break;
  }

  clock.report(steps, 0);
  if ((int)vals.size() < K)
    throw SolverError("eigensolver did not converge within the iteration cap", resids);

  std::vector<int> order(vals.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });

  Spectrum out;
  out.volume_element = op.volume_element;
  out.grid_size = N;
  double lamK = 0;
  for (int i = 0; i < K; ++i) lamK = std::max(lamK, vals[order[i]]);
  double final_thresh = tol * std::max(1.0, lamK);
  std::vector<double> allres;
  for (int i = 0; i < K; ++i) {
    out.values.push_back(vals[order[i]]);
    out.residuals.push_back(resids[order[i]]);
    allres.push_back(resids[order[i]]);
  }
  for (double r : allres)
    if (r > final_thresh)
      throw SolverError("eigensolver residuals exceed the requested tolerance", allres);
  if (keep_vectors) {
    out.vectors.resize(N, K);
    for (int i = 0; i < K; ++i) out.vectors.col(i) = Q.col(order[i]);
  }
  return out;
}

}  // namespace sublap
