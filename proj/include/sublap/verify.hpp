#pragma once

#include <map>
#include <string>
#include <vector>

#include "sublap/eigensolver.hpp"
#include "sublap/heat.hpp"

namespace sublap {

/// One verification record: a named check with its fitted quantities, the
/// tolerance it was judged at, and the outcome.
struct CheckRecord {
  std::string name;
  std::string anchor;  // which bound/asymptotic the check exercises
  bool pass = false;
  std::map<std::string, double> fitted;
  double tolerance = 0;
  std::string notes;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct WeylFit {
  double exponent = 0;
  double coefficient = 0;  // exp(intercept) for N(lambda) ~ C lambda^exponent
  int k_lo = 0, k_hi = 0;
};

/// Log-log slope of the counting function over the middle of the computed
/// spectrum (default window fractions 0.2..0.6 of K).
WeylFit weyl_fit(const Spectrum& spec, double lo_frac = 0.2, double hi_frac = 0.6);

/// Pinned-exponent Weyl coefficient: geometric mean of k / lambda_k^r over
/// the fit window.
double weyl_coefficient_pinned(const Spectrum& spec, double r, double lo_frac = 0.2,
                               double hi_frac = 0.6);

/// Eigenvalue-sum lower bound with the generalized index: c_k =
/// (sum_{j<=k} lambda_j) / k^{1+2/nu~} must stay positive and stable.
CheckRecord check_thm2(const Spectrum& spec, int nu_tilde);

/// Euclidean-order upper bound: r_k = (lambda_k - lambda_1)/(k-1)^{2/n}
/// bounded with no blow-up at the top; reports the window sup as the constant.
CheckRecord check_thm4(const Spectrum& spec, int n);

/// Euclidean-order sum lower bound under the integrability condition;
/// refuses to run when that condition fails.
CheckRecord check_thm5(const Spectrum& spec, int n, const std::string& conditionA_verdict);

/// Explicit pointwise lower bound for the Heisenberg-group operator.
CheckRecord hansson_laptev_bound(const Spectrum& spec, int n, double volume);

/// Explicit eigenvalue-sum lower bound with the sinh-integral constant.
CheckRecord heisenberg_explicit_lower(const Spectrum& spec, int n, double volume);

/// Sup-norm growth of eigenfunctions: fitted slope of log max|phi_j| against
/// log lambda_j must not exceed nu~/4 + 0.1.
CheckRecord supnorm_growth(const Spectrum& spec, int nu_tilde);

/// Log-corrected growth for the planar Grushin spectrum: lambda_k log k / k
/// stable and positive, and k^{2/3}/lambda_k trending down.
CheckRecord grushin_log_bound(const Spectrum& spec);

/// Trace amplitude against Gamma(r+1) times the pinned Weyl coefficient.
CheckRecord tauberian_consistency(const Spectrum& spec, int nu_tilde, double rel_tol = 0.25);

/// Finite sup over nodes and window of t^{nu~/2} h_K(x,x,t).
CheckRecord check_uniform_kernel_bound(const Spectrum& spec, const std::vector<int>& nodes,
                                       int nu_tilde);

}  // namespace sublap
