#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sublap/domain.hpp"
#include "sublap/fields.hpp"
#include "sublap/indices.hpp"

namespace sublap {

/// Boundary transversality report: at each boundary sample, the Euclidean norm
/// of the vector of field components along the unit normal. A full-rank
/// constant frame scores exactly 1 everywhere; a score near zero flags a
/// characteristic boundary point.
struct CharacteristicReport {
  double min_score = 0;
  std::vector<double> worst_point;
  int samples = 0;
  bool warning = false;  // min below threshold
  static constexpr double kThreshold = 1e-6;
};

CharacteristicReport characteristic_check(const DomainSpec& spec, const FieldSystem& sys,
                                          int boundary_samples);

/// Fraction of interior cell centers attaining nu(x) = nu_tilde, with the
/// refinement-based positivity verdict.
struct MeasureHResult {
  double fraction = 0;          // at the finest refinement
  std::vector<double> stages;   // fraction at R, 2R, 4R
  bool is_positive = false;
  std::string verdict;          // "positive" | "zero" | "inconclusive"
};

MeasureHResult measure_H(const CommutatorBasis& basis, const DomainSpec& spec,
                         const std::vector<int>& resolution, int nu_tilde);

/// Numerical classification of the reciprocal-determinant-sum integral.
struct ConditionAResult {
  std::string verdict;  // "convergent" | "divergent"
  double estimate = 0;  // finite estimate when convergent
  double growth_exponent = 0;  // fitted decay exponent of the excision increments
  bool zero_denominator_set = false;
  std::vector<double> excised;  // I_j at eps_j = 2^-j
};

ConditionAResult condition_A_integral(const FieldSystem& sys, const DomainSpec& spec,
                                      const std::vector<int>& resolution);

}  // namespace sublap
