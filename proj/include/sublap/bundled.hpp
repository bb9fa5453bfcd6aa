#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sublap/domain.hpp"
#include "sublap/fields.hpp"

namespace sublap {

/// A packaged example system: fields, a default admissible domain, known
/// index values, designated rational sample points on and off the degeneracy
/// set, and the analytic integrability verdict where it is known.
struct BundledSystem {
  std::string name;
  FieldSystem system;
  DomainSpec domain;
  std::vector<int> default_resolution;
  int default_K = 100;
  int nu_tilde = 0;  // known generalized index on the bundled domain
  std::optional<DomainSpec> h_reference_domain;  // window for the H-measure
  std::vector<RationalVec> points_H;             // nu(x) attains nu_tilde
  std::vector<RationalVec> points_off_H;         // nu(x) below nu_tilde
  int nu_on_H = 0, nu_off_H = 0;
  std::string conditionA_override;  // "", "convergent" or "divergent"
  double volume = 0;                // |Omega| where известно in closed form
};

const std::vector<std::string>& bundled_names();

/// Throws std::invalid_argument for an unknown name.
BundledSystem bundled_system(const std::string& name);

/// Rational sample points for index analysis: cell centers of a coarse grid
/// over the domain merged with the designated points.
std::vector<RationalVec> analysis_samples(const BundledSystem& b, int per_axis = 8);

}  // namespace sublap
