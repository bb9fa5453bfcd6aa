#pragma once

#include "sublap/geometry_checks.hpp"
#include "sublap/io.hpp"

namespace sublap {

/// Resolved configuration: concrete system, domain, resolution, solver knobs.
struct ResolvedRun {
  FieldSystem system;
  DomainSpec domain;
  std::vector<int> resolution;
  int K = 0;
  double tol = 1e-8;
  uint64_t seed = 12345;
  bool keep_vectors = true;
  bool strict_boundary = false;
  std::vector<std::string> checks;
  std::string output_dir;
  std::optional<BundledSystem> bundle;  // set when resolved from a bundled name
  json resolved_config;
};

ResolvedRun resolve_config(const RunConfig& cfg);

/// Index analysis only (no assembly): commutators, layer dims, sample-max
/// index, layer-constancy check, H-measure, integrability verdict,
/// boundary transversality.
VerificationReport fields_analyze(const ResolvedRun& run, std::string* text_summary = nullptr);

struct PipelineResult {
  VerificationReport report;
  int exit_code = 0;
  std::string message;
};

/// Full pipeline: analysis, assembly, eigensolve, requested spectral checks,
/// artifacts (spectrum.csv, trace.csv, report.json) in output_dir.
PipelineResult run_pipeline(const ResolvedRun& run);

/// Default check set for a resolved run.
std::vector<std::string> default_checks(const ResolvedRun& run);

}  // namespace sublap
