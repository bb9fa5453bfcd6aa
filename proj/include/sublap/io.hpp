#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sublap/bundled.hpp"
#include "sublap/domain.hpp"
#include "sublap/eigensolver.hpp"
#include "sublap/fields.hpp"
#include "sublap/heat.hpp"
#include "sublap/verify.hpp"

namespace sublap {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Run configuration; either a bundled name or an inline field system, an
/// optional domain override, and the requested checks.
struct RunConfig {
  std::string bundled;               // one of the packaged names, or empty
  std::optional<FieldSystem> system; // inline system when not bundled
  std::optional<DomainSpec> domain;  // overrides the bundled default
  std::vector<int> resolution;       // empty: bundled default
  int K = 0;                         // 0: bundled default
  double tol = 1e-8;
  uint64_t seed = 12345;
  bool keep_vectors = true;
  bool strict_boundary = false;
  std::vector<std::string> checks;   // empty: defaults for the system
  std::string output_dir = ".";
};

// ---- field / domain / config JSON --------------------------------------

Polynomial polynomial_from_json(const json& j, int dim);
json polynomial_to_json(const Polynomial& p);

FieldSystem field_system_from_json(const json& j);
json field_system_to_json(const FieldSystem& sys);

DomainSpec domain_from_json(const json& j);
json domain_to_json(const DomainSpec& spec);

RunConfig run_config_from_json(const json& j);
json run_config_to_json(const RunConfig& cfg);

json report_to_json(const VerificationReport& rep, const json& resolved_config);

// ---- CSV emitters --------------------------------------------------------

void write_spectrum_csv(const Spectrum& spec, const std::string& path);
void write_trace_csv(const HeatTrace& tr, const std::string& path);
void write_kernel_csv(const DiagonalKernel& dk, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& body);

}  // namespace sublap
