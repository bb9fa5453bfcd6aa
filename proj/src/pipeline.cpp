#include "sublap/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace sublap {

namespace {

std::vector<int> spread_nodes(const Grid& grid, int count) {
  std::vector<int> nodes;
  int N = grid.size();
  for (int i = 0; i < count; ++i) nodes.push_back((int)((int64_t)i * N / count + N / (2 * count)));
  return nodes;
}

CheckRecord indices_record(const ResolvedRun& run, const CommutatorBasis& basis,
                           int* nu_tilde_out, std::string* text) {
  CheckRecord rec;
  rec.name = "indices";
  rec.anchor = "pointwise-homogeneous-dimension";
  std::vector<RationalVec> samples;
  if (run.bundle) {
    samples = analysis_samples(*run.bundle);
  } else {
    std::vector<int> res(run.system.dim, 8);
    samples = cell_centers(run.domain, res);
  }
  MetivierResult mi = metivier_index(basis, samples);
  int nu_tilde = mi.nu_tilde;
  bool asserted_ok = true;
  if (run.bundle) {
    asserted_ok = (nu_tilde <= run.bundle->nu_tilde);
    nu_tilde = run.bundle->nu_tilde;  // sample max cannot certify; the bundle carries it
  }
  auto layer_const = metivier_condition_check(basis, samples);
  bool m_condition = std::all_of(layer_const.begin(), layer_const.end(), [](bool b) { return b; });
  rec.fitted["nu_tilde"] = nu_tilde;
  rec.fitted["nu_tilde_sample_max"] = mi.nu_tilde;
  rec.fitted["metivier_condition"] = m_condition ? 1.0 : 0.0;
  rec.fitted["samples"] = (double)samples.size();
  rec.pass = asserted_ok;
  *nu_tilde_out = nu_tilde;
  if (text) {
    std::ostringstream os;
    os << "nu_tilde = " << nu_tilde << " (sample max " << mi.nu_tilde << " over "
       << samples.size() << " rational samples)\n";
    os << "layer-constancy (M): " << (m_condition ? "holds" : "fails") << " across samples\n";
    PointIndices pi = point_indices(basis, samples.front());
    os << "layer dims at first sample:";
    for (int d : pi.layer_dims) os << " " << d;
    os << "\n";
    *text += os.str();
  }
  return rec;
}

}  // namespace

ResolvedRun resolve_config(const RunConfig& cfg) {
  ResolvedRun run;
  if (!cfg.bundled.empty()) {
    BundledSystem b = bundled_system(cfg.bundled);
    run.bundle = b;
    run.system = b.system;
    run.domain = cfg.domain ? *cfg.domain : b.domain;
    run.resolution = cfg.resolution.empty() ? b.default_resolution : cfg.resolution;
    run.K = cfg.K > 0 ? cfg.K : b.default_K;
  } else if (cfg.system) {
    run.system = *cfg.system;
    if (!cfg.domain) throw ConfigError("inline systems need a domain");
    run.domain = *cfg.domain;
    if (cfg.resolution.empty()) throw ConfigError("inline systems need a resolution");
    run.resolution = cfg.resolution;
    run.K = cfg.K > 0 ? cfg.K : 50;
  } else {
    throw ConfigError("config carries neither a bundled name nor an inline system");
  }
  if ((int)run.resolution.size() != run.system.dim)
    throw ConfigError("resolution arity does not match the system dimension");
  run.tol = cfg.tol;
  run.seed = cfg.seed;
  run.keep_vectors = cfg.keep_vectors;
  run.strict_boundary = cfg.strict_boundary;
  run.checks = cfg.checks;
  run.output_dir = cfg.output_dir;
  RunConfig resolved = cfg;
  resolved.resolution = run.resolution;
  resolved.K = run.K;
  run.resolved_config = run_config_to_json(resolved);
  if (run.checks.empty()) run.checks = default_checks(run);
  return run;
}

std::vector<std::string> default_checks(const ResolvedRun& run) {
  std::vector<std::string> c = {"weyl_fit", "trace_fit", "thm2", "thm4", "supnorm",
                                "uniform_kernel", "tauberian"};
  if (run.bundle) {
    const std::string& n = run.bundle->name;
    if (n == "laplacian2d" || n == "grushin3d") c.push_back("thm5");
    if (n == "grushin2d") {
      c.push_back("thm5");  // recorded as refused
      c.push_back("grushin_log");
      c.push_back("kernel_slopes");
    }
    if (n == "heisenberg1") {
      c.push_back("hansson_laptev");
      c.push_back("heisenberg_explicit");
    }
  }
  return c;
}

VerificationReport fields_analyze(const ResolvedRun& run, std::string* text_summary) {
  VerificationReport rep;
  std::string text;
  CommutatorBasis basis = enumerate_commutators(run.system, run.system.hormander_bound);
  int nu_tilde = 0;
  rep.checks.push_back(indices_record(run, basis, &nu_tilde, &text));

  // H-measure on the reference window when the bundle names one
  {
    CheckRecord rec;
    rec.name = "measure_H";
    rec.anchor = "degeneracy-set-measure-dichotomy";
    const DomainSpec& window = (run.bundle && run.bundle->h_reference_domain)
                                   ? *run.bundle->h_reference_domain
                                   : run.domain;
    std::vector<int> res(run.system.dim, run.system.dim >= 3 ? 12 : 24);
    MeasureHResult mh = measure_H(basis, window, res, nu_tilde);
    rec.fitted["fraction"] = mh.fraction;
    rec.fitted["fraction_coarse"] = mh.stages[0];
    rec.fitted["fraction_mid"] = mh.stages[1];
    rec.fitted["positive"] = mh.is_positive ? 1.0 : 0.0;
    rec.notes = mh.verdict;
    rec.pass = mh.verdict != "inconclusive";
    text += "H fraction " + std::to_string(mh.fraction) + " (" + mh.verdict + ")\n";
    rep.checks.push_back(rec);
  }

  // integrability classification with the analytic override for bundles
  {
    CheckRecord rec;
    rec.name = "condition_A";
    rec.anchor = "reciprocal-determinant-integrability";
    std::vector<int> res(run.system.dim, run.system.dim >= 3 ? 48 : 256);
    ConditionAResult ca = condition_A_integral(run.system, run.domain, res);
    std::string verdict = ca.verdict;
    rec.fitted["numeric_growth_exponent"] = ca.growth_exponent;
    rec.fitted["numeric_estimate"] = ca.estimate;
    rec.fitted["zero_denominator_set"] = ca.zero_denominator_set ? 1.0 : 0.0;
    if (run.bundle && !run.bundle->conditionA_override.empty()) {
      rec.notes = "numeric: " + ca.verdict + ", analytic: " + run.bundle->conditionA_override;
      rec.pass = ca.verdict == run.bundle->conditionA_override;
      verdict = run.bundle->conditionA_override;
    } else {
      rec.notes = ca.verdict;
      rec.pass = true;
    }
    rec.fitted["divergent"] = verdict == "divergent" ? 1.0 : 0.0;
    text += "condition (A): " + verdict + "\n";
    rep.checks.push_back(rec);
  }

  // boundary transversality for level-set domains
  if (run.domain.mask) {
    CheckRecord rec;
    rec.name = "characteristic";
    rec.anchor = "non-characteristic-boundary";
    CharacteristicReport cr = characteristic_check(run.domain, run.system, 200);
    rec.fitted["min_score"] = cr.min_score;
    rec.fitted["samples"] = cr.samples;
    rec.tolerance = CharacteristicReport::kThreshold;
    rec.pass = !cr.warning;
    if (cr.warning) rec.notes = "characteristic boundary point detected";
    text += "boundary transversality min score " + std::to_string(cr.min_score) + "\n";
    rep.checks.push_back(rec);
  }

  if (text_summary) *text_summary = text;
  return rep;
}

PipelineResult run_pipeline(const ResolvedRun& run) {
  PipelineResult out;
  std::filesystem::create_directories(run.output_dir);

  // analysis stage
  std::string text;
  out.report = fields_analyze(run, &text);
  int nu_tilde = (int)out.report.checks.front().fitted.at("nu_tilde");
  std::string conditionA_verdict = "unknown";
  for (auto& c : out.report.checks)
    if (c.name == "condition_A")
      conditionA_verdict = c.fitted.at("divergent") > 0.5 ? "divergent" : "convergent";
  if (run.strict_boundary)
    for (auto& c : out.report.checks)
      if (c.name == "characteristic" && !c.pass) {
        out.exit_code = 3;
        out.message = "characteristic boundary in strict mode";
        return out;
      }

  // assembly and eigensolve
  Grid grid = build_grid(run.domain, run.resolution);
  DiscreteOperator op = assemble_operator(run.system, grid);
  Spectrum spec;
  try {
    spec = smallest_k(op, run.K, run.tol, run.seed, run.keep_vectors);
  } catch (const SolverError& e) {
    out.exit_code = 4;
    out.message = e.what();
    return out;
  }
  write_spectrum_csv(spec, run.output_dir + "/spectrum.csv");

  auto has = [&](const std::string& name) {
    return std::find(run.checks.begin(), run.checks.end(), name) != run.checks.end();
  };

  std::optional<HeatTrace> trace;
  try {
    trace = heat_trace(spec, default_t_grid(spec.values));
    write_trace_csv(*trace, run.output_dir + "/trace.csv");
  } catch (const std::exception&) {
    // spectrum too short for a valid window; trace checks will report it
  }

  auto push = [&](CheckRecord rec) { out.report.checks.push_back(std::move(rec)); };

  if (has("weyl_fit")) {
    CheckRecord rec;
    rec.name = "weyl_fit";
    rec.anchor = "counting-function-asymptotics";
    WeylFit w = weyl_fit(spec);
    rec.fitted["exponent"] = w.exponent;
    rec.fitted["coefficient"] = w.coefficient;
    rec.fitted["expected_exponent"] = nu_tilde / 2.0;
    rec.pass = true;  // judged by the caller's tolerance, recorded here
    push(rec);
  }
  if (has("trace_fit")) {
    CheckRecord rec;
    rec.name = "trace_fit";
    rec.anchor = "heat-trace-small-time-power";
    if (trace) {
      TraceFit f = trace_exponent_fit(*trace);
      rec.fitted["exponent"] = f.exponent;
      rec.fitted["amplitude"] = f.amplitude;
      rec.fitted["expected_exponent"] = -nu_tilde / 2.0;
      rec.pass = true;
    } else {
      rec.pass = false;
      rec.notes = "empty trace window";
    }
    push(rec);
  }
  if (has("thm2")) push(check_thm2(spec, nu_tilde));
  if (has("thm4")) push(check_thm4(spec, run.system.dim));
  if (has("thm5")) {
    if (conditionA_verdict == "convergent") {
      push(check_thm5(spec, run.system.dim, conditionA_verdict));
    } else {
      CheckRecord rec;
      rec.name = "thm5_sum_lower";
      rec.anchor = "euclidean-order-sum-lower-bound-under-integrability";
      rec.pass = true;
      rec.fitted["refused"] = 1.0;
      rec.notes = "refused: the integrability condition fails on this system";
      push(rec);
    }
  }
  if (has("hansson_laptev")) {
    int group_n = (run.system.dim - 1) / 2;
    push(hansson_laptev_bound(spec, group_n, run.bundle ? run.bundle->volume : 0));
  }
  if (has("heisenberg_explicit")) {
    int group_n = (run.system.dim - 1) / 2;
    push(heisenberg_explicit_lower(spec, group_n, run.bundle ? run.bundle->volume : 0));
  }
  if (has("supnorm") && spec.has_vectors()) push(supnorm_growth(spec, nu_tilde));
  if (has("grushin_log")) push(grushin_log_bound(spec));
  if (has("tauberian")) {
    if (trace) {
      push(tauberian_consistency(spec, nu_tilde));
    } else {
      CheckRecord rec;
      rec.name = "tauberian_consistency";
      rec.anchor = "trace-counting-equivalence";
      rec.pass = false;
      rec.notes = "empty trace window";
      push(rec);
    }
  }
  if (has("uniform_kernel") && spec.has_vectors())
    push(check_uniform_kernel_bound(spec, spread_nodes(grid, 20), nu_tilde));
  if (has("kernel_slopes") && spec.has_vectors()) {
    // bundled planar Grushin: slope on the degenerate line vs off it
    auto tg = default_t_grid(spec.values);
    struct Target {
      const char* name;
      double x, y, expected;
    } targets[] = {{"kernel_slope_line", 0.0, 0.0, -1.5}, {"kernel_slope_off", 0.5, 0.0, -1.0}};
    for (auto& t : targets) {
      CheckRecord rec;
      rec.name = t.name;
      rec.anchor = "diagonal-kernel-pointwise-power";
      int node = grid.nearest_node({t.x, t.y});
      DiagonalKernel dk = diagonal_kernel(spec, node, tg);
      write_kernel_csv(dk, run.output_dir + "/" + t.name + ".csv");
      LineFit f = kernel_slope_fit(dk);
      rec.fitted["slope"] = f.slope;
      rec.fitted["expected"] = t.expected;
      auto p = grid.node_point_d(grid.node(node));
      rec.fitted["node_x"] = p[0];
      rec.fitted["node_y"] = p[1];
      rec.pass = true;
      push(rec);
    }
  }

  json rj = report_to_json(out.report, run.resolved_config);
  write_file(run.output_dir + "/report.json", rj.dump(2) + "\n");
  out.exit_code = out.report.all_pass() ? 0 : 1;
  if (out.exit_code) out.message = "one or more checks failed";
  return out;
}

}  // namespace sublap
