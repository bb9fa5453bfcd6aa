// Command-line front end: analyze / assemble / eigs / trace / verify / run.
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "sublap/pipeline.hpp"

using namespace sublap;

namespace {

RunConfig load_config(const std::string& config_path, const std::string& bundled,
                      const std::vector<int>& resolution, int K, uint64_t seed,
                      const std::string& out) {
  RunConfig cfg;
  if (!config_path.empty()) {
    cfg = run_config_from_json(json::parse(read_file(config_path)));
  } else if (!bundled.empty()) {
    cfg.bundled = bundled;
  } else {
    throw ConfigError("either --config or --bundled is required");
  }
  if (!resolution.empty()) cfg.resolution = resolution;
  if (K > 0) cfg.K = K;
  if (seed) cfg.seed = seed;
  if (!out.empty()) cfg.output_dir = out;
  return cfg;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-elliptic Dirichlet spectrum toolkit"};
  app.require_subcommand(1);

  std::string config_path, bundled, out;
  std::vector<int> resolution;
  int K = 0;
  uint64_t seed = 0;
  app.add_option("--config", config_path, "run configuration JSON");
  app.add_option("--bundled", bundled, "bundled system name");
  app.add_option("--resolution", resolution, "grid resolution per axis");
  app.add_option("-k,--eigenvalues", K, "number of eigenvalues");
  app.add_option("--seed", seed, "solver seed");
  app.add_option("--out", out, "output directory");

  auto* analyze = app.add_subcommand("analyze", "symbolic index analysis only");
  auto* assemble = app.add_subcommand("assemble", "assemble the operator and dump it");
  auto* eigs = app.add_subcommand("eigs", "solve for the lowest eigenvalues");
  auto* trace = app.add_subcommand("trace", "heat trace from the spectrum");
  auto* verify = app.add_subcommand("verify", "run the verification checks");
  auto* runall = app.add_subcommand("run", "full pipeline");

  CLI11_PARSE(app, argc, argv);

  return guarded([&]() -> int {
    RunConfig cfg = load_config(config_path, bundled, resolution, K, seed, out);
    ResolvedRun run = resolve_config(cfg);

    if (analyze->parsed()) {
      std::string text;
      VerificationReport rep = fields_analyze(run, &text);
      std::cout << text;
      json rj = report_to_json(rep, run.resolved_config);
      std::filesystem::create_directories(run.output_dir);
      write_file(run.output_dir + "/report.json", rj.dump(2) + "\n");
      if (run.strict_boundary)
        for (auto& c : rep.checks)
          if (c.name == "characteristic" && !c.pass) return 3;
      return rep.all_pass() ? 0 : 1;
    }
    if (assemble->parsed()) {
      Grid grid = build_grid(run.domain, run.resolution);
      DiscreteOperator op = assemble_operator(run.system, grid);
      std::filesystem::create_directories(run.output_dir);
      op.dump_coo(run.output_dir + "/matrix.coo");
      std::cout << "N = " << op.size << ", nnz = " << op.matrix.nonZeros()
                << (op.connected ? "" : "  [warning: coupling graph is disconnected]") << "\n";
      return 0;
    }
    if (eigs->parsed() || trace->parsed()) {
      Grid grid = build_grid(run.domain, run.resolution);
      DiscreteOperator op = assemble_operator(run.system, grid);
      Spectrum spec = smallest_k(op, run.K, run.tol, run.seed, run.keep_vectors);
      std::filesystem::create_directories(run.output_dir);
      write_spectrum_csv(spec, run.output_dir + "/spectrum.csv");
      if (trace->parsed()) {
        HeatTrace tr = heat_trace(spec, default_t_grid(spec.values));
        write_trace_csv(tr, run.output_dir + "/trace.csv");
        std::cout << "trace window [" << tr.t_min << ", " << tr.t_max << "]\n";
      }
      std::cout << "lambda_1 = " << spec.values.front() << ", lambda_K = " << spec.values.back()
                << "\n";
      return 0;
    }
    // verify / run
    PipelineResult res = run_pipeline(run);
    for (auto& c : res.report.checks) {
      std::printf("%-26s %s", c.name.c_str(), c.pass ? "pass" : "FAIL");
      if (!c.notes.empty()) std::printf("  (%s)", c.notes.c_str());
      std::printf("\n");
    }
    if (!res.message.empty()) std::cerr << res.message << "\n";
    return res.exit_code;
  });
}
