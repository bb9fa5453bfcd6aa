#include <doctest.h>

#include "sublap/io.hpp"
#include "sublap/pipeline.hpp"

using namespace sublap;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(rational_str(Rational(-3, 7)) == "-3/7");
  CHECK(rational_str(Rational(4)) == "4");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("field system JSON round trip") {
  json j = json::parse(R"({
    "dim": 2,
    "Q": 2,
    "fields": [
      { "components": [ [ {"c": "1", "e": [0,0]} ], [] ] },
      { "components": [ [], [ {"c": "1", "e": [1,0]} ] ] }
    ]
  })");
  FieldSystem sys = field_system_from_json(j);
  CHECK(sys.dim == 2);
  CHECK(sys.m() == 2);
  CHECK(sys.hormander_bound == 2);
  CHECK(sys.fields[1].component(1).poly() == Polynomial::monomial(2, 1, {1, 0}));
  json back = field_system_to_json(sys);
  FieldSystem sys2 = field_system_from_json(back);
  CHECK(sys2.fields[1].component(1).poly() == sys.fields[1].component(1).poly());
}

TEST_CASE("domain JSON with decimal rationals") {
  json j = json::parse(R"({ "box": [["-0.75","1.65"],["-1.2","1.2"]], "mask": null })");
  DomainSpec spec = domain_from_json(j);
  CHECK(spec.lo[0] == Rational(-3, 4));
  CHECK(spec.hi[0] == Rational(33, 20));
  CHECK_FALSE(spec.mask.has_value());
}

TEST_CASE("bad configs raise schema errors") {
  CHECK_THROWS_AS(field_system_from_json(json::parse(R"({"dim": 2})")), ConfigError);
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"box": [["1","0"]]})")), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json::parse(R"({"K": 5})")), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json::parse(R"({"field_system":"grushin2d","tol":0})")),
                  ConfigError);
  CHECK_THROWS(resolve_config(run_config_from_json(
      json::parse(R"({"field_system":"no_such_system"})"))));
}

TEST_CASE("csv headers are pinned") {
  Spectrum spec;
  spec.values = {1.0, 2.0};
  spec.residuals = {1e-12, 2e-12};
  spec.grid_size = 10;
  write_spectrum_csv(spec, "/tmp/sublap_spec.csv");
  auto body = read_file("/tmp/sublap_spec.csv");
  CHECK(body.rfind("k,lambda,residual\n", 0) == 0);

  HeatTrace tr;
  tr.t = {0.1};
  tr.z = {2.5};
  tr.in_window = {true};
  write_trace_csv(tr, "/tmp/sublap_trace.csv");
  CHECK(read_file("/tmp/sublap_trace.csv").rfind("t,Z\n", 0) == 0);

  DiagonalKernel dk;
  dk.t = {0.1};
  dk.h = {1.5};
  dk.in_window = {true};
  write_kernel_csv(dk, "/tmp/sublap_kernel.csv");
  CHECK(read_file("/tmp/sublap_kernel.csv").rfind("t,h\n", 0) == 0);
}

TEST_CASE("analysis report is byte-identical across runs") {
  RunConfig cfg;
  cfg.bundled = "grushin2d";
  cfg.output_dir = "/tmp/sublap_rep";
  auto run = resolve_config(cfg);
  auto rep1 = fields_analyze(run);
  auto rep2 = fields_analyze(run);
  std::string b1 = report_to_json(rep1, run.resolved_config).dump(2);
  std::string b2 = report_to_json(rep2, run.resolved_config).dump(2);
  CHECK(b1 == b2);
  CHECK(b1.find("\"anchor\"") != std::string::npos);
}

TEST_CASE("resolved bundled defaults") {
  RunConfig cfg;
  cfg.bundled = "heisenberg1";
  auto run = resolve_config(cfg);
  CHECK(run.K == 200);
  CHECK(run.resolution == std::vector<int>{24, 24, 24});
  CHECK_FALSE(run.checks.empty());
  // overrides stick
  cfg.K = 33;
  cfg.resolution = {12, 12, 12};
  run = resolve_config(cfg);
  CHECK(run.K == 33);
  CHECK(run.resolution == std::vector<int>{12, 12, 12});
}
