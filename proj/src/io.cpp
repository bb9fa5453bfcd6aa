#include "sublap/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sublap {

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) {
    // decimal via the printed form keeps round numbers exact
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return parse_rational(os.str());
  }
  throw ConfigError("expected a rational (string \"p/q\" or number)");
}

}  // namespace

Polynomial polynomial_from_json(const json& j, int dim) {
  if (!j.is_array()) throw ConfigError("polynomial must be an array of terms");
  Polynomial p(dim);
  for (const auto& term : j) {
    if (!term.contains("c") || !term.contains("e"))
      throw ConfigError("polynomial term needs fields c and e");
    auto ev = term["e"];
    if (!ev.is_array() || (int)ev.size() != dim)
      throw ConfigError("term exponent arity does not match dim");
    Polynomial::Expo e;
    for (const auto& x : ev) e.push_back(x.get<uint32_t>());
    p.add_term(rational_from_json(term["c"]), e);
  }
  return p;
}

json polynomial_to_json(const Polynomial& p) {
  json arr = json::array();
  for (auto& [e, c] : p.terms()) {
    json term;
    term["c"] = rational_str(c);
    term["e"] = e;
    arr.push_back(term);
  }
  return arr;
}

FieldSystem field_system_from_json(const json& j) {
  FieldSystem sys;
  if (!j.contains("dim") || !j.contains("fields") || !j.contains("Q"))
    throw ConfigError("field system needs dim, fields, Q");
  sys.dim = j["dim"].get<int>();
  sys.hormander_bound = j["Q"].get<int>();
  for (const auto& f : j["fields"]) {
    if (!f.contains("components")) throw ConfigError("field needs components");
    const auto& comps = f["components"];
    if ((int)comps.size() != sys.dim)
      throw ConfigError("field component count does not match dim");
    std::vector<Coefficient> cs;
    for (const auto& comp : comps) cs.emplace_back(polynomial_from_json(comp, sys.dim));
    sys.fields.push_back(VectorFieldExpr(std::move(cs)));
  }
  try {
    sys.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return sys;
}

json field_system_to_json(const FieldSystem& sys) {
  json j;
  j["dim"] = sys.dim;
  j["Q"] = sys.hormander_bound;
  json fields = json::array();
  for (auto& f : sys.fields) {
    json comps = json::array();
    for (int k = 0; k < f.dim(); ++k) {
      if (!f.component(k).is_polynomial())
        comps.push_back("analytic");  // bundled-only coefficients, not round-trippable
      else
        comps.push_back(polynomial_to_json(f.component(k).poly()));
    }
    fields.push_back(json{{"components", comps}});
  }
  j["fields"] = fields;
  return j;
}

DomainSpec domain_from_json(const json& j) {
  DomainSpec spec;
  if (!j.contains("box")) throw ConfigError("domain needs a box");
  for (const auto& pair : j["box"]) {
    if (!pair.is_array() || pair.size() != 2) throw ConfigError("box entries are [lo, hi]");
    spec.lo.push_back(rational_from_json(pair[0]));
    spec.hi.push_back(rational_from_json(pair[1]));
  }
  if (j.contains("mask") && !j["mask"].is_null())
    spec.mask = polynomial_from_json(j["mask"], spec.dim());
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

json domain_to_json(const DomainSpec& spec) {
  json j;
  json box = json::array();
  for (int k = 0; k < spec.dim(); ++k)
    box.push_back(json::array({rational_str(spec.lo[k]), rational_str(spec.hi[k])}));
  j["box"] = box;
  j["mask"] = spec.mask ? polynomial_to_json(*spec.mask) : json(nullptr);
  return j;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  if (j.contains("field_system")) {
    const auto& fs = j["field_system"];
    if (fs.is_string())
      cfg.bundled = fs.get<std::string>();
    else
      cfg.system = field_system_from_json(fs);
  } else {
    throw ConfigError("config needs field_system (bundled name or inline system)");
  }
  if (j.contains("domain") && !j["domain"].is_null()) cfg.domain = domain_from_json(j["domain"]);
  if (j.contains("resolution")) cfg.resolution = j["resolution"].get<std::vector<int>>();
  if (j.contains("K")) cfg.K = j["K"].get<int>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("keep_vectors")) cfg.keep_vectors = j["keep_vectors"].get<bool>();
  if (j.contains("strict_boundary")) cfg.strict_boundary = j["strict_boundary"].get<bool>();
  if (j.contains("checks")) cfg.checks = j["checks"].get<std::vector<std::string>>();
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  if (cfg.tol <= 0) throw ConfigError("tol must be positive");
  if (cfg.K < 0) throw ConfigError("K must be non-negative");
  return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
  json j;
  if (!cfg.bundled.empty())
    j["field_system"] = cfg.bundled;
  else if (cfg.system)
    j["field_system"] = field_system_to_json(*cfg.system);
  j["domain"] = cfg.domain ? domain_to_json(*cfg.domain) : json(nullptr);
  j["resolution"] = cfg.resolution;
  j["K"] = cfg.K;
  j["tol"] = cfg.tol;
  j["seed"] = cfg.seed;
  j["keep_vectors"] = cfg.keep_vectors;
  j["strict_boundary"] = cfg.strict_boundary;
  j["checks"] = cfg.checks;
  j["output_dir"] = cfg.output_dir;
  return j;
}

json report_to_json(const VerificationReport& rep, const json& resolved_config) {
  json j;
  json checks = json::array();
  for (auto& c : rep.checks) {
    json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    jc["pass"] = c.pass;
    jc["fitted"] = c.fitted;
    jc["tolerance"] = c.tolerance;
    if (!c.notes.empty()) jc["notes"] = c.notes;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["all_pass"] = rep.all_pass();
  j["config"] = resolved_config;
  return j;
}

void write_spectrum_csv(const Spectrum& spec, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "k,lambda,residual\n");
  for (int k = 0; k < spec.k(); ++k)
    std::fprintf(f, "%d,%.17g,%.17g\n", k + 1, spec.values[k], spec.residuals[k]);
  std::fclose(f);
}

void write_trace_csv(const HeatTrace& tr, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "t,Z\n");
  for (size_t i = 0; i < tr.t.size(); ++i)
    std::fprintf(f, "%.17g,%.17g\n", tr.t[i], tr.z[i]);
  std::fclose(f);
}

void write_kernel_csv(const DiagonalKernel& dk, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "t,h\n");
  for (size_t i = 0; i < dk.t.size(); ++i)
    std::fprintf(f, "%.17g,%.17g\n", dk.t[i], dk.h[i]);
  std::fclose(f);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

}  // namespace sublap
