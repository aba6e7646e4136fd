#include "measurelab/scenario.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace mlab {

namespace {

struct KindName {
  ScenarioKind kind;
  const char* name;
  const char* problem;
};

constexpr KindName kKinds[] = {
    {ScenarioKind::kReality, "reality", "I"},         {ScenarioKind::kCompleteness, "completeness", "II"},
    {ScenarioKind::kProbability, "probability", "III"}, {ScenarioKind::kStein, "stein", "III"},
    {ScenarioKind::kExpectation, "expectation", "III"}, {ScenarioKind::kNoSignal, "nosignal", "III"},
    {ScenarioKind::kControl, "control", "III"},
};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

std::uint64_t count_at(const Json& j, const std::string& path, std::uint64_t lo, std::uint64_t hi) {
  if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v < lo || v > hi) {
    fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

Complex complex_at(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

const Json& member(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required field");
  return obj.at(key);
}

// Renormalizes (alpha, beta) when their squared norm is close to 1.
void normalize_pair(Json& params, const std::string& path) {
  const Complex alpha = params.contains("alpha") ? complex_at(params["alpha"], path + ".alpha")
                                                 : Complex(1.0);
  const Complex beta = params.contains("beta") ? complex_at(params["beta"], path + ".beta")
                                               : Complex(0.0);
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (!(std::abs(n2 - 1.0) <= kAmplitudeInputTolerance)) {
    std::ostringstream os;
    os << "amplitudes do not normalize (|alpha|^2 + |beta|^2 = " << n2 << ")";
    fail(path + ".alpha", os.str());
  }
  const double s = 1.0 / std::sqrt(n2);
  params["alpha"] = complex_to_json(alpha * s);
  params["beta"] = complex_to_json(beta * s);
}

std::array<double, 3> weights_at(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected three weights [w0, w1, w2]");
  std::array<double, 3> w{};
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    w[k] = number_at(j[k], path + "[" + std::to_string(k) + "]");
    if (w[k] < 0.0 || w[k] > 1.0) fail(path + "[" + std::to_string(k) + "]", "weight outside [0, 1]");
    sum += w[k];
  }
  if (std::abs(sum - 1.0) > 1e-10) fail(path, "weights must sum to 1");
  return w;
}

Magnitude named_magnitude(const std::string& name, const std::string& path) {
  if (name == "sigma_z") return spin_z();
  if (name == "sigma_x") return spin_x();
  if (name == "sigma_y") return spin_y();
  fail(path, "unknown magnitude '" + name + "' (expected sigma_x, sigma_y, sigma_z or a matrix)");
}

Magnitude magnitude_at(const Json& j, const std::string& path) {
  if (j.is_string()) return named_magnitude(j.get<std::string>(), path);
  if (!j.is_array() || j.empty()) fail(path, "expected a magnitude name or a Hermitian matrix");
  const std::size_t n = j.size();
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n) fail(rp, "matrix must be square");
    for (std::size_t k = 0; k < n; ++k) entries.push_back(complex_at(j[i][k], rp + "[" + std::to_string(k) + "]"));
  }
  try {
    return Magnitude("A", ComplexMatrix::from_row_major(n, n, entries));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

StateVector amplitudes_at(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of [re, im] amplitudes");
  DenseVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_at(j[i], path + "[" + std::to_string(i) + "]");
  }
  const double n2 = v.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= kAmplitudeInputTolerance)) fail(path, "amplitudes do not normalize");
  return StateVector::normalized(std::move(v));
}

void validate_parameters(ScenarioKind kind, Json& p, const std::string& path) {
  switch (kind) {
    case ScenarioKind::kReality: {
      normalize_pair(p, path);
      const std::string coupling = p.value("coupling", std::string("ideal"));
      if (coupling != "ideal" && coupling != "spin_flip") {
        fail(path + ".coupling", "expected 'ideal' or 'spin_flip'");
      }
      p["coupling"] = coupling;
      break;
    }
    case ScenarioKind::kCompleteness: {
      const StateVector psi = amplitudes_at(member(p, "amplitudes", path), path + ".amplitudes");
      if (!p.contains("magnitude")) p["magnitude"] = "sigma_z";
      const Magnitude a = magnitude_at(p["magnitude"], path + ".magnitude");
      if (a.dim() != psi.dim()) fail(path + ".amplitudes", "state and magnitude dimensions differ");
      break;
    }
    case ScenarioKind::kProbability:
      normalize_pair(p, path);
      weights_at(member(p, "weights", path), path + ".weights");
      break;
    case ScenarioKind::kStein: {
      const Json& dims = member(p, "dims", path);
      if (!dims.is_array() || dims.size() != 2) fail(path + ".dims", "expected [d1, d2]");
      count_at(dims[0], path + ".dims[0]", 1, 16);
      count_at(dims[1], path + ".dims[1]", 1, 16);
      if (!p.contains("trials")) p["trials"] = 10u;
      if (!p.contains("alternatives")) p["alternatives"] = 10u;
      count_at(p["trials"], path + ".trials", 1, 10000);
      count_at(p["alternatives"], path + ".alternatives", 0, 1000);
      break;
    }
    case ScenarioKind::kExpectation:
      weights_at(member(p, "weights", path), path + ".weights");
      break;
    case ScenarioKind::kNoSignal: {
      const std::string state = p.value("state", std::string("singlet"));
      if (state != "singlet" && state != "product") fail(path + ".state", "expected 'singlet' or 'product'");
      p["state"] = state;
      break;
    }
    case ScenarioKind::kControl:
      if (!p.contains("trials")) p["trials"] = 50u;
      count_at(p["trials"], path + ".trials", 1, 100000);
      break;
  }
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::string problem_number(ScenarioKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.problem;
  }
  return "?";
}

ScenarioConfig parse_config(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path.empty() ? "$" : path, "scenario entry must be an object");
  ScenarioConfig c;
  const std::string sp = path + (path.empty() ? "scenario" : ".scenario");
  if (!j.contains("scenario") || !j["scenario"].is_string()) fail(sp, "missing scenario name");
  const auto name = j["scenario"].get<std::string>();
  bool found = false;
  for (const auto& k : kKinds) {
    if (name == k.name) {
      c.scenario = k.kind;
      found = true;
    }
  }
  if (!found) fail(sp, "unknown scenario '" + name + "'");

  const std::string prefix = path.empty() ? "" : path + ".";
  if (j.contains("seed")) c.seed = count_at(j["seed"], prefix + "seed", 0, UINT64_MAX);
  if (j.contains("tolerance")) {
    c.tolerance = number_at(j["tolerance"], prefix + "tolerance");
    if (!(c.tolerance > 0.0)) fail(prefix + "tolerance", "must be positive");
  }
  if (j.contains("output_format")) {
    const auto& f = j["output_format"];
    if (f == "text") {
      c.output_format = OutputFormat::kText;
    } else if (f == "json") {
      c.output_format = OutputFormat::kJson;
    } else {
      fail(prefix + "output_format", "expected 'text' or 'json'");
    }
  }
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) fail(prefix + "parameters", "expected an object");
    c.parameters = j["parameters"];
  }
  validate_parameters(c.scenario, c.parameters, prefix + "parameters");
  return c;
}

std::vector<ScenarioConfig> parse_batch(const Json& j) {
  if (!j.is_array()) throw ConfigError("$: batch file must hold a top-level array");
  std::vector<ScenarioConfig> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_config(j[i], "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json to_json(const ScenarioConfig& c) {
  return {{"scenario", to_string(c.scenario)},
          {"parameters", c.parameters},
          {"seed", c.seed},
          {"tolerance", c.tolerance},
          {"output_format", c.output_format == OutputFormat::kJson ? "json" : "text"}};
}

ScenarioReport run(const ScenarioConfig& config) {
  const Json& p = config.parameters;
  const double tol = config.tolerance;
  auto cplx = [&](const char* key) { return Complex(p[key][0].get<double>(), p[key][1].get<double>()); };
  auto weights = [&] { return weights_at(p["weights"], "parameters.weights"); };

  ScenarioReport r;
  switch (config.scenario) {
    case ScenarioKind::kReality:
      r = run_reality_problem(cplx("alpha"), cplx("beta"),
                              p["coupling"] == "spin_flip" ? CouplingKind::kSpinFlip : CouplingKind::kIdeal,
                              tol);
      break;
    case ScenarioKind::kCompleteness:
      r = run_state_completeness(amplitudes_at(p["amplitudes"], "parameters.amplitudes"),
                                 magnitude_at(p["magnitude"], "parameters.magnitude"), tol);
      break;
    case ScenarioKind::kProbability:
      r = run_probability_problem(cplx("alpha"), cplx("beta"), weights(), tol);
      break;
    case ScenarioKind::kStein:
      r = run_stein_scenario(p["dims"][0].get<std::size_t>(), p["dims"][1].get<std::size_t>(),
                             p["trials"].get<std::size_t>(), config.seed,
                             p["alternatives"].get<std::size_t>(), tol);
      break;
    case ScenarioKind::kExpectation:
      r = run_expectation_scenario(weights(), tol);
      break;
    case ScenarioKind::kNoSignal:
      r = run_no_signalling_scenario(p["state"] == "product" ? JointState::kProduct : JointState::kSinglet,
                                     tol);
      break;
    case ScenarioKind::kControl:
      r = run_positive_control(p["trials"].get<std::size_t>(), config.seed, tol);
      break;
  }
  return r;
}

BatchResult run_batch(const std::vector<ScenarioConfig>& configs) {
  BatchResult b;
  for (const auto& c : configs) {
    b.kinds.push_back(c.scenario);
    b.reports.push_back(run(c));
  }
  return b;
}

Json to_json(const BatchResult& b) {
  Json reports = Json::array();
  Json summary = Json::array();
  for (std::size_t i = 0; i < b.reports.size(); ++i) {
    reports.push_back(to_json(b.reports[i]));
    summary.push_back({{"index", i},
                       {"scenario", to_string(b.kinds[i])},
                       {"problem", problem_number(b.kinds[i])},
                       {"contradiction_flag", b.reports[i].contradiction_flag},
                       {"all_verdicts_pass", b.reports[i].all_verdicts_pass()}});
  }
  return {{"schema_version", kSchemaVersion}, {"reports", std::move(reports)}, {"summary", std::move(summary)}};
}

std::string render_text(const BatchResult& b) {
  std::ostringstream os;
  for (std::size_t i = 0; i < b.reports.size(); ++i) {
    os << "=== [" << i << "] ===\n" << render_text(b.reports[i]) << "\n";
  }
  os << "summary (" << b.reports.size() << " scenarios)\n";
  os << std::left << std::setw(7) << "index" << std::setw(14) << "scenario" << std::setw(9) << "problem"
     << std::setw(15) << "contradiction" << "verdicts\n";
  for (std::size_t i = 0; i < b.reports.size(); ++i) {
    os << std::left << std::setw(7) << i << std::setw(14) << to_string(b.kinds[i]) << std::setw(9)
       << problem_number(b.kinds[i]) << std::setw(15) << (b.reports[i].contradiction_flag ? "yes" : "no")
       << (b.reports[i].all_verdicts_pass() ? "all pass" : "some fail") << "\n";
  }
  return os.str();
}

}  // namespace mlab
