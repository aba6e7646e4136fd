#include "measurelab/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace mlab {

namespace {

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error("complex value must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error("matrix must be a nested array");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    if (row.size() != cols) throw Error("matrix rows must have equal length");
    for (const auto& x : row) entries.push_back(complex_from_json(x));
  }
  return ComplexMatrix::from_row_major(rows, cols, entries);
}

struct Encoder {
  Json operator()(bool b) const { return {{"kind", "bool"}, {"value", b}}; }
  Json operator()(std::int64_t i) const { return {{"kind", "integer"}, {"value", i}}; }
  Json operator()(double x) const { return {{"kind", "real"}, {"value", x}}; }
  Json operator()(Complex c) const { return {{"kind", "complex"}, {"value", complex_to_json(c)}}; }
  Json operator()(const std::string& s) const { return {{"kind", "text"}, {"value", s}}; }
  Json operator()(const std::vector<double>& v) const {
    return {{"kind", "reals"}, {"value", v}};
  }
  Json operator()(const std::vector<Complex>& v) const {
    Json arr = Json::array();
    for (const auto& c : v) arr.push_back(complex_to_json(c));
    return {{"kind", "state"}, {"value", std::move(arr)}};
  }
  Json operator()(const ComplexMatrix& m) const {
    return {{"kind", "matrix"}, {"value", matrix_to_json(m)}};
  }
  Json operator()(const OutcomeDistribution& d) const {
    Json arr = Json::array();
    for (const auto& e : d.entries()) {
      arr.push_back({{"value", e.value}, {"probability", e.probability}});
    }
    return {{"kind", "distribution"}, {"value", std::move(arr)}};
  }
};

std::string format_complex(Complex c) {
  std::ostringstream os;
  os << std::setprecision(6) << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  return os.str();
}

struct TextRenderer {
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(std::int64_t i) const { return std::to_string(i); }
  std::string operator()(double x) const {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
  }
  std::string operator()(Complex c) const { return format_complex(c); }
  std::string operator()(const std::string& s) const { return s; }
  std::string operator()(const std::vector<double>& v) const {
    std::ostringstream os;
    os << std::setprecision(6) << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
  }
  std::string operator()(const std::vector<Complex>& v) const {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_complex(v[i]);
    return s + ")";
  }
  std::string operator()(const ComplexMatrix& m) const {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix";
  }
  std::string operator()(const OutcomeDistribution& d) const {
    std::ostringstream os;
    os << std::setprecision(6) << "{";
    for (std::size_t i = 0; i < d.entries().size(); ++i) {
      os << (i ? ", " : "") << d.entries()[i].value << ": " << d.entries()[i].probability;
    }
    os << "}";
    return os.str();
  }
};

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Datum& d) { return std::visit(Encoder{}, d); }

Datum datum_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const Json& v = j.at("value");
  if (kind == "bool") return v.get<bool>();
  if (kind == "integer") return v.get<std::int64_t>();
  if (kind == "real") return v.get<double>();
  if (kind == "complex") return complex_from_json(v);
  if (kind == "text") return v.get<std::string>();
  if (kind == "reals") return v.get<std::vector<double>>();
  if (kind == "state") {
    std::vector<Complex> out;
    for (const auto& c : v) out.push_back(complex_from_json(c));
    return out;
  }
  if (kind == "matrix") return matrix_from_json(v);
  if (kind == "distribution") {
    std::vector<Outcome> entries;
    for (const auto& e : v) {
      entries.push_back({e.at("value").get<double>(), e.at("probability").get<double>()});
    }
    return OutcomeDistribution(std::move(entries));
  }
  throw Error("unknown datum kind '" + kind + "'");
}

Json to_json(const ScenarioReport& r) {
  auto named = [](const std::vector<NamedDatum>& items) {
    Json arr = Json::array();
    for (const auto& d : items) {
      Json entry = to_json(d.value);
      entry["name"] = d.name;
      arr.push_back(std::move(entry));
    }
    return arr;
  };
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"claim", v.claim}, {"pass", v.pass}, {"residual", v.residual}});
  }
  return {{"schema_version", kSchemaVersion},
          {"scenario_name", r.scenario_name},
          {"inputs", named(r.inputs)},
          {"computed", named(r.computed)},
          {"verdicts", std::move(verdicts)},
          {"contradiction_flag", r.contradiction_flag},
          {"narrative", r.narrative}};
}

ScenarioReport report_from_json(const Json& j) {
  if (j.at("schema_version").get<std::string>() != kSchemaVersion) {
    throw Error("unsupported report schema version");
  }
  ScenarioReport r;
  r.scenario_name = j.at("scenario_name").get<std::string>();
  for (const auto& d : j.at("inputs")) r.input(d.at("name").get<std::string>(), datum_from_json(d));
  for (const auto& d : j.at("computed")) {
    r.record(d.at("name").get<std::string>(), datum_from_json(d));
  }
  for (const auto& v : j.at("verdicts")) {
    r.verdict(v.at("claim").get<std::string>(), v.at("pass").get<bool>(),
              v.at("residual").get<double>());
  }
  r.contradiction_flag = j.at("contradiction_flag").get<bool>();
  r.narrative = j.at("narrative").get<std::string>();
  return r;
}

std::string render_text(const ScenarioReport& r) {
  std::ostringstream os;
  os << "scenario: " << r.scenario_name << "\n";
  os << "inputs:\n";
  for (const auto& d : r.inputs) {
    if (std::holds_alternative<ComplexMatrix>(d.value)) continue;
    os << "  " << d.name << " = " << std::visit(TextRenderer{}, d.value) << "\n";
  }
  os << "computed:\n";
  for (const auto& d : r.computed) {
    os << "  " << d.name << " = " << std::visit(TextRenderer{}, d.value) << "\n";
  }
  os << "verdicts:\n";
  for (const auto& v : r.verdicts) {
    os << "  [" << (v.pass ? "PASS" : "FAIL") << "] " << v.claim << " (residual "
       << std::setprecision(3) << std::scientific << v.residual << std::defaultfloat << ")\n";
  }
  os << "contradiction: " << (r.contradiction_flag ? "yes" : "no") << "\n";
  os << r.narrative << "\n";
  return os.str();
}

}  // namespace mlab
