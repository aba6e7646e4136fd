#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "measurelab/linalg.hpp"
#include "measurelab/postulates.hpp"

namespace mlab {

// One reported quantity. Vectors of Complex carry state amplitudes.
using Datum = std::variant<bool, std::int64_t, double, Complex, std::string, std::vector<double>,
                           std::vector<Complex>, ComplexMatrix, OutcomeDistribution>;

struct NamedDatum {
  std::string name;
  Datum value;
};

struct Verdict {
  std::string claim;
  bool pass;
  double residual;
};

// Machine-checkable account of one scenario run.
struct ScenarioReport {
  std::string scenario_name;
  std::vector<NamedDatum> inputs;
  std::vector<NamedDatum> computed;
  std::vector<Verdict> verdicts;
  bool contradiction_flag = false;
  std::string narrative;

  void input(std::string name, Datum value) { inputs.push_back({std::move(name), std::move(value)}); }
  void record(std::string name, Datum value) {
    computed.push_back({std::move(name), std::move(value)});
  }
  void verdict(std::string claim, bool pass, double residual) {
    verdicts.push_back({std::move(claim), pass, residual});
  }

  // Looks up a computed value by name; throws std::out_of_range if absent.
  const Datum& get(const std::string& name) const;
  const Verdict& verdict_for(const std::string& claim) const;
  bool all_verdicts_pass() const;
};

}  // namespace mlab
