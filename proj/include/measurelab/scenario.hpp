#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "measurelab/problems.hpp"
#include "measurelab/serialize.hpp"

namespace mlab {

enum class ScenarioKind { kReality, kCompleteness, kProbability, kStein, kExpectation, kNoSignal, kControl };
enum class OutputFormat { kText, kJson };

// Invalid configuration; the message starts with the offending field path,
// e.g. "[2].parameters.alpha: ...".
class ConfigError : public Error {
 public:
  using Error::Error;
};

// User-typed amplitudes (e.g. 0.7071) are renormalized when their squared
// norm is within this distance of 1; anything further off is rejected.
inline constexpr double kAmplitudeInputTolerance = 1e-3;

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::kReality;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  double tolerance = kVerdictTolerance;
  OutputFormat output_format = OutputFormat::kText;
};

std::string to_string(ScenarioKind kind);
// Problem number (I, II or III) a scenario belongs to.
std::string problem_number(ScenarioKind kind);

// Validates one scenario object. `path` prefixes error messages.
ScenarioConfig parse_config(const Json& j, const std::string& path = "");
// Validates a top-level array; rejects the whole list on the first invalid
// member.
std::vector<ScenarioConfig> parse_batch(const Json& j);
Json to_json(const ScenarioConfig& c);

ScenarioReport run(const ScenarioConfig& config);

struct BatchResult {
  std::vector<ScenarioKind> kinds;
  std::vector<ScenarioReport> reports;
};

BatchResult run_batch(const std::vector<ScenarioConfig>& configs);
Json to_json(const BatchResult& b);
std::string render_text(const BatchResult& b);

}  // namespace mlab
