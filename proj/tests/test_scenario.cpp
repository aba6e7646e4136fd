#include <gtest/gtest.h>

#include <string>

#include "measurelab/scenario.hpp"

using namespace mlab;

namespace {

std::string error_of(const Json& j) {
  try {
    parse_batch(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Serialize, ReportRoundTrip) {
  const ScenarioConfig c = parse_config(Json::parse(
      R"({"scenario": "probability", "parameters": {"alpha": [0.6, 0], "beta": [0, 0.8], "weights": [0.2, 0.5, 0.3]}})"));
  const ScenarioReport r = run(c);
  const Json j = to_json(r);
  EXPECT_EQ(j["schema_version"], "1");
  const ScenarioReport back = report_from_json(j);
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(back.verdicts.size(), r.verdicts.size());
  EXPECT_EQ(std::get<ComplexMatrix>(back.get("final_state")), std::get<ComplexMatrix>(r.get("final_state")));
}

TEST(Serialize, DatumKindsRoundTrip) {
  const std::vector<Datum> data{true,
                                std::int64_t{-3},
                                0.1 + 0.2,
                                Complex(1.0 / 3.0, -2.0),
                                std::string("text"),
                                std::vector<double>{1e-300, 2.5},
                                std::vector<Complex>{{0, 1}, {1, 0}},
                                ComplexMatrix{{1.0, Complex(0, 1)}, {Complex(0, -1), 2.0}},
                                OutcomeDistribution({{1.0, 0.25}, {-1.0, 0.75}})};
  for (const Datum& d : data) {
    const Json j = to_json(d);
    EXPECT_EQ(to_json(datum_from_json(Json::parse(j.dump()))).dump(), j.dump());
  }
  EXPECT_EQ(std::get<double>(datum_from_json(to_json(Datum{0.1 + 0.2}))), 0.1 + 0.2);
}

TEST(Serialize, SeededOutputIsDeterministic) {
  const Json cfg = Json::parse(R"({"scenario": "stein", "parameters": {"dims": [3, 3], "trials": 4}, "seed": 17})");
  EXPECT_EQ(to_json(run(parse_config(cfg))).dump(), to_json(run(parse_config(cfg))).dump());
}

TEST(Config, DefaultsAndNormalization) {
  const ScenarioConfig c =
      parse_config(Json::parse(R"({"scenario": "reality", "parameters": {"alpha": [0.7071, 0], "beta": [0.7071, 0]}})"));
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.tolerance, kVerdictTolerance);
  EXPECT_EQ(c.output_format, OutputFormat::kText);
  const double a = c.parameters["alpha"][0].get<double>();
  EXPECT_NEAR(a, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(run(c).contradiction_flag);
}

TEST(Config, RejectionsNameTheField) {
  EXPECT_NE(error_of(Json::parse(R"([{"scenario": "nope"}])")).find("[0].scenario"), std::string::npos);
  EXPECT_NE(error_of(Json::parse(R"([{"scenario": "reality", "parameters": {"alpha": [1, 0], "beta": [1, 0]}}])"))
                .find("[0].parameters.alpha"),
            std::string::npos);
  EXPECT_NE(error_of(Json::parse(R"([{"scenario": "nosignal"}, {"scenario": "stein", "parameters": {"dims": [0, 2]}}])"))
                .find("[1].parameters.dims"),
            std::string::npos);
  EXPECT_NE(error_of(Json::parse(R"([{"scenario": "control", "output_format": "xml"}])")).find("[0].output_format"),
            std::string::npos);
  EXPECT_NE(error_of(Json::parse(R"([{"scenario": "control", "tolerance": -1}])")).find("[0].tolerance"),
            std::string::npos);
  EXPECT_NE(error_of(Json::parse(R"({"scenario": "control"})")).find("top-level array"), std::string::npos);
}

TEST(Batch, EmptyAndSummary) {
  const BatchResult empty = run_batch(parse_batch(Json::array()));
  const Json je = to_json(empty);
  EXPECT_EQ(je["schema_version"], "1");
  EXPECT_TRUE(je["reports"].empty());
  EXPECT_TRUE(je["summary"].empty());

  const auto configs = parse_batch(Json::parse(R"([
    {"scenario": "reality", "parameters": {"alpha": [1, 0], "beta": [0, 0]}},
    {"scenario": "completeness", "parameters": {"amplitudes": [[1, 0], [0, 0]]}},
    {"scenario": "expectation", "parameters": {"weights": [1, 0, 0]}}
  ])"));
  const Json jb = to_json(run_batch(configs));
  ASSERT_EQ(jb["summary"].size(), 3u);
  EXPECT_EQ(jb["summary"][0]["problem"], "I");
  EXPECT_EQ(jb["summary"][1]["problem"], "II");
  EXPECT_EQ(jb["summary"][2]["problem"], "III");
  EXPECT_EQ(jb["summary"][0]["contradiction_flag"], false);
}

TEST(Batch, ConfigRoundTrip) {
  const auto configs = parse_batch(Json::parse(
      R"([{"scenario": "expectation", "parameters": {"weights": [0.2, 0.5, 0.3]}, "seed": 4, "tolerance": 1e-9, "output_format": "json"}])"));
  const ScenarioConfig again = parse_config(to_json(configs[0]));
  EXPECT_EQ(to_json(again).dump(), to_json(configs[0]).dump());
}
