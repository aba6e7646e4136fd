// measurelab: run measurement-problem scenarios and emit reports.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "measurelab/scenario.hpp"

namespace {

struct Common {
  std::uint64_t seed = 0;
  double tolerance = mlab::kVerdictTolerance;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--tolerance", c.tolerance, "Verdict tolerance")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

mlab::Json pair_json(const std::vector<double>& v) { return mlab::Json::array({v.at(0), v.at(1)}); }

int emit_report(const mlab::ScenarioReport& r, bool json) {
  if (json) {
    std::cout << mlab::to_json(r).dump(2) << "\n";
  } else {
    std::cout << mlab::render_text(r);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional measurement-problem laboratory"};
  app.require_subcommand(1);

  Common common;
  mlab::Json params = mlab::Json::object();

  std::vector<double> alpha{1.0, 0.0};
  std::vector<double> beta{0.0, 0.0};
  std::string coupling = "ideal";
  auto* reality = app.add_subcommand("reality", "Problem I: reality of measurement outcomes");
  reality->add_option("--alpha", alpha, "Amplitude of |up> as: re im")->expected(2);
  reality->add_option("--beta", beta, "Amplitude of |down> as: re im")->expected(2);
  reality->add_option("--coupling", coupling, "ideal or spin_flip")
      ->check(CLI::IsMember({"ideal", "spin_flip"}));
  add_common(reality, common);

  std::vector<double> amplitudes;
  std::string magnitude = "sigma_z";
  auto* completeness = app.add_subcommand("completeness", "Problem II: state completeness");
  completeness->add_option("--amplitudes", amplitudes, "State amplitudes as: re im re im ...")
      ->required();
  completeness->add_option("--magnitude", magnitude, "sigma_x, sigma_y or sigma_z");
  add_common(completeness, common);

  std::vector<double> weights;
  auto* probability = app.add_subcommand("probability", "Problem III: probability of outcomes");
  probability->add_option("--alpha", alpha, "Amplitude of |up> as: re im")->expected(2);
  probability->add_option("--beta", beta, "Amplitude of |down> as: re im")->expected(2);
  probability->add_option("--weights", weights, "Ready-state weights w0 w1 w2")->expected(3)->required();
  add_common(probability, common);

  std::vector<std::size_t> dims{4, 4};
  std::size_t trials = 10;
  std::size_t alternatives = 10;
  auto* stein = app.add_subcommand("stein", "Factorization lemma on random commuting instances");
  stein->add_option("--dims", dims, "Factor dimensions d1 d2")->expected(2);
  stein->add_option("--trials", trials, "Number of random instances");
  stein->add_option("--alternatives", alternatives, "Alternative projectors per instance");
  add_common(stein, common);

  auto* expectation = app.add_subcommand("expectation", "Pointer expectation across system eigenstates");
  expectation->add_option("--weights", weights, "Ready-state weights w0 w1 w2")->expected(3)->required();
  add_common(expectation, common);

  std::string state = "singlet";
  auto* nosignal = app.add_subcommand("nosignal", "Outcome-setting independence");
  nosignal->add_option("--state", state, "singlet or product")
      ->check(CLI::IsMember({"singlet", "product"}));
  add_common(nosignal, common);

  std::size_t control_trials = 50;
  auto* control = app.add_subcommand("control", "Positive control with a pure ready state");
  control->add_option("--trials", control_trials, "Number of random system mixtures");
  add_common(control, common);

  std::string batch_path;
  auto* batch = app.add_subcommand("batch", "Run a JSON list of scenario configs");
  batch->add_option("path", batch_path, "Config file")->required();
  batch->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (batch->parsed()) {
      std::ifstream in(batch_path);
      if (!in) {
        std::cerr << "error: cannot open " << batch_path << "\n";
        return 1;
      }
      mlab::Json doc;
      try {
        doc = mlab::Json::parse(in);
      } catch (const mlab::Json::parse_error& e) {
        std::cerr << "error: $: " << e.what() << "\n";
        return 1;
      }
      const auto configs = mlab::parse_batch(doc);
      const auto result = mlab::run_batch(configs);
      if (common.format == "json") {
        std::cout << mlab::to_json(result).dump(2) << "\n";
      } else {
        std::cout << mlab::render_text(result);
      }
      return 0;
    }

    mlab::Json config = {{"seed", common.seed}, {"tolerance", common.tolerance},
                         {"output_format", common.format}};
    if (reality->parsed()) {
      config["scenario"] = "reality";
      params = {{"alpha", pair_json(alpha)}, {"beta", pair_json(beta)}, {"coupling", coupling}};
    } else if (completeness->parsed()) {
      config["scenario"] = "completeness";
      if (amplitudes.size() % 2 != 0) {
        std::cerr << "error: parameters.amplitudes: expected re im pairs\n";
        return 1;
      }
      mlab::Json amps = mlab::Json::array();
      for (std::size_t i = 0; i < amplitudes.size(); i += 2) {
        amps.push_back({amplitudes[i], amplitudes[i + 1]});
      }
      params = {{"amplitudes", amps}, {"magnitude", magnitude}};
    } else if (probability->parsed()) {
      config["scenario"] = "probability";
      params = {{"alpha", pair_json(alpha)}, {"beta", pair_json(beta)}, {"weights", weights}};
    } else if (stein->parsed()) {
      config["scenario"] = "stein";
      params = {{"dims", dims}, {"trials", trials}, {"alternatives", alternatives}};
    } else if (expectation->parsed()) {
      config["scenario"] = "expectation";
      params = {{"weights", weights}};
    } else if (nosignal->parsed()) {
      config["scenario"] = "nosignal";
      params = {{"state", state}};
    } else if (control->parsed()) {
      config["scenario"] = "control";
      params = {{"trials", control_trials}};
    }
    config["parameters"] = params;
    const mlab::ScenarioConfig parsed = mlab::parse_config(config);
    return emit_report(mlab::run(parsed), parsed.output_format == mlab::OutputFormat::kJson);
  } catch (const mlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
