// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "measurelab/measurement.hpp"
#include "measurelab/postulates.hpp"
#include "measurelab/problems.hpp"
#include "measurelab/random.hpp"

using namespace mlab;

namespace {

int failures = 0;

void line(const char* id, const char* what, bool pass, const std::string& detail) {
  std::printf("%s %s %s: %s\n", pass ? "PASS" : "FAIL", id, what, detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double as_real(const Datum& d) { return std::get<double>(d); }

// Random amplitudes with |alpha beta| bounded away from zero.
std::pair<Complex, Complex> random_amplitudes(RandomSource& rng) {
  for (;;) {
    const StateVector s = rng.state(2);
    if (std::abs(s[0] * s[1]) > 1e-6) return {s[0], s[1]};
  }
}

void c1_outcome_probabilities() {
  const Magnitude sz = spin_z();
  const double r = 1.0 / std::sqrt(2.0);
  const double p1 = born_pure(stern_gerlach::spin_state(r, r), sz, Interval::point(0.5));
  const double p2 = born_pure(stern_gerlach::spin_state(std::sqrt(0.9), std::sqrt(0.1)), sz,
                              Interval::point(0.5));
  const double err = std::max(std::abs(p1 - 0.5), std::abs(p2 - 0.9));
  line("C1", "Stern-Gerlach outcome probabilities", err <= 1e-12, fmt("max error %.3e", err));
}

void c2_reality_problem() {
  RandomSource rng(101);
  double worst_residual = 0.0;
  int flagged = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = random_amplitudes(rng);
    const ScenarioReport r = run_reality_problem(a, b);
    worst_residual = std::max(worst_residual, as_real(r.get("final_state_residual")));
    flagged += r.contradiction_flag ? 1 : 0;
  }
  const bool up_clear = !run_reality_problem(1.0, 0.0).contradiction_flag;
  const bool down_clear = !run_reality_problem(0.0, 1.0).contradiction_flag;
  const bool pass = worst_residual <= 1e-12 && flagged == 100 && up_clear && down_clear;
  line("C2", "reality problem", pass,
       fmt("final-state residual %.3e, flagged %.0f/100", worst_residual, flagged) +
           (up_clear && down_clear ? ", eigenstates clear" : ", eigenstate flagged"));
}

void c3_pointer_independence() {
  const std::array<double, 3> w{0.2, 0.5, 0.3};
  RandomSource rng(303);
  std::vector<OutcomeDistribution> dists;
  for (int i = 0; i < 10; ++i) {
    const auto [a, b] = random_amplitudes(rng);
    const ScenarioReport r = run_probability_problem(a, b, w);
    dists.push_back(std::get<OutcomeDistribution>(r.get("pointer_distribution")));
  }
  double spread = 0.0;
  for (const auto& d : dists) spread = std::max(spread, total_variation(d, dists.front()));
  const OutcomeDistribution expected({{stern_gerlach::kReadyValue, w[0]},
                                      {stern_gerlach::kUpValue, w[1]},
                                      {stern_gerlach::kDownValue, w[2]}});
  double off = 0.0;
  for (const auto& d : dists) off = std::max(off, total_variation(d, expected));
  line("C3", "pointer distribution independent of the system state", spread <= 1e-12 && off <= 1e-12,
       fmt("pairwise TV %.3e, TV to (w0, w1, w2) %.3e", spread, off));
}

void c4_reproducibility_clash() {
  const std::array<double, 3> w{0.2, 0.5, 0.3};
  const MeasurementScheme scheme = stern_gerlach::ideal_scheme();
  const DensityOperator ready = stern_gerlach::mixed_ready_state(w);
  RandomSource rng(404);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto [a, b] = random_amplitudes(rng);
    const auto sys = DensityOperator::pure(stern_gerlach::spin_state(a, b));
    const auto rep = check_probability_reproducibility(scheme, sys, ready);
    worst = std::max(worst, std::abs(rep.max_deviation - std::abs(w[1] - std::norm(a))));
  }
  line("C4", "reproducibility deviation equals |w1 - |alpha|^2|", worst <= 1e-12,
       fmt("max mismatch %.3e", worst));
}

void c5_positive_control() {
  const ScenarioReport r = run_positive_control(50, 505);
  const double dev = as_real(r.get("max_deviation"));
  line("C5", "positive control with a pure ready state", dev <= 1e-12, fmt("max deviation %.3e", dev));
}

void c6_stein_lemma() {
  RandomSource rng(606);
  double fact = 0.0, indep = 0.0;
  for (int i = 0; i < 25; ++i) {
    const std::size_t d1 = 1 + rng.index(8);
    const std::size_t d2 = 2 + rng.index(7);
    const SteinInstance inst = random_stein_instance(d1, d2, 10, rng);
    const SteinReport rep = verify_stein_lemma(inst.p, inst.q, inst.w, inst.alternatives);
    fact = std::max(fact, rep.factorization_residual);
    indep = std::max(indep, rep.independence_residual);
  }
  line("C6", "Stein factorization lemma", fact <= 1e-10 && indep <= 1e-10,
       fmt("factorization %.3e, independence %.3e", fact, indep));
}

void c7_expectation_independence() {
  const std::vector<std::array<double, 3>> ready{{0.2, 0.5, 0.3}, {0.6, 0.3, 0.1}, {0.1, 0.1, 0.8}};
  const MeasurementScheme scheme = stern_gerlach::ideal_scheme();
  const std::vector<ComplexMatrix> inputs{spin_up().projector(), spin_down().projector()};
  double spread = 0.0;
  for (const auto& w : ready) {
    const auto rep = expectation_independence(scheme, stern_gerlach::mixed_ready_state(w), inputs);
    spread = std::max(spread, rep.spread);
  }
  line("C7", "pointer expectation independent of the system eigenstate", spread <= 1e-10,
       fmt("max spread %.3e", spread));
}

void c8_sampling() {
  constexpr int kDraws = 100000;
  const Magnitude sz = spin_z();
  const auto w = DensityOperator::pure(StateVector::normalized(DenseVector::Ones(2)));
  const std::vector<Interval> cells = sz.sharp_partition();
  auto run = [&](std::uint64_t seed, std::vector<std::size_t>* seq) {
    OutcomeRng rng(seed);
    int up = 0;
    for (int i = 0; i < kDraws; ++i) {
      const SampledOutcome s = sample_outcome(w, sz, cells, rng);
      if (s.value > 0) ++up;
      if (seq) seq->push_back(s.cell);
    }
    return up;
  };
  std::vector<std::size_t> first, second;
  const int up = run(808, &first);
  run(808, &second);
  const double freq = static_cast<double>(up) / kDraws;
  const double bound = 3.0 * std::sqrt(0.25 / kDraws);
  const bool pass = std::abs(freq - 0.5) <= bound && first == second;
  line("C8", "sampling consistency", pass,
       fmt("frequency %.5f (bound %.5f)", freq, bound) +
           (first == second ? ", sequences identical" : ", sequences differ"));
}

void c9_kernel_invariants() {
  RandomSource rng(909);
  double unitarity = 0.0;
  for (std::size_t n : {2, 3, 5, 8, 16, 32, 64}) {
    const std::size_t k = 1 + rng.index(n);
    const ComplexMatrix u = rng.unitary(n), v = rng.unitary(n);
    std::vector<std::pair<StateVector, StateVector>> pairs;
    for (std::size_t i = 0; i < k; ++i) {
      pairs.emplace_back(StateVector::normalized(u.dense().col(static_cast<Eigen::Index>(i))),
                         StateVector::normalized(v.dense().col(static_cast<Eigen::Index>(i))));
    }
    const ComplexMatrix c = complete_to_unitary(pairs);
    unitarity = std::max(unitarity, (adjoint(c) * c - ComplexMatrix::identity(n)).norm());
  }
  double recon = 0.0;
  for (std::size_t n : {2, 4, 8, 16, 32}) {
    const ComplexMatrix h = rng.hermitian(n);
    recon = std::max(recon, (eig_hermitian(h).reconstruct() - h).norm());
  }
  double norm_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng.index(7);
    const Magnitude a("random", rng.hermitian(n));
    const auto psi = DensityOperator::pure(rng.state(n));
    double total = 0.0;
    for (const Interval& cell : a.sharp_partition()) total += born_mixed(psi, a, cell);
    norm_err = std::max(norm_err, std::abs(total - 1.0));
  }
  const bool pass = unitarity <= 1e-12 && recon <= 1e-9 && norm_err <= 1e-10;
  char buf[200];
  std::snprintf(buf, sizeof buf, "unitarity %.3e, reconstruction %.3e, normalization %.3e",
                unitarity, recon, norm_err);
  line("C9", "kernel invariants", pass, buf);
}

void c10_no_signalling() {
  const ScenarioReport r = run_no_signalling_scenario(JointState::kSinglet);
  double off = 0.0;
  for (const char* key : {"marginal_given_sigma_z", "marginal_given_sigma_x"}) {
    const auto& d = std::get<OutcomeDistribution>(r.get(key));
    for (const auto& e : d.entries()) off = std::max(off, std::abs(e.probability - 0.5));
  }
  const double dev = as_real(r.get("max_deviation"));
  line("C10", "no-signalling marginals", off <= 1e-12 && dev <= 1e-12,
       fmt("max |p - 0.5| %.3e, setting deviation %.3e", off, dev));
}

}  // namespace

int main() {
  c1_outcome_probabilities();
  c2_reality_problem();
  c3_pointer_independence();
  c4_reproducibility_clash();
  c5_positive_control();
  c6_stein_lemma();
  c7_expectation_independence();
  c8_sampling();
  c9_kernel_invariants();
  c10_no_signalling();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
