#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "measurelab/problems.hpp"
#include "measurelab/random.hpp"

using namespace mlab;
namespace sg = mlab::stern_gerlach;

namespace {

double real_of(const ScenarioReport& r, const std::string& name) { return std::get<double>(r.get(name)); }

// T from a single entry: (P (x) Q) W at block (i, j) equals P_ij T for the
// (i, j) with the largest |P_ij|.
ComplexMatrix stein_oracle(const ComplexMatrix& p, const ComplexMatrix& q, const ComplexMatrix& w) {
  const ComplexMatrix c = tensor(p, q) * w;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (std::abs(p(i, j)) > std::abs(p(bi, bj))) bi = i, bj = j;
  const std::size_t d = q.rows();
  DenseMatrix t(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) t(k, l) = c(bi * d + k, bj * d + l) / p(bi, bj);
  return ComplexMatrix(t);
}

}  // namespace

TEST(Reality, SuperpositionFlagsContradiction) {
  const double r = 1.0 / std::sqrt(2.0);
  const ScenarioReport rep = run_reality_problem(r, r);
  EXPECT_TRUE(rep.contradiction_flag);
  EXPECT_LE(real_of(rep, "final_state_residual"), 1e-12);
  EXPECT_NEAR(real_of(rep, "one_x_M_eigen_residual"), 2.0 * r, 1e-12);
  EXPECT_TRUE(rep.verdict_for("coupling satisfies the property revealing condition").pass);
}

TEST(Reality, EigenstatesHaveOutcome) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 0}, {0, 1}}) {
    const ScenarioReport rep = run_reality_problem(a, b);
    EXPECT_FALSE(rep.contradiction_flag);
    EXPECT_TRUE(rep.all_verdicts_pass());
  }
  EXPECT_THROW(run_reality_problem(1.0, 1.0), PreconditionError);
}

TEST(Reality, SpinFlipCouplingAlsoClashes) {
  const ScenarioReport rep = run_reality_problem(0.6, 0.8, CouplingKind::kSpinFlip);
  EXPECT_TRUE(rep.contradiction_flag);
  EXPECT_LE(real_of(rep, "final_state_residual"), 1e-12);
}

TEST(Completeness, SupportSize) {
  const double r = 1.0 / std::sqrt(2.0);
  const ScenarioReport mixed = run_state_completeness(StateVector{r, r}, spin_z());
  EXPECT_TRUE(mixed.contradiction_flag);
  EXPECT_EQ(std::get<std::int64_t>(mixed.get("support_size")), 2);
  const ScenarioReport eigen = run_state_completeness(spin_up(), spin_z());
  EXPECT_FALSE(eigen.contradiction_flag);
  EXPECT_EQ(std::get<std::int64_t>(eigen.get("support_size")), 1);
}

TEST(Probability, ComponentWeightsFollowReadyState) {
  const std::array<double, 3> w{0.2, 0.5, 0.3};
  const ScenarioReport rep = run_probability_problem(0.6, 0.8, w);
  const auto& comp = std::get<OutcomeDistribution>(rep.get("component_weights"));
  EXPECT_NEAR(comp.probability_of(5.0), 0.2, 1e-14);
  EXPECT_NEAR(comp.probability_of(1.0), 0.5, 1e-14);
  EXPECT_NEAR(comp.probability_of(-1.0), 0.3, 1e-14);
  EXPECT_TRUE(rep.contradiction_flag);
  EXPECT_NEAR(real_of(rep, "component_reading_deviation"), std::max({0.5 - 0.36, 0.64 - 0.3, 0.2}), 1e-14);
}

TEST(Probability, PureReadyHasNoClash) {
  const ScenarioReport rep = run_probability_problem(0.6, 0.8, {1.0, 0.0, 0.0});
  EXPECT_FALSE(rep.contradiction_flag);
  EXPECT_LE(real_of(rep, "reproducibility_deviation"), 1e-14);
}

TEST(Stein, ExtractionMatchesEntrywiseOracle) {
  RandomSource rng(31);
  for (int i = 0; i < 10; ++i) {
    const SteinInstance inst = random_stein_instance(3, 4, 2, rng);
    const ComplexMatrix t = extract_stein_operator(inst.p, inst.q, inst.w);
    EXPECT_LE((t - stein_oracle(inst.p, inst.q, inst.w)).norm(), 1e-12);
    const SteinReport rep = verify_stein_lemma(inst.p, inst.q, inst.w, inst.alternatives);
    EXPECT_LE(rep.factorization_residual, 1e-10);
    EXPECT_LE(rep.independence_residual, 1e-10);
  }
}

TEST(Stein, DependsOnPWithoutFullCommutation) {
  // W = P1 (x) A + P2 (x) B commutes with P1 (x) 1 and P2 (x) 1, yet the
  // factor T differs between the two projectors.
  RandomSource rng(32);
  const ComplexMatrix p1 = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
  const ComplexMatrix p2 = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
  const ComplexMatrix a = rng.hermitian(3), b = rng.hermitian(3);
  const ComplexMatrix w = tensor(p1, a) + tensor(p2, b);
  const ComplexMatrix q = ComplexMatrix::identity(3);
  const std::vector<ComplexMatrix> alt{p2};
  const SteinReport rep = verify_stein_lemma(p1, q, w, alt);
  EXPECT_LE(rep.factorization_residual, 1e-12);
  EXPECT_LE((rep.t_q - a).norm(), 1e-12);
  EXPECT_NEAR(rep.independence_residual, (a - b).norm(), 1e-12);
}

TEST(Stein, RejectsNonCommuting) {
  RandomSource rng(33);
  const ComplexMatrix p = rng.projector(2, 1), q = rng.projector(2, 1);
  EXPECT_THROW(verify_stein_lemma(p, q, rng.hermitian(4)), PreconditionError);
}

TEST(Expectation, ClosedForm) {
  // Canonical coupling: <1 (x) M> = w0 + 5 w1 - w2 for |up>, -w0 + 5 w1 + w2 for |down>.
  const std::array<double, 3> w{0.2, 0.5, 0.3};
  const std::vector<ComplexMatrix> inputs{spin_up().projector(), spin_down().projector()};
  const ExpectationReport rep =
      expectation_independence(sg::ideal_scheme(), sg::mixed_ready_state(w), inputs);
  ASSERT_EQ(rep.entries.size(), 2u);
  EXPECT_NEAR(rep.entries[0].expectation, w[0] + 5 * w[1] - w[2], 1e-14);
  EXPECT_NEAR(rep.entries[1].expectation, -w[0] + 5 * w[1] + w[2], 1e-14);
  EXPECT_NEAR(rep.spread, 2 * std::abs(w[0] - w[2]), 1e-14);
  EXPECT_LE(rep.trace_residual, 1e-14);
  EXPECT_GT(rep.joint_commutator, 0.1);
}

TEST(Expectation, SymmetricReadyStateHasNoSpread) {
  const ScenarioReport rep = run_expectation_scenario({0.25, 0.5, 0.25});
  EXPECT_TRUE(rep.verdict_for("<1 (x) M> independent of the system eigenstate").pass);
}

TEST(NoSignalling, SingletAndProduct) {
  for (JointState s : {JointState::kSinglet, JointState::kProduct}) {
    const ScenarioReport rep = run_no_signalling_scenario(s);
    EXPECT_TRUE(rep.all_verdicts_pass());
    EXPECT_LE(real_of(rep, "max_deviation"), 1e-12);
  }
}

TEST(PositiveControl, Reproduces) {
  const ScenarioReport rep = run_positive_control(20, 5);
  EXPECT_TRUE(rep.all_verdicts_pass());
  EXPECT_FALSE(rep.contradiction_flag);
}
