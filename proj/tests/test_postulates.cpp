#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "measurelab/postulates.hpp"
#include "measurelab/random.hpp"

using namespace mlab;

namespace {

StateVector plus_z() { return StateVector::normalized(DenseVector::Ones(2)); }

}  // namespace

TEST(DensityOperator, Validates) {
  EXPECT_THROW(DensityOperator(ComplexMatrix{{0.5, 0.0}, {0.0, 0.4}}), PreconditionError);
  EXPECT_THROW(DensityOperator(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), PreconditionError);
  EXPECT_THROW(DensityOperator(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}}), PreconditionError);
  EXPECT_NEAR(trace(DensityOperator::maximally_mixed(4).matrix()).real(), 1.0, 1e-15);
}

TEST(Magnitude, SpinOperators) {
  EXPECT_EQ(spin_z().spectrum().values(), (std::vector<double>{-0.5, 0.5}));
  const ComplexMatrix sy = spin_y().op();
  EXPECT_EQ(sy(0, 1), Complex(0, -0.5));
  EXPECT_EQ(spin_z().sharp_partition().size(), 2u);
}

TEST(Born, KnownProbabilities) {
  const Magnitude sz = spin_z();
  EXPECT_NEAR(born_pure(plus_z(), sz, Interval::point(0.5)), 0.5, 1e-12);
  const StateVector s{std::sqrt(0.9), std::sqrt(0.1)};
  EXPECT_NEAR(born_pure(s, sz, Interval::point(0.5)), 0.9, 1e-12);
  EXPECT_NEAR(born_pure(s, sz, Interval::real_line()), 1.0, 1e-12);
  EXPECT_NEAR(born_pure(s, sz, Interval::closed(2, 3)), 0.0, 0.0);
  EXPECT_NEAR(born_mixed(DensityOperator::pure(s), sz, Interval::point(-0.5)), 0.1, 1e-12);
}

TEST(Born, PhaseInvariant) {
  RandomSource rng(11);
  const Magnitude a("h", rng.hermitian(5));
  const StateVector psi = rng.state(5);
  const StateVector phased(psi.dense() * std::exp(Complex(0, 1.234)));
  for (const Interval& cell : a.sharp_partition())
    EXPECT_NEAR(born_pure(psi, a, cell), born_pure(phased, a, cell), 1e-14);
}

TEST(Born, MixedNormalizes) {
  RandomSource rng(12);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + rng.index(6);
    const Magnitude a("h", rng.hermitian(n));
    const OutcomeDistribution d = outcome_distribution(rng.density(n), a);
    double sum = 0.0;
    for (const auto& e : d.entries()) sum += e.probability;
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
}

TEST(OutcomeDistribution, ValidatesAndMeasures) {
  EXPECT_THROW(OutcomeDistribution({{1.0, 0.5}, {2.0, 0.4}}), PreconditionError);
  EXPECT_THROW(OutcomeDistribution({{1.0, 0.5}, {1.0, 0.5}}), PreconditionError);
  const OutcomeDistribution a({{1.0, 0.5}, {2.0, 0.5}});
  const OutcomeDistribution b({{1.0, 1.0}});
  EXPECT_NEAR(total_variation(a, b), 0.5, 1e-15);
  EXPECT_EQ(a.support_size(1e-12), 2u);
}

TEST(Eigenlink, EigenstatesOnly) {
  const Magnitude sz = spin_z();
  const auto cells = sz.sharp_partition();
  const auto up = eigenlink_properties(spin_up(), sz, cells);
  ASSERT_EQ(up.size(), 1u);
  EXPECT_EQ(up[0].value_set, Interval::point(0.5));
  EXPECT_TRUE(eigenlink_properties(plus_z(), sz, cells).empty());
  // Coarse cell containing both eigenvalues: every state has it.
  const std::vector<Interval> coarse{Interval::real_line()};
  EXPECT_EQ(eigenlink_properties(plus_z(), sz, coarse).size(), 1u);
  const std::vector<Interval> overlapping{Interval::closed(-1, 0), Interval::closed(0, 1)};
  EXPECT_THROW(eigenlink_properties(plus_z(), sz, overlapping), PreconditionError);
}

TEST(Collapse, PureProjects) {
  const StateVector post = collapse_pure(plus_z(), spin_z(), Interval::point(0.5));
  EXPECT_NEAR(std::abs(post.inner(spin_up())), 1.0, 1e-15);
  EXPECT_THROW(collapse_pure(spin_up(), spin_z(), Interval::point(-0.5)), ZeroProbabilityError);
}

TEST(Collapse, MixedMatchesComponentwiseOracle) {
  RandomSource rng(13);
  const std::vector<double> values{1.0, 1.0, 2.0, 3.0};
  const Magnitude a = diagonal_magnitude("d", values);
  const DensityOperator w = rng.density(4);
  const DensityOperator post = collapse_mixed(w, a, Interval::closed(0.5, 1.5));
  // P = diag(1,1,0,0): P W P keeps the leading 2x2 block.
  const Complex norm = w.matrix()(0, 0) + w.matrix()(1, 1);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex expect = (i < 2 && j < 2) ? w.matrix()(i, j) / norm : Complex(0.0);
      EXPECT_LE(std::abs(post.matrix()(i, j) - expect), 1e-14);
    }
}

TEST(Evolve, RabiClosedForm) {
  // H = Sx; from |up>, Pr(up at t) = cos^2(t/2).
  const Magnitude h = spin_x();
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    const DensityOperator w = evolve(h, t, DensityOperator::pure(spin_up()));
    EXPECT_NEAR(born_mixed(w, spin_z(), Interval::point(0.5)), std::pow(std::cos(t / 2), 2), 1e-13);
  }
  EXPECT_TRUE(propagator(h, 0.7).is_unitary(1e-13));
}

TEST(Sampling, FrequencyAndDeterminism) {
  const Magnitude sz = spin_z();
  const auto w = DensityOperator::pure(StateVector{std::sqrt(0.3), std::sqrt(0.7)});
  const auto cells = sz.sharp_partition();
  OutcomeRng rng(99);
  constexpr int kN = 20000;
  int up = 0;
  std::vector<double> seq;
  for (int i = 0; i < kN; ++i) {
    const auto s = sample_outcome(w, sz, cells, rng);
    up += s.value > 0 ? 1 : 0;
    seq.push_back(s.value);
  }
  EXPECT_NEAR(static_cast<double>(up) / kN, 0.3, 3 * std::sqrt(0.21 / kN));
  OutcomeRng again(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_outcome(w, sz, cells, again).value, seq[i]);
}

TEST(Sampling, NeverDrawsZeroProbabilityCell) {
  const auto w = DensityOperator::pure(spin_up());
  const auto cells = spin_z().sharp_partition();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = sample_outcome(w, spin_z(), cells, seed);
    EXPECT_EQ(s.value, 0.5);
    EXPECT_LE((s.post.matrix() - spin_up().projector()).norm(), 1e-14);
  }
}

TEST(Sampling, RequiresCoveringPartition) {
  const std::vector<Interval> partial{Interval::point(0.5)};
  EXPECT_THROW(sample_outcome(DensityOperator::pure(spin_up()), spin_z(), partial, 1), PreconditionError);
}

TEST(RepresentativeValue, MidpointOrMean) {
  const std::vector<double> values{1.0, 2.0, 4.0};
  const Magnitude a = diagonal_magnitude("d", values);
  EXPECT_EQ(representative_value(Interval::closed(0.0, 3.0), a), 1.5);
  EXPECT_EQ(representative_value(Interval{1.5, std::numeric_limits<double>::infinity(), true, false}, a), 3.0);
}
