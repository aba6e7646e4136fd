#include "measurelab/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mlab {

namespace {

std::vector<Complex> amplitudes(const DenseVector& v) {
  return {v.data(), v.data() + v.size()};
}

// min over eigenvalues lambda of ||A v - lambda v||
double eigen_residual(const Magnitude& a, const DenseVector& v) {
  const DenseVector av = a.op() * v;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a.spectrum().pairs()) best = std::min(best, (av - p.value * v).norm());
  return best;
}

void require_projector(const ComplexMatrix& p, const char* what) {
  if (!p.is_square() || !p.is_hermitian(1e-10) ||
      (p.dense() * p.dense() - p.dense()).norm() > 1e-10) {
    throw PreconditionError(std::string(what) + " must be an orthogonal projector");
  }
}

void validate_weights(const std::array<double, 3>& w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("ready-state weights must lie in [0, 1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw PreconditionError("ready-state weights must sum to 1");
}

double max_pairwise(const std::vector<ComplexMatrix>& ms) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, (ms[i] - ms[j]).norm());
  }
  return worst;
}

}  // namespace

namespace stern_gerlach {

Magnitude pointer() {
  const double values[] = {kReadyValue, kUpValue, kDownValue};
  return diagonal_magnitude("M", values);
}

Calibration calibration() { return Calibration({{0.5, kUpValue}, {-0.5, kDownValue}}); }

MeasurementScheme ideal_scheme() {
  return build_ideal_scheme(spin_z(), pointer(), kReadyValue, calibration());
}

MeasurementScheme spin_flip_scheme() {
  const std::map<double, StateVector> post{{0.5, spin_down()}, {-0.5, spin_up()}};
  return build_disturbance_scheme(spin_z(), pointer(), kReadyValue, calibration(), post);
}

StateVector spin_state(Complex alpha, Complex beta, double tol) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (!(std::abs(norm2 - 1.0) <= tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "amplitudes are not normalized: |alpha|^2 + |beta|^2 = " << norm2;
    throw PreconditionError(os.str());
  }
  DenseVector v(2);
  v << alpha, beta;
  return StateVector::normalized(std::move(v));
}

DensityOperator mixed_ready_state(const std::array<double, 3>& weights) {
  validate_weights(weights);
  return DensityOperator(ComplexMatrix::diagonal(weights));
}

}  // namespace stern_gerlach

// ---------------------------------------------------------------------------

ScenarioReport run_reality_problem(Complex alpha, Complex beta, CouplingKind kind, double tol) {
  namespace sg = stern_gerlach;
  ScenarioReport r;
  r.scenario_name = "reality";
  r.input("alpha", alpha);
  r.input("beta", beta);
  r.input("coupling", std::string(kind == CouplingKind::kIdeal ? "ideal" : "spin_flip"));
  r.input("tolerance", tol);

  const StateVector phi = sg::spin_state(alpha, beta);
  const MeasurementScheme scheme =
      kind == CouplingKind::kIdeal ? sg::ideal_scheme() : sg::spin_flip_scheme();
  const StateVector ready = scheme.ready_state();
  const StateVector initial = tensor(phi, ready);
  const StateVector final_vec(scheme.coupling * initial.dense());

  const DenseVector plus = StateVector::basis(3, 1).dense();
  const DenseVector minus = StateVector::basis(3, 2).dense();
  const DenseVector up = spin_up().dense();
  const DenseVector down = spin_down().dense();
  auto kron = [](const DenseVector& a, const DenseVector& b) {
    DenseVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
  };
  const DenseVector predicted = kind == CouplingKind::kIdeal
                                    ? DenseVector(alpha * kron(up, plus) + beta * kron(down, minus))
                                    : DenseVector(alpha * kron(down, plus) + beta * kron(up, minus));
  const double state_residual = (final_vec.dense() - predicted).norm();

  const Magnitude sz = spin_z();
  const Magnitude joint("sigma_z (x) M", tensor(sz.op(), scheme.pointer.op()));
  const Magnitude pointer_only("1 (x) M", scheme.composite_pointer());
  const Magnitude spin_only("sigma_z (x) 1", tensor(sz.op(), ComplexMatrix::identity(3)));

  const double joint_residual = eigen_residual(joint, final_vec.dense());
  const double pointer_residual = eigen_residual(pointer_only, final_vec.dense());
  const auto pointer_cells = pointer_only.sharp_partition();
  const auto spin_cells = spin_only.sharp_partition();
  const auto pointer_props = eigenlink_properties(final_vec, pointer_only, pointer_cells, tol);
  const auto spin_props = eigenlink_properties(final_vec, spin_only, spin_cells, tol);
  const auto revealing = check_property_revealing(scheme, tol);

  r.record("initial_state", amplitudes(initial.dense()));
  r.record("final_state", amplitudes(final_vec.dense()));
  r.record("predicted_final_state", amplitudes(predicted));
  r.record("final_state_residual", state_residual);
  r.record("sigma_z_x_M_eigen_residual", joint_residual);
  r.record("one_x_M_eigen_residual", pointer_residual);
  r.record("pointer_properties", static_cast<std::int64_t>(pointer_props.size()));
  r.record("spin_properties", static_cast<std::int64_t>(spin_props.size()));
  if (pointer_props.size() == 1) r.record("indicated_outcome", pointer_props.front().value_set.lo);
  r.record("coupling", scheme.coupling);

  r.verdict("final state equals the predicted superposition", state_residual <= 1e-12,
            state_residual);
  r.verdict("coupling satisfies the property revealing condition", revealing.all_pass(),
            [&] {
              double worst = 0.0;
              for (const auto& e : revealing.entries) worst = std::max(worst, e.residual);
              return worst;
            }());
  const bool single_outcome = pointer_props.size() == 1;
  r.verdict("pointer possesses a determinate outcome (single measurement outcome)",
            single_outcome, pointer_residual);

  r.contradiction_flag = !single_outcome;
  r.narrative =
      r.contradiction_flag
          ? "Universal dynamics, the eigenlink and the single-outcome principle are jointly "
            "inconsistent: the evolved composite state is no eigenvector of 1 (x) M, so the "
            "pointer is ascribed no outcome."
          : "The input is a sigma_z eigenstate; the evolved state is a pointer eigenstate and "
            "the eigenlink ascribes the calibrated outcome.";
  return r;
}

ScenarioReport run_state_completeness(const StateVector& psi, const Magnitude& a, double tol) {
  ScenarioReport r;
  r.scenario_name = "completeness";
  r.input("state", amplitudes(psi.dense()));
  r.input("magnitude", a.name());
  r.input("operator", a.op());
  r.input("tolerance", tol);

  const OutcomeDistribution dist = outcome_distribution(DensityOperator::pure(psi), a);
  const std::size_t support = dist.support_size(kSupportThreshold);
  const auto cells = a.sharp_partition();
  const auto props = eigenlink_properties(psi, a, cells, tol);

  r.record("distribution", dist);
  r.record("support_size", static_cast<std::int64_t>(support));
  r.record("eigenlink_properties", static_cast<std::int64_t>(props.size()));

  if (props.size() == 1) {
    const double value = props.front().value_set.lo;
    const double residual = (value * psi.dense() - a.op() * psi.dense()).norm();
    r.record("specification_value", value);
    r.verdict("eigenlink specification function f_A(psi) psi = A psi", residual <= tol, residual);
  }

  // Probability mass outside the most likely cell: zero iff a single outcome
  // is certain.
  double top = 0.0;
  for (const auto& e : dist.entries()) top = std::max(top, e.probability);
  const double spread_mass = 1.0 - top;
  const bool determinate = support <= 1;
  r.verdict("a specification function fixes a unique outcome for this state", determinate,
            spread_mass);

  r.contradiction_flag = !determinate;
  r.narrative =
      r.contradiction_flag
          ? "The state gives nonzero probability to several outcomes; no specification "
            "function can assign it a single measured value, so the theory is measurement- "
            "and property-incomplete for this state."
          : "The state is an eigenstate; the eigenlink specification function assigns its "
            "eigenvalue.";
  return r;
}

ScenarioReport run_probability_problem(Complex alpha, Complex beta,
                                       const std::array<double, 3>& weights, double tol) {
  namespace sg = stern_gerlach;
  validate_weights(weights);
  ScenarioReport r;
  r.scenario_name = "probability";
  r.input("alpha", alpha);
  r.input("beta", beta);
  r.input("weights", std::vector<double>(weights.begin(), weights.end()));
  r.input("tolerance", tol);

  const MeasurementScheme scheme = sg::ideal_scheme();
  const DensityOperator system = DensityOperator::pure(sg::spin_state(alpha, beta));
  const DensityOperator ready = sg::mixed_ready_state(weights);
  const DensityOperator fin = final_state(scheme, tensor(system, ready));
  const OutcomeDistribution ptr = pointer_distribution(scheme, fin);

  auto pointer_for = [&](const StateVector& s) {
    return pointer_distribution(scheme, final_state(scheme, tensor(DensityOperator::pure(s), ready)));
  };
  const OutcomeDistribution ptr_up = pointer_for(spin_up());
  const OutcomeDistribution ptr_down = pointer_for(spin_down());
  const double tv = std::max({total_variation(ptr, ptr_up), total_variation(ptr, ptr_down),
                              total_variation(ptr_up, ptr_down)});

  // Ignorance reading: the privileged pointer expansion of the ready state,
  // pushed through the coupling term by term.
  const ConvexExpansion expansion = ignorance_expansion(ready, scheme.pointer);
  DenseMatrix assembled = DenseMatrix::Zero(fin.matrix().dense().rows(), fin.matrix().dense().cols());
  std::vector<Outcome> component_weights;
  double weight_trace_residual = 0.0;
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const auto& u = scheme.coupling.dense();
  for (const auto& p : scheme.pointer.spectrum().pairs()) {
    const double wj = expansion.weight_of(p.value);
    component_weights.push_back({p.value, wj});
    // Tr(W(tau) U (1 (x) P_j) U^dagger) = Tr(W(0) (1 (x) P_j))
    const DenseMatrix evolved_proj = u * tensor(id2, p.projector).dense() * u.adjoint();
    const double via_trace = (fin.matrix().dense() * evolved_proj).trace().real();
    weight_trace_residual = std::max(weight_trace_residual, std::abs(via_trace - wj));
  }
  for (const auto& t : expansion.terms()) {
    assembled += t.weight * final_state(scheme, DensityOperator(tensor(system.matrix(), t.pure)))
                                .matrix()
                                .dense();
  }
  const double assembly_residual = (assembled - fin.matrix().dense()).norm();
  const OutcomeDistribution ensemble(component_weights);

  const ReproducibilityReport rep = check_probability_reproducibility(scheme, system, ready, tol);
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  const double component_deviation =
      std::max({std::abs(weights[1] - a2), std::abs(weights[2] - b2), weights[0]});

  r.record("system_distribution", rep.system);
  r.record("pointer_distribution", ptr);
  r.record("pointer_distribution_up", ptr_up);
  r.record("pointer_distribution_down", ptr_down);
  r.record("pointer_total_variation", tv);
  r.record("component_weights", ensemble);
  r.record("component_weight_trace_residual", weight_trace_residual);
  r.record("component_assembly_residual", assembly_residual);
  r.record("reproducibility_deviation", rep.max_deviation);
  r.record("component_reading_deviation", component_deviation);
  r.record("final_state", fin.matrix());

  r.verdict("evolved privileged expansion reassembles W(tau)", assembly_residual <= tol,
            assembly_residual);
  r.verdict("component weights equal the ready-state weights for every system state",
            weight_trace_residual <= tol, weight_trace_residual);
  r.verdict("Born pointer distribution independent of the system state", tv <= tol, tv);
  r.verdict("probability reproducibility condition", rep.pass, rep.max_deviation);

  r.contradiction_flag = !rep.pass;
  r.narrative =
      r.contradiction_flag
          ? "With a mixed ready state the unitarily evolved pointer statistics do not reproduce "
            "the Born statistics of sigma_z in the initial system state: the mixed state "
            "postulate, universal dynamics and probability reproducibility are jointly "
            "incompatible."
          : "The pointer statistics reproduce the Born statistics of sigma_z for this input.";
  return r;
}

// ---------------------------------------------------------------------------

ComplexMatrix extract_stein_operator(const ComplexMatrix& p, const ComplexMatrix& q,
                                     const ComplexMatrix& w) {
  if (!p.is_square() || !q.is_square() || !w.is_square() || w.rows() != p.rows() * q.rows()) {
    throw DimensionError("extract_stein_operator: W must act on the product of P's and Q's spaces");
  }
  const auto d1 = static_cast<Eigen::Index>(p.rows());
  const auto d2 = static_cast<Eigen::Index>(q.rows());
  const DenseMatrix c = tensor(p, q).dense() * w.dense();
  const auto& pd = p.dense();
  const double denom = pd.squaredNorm();
  if (!(denom > 0.0)) throw PreconditionError("extract_stein_operator: P must be nonzero");
  DenseMatrix t = DenseMatrix::Zero(d2, d2);
  for (Eigen::Index i = 0; i < d1; ++i) {
    for (Eigen::Index j = 0; j < d1; ++j) {
      const Complex pij = pd(i, j);
      if (pij == Complex(0.0)) continue;
      t += std::conj(pij) * c.block(i * d2, j * d2, d2, d2);
    }
  }
  t /= denom;
  return ComplexMatrix(std::move(t));
}

SteinReport verify_stein_lemma(const ComplexMatrix& p, const ComplexMatrix& q,
                               const ComplexMatrix& w, std::span<const ComplexMatrix> alternatives,
                               double comm_tol) {
  require_projector(p, "P");
  auto solve = [&](const ComplexMatrix& proj, double* comm_out) {
    const ComplexMatrix pq = tensor(proj, q);
    if (pq.rows() != w.rows() || !w.is_square()) {
      throw DimensionError("verify_stein_lemma: W must act on the product space");
    }
    const double comm = commutator(pq, w).norm();
    if (comm > comm_tol) {
      std::ostringstream os;
      os << "P (x) Q does not commute with W (||[P (x) Q, W]|| = " << comm << ")";
      throw PreconditionError(os.str());
    }
    if (comm_out != nullptr) *comm_out = comm;
    return extract_stein_operator(proj, q, w);
  };

  double comm = 0.0;
  ComplexMatrix t = solve(p, &comm);
  const double factorization = (tensor(p, q) * w - tensor(p, t)).norm();

  std::vector<ComplexMatrix> alt;
  std::vector<ComplexMatrix> all{t};
  for (const auto& a : alternatives) {
    require_projector(a, "alternative projector");
    alt.push_back(solve(a, nullptr));
    all.push_back(alt.back());
  }
  return {std::move(t), comm, factorization, std::move(alt), max_pairwise(all)};
}

SteinInstance random_stein_instance(std::size_t d1, std::size_t d2, std::size_t alternatives,
                                    RandomSource& rng) {
  if (d1 == 0 || d2 == 0) throw DimensionError("random_stein_instance: dims must be positive");
  const auto n2 = static_cast<Eigen::Index>(d2);
  const std::size_t kernel = d2 >= 2 ? 1 + rng.index(d2 - 1) : 0;
  const std::size_t support = d2 - kernel;

  // Eigenvalues of Q in its eigenbasis: support levels (possibly repeated),
  // followed by the kernel.
  std::vector<double> levels(d2, 0.0);
  const std::size_t distinct = support == 0 ? 0 : 1 + rng.index(support);
  std::vector<double> level_values;
  for (std::size_t k = 0; k < distinct; ++k) level_values.push_back(0.2 + 0.2 * static_cast<double>(k) + 0.1 * rng.uniform());
  for (std::size_t i = 0; i < support; ++i) levels[i] = level_values[i % distinct];

  // R is block diagonal over groups of equal levels.
  DenseMatrix r = DenseMatrix::Zero(n2, n2);
  for (std::size_t i = 0; i < d2; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      if (levels[i] == levels[j]) {
        r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.complex_gaussian();
      }
    }
  }
  const DenseMatrix d = ComplexMatrix::diagonal(levels).dense();
  DenseMatrix kernel_proj = DenseMatrix::Zero(n2, n2);
  for (std::size_t i = support; i < d2; ++i) {
    kernel_proj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  }

  DenseMatrix w = tensor(ComplexMatrix::identity(d1), ComplexMatrix(r)).dense();
  if (kernel > 0) {
    for (int term = 0; term < 2; ++term) {
      const ComplexMatrix x = rng.matrix(d1, d1);
      const DenseMatrix y = kernel_proj * rng.matrix(d2, d2).dense() * kernel_proj;
      w += tensor(x, ComplexMatrix(y)).dense();
    }
  }
  const ComplexMatrix v = rng.unitary(d2);
  const DenseMatrix lift = tensor(ComplexMatrix::identity(d1), v).dense();
  const DenseMatrix w_rot = lift * w * lift.adjoint();
  const DenseMatrix q_rot = v.dense() * d * v.dense().adjoint();

  auto random_projector = [&] { return rng.projector(d1, 1 + rng.index(d1)); };
  SteinInstance inst{random_projector(), ComplexMatrix(DenseMatrix(0.5 * (q_rot + q_rot.adjoint()))),
                     ComplexMatrix(w_rot), {}};
  for (std::size_t k = 0; k < alternatives; ++k) inst.alternatives.push_back(random_projector());
  return inst;
}

ScenarioReport run_stein_scenario(std::size_t d1, std::size_t d2, std::size_t trials,
                                  std::uint64_t seed, std::size_t alternatives, double tol) {
  ScenarioReport r;
  r.scenario_name = "stein";
  r.input("dims", std::vector<double>{static_cast<double>(d1), static_cast<double>(d2)});
  r.input("trials", static_cast<std::int64_t>(trials));
  r.input("alternatives", static_cast<std::int64_t>(alternatives));
  r.input("seed", static_cast<std::int64_t>(seed));
  r.input("tolerance", tol);

  RandomSource rng(seed);
  double worst_comm = 0.0;
  double worst_fact = 0.0;
  double worst_indep = 0.0;
  std::vector<double> fact;
  std::vector<double> indep;
  for (std::size_t k = 0; k < trials; ++k) {
    const SteinInstance inst = random_stein_instance(d1, d2, alternatives, rng);
    const SteinReport rep = verify_stein_lemma(inst.p, inst.q, inst.w, inst.alternatives);
    worst_comm = std::max(worst_comm, rep.commutator_norm);
    worst_fact = std::max(worst_fact, rep.factorization_residual);
    worst_indep = std::max(worst_indep, rep.independence_residual);
    fact.push_back(rep.factorization_residual);
    indep.push_back(rep.independence_residual);
  }
  r.record("max_commutator_norm", worst_comm);
  r.record("factorization_residuals", fact);
  r.record("independence_residuals", indep);
  r.record("max_factorization_residual", worst_fact);
  r.record("max_independence_residual", worst_indep);
  r.verdict("(P (x) Q) W factorizes as P (x) T_Q", worst_fact <= tol, worst_fact);
  r.verdict("T_Q does not depend on P", worst_indep <= tol, worst_indep);
  r.contradiction_flag = false;
  r.narrative =
      "Commuting instances: (P (x) Q) W = P (x) T_Q with a single T_Q shared by every "
      "projector P.";
  return r;
}

// ---------------------------------------------------------------------------

ExpectationReport expectation_independence(const MeasurementScheme& scheme,
                                           const DensityOperator& apparatus_mixed,
                                           std::span<const ComplexMatrix> system_states,
                                           double comm_tol) {
  if (apparatus_mixed.dim() != scheme.apparatus_dim) {
    throw DimensionError("expectation_independence: apparatus state has the wrong dimension");
  }
  if (system_states.empty()) throw PreconditionError("expectation_independence: no system states");
  const ComplexMatrix big_m = scheme.composite_pointer();
  const ComplexMatrix heisenberg = adjoint(scheme.coupling) * big_m * scheme.coupling;

  ExpectationReport rep{};
  std::vector<ComplexMatrix> ts;
  for (const auto& p : system_states) {
    require_projector(p, "system state");
    if (p.rows() != scheme.system_dim || std::abs(trace(p) - 1.0) > 1e-10) {
      throw PreconditionError("system states must be rank-1 projectors on the system space");
    }
    const DensityOperator fin = final_state(scheme, tensor(DensityOperator(p), apparatus_mixed));
    const double comm = commutator(fin.matrix(), big_m).norm();
    if (comm > comm_tol) {
      std::ostringstream os;
      os << "final state does not commute with 1 (x) M (norm " << comm << ")";
      throw PreconditionError(os.str());
    }
    const double expectation = trace(fin.matrix() * big_m).real();
    const ComplexMatrix t = extract_stein_operator(p, apparatus_mixed.matrix(), heisenberg);
    ExpectationEntry e{expectation, trace(t).real(), comm, std::nullopt};
    for (const auto& pair : scheme.measured.spectrum().pairs()) {
      if (std::abs(trace(p * pair.projector) - 1.0) <= 1e-10) e.eigenvalue = pair.value;
    }
    rep.entries.push_back(e);
    ts.push_back(t);
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& e : rep.entries) {
    lo = std::min(lo, e.expectation);
    hi = std::max(hi, e.expectation);
    rep.trace_residual = std::max(rep.trace_residual, std::abs(e.expectation - e.trace_t));
    if (e.eigenvalue) {
      if (const auto m = scheme.calibration.pointer_for(*e.eigenvalue)) {
        rep.reproduction_deviation =
            std::max(rep.reproduction_deviation, std::abs(e.expectation - *m));
      }
    }
  }
  rep.spread = hi - lo;
  rep.t_independence = max_pairwise(ts);

  const auto d1 = scheme.system_dim;
  for (std::size_t k = 0; k < d1; ++k) {
    for (std::size_t l = 0; l < d1; ++l) {
      DenseMatrix unit = DenseMatrix::Zero(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d1));
      unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = 1.0;
      const double c =
          commutator(tensor(ComplexMatrix(unit), apparatus_mixed.matrix()), heisenberg).norm();
      rep.joint_commutator = std::max(rep.joint_commutator, c);
    }
  }
  return rep;
}

ScenarioReport run_expectation_scenario(const std::array<double, 3>& weights, double tol) {
  namespace sg = stern_gerlach;
  validate_weights(weights);
  ScenarioReport r;
  r.scenario_name = "expectation";
  r.input("weights", std::vector<double>(weights.begin(), weights.end()));
  r.input("tolerance", tol);

  const MeasurementScheme scheme = sg::ideal_scheme();
  const DensityOperator ready = sg::mixed_ready_state(weights);
  const std::vector<ComplexMatrix> states{spin_up().projector(), spin_down().projector()};
  const ExpectationReport rep = expectation_independence(scheme, ready, states);

  std::vector<double> expectations;
  std::vector<double> traces;
  double worst_comm = 0.0;
  for (const auto& e : rep.entries) {
    expectations.push_back(e.expectation);
    traces.push_back(e.trace_t);
    worst_comm = std::max(worst_comm, e.commutator_norm);
  }
  r.record("expectations", expectations);
  r.record("stein_traces", traces);
  r.record("commutator_norm", worst_comm);
  r.record("spread", rep.spread);
  r.record("t_independence", rep.t_independence);
  r.record("joint_commutator", rep.joint_commutator);
  r.record("reproduction_deviation", rep.reproduction_deviation);

  r.verdict("<1 (x) M> equals Tr(T) for each input", rep.trace_residual <= tol, rep.trace_residual);
  r.verdict("<1 (x) M> independent of the system eigenstate", rep.spread <= tol, rep.spread);
  r.verdict("pointer expectation reproduces the calibrated outcome",
            rep.reproduction_deviation <= tol, rep.reproduction_deviation);
  r.contradiction_flag = rep.reproduction_deviation > tol;
  r.narrative =
      r.contradiction_flag
          ? "The final pointer expectation misses the calibrated outcome for some eigenstate "
            "input, so the probability reproducibility condition fails for this ready state."
          : "The pointer expectation reproduces the calibrated outcome for every eigenstate "
            "input: with a pure ready state the unitary account is safe.";
  return r;
}

// ---------------------------------------------------------------------------

NoSignallingReport no_signalling_check(const DensityOperator& joint, const Magnitude& a,
                                       std::span<const Magnitude> b_options) {
  if (b_options.empty()) throw PreconditionError("no_signalling_check: no settings supplied");
  NoSignallingReport rep{};
  for (const auto& b : b_options) {
    if (a.dim() * b.dim() != joint.dim()) {
      throw DimensionError("no_signalling_check: joint state does not match A (x) B");
    }
    std::vector<Outcome> marginal;
    double total = 0.0;
    for (const auto& pa : a.spectrum().pairs()) {
      double pr = 0.0;
      for (const auto& pb : b.spectrum().pairs()) {
        pr += trace(joint.matrix() * tensor(pa.projector, pb.projector)).real();
      }
      marginal.push_back({pa.value, pr});
      total += pr;
    }
    rep.max_normalization_error = std::max(rep.max_normalization_error, std::abs(total - 1.0));
    rep.marginals.emplace_back(std::move(marginal));
  }
  for (std::size_t i = 0; i < rep.marginals.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      for (const auto& e : rep.marginals[i].entries()) {
        rep.max_deviation = std::max(
            rep.max_deviation, std::abs(e.probability - rep.marginals[j].probability_of(e.value)));
      }
    }
  }
  return rep;
}

ScenarioReport run_no_signalling_scenario(JointState state, double tol) {
  ScenarioReport r;
  r.scenario_name = "nosignal";
  r.input("state", std::string(state == JointState::kSinglet ? "singlet" : "product"));
  r.input("tolerance", tol);

  DenseVector v = DenseVector::Zero(4);
  if (state == JointState::kSinglet) {
    v(1) = std::numbers::sqrt2 / 2.0;
    v(2) = -std::numbers::sqrt2 / 2.0;
  } else {
    // |up> (x) |+x>
    v(0) = std::numbers::sqrt2 / 2.0;
    v(1) = std::numbers::sqrt2 / 2.0;
  }
  const DensityOperator joint = DensityOperator::pure(StateVector::normalized(v));
  const std::vector<Magnitude> settings{spin_z(), spin_x()};
  const NoSignallingReport rep = no_signalling_check(joint, spin_z(), settings);

  for (std::size_t k = 0; k < settings.size(); ++k) {
    r.record("marginal_given_" + settings[k].name(), rep.marginals[k]);
  }
  r.record("max_deviation", rep.max_deviation);
  r.record("max_normalization_error", rep.max_normalization_error);
  r.verdict("marginal of A independent of the setting on the far side", rep.max_deviation <= tol,
            rep.max_deviation);
  r.verdict("per-setting marginals normalized", rep.max_normalization_error <= 1e-10,
            rep.max_normalization_error);
  r.contradiction_flag = false;
  r.narrative = "Without interaction the outcome statistics of A do not depend on the setting B.";
  return r;
}

ScenarioReport run_positive_control(std::size_t trials, std::uint64_t seed, double tol) {
  namespace sg = stern_gerlach;
  ScenarioReport r;
  r.scenario_name = "control";
  r.input("trials", static_cast<std::int64_t>(trials));
  r.input("seed", static_cast<std::int64_t>(seed));
  r.input("tolerance", tol);

  const MeasurementScheme scheme = sg::ideal_scheme();
  const DensityOperator ready = DensityOperator::pure(scheme.ready_state());
  RandomSource rng(seed);
  std::vector<double> deviations;
  double worst = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const DensityOperator system = rng.density(2);
    const auto rep = check_probability_reproducibility(scheme, system, ready, tol);
    deviations.push_back(rep.max_deviation);
    worst = std::max(worst, rep.max_deviation);
  }
  r.record("deviations", deviations);
  r.record("max_deviation", worst);
  r.verdict("probability reproducibility with a pure ready state", worst <= tol, worst);
  r.contradiction_flag = false;
  r.narrative =
      "With the pure ready state the pointer statistics reproduce the Born statistics of every "
      "system state: no clash.";
  return r;
}

}  // namespace mlab
