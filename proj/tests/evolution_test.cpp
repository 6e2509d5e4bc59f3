#include <doctest.h>

#include <cmath>

#include "phasefluct/evolution.hpp"
#include "phasefluct/process.hpp"

using namespace phasefluct;

namespace {

ProcessSpec spec_of(ProcessKind kind, double asq, double theta, double g, double t) {
  ProcessSpec s;
  s.kind = kind;
  s.g = g;
  s.pump = pump_from_mean(asq, theta);
  s.t = t;
  return s;
}

}  // namespace

TEST_CASE("evolve at t=0 returns the input state") {
  const ProcessSpec spec = spec_of(ProcessKind::fwm, 1.0, 0.2, 1.0, 0.0);
  const ModeSpace space = build_process_space(spec);
  const StateVector psi = coherent_pump_state(space, spec.pump);
  const ModeOperator h = interaction_hamiltonian(spec, space);
  const StateVector out = evolve(psi, h, 0.0);
  CHECK((out.amplitudes - psi.amplitudes).norm() == 0.0);
}

TEST_CASE("evolve is a semigroup: two half steps equal one full step") {
  const ProcessSpec spec = spec_of(ProcessKind::fwm, 1.0, 0.0, 1.0, 0.02);
  const ModeSpace space = build_process_space(spec);
  const StateVector psi = coherent_pump_state(space, spec.pump);
  const ModeOperator h = interaction_hamiltonian(spec, space);
  const EvolutionSettings settings;

  const StateVector full = evolve(psi, h, 0.02, settings);
  const StateVector halves = evolve(evolve(psi, h, 0.01, settings), h, 0.01, settings);
  CHECK((full.amplitudes - halves.amplitudes).norm() <= 2.0 * settings.accuracy);
}

TEST_CASE("evolve is deterministic for fixed settings") {
  const ProcessSpec spec = spec_of(ProcessKind::swm, 2.0, 0.5, 1.0, 0.03);
  const ModeSpace space = build_process_space(spec);
  const StateVector psi = coherent_pump_state(space, spec.pump);
  const ModeOperator h = interaction_hamiltonian(spec, space);
  const StateVector a = evolve(psi, h, 0.03);
  const StateVector b = evolve(psi, h, 0.03);
  CHECK((a.amplitudes - b.amplitudes).norm() == 0.0);
}

TEST_CASE("evolved pump occupation matches the second-order mean") {
  // fwm, asq=1, g=1, t=0.01: <N> = 1 - 2e-4 up to fourth-order corrections
  const ProcessSpec spec = spec_of(ProcessKind::fwm, 1.0, 0.0, 1.0, 0.01);
  const ModeSpace space = build_space(process_roles(ProcessKind::fwm), {23, 7, 7});
  const StateVector psi = coherent_pump_state(space, spec.pump);
  const ModeOperator h = interaction_hamiltonian(spec, space);
  const StateVector out = evolve(psi, h, spec.t);
  const double n = expectation(out, number_op(space, 0)).real();
  CHECK(std::abs(n - (1.0 - 2e-4)) < 1e-6);
}

TEST_CASE("unitarity and energy conservation") {
  for (ProcessKind kind : {ProcessKind::fwm, ProcessKind::swm, ProcessKind::shg}) {
    const ProcessSpec spec = spec_of(kind, 2.0, 0.9, 1.0, 0.05);
    const ModeSpace space = build_process_space(spec);
    const StateVector psi = coherent_pump_state(space, spec.pump);
    const ModeOperator h = interaction_hamiltonian(spec, space);
    const double e0 = expectation(psi, h).real();
    const StateVector out = evolve(psi, h, spec.t);
    CHECK(std::abs(out.norm() - 1.0) <= 1e-10);
    CHECK(std::abs(expectation(out, h).real() - e0) <= 1e-9);
  }
}

TEST_CASE("evolve reproduces the two-level Rabi solution exactly") {
  // |2,0> couples only to |0,1> under the shg interaction, with matrix
  // element g*sqrt(2); the evolution is a closed-form rotation:
  //   psi(t) = cos(sqrt(2) g t) |2,0> - i sin(sqrt(2) g t) |0,1>
  const double g = 0.8;
  ProcessSpec spec;
  spec.kind = ProcessKind::shg;
  spec.g = g;
  spec.pump = pump_from_mean(1.0, 0.0);
  const ModeSpace space = build_space({ModeRole::pump, ModeRole::harmonic}, {4, 4});
  const ModeOperator h = interaction_hamiltonian(spec, space);

  StateVector psi;
  psi.space = space;
  psi.amplitudes = Eigen::VectorXcd::Zero(space.total_dim);
  const Index i20 = 2 * space.strides[0];
  const Index i01 = 1 * space.strides[1];
  psi.amplitudes[i20] = 1.0;

  for (double t : {0.3, 1.0, 2.7}) {
    const StateVector out = evolve(psi, h, t);
    const double angle = std::sqrt(2.0) * g * t;
    CHECK(std::abs(out.amplitudes[i20] - Complex(std::cos(angle), 0.0)) < 1e-11);
    CHECK(std::abs(out.amplitudes[i01] - Complex(0.0, -std::sin(angle))) < 1e-11);
    // nothing leaks out of the two-level subspace
    double rest = 0.0;
    for (Index i = 0; i < space.total_dim; ++i) {
      if (i != i20 && i != i01) rest += std::norm(out.amplitudes[i]);
    }
    CHECK(rest < 1e-22);
  }
}

TEST_CASE("evolve enforces its internal step cap") {
  const ModeSpace space = build_space({ModeRole::pump}, {9});
  const StateVector psi = coherent_pump_state(space, pump_from_mean(0.5, 0.0));
  const ModeOperator n = number_op(space, 0);
  EvolutionSettings settings;
  settings.max_steps = 2;
  CHECK_THROWS_WITH_AS(evolve(psi, n, 100.0, settings),
                       doctest::Contains("max-steps-exceeded"), Error);
}

TEST_CASE("evolve rejects non-hermitian generators and negative times") {
  const ModeSpace space = build_space({ModeRole::pump}, {9});
  const StateVector psi = coherent_pump_state(space, pump_from_mean(0.5, 0.0));
  const ModeOperator a = ladder(space, 0, Ladder::lower);
  CHECK_THROWS_WITH_AS(evolve(psi, a, 0.1), doctest::Contains("non-hermitian"), Error);

  const ModeOperator n = number_op(space, 0);
  CHECK_THROWS_WITH_AS(evolve(psi, n, -0.1), doctest::Contains("validation-error"),
                       Error);
}

TEST_CASE("heisenberg_taylor basics") {
  const ProcessSpec spec = spec_of(ProcessKind::fwm, 1.0, 0.0, 0.7, 0.0);
  const ModeSpace space = build_space(process_roles(ProcessKind::fwm), {9, 4, 4});
  const ModeOperator h = interaction_hamiltonian(spec, space);
  const ModeOperator a = ladder(space, 0, Ladder::lower);

  SUBCASE("order 0 is the base operator") {
    const TaylorExpansion exp0 = heisenberg_taylor(h, a, 0);
    CHECK(max_abs_entry((evaluate(exp0, 0.37) - a).matrix) == 0.0);
  }

  SUBCASE("first coefficient is -2ig A^dag B C") {
    const TaylorExpansion exp1 = heisenberg_taylor(h, a, 1);
    const ModeOperator expected =
        Complex(0.0, -2.0 * spec.g) * (adjoint(a) * ladder(space, 1, Ladder::lower) *
                                       ladder(space, 2, Ladder::lower));
    CHECK(max_interior_difference(exp1.coefficients[1], expected, {2, 1, 1}) <= 1e-12);
  }

  SUBCASE("order above 4 is rejected") {
    CHECK_THROWS_WITH_AS(heisenberg_taylor(h, a, 5),
                         doctest::Contains("validation-error"), Error);
  }
}

TEST_CASE("order-2 expansion matches the literal operator on the interior") {
  for (ProcessKind kind : {ProcessKind::fwm, ProcessKind::swm, ProcessKind::shg}) {
    const ProcessSpec spec = spec_of(kind, 1.0, 0.0, 0.1, 0.1);
    const ModeSpace space = build_process_space(spec);
    const ModeOperator h = interaction_hamiltonian(spec, space);
    const ModeOperator a = ladder(space, 0, Ladder::lower);
    const ModeOperator expanded = evaluate(heisenberg_taylor(h, a, 2), spec.t);
    const ModeOperator reference = second_order_heisenberg_operator(spec, space);
    CHECK(max_interior_difference(expanded, reference, interior_margins(kind)) <= 1e-9);
  }
}

TEST_CASE("heisenberg and schrodinger pictures agree beyond second order") {
  // |<psi0| A2(t) |psi0> - <psi_t| A |psi_t>| / t^2 must vanish as t -> 0
  const ProcessSpec base = spec_of(ProcessKind::fwm, 1.0, 0.0, 1.0, 0.0);
  const ModeSpace space = build_process_space(base);
  const StateVector psi = coherent_pump_state(space, base.pump);
  const ModeOperator h = interaction_hamiltonian(base, space);
  const ModeOperator a = ladder(space, 0, Ladder::lower);
  const TaylorExpansion exp2 = heisenberg_taylor(h, a, 2);

  double prev_ratio = -1.0;
  for (double t : {0.08, 0.04, 0.02, 0.01}) {
    const Complex heis = expectation(psi, evaluate(exp2, t));
    const StateVector evolved = evolve(psi, h, t);
    const Complex schro = expectation(evolved, a);
    const double ratio = std::abs(heis - schro) / (t * t);
    if (prev_ratio >= 0.0) CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
}

TEST_CASE("leakage measures boundary mass") {
  const ModeSpace space = build_space({ModeRole::pump, ModeRole::stokes}, {5, 3});

  SUBCASE("vacuum has none") {
    const StateVector vac = coherent_pump_state(space, pump_from_mean(0.0, 0.0));
    CHECK(leakage(vac) == 0.0);
  }

  SUBCASE("a cutoff Fock state is pure boundary") {
    StateVector edge;
    edge.space = space;
    edge.amplitudes = Eigen::VectorXcd::Zero(space.total_dim);
    edge.amplitudes[5 * space.strides[0]] = 1.0;
    CHECK(leakage(edge) == 1.0);
  }

  SUBCASE("a well-truncated coherent state leaks almost nothing") {
    const ModeSpace roomy = build_space({ModeRole::pump}, {23});
    const StateVector psi = coherent_pump_state(roomy, pump_from_mean(1.0, 0.0));
    CHECK(leakage(psi) <= 1e-15);
  }
}

TEST_CASE("evolve flags leakage when cutoffs are too small") {
  // strong drive in a tiny space pushes mass to the boundary
  ProcessSpec spec = spec_of(ProcessKind::shg, 1.0, 0.0, 5.0, 2.0);
  const ModeSpace space = build_space({ModeRole::pump, ModeRole::harmonic}, {19, 2});
  const StateVector psi = coherent_pump_state(space, spec.pump);
  const ModeOperator h = interaction_hamiltonian(spec, space);
  CHECK_THROWS_WITH_AS(evolve(psi, h, spec.t), doctest::Contains("leakage-exceeded"),
                       Error);
}
