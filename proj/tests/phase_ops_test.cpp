#include <doctest.h>

#include <cmath>
#include <random>

#include "phasefluct/evolution.hpp"
#include "phasefluct/phase_ops.hpp"
#include "phasefluct/process.hpp"

using namespace phasefluct;

namespace {

StateVector random_interior_state(const ModeSpace& space, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  StateVector s;
  s.space = space;
  s.amplitudes = Eigen::VectorXcd::Zero(space.total_dim);
  const auto mask = interior_mask(space, std::vector<int>(space.num_modes(), 1));
  for (Index i = 0; i < space.total_dim; ++i) {
    if (mask[i]) s.amplitudes[i] = Complex(dist(rng), dist(rng));
  }
  s.amplitudes /= s.amplitudes.norm();
  return s;
}

StateVector pump_fock(const ModeSpace& space, int n) {
  StateVector s;
  s.space = space;
  s.amplitudes = Eigen::VectorXcd::Zero(space.total_dim);
  s.amplitudes[n * space.strides[space.pump_mode]] = 1.0;
  return s;
}

}  // namespace

TEST_CASE("sg operators: vacuum matrix elements") {
  const ModeSpace space = build_space({ModeRole::pump}, {15});
  const auto set = sg_operators(space, 0);
  const StateVector vac = pump_fock(space, 0);

  CHECK(std::abs(expectation(vac, set.c_op)) < 1e-15);
  CHECK(std::abs(expectation(vac, set.s_op)) < 1e-15);
  // C|0> = |1>/2, so <0|C^2|0> = 1/4
  CHECK(expectation(vac, set.c_op * set.c_op).real() == doctest::Approx(0.25));
  CHECK(expectation(vac, set.p0_op).real() == doctest::Approx(1.0));
}

TEST_CASE("sg operators satisfy the published identities") {
  const ModeSpace space =
      build_space({ModeRole::pump, ModeRole::stokes, ModeRole::signal}, {11, 3, 3});
  const auto set = sg_operators(space, 0);
  const ModeOperator n = number_op(space, 0);
  const std::vector<int> pump_margin = {1, 0, 0};

  SUBCASE("[C,S] = (i/2) P0 on the interior") {
    const ModeOperator lhs = commutator(set.c_op, set.s_op);
    const ModeOperator rhs = Complex(0.0, 0.5) * set.p0_op;
    CHECK(max_interior_difference(lhs, rhs, pump_margin) <= 1e-10);
  }

  SUBCASE("[N,C] = -iS and [N,S] = iC on the interior") {
    CHECK(max_interior_difference(commutator(n, set.c_op),
                                  Complex(0.0, -1.0) * set.s_op, pump_margin) <= 1e-10);
    CHECK(max_interior_difference(commutator(n, set.s_op),
                                  Complex(0.0, 1.0) * set.c_op, pump_margin) <= 1e-10);
  }

  SUBCASE("C and S are hermitian") {
    CHECK(set.c_op.hermitian);
    CHECK(max_abs_entry(SparseMatrixXcd(set.c_op.matrix.adjoint()) - set.c_op.matrix) <=
          1e-12);
    CHECK(max_abs_entry(SparseMatrixXcd(set.s_op.matrix.adjoint()) - set.s_op.matrix) <=
          1e-12);
  }
}

TEST_CASE("sg moment identities and uncertainty bounds on random states") {
  const ModeSpace space = build_space({ModeRole::pump, ModeRole::harmonic}, {10, 3});
  const auto set = sg_operators(space, 0);
  for (unsigned seed : {3u, 7u, 11u, 19u, 23u}) {
    const StateVector psi = random_interior_state(space, seed);
    const MomentSet m = moments(psi, set);

    // unit decomposition <C^2>+<S^2>+<P0>/2 = 1
    CHECK(m.mean_c2 + m.mean_s2 + m.p0 / 2.0 == doctest::Approx(1.0).epsilon(1e-10));
    // uncertainty products
    CHECK(std::sqrt(m.var_n) * std::sqrt(m.var_s) >= 0.5 * std::abs(m.mean_c) - 1e-10);
    CHECK(std::sqrt(m.var_n) * std::sqrt(m.var_c) >= 0.5 * std::abs(m.mean_s) - 1e-10);
    // variance product bound from [C,S] = (i/2) P0
    CHECK(m.var_c * m.var_s >= m.p0 * m.p0 / 16.0 - 1e-10);
  }
}

TEST_CASE("sg moments on a coherent state") {
  const ModeSpace space = build_space({ModeRole::pump}, {23});
  const StateVector psi = coherent_pump_state(space, pump_from_mean(2.0, M_PI / 3));
  const MomentSet m = moments(psi, sg_operators(space, 0));
  CHECK(m.mean_c2 + m.mean_s2 + m.p0 / 2.0 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bp operators: scalar rescaling and reconstruction") {
  const ModeSpace space = build_space({ModeRole::pump}, {12});

  SUBCASE("nbar = 0 gives E = sqrt(2) a") {
    const auto set = bp_operators(space, 0, 0.0);
    const ModeOperator expected =
        std::sqrt(2.0) * ladder(space, 0, Ladder::lower);
    REQUIRE(set.e_op.has_value());
    CHECK(max_abs_entry((*set.e_op - expected).matrix) <= 1e-12);
  }

  SUBCASE("C and S reconstruct E exactly") {
    const auto set = bp_operators(space, 0, 1.7);
    const ModeOperator rebuilt =
        set.c_op + Complex(0.0, 1.0) * set.s_op;  // C + iS = E
    CHECK(max_abs_entry((rebuilt - *set.e_op).matrix) <= 1e-14);
  }

  SUBCASE("negative nbar is rejected") {
    CHECK_THROWS_WITH_AS(bp_operators(space, 0, -0.5),
                         doctest::Contains("negative-mean-photon"), Error);
  }
}

TEST_CASE("bp commutator is (i/2)(nbar+1/2)^{-1} on the interior") {
  const ModeSpace space = build_space({ModeRole::pump, ModeRole::stokes}, {9, 2});
  const double nbar = 1.7;
  const auto set = bp_operators(space, 0, nbar);
  const ModeOperator lhs = commutator(set.c_op, set.s_op);
  const ModeOperator rhs = Complex(0.0, 0.5 / (nbar + 0.5)) * identity_op(space);
  CHECK(max_interior_difference(lhs, rhs, {1, 0}) <= 1e-10);
}

TEST_CASE("bp unit sum holds when nbar equals the state's own mean") {
  const ModeSpace space = build_space({ModeRole::pump, ModeRole::stokes}, {14, 3});
  for (unsigned seed : {2u, 5u, 9u}) {
    const StateVector psi = random_interior_state(space, seed);
    const double nbar = expectation(psi, number_op(space, 0)).real();
    const MomentSet m = moments(psi, bp_operators(space, 0, nbar));
    CHECK(m.mean_c2 + m.mean_s2 == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("bp quadrature variance of a coherent state") {
  // asq = 1, theta = 0, nbar = 1: varC = (1/4)/(3/2) = 1/6
  const ModeSpace space = build_space({ModeRole::pump}, {23});
  const StateVector psi = coherent_pump_state(space, pump_from_mean(1.0, 0.0));
  const MomentSet m = moments(psi, bp_operators(space, 0, 1.0));
  CHECK(m.var_c == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
  CHECK(m.var_s == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
}

TEST_CASE("moments rejects mismatched spaces") {
  const ModeSpace a = build_space({ModeRole::pump}, {12});
  const ModeSpace b = build_space({ModeRole::pump}, {13});
  const StateVector psi = coherent_pump_state(a, pump_from_mean(0.4, 0.0));
  CHECK_THROWS_WITH_AS(moments(psi, sg_operators(b, 0)),
                       doctest::Contains("space-mismatch"), Error);
}
