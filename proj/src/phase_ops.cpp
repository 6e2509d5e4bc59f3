#include "phasefluct/phase_ops.hpp"

#include <cmath>

namespace phasefluct {

const char* to_string(Formalism f) {
  return f == Formalism::sg ? "sg" : "bp";
}

std::optional<Formalism> parse_formalism(const std::string& name) {
  if (name == "sg") return Formalism::sg;
  if (name == "bp") return Formalism::bp;
  return std::nullopt;
}

static ModeOperator pump_vacuum_projector(const ModeSpace& space, int pump_mode) {
  const Index d = space.cutoffs[pump_mode] + 1;
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(d, d);
  p0(0, 0) = 1.0;
  return embed_single_mode(space, pump_mode, p0, /*hermitian=*/true);
}

PhaseOperatorSet sg_operators(const ModeSpace& space, int pump_mode) {
  if (pump_mode < 0 || pump_mode >= space.num_modes()) {
    throw Error("invalid-mode-index", "pump mode " + std::to_string(pump_mode));
  }
  const Index d = space.cutoffs[pump_mode] + 1;

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(d, d);  // (N+1)^{-1/2}
  for (Index n = 0; n < d; ++n) f(n, n) = 1.0 / std::sqrt(double(n) + 1.0);

  const Eigen::MatrixXcd fa = f * a;
  const Eigen::MatrixXcd c = 0.5 * (fa + fa.adjoint());
  const Eigen::MatrixXcd s = (fa - fa.adjoint()) / Complex(0.0, 2.0);

  PhaseOperatorSet set;
  set.formalism = Formalism::sg;
  set.pump_mode = pump_mode;
  set.c_op = embed_single_mode(space, pump_mode, c, /*hermitian=*/true);
  set.s_op = embed_single_mode(space, pump_mode, s, /*hermitian=*/true);
  set.p0_op = pump_vacuum_projector(space, pump_mode);
  return set;
}

PhaseOperatorSet bp_operators(const ModeSpace& space, int pump_mode, double nbar) {
  if (pump_mode < 0 || pump_mode >= space.num_modes()) {
    throw Error("invalid-mode-index", "pump mode " + std::to_string(pump_mode));
  }
  if (nbar < 0) {
    throw Error("negative-mean-photon", "bp rescaling needs nbar >= 0");
  }
  const double k = 1.0 / std::sqrt(nbar + 0.5);

  PhaseOperatorSet set;
  set.formalism = Formalism::bp;
  set.pump_mode = pump_mode;
  set.mean_photons = nbar;
  const ModeOperator e = k * ladder(space, pump_mode, Ladder::lower);
  set.e_op = e;
  set.c_op = as_hermitian(0.5 * (e + adjoint(e)));
  set.s_op = as_hermitian(Complex(0.0, -0.5) * (e - adjoint(e)));
  set.p0_op = pump_vacuum_projector(space, pump_mode);
  return set;
}

static double checked_real(Complex z, const char* label) {
  if (std::abs(z.imag()) > 1e-10) {
    throw Error("imaginary-residue-exceeded",
                std::string(label) + " has imaginary part " + std::to_string(z.imag()));
  }
  return z.real();
}

MomentSet moments(const StateVector& state, const PhaseOperatorSet& set) {
  require_same_space(state.space, set.c_op.space);
  const ModeOperator n = number_op(state.space, set.pump_mode);

  MomentSet m;
  m.mean_n = checked_real(expectation(state, n), "<N>");
  m.var_n = variance(state, n);
  m.mean_n2 = m.var_n + m.mean_n * m.mean_n;
  m.mean_c = checked_real(expectation(state, set.c_op), "<C>");
  m.mean_s = checked_real(expectation(state, set.s_op), "<S>");
  m.var_c = variance(state, set.c_op);
  m.var_s = variance(state, set.s_op);
  m.mean_c2 = m.var_c + m.mean_c * m.mean_c;
  m.mean_s2 = m.var_s + m.mean_s * m.mean_s;
  m.p0 = checked_real(expectation(state, set.p0_op), "<P0>");
  return m;
}

}  // namespace phasefluct
