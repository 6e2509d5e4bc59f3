#pragma once

#include <optional>
#include <string>

#include "phasefluct/fock.hpp"

namespace phasefluct {

/// sg: sine/cosine operators from ladder operators rescaled by (N+1)^{-1/2}.
/// bp: exponential-phase operator from the annihilator rescaled by the scalar
///     (nbar + 1/2)^{-1/2}, nbar the post-interaction mean photon number.
enum class Formalism { sg, bp };

const char* to_string(Formalism f);
std::optional<Formalism> parse_formalism(const std::string& name);

/// Pump-mode phase operators (identity on all other modes).
struct PhaseOperatorSet {
  Formalism formalism = Formalism::sg;
  int pump_mode = 0;
  std::optional<double> mean_photons;  // bp only
  ModeOperator c_op;                   // hermitian
  ModeOperator s_op;                   // hermitian
  ModeOperator p0_op;                  // |0><0| on the pump mode
  std::optional<ModeOperator> e_op;    // bp only, non-hermitian
};

/// C = [(N+1)^{-1/2} a + a^dag (N+1)^{-1/2}] / 2,
/// S = [(N+1)^{-1/2} a - a^dag (N+1)^{-1/2}] / (2i).
PhaseOperatorSet sg_operators(const ModeSpace& space, int pump_mode);

/// E = (nbar + 1/2)^{-1/2} a;  C = (E + E^dag)/2,  S = -i (E - E^dag)/2.
PhaseOperatorSet bp_operators(const ModeSpace& space, int pump_mode, double nbar);

/// Every expectation the fluctuation parameters need, as checked reals
/// (imaginary residues above 1e-10 are an error).
struct MomentSet {
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  double var_n = 0.0;
  double mean_c = 0.0;
  double mean_s = 0.0;
  double mean_c2 = 0.0;
  double mean_s2 = 0.0;
  double var_c = 0.0;
  double var_s = 0.0;
  double p0 = 0.0;
};

MomentSet moments(const StateVector& state, const PhaseOperatorSet& set);

}  // namespace phasefluct
