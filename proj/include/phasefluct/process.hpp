#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasefluct/fock.hpp"

namespace phasefluct {

/// The three pump-depleting mixing channels handled by this library.
/// fwm: two pump quanta -> one stokes + one signal quantum.
/// swm: two pump quanta -> three stokes + one signal quantum.
/// shg: two pump quanta -> one harmonic quantum.
enum class ProcessKind { fwm, swm, shg };

const char* to_string(ProcessKind kind);
std::optional<ProcessKind> parse_process(const std::string& name);

/// Interaction scenario: coupling g, coherent drive, interaction time t.
/// The free-field frequencies are recorded for documentation only; the
/// dynamics is generated by the interaction term in the rotating frame, so
/// they never enter any computed quantity.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::fwm;
  double g = 0.0;  // coupling, units of inverse time (hbar = 1)
  PumpAmplitude pump;
  double t = 0.0;
  double omega1 = 0.0, omega2 = 0.0, omega3 = 0.0;

  /// Largest second-order coefficient times g^2 t^2 |alpha|^2; the closed
  /// forms neglect terms of this size squared.
  double smallness() const;
  /// True when smallness() > 0.1 and the second-order results are suspect.
  bool validity_warning() const { return smallness() > 0.1; }

  friend bool operator==(const ProcessSpec&, const ProcessSpec&) = default;
};

/// Mode roles expected by each process (pump first).
std::vector<ModeRole> process_roles(ProcessKind kind);

/// Default truncation cutoffs: pump cutoff ceil(|alpha|^2 + 8|alpha| + 10)
/// covers the coherent tail; auxiliary modes only gain a few quanta at the
/// short times where the second-order formulas are meaningful.
std::vector<int> default_cutoffs(ProcessKind kind, double alpha_sq);

/// Quanta one interaction event moves in each mode. Entry-wise operator
/// comparisons are exact on the subspace that keeps this many levels of
/// clearance from every cutoff (see evolution.hpp, interior helpers).
std::vector<int> interior_margins(ProcessKind kind);

ModeSpace build_process_space(const ProcessSpec& spec,
                              const std::vector<int>& cutoff_overrides = {});

/// Interaction-picture coupling term only:
///   fwm: g (A^dag^2 B C + A^2 B^dag C^dag)
///   swm: g (A^dag^2 B^3 C + A^2 B^dag^3 C^dag)
///   shg: g (a2^dag a1^2 + a1^dag^2 a2)
/// Hermitian by construction; free-field terms are omitted.
ModeOperator interaction_hamiltonian(const ProcessSpec& spec, const ModeSpace& space);

/// The literal second-order short-time solution A(t) for the pump lowering
/// operator, assembled term by term from ladder matrices. Serves as the
/// comparison target for the automated nested-commutator expansion.
ModeOperator second_order_heisenberg_operator(const ProcessSpec& spec,
                                              const ModeSpace& space);

/// Second-order closed-form predictions for one scenario. These evaluate the
/// published second-order expressions verbatim; the verification suite
/// compares them against exact evolution (and finds genuine discrepancies in
/// the fwm and swm channels, see the verify module).
struct ClosedFormResult {
  ProcessSpec spec;
  double mean_n = 0.0;   // pump <N> after interaction
  double var_n = 0.0;    // (Delta N)^2
  double d = 0.0;        // antibunching witness varN - <N>
  double u = 0.0;
  double s_param = 0.0;
  std::optional<double> q;  // undefined at |alpha|^2 = 0 or cos(2 theta) = -1

  /// fwm only: the intermediate quadrature moments of the same expansion.
  struct Quadratures {
    double mean_c_sq, mean_s_sq, mean_c2, mean_s2, var_c, var_s;
  };
  std::optional<Quadratures> quadratures;

  std::string provenance = "second-order closed form";
};

ClosedFormResult closed_form(const ProcessSpec& spec);

}  // namespace phasefluct
