#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "phasefluct/errors.hpp"

namespace phasefluct {

using Complex = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<Complex>;
using Index = Eigen::Index;

/// Role a mode plays in a mixing process. Exactly one mode of a space is the
/// pump; the remaining modes start in vacuum.
enum class ModeRole { pump, stokes, signal, harmonic };

const char* to_string(ModeRole role);

/// Descriptor of a truncated multi-mode Fock basis. Basis states are the
/// tensor products |n_0, n_1, ...> with 0 <= n_m <= cutoffs[m]; mode 0 varies
/// slowest in the flat index.
struct ModeSpace {
  std::vector<ModeRole> roles;
  std::vector<int> cutoffs;      // max occupation; per-mode dimension = cutoff+1
  Index total_dim = 0;
  int pump_mode = -1;
  std::vector<Index> strides;

  int num_modes() const { return static_cast<int>(roles.size()); }

  int occupation(Index basis_index, int mode) const {
    return static_cast<int>((basis_index / strides[mode]) % (cutoffs[mode] + 1));
  }

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;
};

/// Builds a space descriptor. Rejects duplicate pump roles, empty mode lists
/// and total dimensions above the budget.
ModeSpace build_space(const std::vector<ModeRole>& roles,
                      const std::vector<int>& cutoffs,
                      Index dim_budget = 1000000);

/// Coherent drive alpha = |alpha| e^{i theta}. The mean photon number
/// |alpha|^2 is the user-facing knob and is stored exactly; the magnitude is
/// derived.
struct PumpAmplitude {
  double mean = 0.0;   // |alpha|^2 >= 0
  double phase = 0.0;  // radians, mod 2*pi

  double magnitude() const;
  double mean_photons() const { return mean; }
  Complex value() const;

  friend bool operator==(const PumpAmplitude&, const PumpAmplitude&) = default;
};

/// Validating constructor from the mean photon number |alpha|^2.
PumpAmplitude pump_from_mean(double alpha_sq, double theta);

/// Normalized amplitude vector over the tensor basis of a ModeSpace.
struct StateVector {
  ModeSpace space;
  Eigen::VectorXcd amplitudes;
  bool leakage_flagged = false;  // set when boundary mass exceeded a threshold

  double norm() const { return amplitudes.norm(); }
};

/// Sparse operator over the tensor basis. The hermitian flag is only set by
/// constructions that verified max|M - M^dag| <= 1e-12.
struct ModeOperator {
  ModeSpace space;
  SparseMatrixXcd matrix;
  bool hermitian = false;
};

enum class Ladder { lower, raise };

/// Lowering/raising operator on one mode, identity elsewhere.
/// lower |n> = sqrt(n) |n-1>, raise = adjoint(lower).
ModeOperator ladder(const ModeSpace& space, int mode, Ladder direction);

/// Number operator n |n> = n |n> on one mode (hermitian).
ModeOperator number_op(const ModeSpace& space, int mode);

ModeOperator identity_op(const ModeSpace& space);

/// Embeds a dense single-mode matrix on `mode`, identity on all other modes.
/// Set `hermitian` only if the single-mode matrix is hermitian.
ModeOperator embed_single_mode(const ModeSpace& space, int mode,
                               const Eigen::MatrixXcd& single,
                               bool hermitian = false);

/// Pump mode in the truncated, renormalized coherent state |alpha>, all other
/// modes in vacuum. Errors with insufficient-cutoff when the boundary mass of
/// the truncated state exceeds leakage_threshold.
StateVector coherent_pump_state(const ModeSpace& space, const PumpAmplitude& pump,
                                double leakage_threshold = 1e-8);

/// <psi| M |psi>.
Complex expectation(const StateVector& state, const ModeOperator& op);

/// <M^2> - <M>^2 for a hermitian operator; small negative values (>= -1e-12)
/// are clamped to zero, anything below errors.
double variance(const StateVector& state, const ModeOperator& op);

ModeOperator operator+(const ModeOperator& a, const ModeOperator& b);
ModeOperator operator-(const ModeOperator& a, const ModeOperator& b);
ModeOperator operator*(const ModeOperator& a, const ModeOperator& b);
ModeOperator operator*(Complex scale, const ModeOperator& op);
ModeOperator operator*(double scale, const ModeOperator& op);

ModeOperator adjoint(const ModeOperator& op);

/// AB - BA.
ModeOperator commutator(const ModeOperator& a, const ModeOperator& b);

/// Verifies max|M - M^dag| <= tol and returns the operator with the hermitian
/// flag set; errors with non-hermitian otherwise.
ModeOperator as_hermitian(ModeOperator op, double tol = 1e-12);

StateVector apply(const ModeOperator& op, const StateVector& state);

double max_abs_entry(const SparseMatrixXcd& m);

void require_same_space(const ModeSpace& a, const ModeSpace& b);

}  // namespace phasefluct
