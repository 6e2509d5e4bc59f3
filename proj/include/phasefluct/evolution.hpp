#pragma once

#include <vector>

#include "phasefluct/fock.hpp"

namespace phasefluct {

struct EvolutionSettings {
  double accuracy = 1e-10;          // target amplitude error of exp(-iHt) psi
  double leakage_threshold = 1e-8;  // max boundary mass after evolution
  int max_steps = 200000;           // internal sub-step cap
};

/// exp(-i H t) |psi> by Taylor summation over sub-steps with ||H||_1 tau <= 1.
/// Deterministic for fixed inputs and settings; norm and <H> drift stay at
/// the accuracy target or below.
StateVector evolve(const StateVector& state, const ModeOperator& hamiltonian,
                   double t, const EvolutionSettings& settings = {});

/// Short-time expansion A(t) ~ sum_n t^n/n! M_n with nested-commutator
/// coefficients M_n = (i ad_H)^n (op). M_0 is the base operator itself.
struct TaylorExpansion {
  ModeOperator base;
  int order = 0;
  std::vector<ModeOperator> coefficients;  // M_0 .. M_order
};

/// Computes the expansion coefficients up to `order` (max 4; operator fill-in
/// grows quickly beyond that).
TaylorExpansion heisenberg_taylor(const ModeOperator& hamiltonian,
                                  const ModeOperator& op, int order);

/// Sums t^n/n! M_n into a single operator.
ModeOperator evaluate(const TaylorExpansion& expansion, double t);

/// Total probability mass on basis states with any mode at its cutoff.
double leakage(const StateVector& state);

/// True for basis states keeping at least margins[m] levels of clearance
/// below every cutoff. Margin 1 is "no support at any cutoff".
std::vector<bool> interior_mask(const ModeSpace& space, const std::vector<int>& margins);

/// max |A_ij - B_ij| over rows and columns in the interior defined by
/// `margins`. Truncation artifacts of operator algebra live outside it.
double max_interior_difference(const ModeOperator& a, const ModeOperator& b,
                               const std::vector<int>& margins);

}  // namespace phasefluct
