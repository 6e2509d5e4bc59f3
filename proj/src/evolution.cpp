#include "phasefluct/evolution.hpp"

#include <cmath>

namespace phasefluct {

namespace {

// max column absolute sum
double one_norm(const SparseMatrixXcd& m) {
  double mx = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrixXcd::InnerIterator it(m, k); it; ++it) {
      col += std::abs(it.value());
    }
    mx = std::max(mx, col);
  }
  return mx;
}

}  // namespace

StateVector evolve(const StateVector& state, const ModeOperator& hamiltonian,
                   double t, const EvolutionSettings& settings) {
  require_same_space(state.space, hamiltonian.space);
  if (!hamiltonian.hermitian) {
    throw Error("non-hermitian-generator", "evolve requires a hermitian generator");
  }
  if (t < 0) {
    throw Error("validation-error", "evolution time must be >= 0");
  }

  StateVector out = state;
  if (t > 0) {
    const double hnorm = one_norm(hamiltonian.matrix);
    const int steps = std::max(1, static_cast<int>(std::ceil(hnorm * t)));
    if (steps > settings.max_steps) {
      throw Error("max-steps-exceeded",
                  "evolution needs " + std::to_string(steps) + " sub-steps");
    }
    const Complex minus_i_tau(0.0, -t / steps);
    const double term_tol = settings.accuracy / (4.0 * steps);

    Eigen::VectorXcd psi = state.amplitudes;
    Eigen::VectorXcd term(psi.size()), acc(psi.size());
    for (int s = 0; s < steps; ++s) {
      acc = psi;
      term = psi;
      // tau ||H|| <= 1, so the series converges at least factorially
      for (int k = 1; k <= 60; ++k) {
        term = (minus_i_tau / double(k)) * (hamiltonian.matrix * term).eval();
        acc += term;
        if (k >= 2 && term.norm() <= term_tol) break;
      }
      psi.swap(acc);
    }
    out.amplitudes = psi;
  }

  const double leak = leakage(out);
  out.leakage_flagged = leak > settings.leakage_threshold;
  if (out.leakage_flagged) {
    throw Error("leakage-exceeded", "post-evolution boundary mass " +
                                        std::to_string(leak) +
                                        "; enlarge the cutoffs");
  }
  return out;
}

TaylorExpansion heisenberg_taylor(const ModeOperator& hamiltonian,
                                  const ModeOperator& op, int order) {
  require_same_space(hamiltonian.space, op.space);
  if (order < 0 || order > 4) {
    throw Error("validation-error", "expansion order must be in [0, 4]");
  }
  TaylorExpansion exp;
  exp.base = op;
  exp.order = order;
  exp.coefficients.push_back(op);
  for (int n = 1; n <= order; ++n) {
    exp.coefficients.push_back(Complex(0.0, 1.0) *
                               commutator(hamiltonian, exp.coefficients.back()));
  }
  return exp;
}

ModeOperator evaluate(const TaylorExpansion& expansion, double t) {
  ModeOperator sum = expansion.coefficients[0];
  double factor = 1.0;
  for (int n = 1; n <= expansion.order; ++n) {
    factor *= t / n;
    sum = sum + factor * expansion.coefficients[n];
  }
  return sum;
}

double leakage(const StateVector& state) {
  const ModeSpace& sp = state.space;
  double total = 0.0;
  for (Index i = 0; i < sp.total_dim; ++i) {
    for (int m = 0; m < sp.num_modes(); ++m) {
      if (sp.occupation(i, m) == sp.cutoffs[m]) {
        total += std::norm(state.amplitudes[i]);
        break;
      }
    }
  }
  return total;
}

std::vector<bool> interior_mask(const ModeSpace& space, const std::vector<int>& margins) {
  if (static_cast<int>(margins.size()) != space.num_modes()) {
    throw Error("validation-error", "one margin per mode required");
  }
  std::vector<bool> mask(space.total_dim, true);
  for (Index i = 0; i < space.total_dim; ++i) {
    for (int m = 0; m < space.num_modes(); ++m) {
      if (space.occupation(i, m) > space.cutoffs[m] - margins[m]) {
        mask[i] = false;
        break;
      }
    }
  }
  return mask;
}

double max_interior_difference(const ModeOperator& a, const ModeOperator& b,
                               const std::vector<int>& margins) {
  require_same_space(a.space, b.space);
  const auto mask = interior_mask(a.space, margins);
  const SparseMatrixXcd diff = a.matrix - b.matrix;
  double mx = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    if (!mask[k]) continue;
    for (SparseMatrixXcd::InnerIterator it(diff, k); it; ++it) {
      if (!mask[it.row()]) continue;
      mx = std::max(mx, std::abs(it.value()));
    }
  }
  return mx;
}

}  // namespace phasefluct
