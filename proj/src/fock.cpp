#include "phasefluct/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phasefluct {

const char* to_string(ModeRole role) {
  switch (role) {
    case ModeRole::pump: return "pump";
    case ModeRole::stokes: return "stokes";
    case ModeRole::signal: return "signal";
    case ModeRole::harmonic: return "harmonic";
  }
  return "?";
}

ModeSpace build_space(const std::vector<ModeRole>& roles,
                      const std::vector<int>& cutoffs, Index dim_budget) {
  if (roles.empty()) {
    throw Error("empty-mode-list", "a space needs at least one mode");
  }
  if (roles.size() != cutoffs.size()) {
    throw Error("validation-error", "roles and cutoffs differ in length");
  }
  ModeSpace space;
  space.roles = roles;
  space.cutoffs = cutoffs;
  for (std::size_t m = 0; m < roles.size(); ++m) {
    if (cutoffs[m] < 1) {
      throw Error("validation-error", "cutoff must be >= 1 for every mode");
    }
    if (roles[m] == ModeRole::pump) {
      if (space.pump_mode >= 0) {
        throw Error("duplicate-pump-role", "exactly one mode may carry the pump role");
      }
      space.pump_mode = static_cast<int>(m);
    }
  }
  if (space.pump_mode < 0) {
    throw Error("validation-error", "no pump mode present");
  }

  space.total_dim = 1;
  for (int c : cutoffs) {
    const Index d = c + 1;
    if (space.total_dim > dim_budget / d) {
      throw Error("dimension-budget-exceeded",
                  "total dimension exceeds budget of " + std::to_string(dim_budget));
    }
    space.total_dim *= d;
  }

  space.strides.assign(roles.size(), 1);
  for (int m = static_cast<int>(roles.size()) - 2; m >= 0; --m) {
    space.strides[m] = space.strides[m + 1] * (cutoffs[m + 1] + 1);
  }
  return space;
}

double PumpAmplitude::magnitude() const {
  return std::sqrt(mean);
}

Complex PumpAmplitude::value() const {
  return std::polar(magnitude(), phase);
}

PumpAmplitude pump_from_mean(double alpha_sq, double theta) {
  if (alpha_sq < 0) {
    throw Error("validation-error", "mean photon number must be >= 0");
  }
  return PumpAmplitude{alpha_sq, theta};
}

void require_same_space(const ModeSpace& a, const ModeSpace& b) {
  if (!(a == b)) {
    throw Error("space-mismatch", "operands live on different mode spaces");
  }
}

static void check_mode(const ModeSpace& space, int mode) {
  if (mode < 0 || mode >= space.num_modes()) {
    throw Error("invalid-mode-index", "mode index " + std::to_string(mode));
  }
}

ModeOperator ladder(const ModeSpace& space, int mode, Ladder direction) {
  check_mode(space, mode);
  const Index stride = space.strides[mode];
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(space.total_dim);
  for (Index i = 0; i < space.total_dim; ++i) {
    const int n = space.occupation(i, mode);
    if (n == 0) continue;
    // lower: |n> -> sqrt(n) |n-1>, entry (i - stride, i)
    if (direction == Ladder::lower) {
      trip.emplace_back(i - stride, i, Complex(std::sqrt(double(n)), 0.0));
    } else {
      trip.emplace_back(i, i - stride, Complex(std::sqrt(double(n)), 0.0));
    }
  }
  ModeOperator op;
  op.space = space;
  op.matrix.resize(space.total_dim, space.total_dim);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  return op;
}

ModeOperator number_op(const ModeSpace& space, int mode) {
  check_mode(space, mode);
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(space.total_dim);
  for (Index i = 0; i < space.total_dim; ++i) {
    const int n = space.occupation(i, mode);
    if (n > 0) trip.emplace_back(i, i, Complex(double(n), 0.0));
  }
  ModeOperator op;
  op.space = space;
  op.matrix.resize(space.total_dim, space.total_dim);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.hermitian = true;
  return op;
}

ModeOperator identity_op(const ModeSpace& space) {
  ModeOperator op;
  op.space = space;
  op.matrix.resize(space.total_dim, space.total_dim);
  op.matrix.setIdentity();
  op.hermitian = true;
  return op;
}

ModeOperator embed_single_mode(const ModeSpace& space, int mode,
                               const Eigen::MatrixXcd& single, bool hermitian) {
  check_mode(space, mode);
  const Index d = space.cutoffs[mode] + 1;
  if (single.rows() != d || single.cols() != d) {
    throw Error("validation-error", "single-mode matrix has wrong dimension");
  }
  const Index stride = space.strides[mode];
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Index j = 0; j < space.total_dim; ++j) {
    const int nj = space.occupation(j, mode);
    for (Index ni = 0; ni < d; ++ni) {
      const Complex v = single(ni, nj);
      if (v == Complex(0.0, 0.0)) continue;
      trip.emplace_back(j + (ni - nj) * stride, j, v);
    }
  }
  ModeOperator op;
  op.space = space;
  op.matrix.resize(space.total_dim, space.total_dim);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.hermitian = hermitian;
  return op;
}

StateVector coherent_pump_state(const ModeSpace& space, const PumpAmplitude& pump,
                                double leakage_threshold) {
  const int p = space.pump_mode;
  const int cutoff = space.cutoffs[p];
  const Complex alpha = pump.value();

  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(cutoff + 1);
  amps[0] = 1.0;
  for (int n = 1; n <= cutoff; ++n) {
    amps[n] = amps[n - 1] * alpha / std::sqrt(double(n));
  }
  amps /= amps.norm();

  const double boundary = std::norm(amps[cutoff]);
  if (boundary > leakage_threshold) {
    throw Error("insufficient-cutoff",
                "coherent-state boundary mass " + std::to_string(boundary) +
                    " exceeds leakage threshold");
  }

  StateVector state;
  state.space = space;
  state.amplitudes = Eigen::VectorXcd::Zero(space.total_dim);
  // all non-pump modes in vacuum, so only indices n * stride_pump are populated
  for (int n = 0; n <= cutoff; ++n) {
    state.amplitudes[n * space.strides[p]] = amps[n];
  }
  return state;
}

StateVector apply(const ModeOperator& op, const StateVector& state) {
  require_same_space(op.space, state.space);
  StateVector out;
  out.space = state.space;
  out.amplitudes = op.matrix * state.amplitudes;
  return out;
}

Complex expectation(const StateVector& state, const ModeOperator& op) {
  require_same_space(op.space, state.space);
  return state.amplitudes.dot(op.matrix * state.amplitudes);
}

double variance(const StateVector& state, const ModeOperator& op) {
  require_same_space(op.space, state.space);
  if (!op.hermitian) {
    throw Error("non-hermitian-variance", "variance requires a hermitian operator");
  }
  const Eigen::VectorXcd v = op.matrix * state.amplitudes;
  const double mean_sq = v.squaredNorm();                 // <M^2>, M hermitian
  const double mean = state.amplitudes.dot(v).real();     // <M>
  double var = mean_sq - mean * mean;
  if (var < 0) {
    if (var < -1e-12) {
      throw Error("negative-variance", "variance " + std::to_string(var));
    }
    var = 0.0;
  }
  return var;
}

ModeOperator operator+(const ModeOperator& a, const ModeOperator& b) {
  require_same_space(a.space, b.space);
  ModeOperator out;
  out.space = a.space;
  out.matrix = a.matrix + b.matrix;
  out.hermitian = a.hermitian && b.hermitian;
  return out;
}

ModeOperator operator-(const ModeOperator& a, const ModeOperator& b) {
  require_same_space(a.space, b.space);
  ModeOperator out;
  out.space = a.space;
  out.matrix = a.matrix - b.matrix;
  out.hermitian = a.hermitian && b.hermitian;
  return out;
}

ModeOperator operator*(const ModeOperator& a, const ModeOperator& b) {
  require_same_space(a.space, b.space);
  ModeOperator out;
  out.space = a.space;
  out.matrix = a.matrix * b.matrix;
  return out;
}

ModeOperator operator*(Complex scale, const ModeOperator& op) {
  ModeOperator out;
  out.space = op.space;
  out.matrix = scale * op.matrix;
  out.hermitian = op.hermitian && scale.imag() == 0.0;
  return out;
}

ModeOperator operator*(double scale, const ModeOperator& op) {
  return Complex(scale, 0.0) * op;
}

ModeOperator adjoint(const ModeOperator& op) {
  ModeOperator out;
  out.space = op.space;
  out.matrix = op.matrix.adjoint();
  out.hermitian = op.hermitian;
  return out;
}

ModeOperator commutator(const ModeOperator& a, const ModeOperator& b) {
  require_same_space(a.space, b.space);
  ModeOperator out;
  out.space = a.space;
  out.matrix = a.matrix * b.matrix - b.matrix * a.matrix;
  return out;
}

double max_abs_entry(const SparseMatrixXcd& m) {
  double mx = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrixXcd::InnerIterator it(m, k); it; ++it) {
      mx = std::max(mx, std::abs(it.value()));
    }
  }
  return mx;
}

ModeOperator as_hermitian(ModeOperator op, double tol) {
  const SparseMatrixXcd diff = SparseMatrixXcd(op.matrix.adjoint()) - op.matrix;
  const double dev = max_abs_entry(diff);
  if (dev > tol) {
    throw Error("non-hermitian", "max|M - M^dag| = " + std::to_string(dev));
  }
  op.hermitian = true;
  return op;
}

}  // namespace phasefluct
