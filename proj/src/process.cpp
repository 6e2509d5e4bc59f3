#include "phasefluct/process.hpp"

#include <cmath>

namespace phasefluct {

namespace {
constexpr Complex kI{0.0, 1.0};
}

const char* to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::fwm: return "fwm";
    case ProcessKind::swm: return "swm";
    case ProcessKind::shg: return "shg";
  }
  return "?";
}

std::optional<ProcessKind> parse_process(const std::string& name) {
  if (name == "fwm") return ProcessKind::fwm;
  if (name == "swm") return ProcessKind::swm;
  if (name == "shg") return ProcessKind::shg;
  return std::nullopt;
}

double ProcessSpec::smallness() const {
  const double x = g * g * t * t * pump.mean_photons();
  switch (kind) {
    case ProcessKind::fwm: return 12.0 * x;
    case ProcessKind::swm: return 72.0 * x;
    case ProcessKind::shg: return 4.0 * x;
  }
  return 0.0;
}

std::vector<ModeRole> process_roles(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::fwm:
    case ProcessKind::swm:
      return {ModeRole::pump, ModeRole::stokes, ModeRole::signal};
    case ProcessKind::shg:
      return {ModeRole::pump, ModeRole::harmonic};
  }
  return {};
}

std::vector<int> default_cutoffs(ProcessKind kind, double alpha_sq) {
  const int pump_cutoff =
      static_cast<int>(std::ceil(alpha_sq + 8.0 * std::sqrt(alpha_sq) + 10.0));
  switch (kind) {
    case ProcessKind::fwm: return {pump_cutoff, 7, 7};
    case ProcessKind::swm: return {pump_cutoff, 13, 5};
    case ProcessKind::shg: return {pump_cutoff, 7};
  }
  return {};
}

std::vector<int> interior_margins(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::fwm: return {2, 1, 1};
    case ProcessKind::swm: return {2, 3, 1};
    case ProcessKind::shg: return {2, 1};
  }
  return {};
}

ModeSpace build_process_space(const ProcessSpec& spec,
                              const std::vector<int>& cutoff_overrides) {
  const auto roles = process_roles(spec.kind);
  const auto cutoffs = cutoff_overrides.empty()
                           ? default_cutoffs(spec.kind, spec.pump.mean_photons())
                           : cutoff_overrides;
  return build_space(roles, cutoffs);
}

static void check_roles(const ProcessSpec& spec, const ModeSpace& space) {
  if (space.roles != process_roles(spec.kind)) {
    throw Error("role-mismatch", std::string("space roles do not match process ") +
                                     to_string(spec.kind));
  }
}

ModeOperator interaction_hamiltonian(const ProcessSpec& spec, const ModeSpace& space) {
  check_roles(spec, space);
  auto coupling = [&]() -> ModeOperator {
    const auto a = ladder(space, 0, Ladder::lower);
    const auto b = ladder(space, 1, Ladder::lower);
    switch (spec.kind) {
      case ProcessKind::fwm:
        return adjoint(a) * adjoint(a) * b * ladder(space, 2, Ladder::lower);
      case ProcessKind::swm:
        return adjoint(a) * adjoint(a) * b * b * b * ladder(space, 2, Ladder::lower);
      case ProcessKind::shg:
        return adjoint(b) * a * a;  // b is the harmonic mode here
    }
    throw Error("validation-error", "unknown process kind");
  };
  const ModeOperator x = coupling();
  return as_hermitian(spec.g * (x + adjoint(x)));
}

ModeOperator second_order_heisenberg_operator(const ProcessSpec& spec,
                                              const ModeSpace& space) {
  check_roles(spec, space);
  const double g = spec.g;
  const double t = spec.t;
  const double g2t2 = g * g * t * t;

  switch (spec.kind) {
    case ProcessKind::fwm: {
      const auto a = ladder(space, 0, Ladder::lower);
      const auto b = ladder(space, 1, Ladder::lower);
      const auto c = ladder(space, 2, Ladder::lower);
      const auto ad = adjoint(a);
      const auto nb = number_op(space, 1);
      const auto nc = number_op(space, 2);
      const auto ad_a2 = ad * a * a;
      return a + (-2.0 * kI * g * t) * (ad * b * c) +
             (g2t2 / 2.0) * (4.0 * (a * nb * nc) - 2.0 * (ad_a2 * nb) -
                             2.0 * (ad_a2 * nc) - 2.0 * ad_a2);
    }
    case ProcessKind::swm: {
      const auto a = ladder(space, 0, Ladder::lower);
      const auto b = ladder(space, 1, Ladder::lower);
      const auto c = ladder(space, 2, Ladder::lower);
      const auto ad = adjoint(a);
      const auto bd = adjoint(b);
      const auto nc = number_op(space, 2);
      const auto nb = number_op(space, 1);
      const auto b3 = b * b * b;
      const auto bd3b3 = bd * bd * bd * b3;   // B^dag^3 B^3
      const auto bd2b2 = bd * bd * b * b;     // B^dag^2 B^2
      const auto ad_a2 = ad * a * a;
      return a + (-2.0 * kI * g * t) * (ad * b3 * c) +
             g2t2 * (2.0 * (a * bd3b3 * nc) - 9.0 * (ad_a2 * bd2b2 * nc) -
                     18.0 * (ad_a2 * nb * nc) - ad_a2 * bd3b3 -
                     9.0 * (ad_a2 * bd2b2) - 18.0 * (ad_a2 * nb) -
                     6.0 * (ad_a2 * nc) - 6.0 * ad_a2);
    }
    case ProcessKind::shg: {
      const auto a1 = ladder(space, 0, Ladder::lower);
      const auto a2 = ladder(space, 1, Ladder::lower);
      const auto n2 = number_op(space, 1);
      return a1 + (-2.0 * kI * g * t) * (adjoint(a1) * a2) +
             (2.0 * g2t2) * (n2 * a1 - 0.5 * (adjoint(a1) * a1 * a1));
    }
  }
  throw Error("validation-error", "unknown process kind");
}

ClosedFormResult closed_form(const ProcessSpec& spec) {
  const double asq = spec.pump.mean_photons();
  const double theta = spec.pump.phase;
  const double g2t2 = spec.g * spec.g * spec.t * spec.t;
  const double x = g2t2 * asq;
  const double a4 = asq * asq;
  const double c2t = std::cos(2.0 * theta);

  ClosedFormResult r;
  r.spec = spec;

  switch (spec.kind) {
    case ProcessKind::fwm:
      r.mean_n = asq - 2.0 * g2t2 * a4;
      r.var_n = asq - 8.0 * g2t2 * a4;
      r.d = -6.0 * g2t2 * a4;
      r.u = 0.5 * (1.0 - 12.0 * x) / (1.0 - 2.0 * x);
      r.s_param = 0.25 / (r.mean_n + 0.5) * (asq + 2.0 * a4 * g2t2 * (c2t - 6.0));
      break;
    case ProcessKind::swm:
      r.mean_n = asq - 12.0 * g2t2 * a4;
      r.var_n = asq - 24.0 * g2t2 * a4;
      r.d = -12.0 * g2t2 * a4;
      r.u = 0.5 * (1.0 - 72.0 * x) / (1.0 - 12.0 * x);
      r.s_param = 0.25 / (r.mean_n + 0.5) * (asq + 12.0 * a4 * g2t2 * (c2t - 6.0));
      break;
    case ProcessKind::shg:
      r.mean_n = asq - 2.0 * g2t2 * a4;
      r.var_n = asq - 4.0 * g2t2 * a4;
      r.d = -2.0 * g2t2 * a4;
      r.u = 0.5 * (1.0 - 4.0 * x) / (1.0 - 2.0 * x);
      r.s_param = 0.25 / (r.mean_n + 0.5) * (asq + 2.0 * a4 * g2t2 * (c2t - 2.0));
      break;
  }

  // Q is singular for a vacuum drive and at cos(2 theta) = -1; it carries an
  // undefined marker there instead of a number.
  if (asq > 0.0 && std::abs(c2t + 1.0) > 1e-12) {
    const double cs = spec.kind == ProcessKind::swm ? 12.0 : 2.0;
    const double shift = spec.kind == ProcessKind::shg ? 2.0 : 6.0;
    r.q = (1.0 + cs * x * (c2t - shift)) / (2.0 * (c2t + 1.0) * (1.0 - cs * x));
  }

  if (spec.kind == ProcessKind::fwm) {
    // Intermediate quadrature moments of the same second-order expansion,
    // scaled by k^2 = (mean_n + 1/2)^{-1}.
    const double k2 = 1.0 / (r.mean_n + 0.5);
    const double re_a2 = 2.0 * asq * c2t;  // alpha^2 + conj(alpha)^2
    ClosedFormResult::Quadratures qd;
    qd.mean_c_sq =
        0.25 * k2 * (re_a2 + 2.0 * asq - g2t2 * (2.0 * re_a2 * asq + 4.0 * a4));
    qd.mean_s_sq =
        -0.25 * k2 * (re_a2 - 2.0 * asq - g2t2 * (2.0 * re_a2 * asq - 4.0 * a4));
    qd.mean_c2 = 0.25 * k2 *
                 (re_a2 + 2.0 * asq + 1.0 -
                  g2t2 * (re_a2 + 2.0 * re_a2 * asq + 4.0 * a4 + 4.0 * asq));
    qd.mean_s2 = -0.25 * k2 *
                 (re_a2 - 2.0 * asq - 1.0 -
                  g2t2 * (re_a2 + 2.0 * re_a2 * asq - 4.0 * a4 - 4.0 * asq));
    qd.var_c = 0.25 * k2 * (1.0 - g2t2 * (re_a2 + 4.0 * asq));
    qd.var_s = -0.25 * k2 * (-1.0 - g2t2 * (re_a2 - 4.0 * asq));
    r.quadratures = qd;
  }
  return r;
}

}  // namespace phasefluct
