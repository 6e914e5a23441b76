#pragma once

#include "inoue/lattice.hpp"

namespace inoue {

/// State of the per-mode system: u = b0(t), v = e^{t/2} c0(t).
struct ModeState {
  Complex u{};
  Complex v{};
};

/// Right-hand side of the coupled first-order system
///   u' = -P e^t u + Q e^{-t/2} v
///   v' = conj(Q) e^{-t/2} u + (1/2 + P e^t) v.
ModeState ode_velocity(const ModeCoeff& c, double t, const ModeState& s);

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double norm_floor = 1e-6;   // renormalize when the state norm leaves
  double norm_ceil = 1e6;     // [norm_floor, norm_ceil]
  double min_step = 1e-14;
};

struct TransportResult {
  ModeState state;    // unit norm
  double logmag = 0;  // ln of the total magnitude discarded by renormalizing
  long steps = 0;     // accepted steps
};

/// Adaptive Dormand-Prince 5(4) transport of a unit state from t_from to
/// t_to (either direction), renormalizing to unit norm whenever the norm
/// leaves [norm_floor, norm_ceil] and accumulating the discarded log
/// magnitude. Deterministic for fixed inputs and tolerances. Throws
/// StepUnderflow if the step controller collapses below min_step and
/// DomainError for t_from == t_to.
TransportResult integrate_renormalized(const ModeCoeff& c, double t_from,
                                       double t_to, const ModeState& init,
                                       const IntegratorOptions& opt = {});

}  // namespace inoue
