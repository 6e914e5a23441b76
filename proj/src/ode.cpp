#include "inoue/ode.hpp"

#include <algorithm>
#include <cmath>

#include "inoue/errors.hpp"

namespace inoue {

ModeState ode_velocity(const ModeCoeff& c, double t, const ModeState& s) {
  const double et = std::exp(t);
  const double es = std::exp(-0.5 * t);
  ModeState d;
  d.u = -c.P * et * s.u + c.Q * es * s.v;
  d.v = std::conj(c.Q) * es * s.u + (0.5 + c.P * et) * s.v;
  return d;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b*: weights of the embedded error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

ModeState axpy(const ModeState& y, double h, const ModeState& k) {
  return {y.u + h * k.u, y.v + h * k.v};
}

double norm2(const ModeState& s) {
  return std::sqrt(std::norm(s.u) + std::norm(s.v));
}

}  // namespace

TransportResult integrate_renormalized(const ModeCoeff& c, double t_from,
                                       double t_to, const ModeState& init,
                                       const IntegratorOptions& opt) {
  if (t_from == t_to)
    fail(Err::DomainError, "integration interval has zero length");

  const double dir = (t_to > t_from) ? 1.0 : -1.0;
  double t = t_from;
  ModeState y = init;
  double logmag = 0.0;
  long steps = 0;

  double h = dir * std::min(1e-3, std::abs(t_to - t_from));
  ModeState k1 = ode_velocity(c, t, y);

  while (dir * (t_to - t) > 0.0) {
    bool last = false;
    if (dir * (t + h) >= dir * t_to) {
      h = t_to - t;
      last = true;
    }
    // a boundary sliver is not a stiffness failure
    if (!last && std::abs(h) < opt.min_step)
      fail(Err::StepUnderflow, "step size collapsed below 1e-14");

    const ModeState k2 = ode_velocity(c, t + c2 * h, axpy(y, h * a21, k1));
    const ModeState k3 = ode_velocity(
        c, t + c3 * h, {y.u + h * (a31 * k1.u + a32 * k2.u),
                        y.v + h * (a31 * k1.v + a32 * k2.v)});
    const ModeState k4 = ode_velocity(
        c, t + c4 * h, {y.u + h * (a41 * k1.u + a42 * k2.u + a43 * k3.u),
                        y.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v)});
    const ModeState k5 = ode_velocity(
        c, t + c5 * h,
        {y.u + h * (a51 * k1.u + a52 * k2.u + a53 * k3.u + a54 * k4.u),
         y.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)});
    const ModeState k6 = ode_velocity(
        c, t + h,
        {y.u + h * (a61 * k1.u + a62 * k2.u + a63 * k3.u + a64 * k4.u + a65 * k5.u),
         y.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v + a65 * k5.v)});
    const ModeState ynew = {
        y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u),
        y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
    const ModeState k7 = ode_velocity(c, t + h, ynew);  // FSAL

    const Complex err_u =
        h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
    const Complex err_v =
        h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
    const double sc_u =
        opt.abs_tol + opt.rel_tol * std::max(std::abs(y.u), std::abs(ynew.u));
    const double sc_v =
        opt.abs_tol + opt.rel_tol * std::max(std::abs(y.v), std::abs(ynew.v));
    const double err = std::sqrt(
        0.5 * (std::norm(err_u / sc_u) + std::norm(err_v / sc_v)));

    if (err <= 1.0) {
      t = last ? t_to : t + h;
      y = ynew;
      k1 = k7;
      ++steps;
      const double n = norm2(y);
      if (n < opt.norm_floor || n > opt.norm_ceil) {
        logmag += std::log(n);
        y.u /= n;
        y.v /= n;
        k1 = ode_velocity(c, t, y);
      }
    }
    const double factor =
        (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }

  const double n = norm2(y);
  logmag += std::log(n);
  y.u /= n;
  y.v /= n;
  return {y, logmag, steps};
}

}  // namespace inoue
