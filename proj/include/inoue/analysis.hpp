#pragma once

#include <span>
#include <utility>
#include <vector>

#include "inoue/ode.hpp"

namespace inoue {

/// Twist parameter z = e^mu (principal branch) with the band coordinate
/// delta = Re(mu)/ln(alpha) - 1/4, so |z| = alpha^{delta + 1/4} and the
/// closed scan band 1 <= |z| <= alpha^{1/2} is delta in [-1/4, 1/4].
struct TwistParameter {
  Complex z{1.0, 0.0};
  Complex mu{};
  double delta = -0.25;

  static TwistParameter from_z(Complex z, double log_alpha);
  /// Real positive representative z = alpha^{delta + 1/4}; the matching
  /// system depends on the twist only through delta.
  static TwistParameter from_delta(double delta, double log_alpha);
};

/// Potential of the decoupled u equation: -u'' + (Pe^t(Pe^t - 1) + |Q|^2 e^{-t}) u = 0.
double sl_potential_u(const ModeCoeff& c, double t);
/// Potential of the decoupled v equation: -v'' + (Pe^t(Pe^t + 2) + |Q|^2 e^{-t} + 1/4) v = 0.
double sl_potential_v(const ModeCoeff& c, double t);

enum class End { plus, minus };

constexpr double kPZeroThreshold = 1e-8;

struct MatchingOptions {
  IntegratorOptions integ{};
  double lambda = 40.0;  // dominant endpoint rates must exceed this
  double t_floor = 2.0;  // minimum truncation time
  double t_extra = 0.0;  // added to both truncation times (invariance checks)
};

/// Truncation times: T_plus = max(ln(lambda/|P|), t_floor) and
/// T_minus = max(2 ln(lambda/(2|Q|)), t_floor), so the dominant rates
/// |P| e^{T+} and 2|Q| e^{T-/2} both reach lambda and the endpoint
/// splitting between growing and decaying directions is resolved to
/// e^{-lambda}.
std::pair<double, double> truncation_times(const ModeCoeff& c,
                                           const MatchingOptions& opt = {});

/// Unit direction of the solution decaying at the given end, evaluated at
/// t = +T (end = plus) or t = -T (end = minus): the eigenvector of the
/// frozen coefficient matrix whose instantaneous rate is decaying at that
/// end. The coefficient matrix is Hermitian, so the two directions are
/// orthogonal and the splitting is well conditioned. Throws BranchUndefined
/// when |P| <= 1e-8 (the Bessel branch owns that case).
ModeState decaying_init(const ModeCoeff& c, End end, double T);

struct MatchingResult {
  Mode mode{};
  double delta = 0.0;
  Complex det{};             // normalized matching determinant at t = 0
  double logmag_plus = 0.0;  // growth discarded transporting from +T to 0
  double logmag_minus = 0.0; // growth discarded transporting from -T to 0
  double t_plus = 0.0;
  double t_minus = 0.0;
  long steps = 0;
};

/// Shooting determinant: transports both end-decaying unit directions to
/// t = 0 and returns det of the 2x2 matrix with those columns. Both columns
/// are unit vectors, so |det| <= 1; a zero detects a solution decaying at
/// both ends, i.e. a spectral contribution. The determinant does not depend
/// on delta (the system does not contain it); delta is carried for
/// reporting and the weighted-space interpretation.
MatchingResult matching_determinant(const ModeCoeff& c,
                                    const TwistParameter& tw,
                                    const MatchingOptions& opt = {});

/// Trapezoid approximation of (integral e^{2wt} |f(t)|^2 dt)^{1/2} over
/// uniformly spaced samples sorted by t. Throws EmptyInput.
double weighted_norm(std::span<const std::pair<double, Complex>> samples,
                     double w);

/// Uniformly sampled function on [t0, t0 + dt*(n-1)] with linear
/// interpolation between samples (zero outside).
struct SampledFunction {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<Complex> values;

  double t_end() const { return t0 + dt * (values.empty() ? 0 : values.size() - 1); }
  Complex at(double t) const;
};

struct SeriesNorms {
  double series_u = 0.0;
  double line_u = 0.0;
  double series_v = 0.0;
  double line_v = 0.0;
};

/// Truncated mode-series norm over the fundamental domain [0, ln alpha]
/// (torus characters are orthonormal, so the surface norm collapses to a
/// sum of shifted weighted cell integrals) against the weighted line norm
/// with weight delta - 1/4. The two sides use different quadrature grids.
/// The u series carries the weight through |beta e^mu|, the v series
/// through |e^mu| with the e^{t/2} substitution absorbed; both reduce to
/// the same line weight.
SeriesNorms assemble_series(const LatticeBasis& B, const Mode& seed,
                            const SampledFunction& u, const SampledFunction& v,
                            const TwistParameter& tw, int N);

struct TailEvidence {
  double log_integrand_far = 0.0;   // log weighted integrand at the window end
  double log_integrand_near = 0.0;  // ... at the inner tail point
  double slope = 0.0;               // asymptotic d/dt of the log integrand
  bool divergent = false;
};

struct PZeroMembership {
  bool no_nonzero_solution = true;
  Complex c1{};  // member combination when one exists
  Complex c2{};
  // tail evidence for the paired basis solutions (u = I0/K0, v ~ I1/K1)
  TailEvidence i_minus, i_plus_u, i_plus_v;
  TailEvidence k_minus, k_plus_u, k_plus_v;
};

/// Membership test for the P = 0 closed-form solutions
/// v = C1 I1(2q e^{-t/2}) + C2 K1(2q e^{-t/2}) (and the paired order-0
/// u = C1 I0 - ... via the same substitution) in L^2 with weight
/// e^{(delta-1/4)t}, decided from the weighted tail integrands on
/// [-60, 60]. A combination with C1 != 0 inherits the doubly-exponential
/// I blow-up at the left end, so the two pure branches decide membership.
/// Throws DomainError for q <= 0.
PZeroMembership p_zero_membership(double q, double delta);

/// Independent finite-difference check: smallest eigenvalue of the
/// discretized Sturm-Liouville operator -d^2/dt^2 + U on [t_lo, t_hi] with
/// Dirichlet (decay) conditions, where U is the everywhere-positive
/// potential for the sign of P (the u equation for P < 0, the v equation
/// for P > 0). Symmetric tridiagonal; smallest eigenvalue by Sturm-count
/// bisection. A value near zero signals a near-kernel, i.e. a two-sided
/// decaying solution.
double fd_smallest_eigenvalue(const ModeCoeff& c, double t_lo, double t_hi,
                              double h = 0.01);

}  // namespace inoue
