#include "inoue/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inoue/bessel.hpp"
#include "inoue/errors.hpp"

namespace inoue {

TwistParameter TwistParameter::from_z(Complex z, double log_alpha) {
  if (z == Complex(0.0, 0.0)) fail(Err::ZeroInput, "twist parameter z must be nonzero");
  TwistParameter tw;
  tw.z = z;
  tw.mu = std::log(z);  // principal branch, Im in (-pi, pi]
  tw.delta = tw.mu.real() / log_alpha - 0.25;
  return tw;
}

TwistParameter TwistParameter::from_delta(double delta, double log_alpha) {
  TwistParameter tw;
  tw.delta = delta;
  tw.mu = Complex((delta + 0.25) * log_alpha, 0.0);
  tw.z = Complex(std::exp(tw.mu.real()), 0.0);
  return tw;
}

double sl_potential_u(const ModeCoeff& c, double t) {
  const double pe = c.P * std::exp(t);
  return pe * (pe - 1.0) + std::norm(c.Q) * std::exp(-t);
}

double sl_potential_v(const ModeCoeff& c, double t) {
  const double pe = c.P * std::exp(t);
  return pe * (pe + 2.0) + std::norm(c.Q) * std::exp(-t) + 0.25;
}

std::pair<double, double> truncation_times(const ModeCoeff& c,
                                           const MatchingOptions& opt) {
  const double p = std::abs(c.P);
  const double q = std::abs(c.Q);
  const double t_plus = std::max(std::log(opt.lambda / p), opt.t_floor);
  const double t_minus =
      std::max(2.0 * std::log(opt.lambda / (2.0 * q)), opt.t_floor);
  return {t_plus + opt.t_extra, t_minus + opt.t_extra};
}

ModeState decaying_init(const ModeCoeff& c, End end, double T) {
  if (std::abs(c.P) <= kPZeroThreshold)
    fail(Err::BranchUndefined, "P is numerically zero; use the Bessel branch");

  const double t = (end == End::plus) ? T : -T;
  const double a = -c.P * std::exp(t);
  const double d = 0.5 + c.P * std::exp(t);
  const Complex off = c.Q * std::exp(-0.5 * t);

  // Frozen coefficient matrix [[a, off], [conj(off), d]] is Hermitian; its
  // eigenvalues are real and the eigenvectors orthogonal. The branch that
  // decays at +infinity has the smaller instantaneous rate; the branch that
  // decays at -infinity is the one growing in the forward direction.
  const double mean = 0.5 * (a + d);
  const double gap = 0.5 * (a - d);
  const double root = std::sqrt(gap * gap + std::norm(off));
  const double lambda = (end == End::plus) ? mean - root : mean + root;

  // Two algebraically equivalent eigenvector formulas; take the better
  // conditioned one.
  const Complex v1u = off, v1v = Complex(lambda - a, 0.0);
  const Complex v2u = Complex(lambda - d, 0.0), v2v = std::conj(off);
  const double n1 = std::sqrt(std::norm(v1u) + std::norm(v1v));
  const double n2 = std::sqrt(std::norm(v2u) + std::norm(v2v));
  ModeState s;
  if (n1 >= n2) {
    s.u = v1u / n1;
    s.v = v1v / n1;
  } else {
    s.u = v2u / n2;
    s.v = v2v / n2;
  }
  return s;
}

MatchingResult matching_determinant(const ModeCoeff& c,
                                    const TwistParameter& tw,
                                    const MatchingOptions& opt) {
  if (c.mode.is_zero())
    fail(Err::DomainError,
         "mode (0,0,0) is the finite orbit; it has no matching problem");
  if (std::abs(c.P) <= kPZeroThreshold)
    fail(Err::BranchUndefined, "P is numerically zero; use the Bessel branch");

  const auto [t_plus, t_minus] = truncation_times(c, opt);

  // Both transports run inward, so the wanted branch dominates the motion
  // and initialization error is suppressed by the accumulated rate gap.
  const ModeState init_plus = decaying_init(c, End::plus, t_plus);
  const ModeState init_minus = decaying_init(c, End::minus, t_minus);
  const TransportResult from_plus =
      integrate_renormalized(c, t_plus, 0.0, init_plus, opt.integ);
  const TransportResult from_minus =
      integrate_renormalized(c, -t_minus, 0.0, init_minus, opt.integ);

  MatchingResult r;
  r.mode = c.mode;
  r.delta = tw.delta;
  r.det = from_minus.state.u * from_plus.state.v -
          from_minus.state.v * from_plus.state.u;
  r.logmag_plus = from_plus.logmag;
  r.logmag_minus = from_minus.logmag;
  r.t_plus = t_plus;
  r.t_minus = t_minus;
  r.steps = from_plus.steps + from_minus.steps;
  return r;
}

double weighted_norm(std::span<const std::pair<double, Complex>> samples,
                     double w) {
  if (samples.empty()) fail(Err::EmptyInput, "weighted_norm needs samples");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& [t0, f0] = samples[i];
    const auto& [t1, f1] = samples[i + 1];
    const double g0 = std::exp(2.0 * w * t0) * std::norm(f0);
    const double g1 = std::exp(2.0 * w * t1) * std::norm(f1);
    acc += 0.5 * (t1 - t0) * (g0 + g1);
  }
  return std::sqrt(acc);
}

Complex SampledFunction::at(double t) const {
  if (values.empty() || dt <= 0.0) return {};
  const double pos = (t - t0) / dt;
  if (pos < 0.0 || pos > static_cast<double>(values.size() - 1)) return {};
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(i);
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

namespace {

constexpr double kQuadStep = 1e-3;  // composite trapezoid default

// One fundamental-domain cell [n ln a, (n+1) ln a] of the series norm, with
// the weight routed through |z|^{2(n + t/ln a)} as the mode series writes it.
double series_cell(const SampledFunction& f, double zmod, double log_alpha,
                   int n, bool absorb_half_t) {
  const int segments = std::max(1, static_cast<int>(std::ceil(log_alpha / kQuadStep)));
  const double h = log_alpha / segments;
  double acc = 0.0;
  for (int j = 0; j <= segments; ++j) {
    const double t_loc = j * h;
    const double t_glob = n * log_alpha + t_loc;
    Complex val = f.at(t_glob);
    if (absorb_half_t) val *= std::exp(-0.5 * t_glob);  // c0 = e^{-t/2} v
    const double weight =
        std::pow(zmod, 2.0 * (n + t_loc / log_alpha)) * std::norm(val);
    acc += (j == 0 || j == segments) ? 0.5 * weight : weight;
  }
  return acc * h;
}

double line_norm(const SampledFunction& f, double w) {
  std::vector<std::pair<double, Complex>> samples;
  samples.reserve(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    samples.emplace_back(f.t0 + f.dt * static_cast<double>(i), f.values[i]);
  return weighted_norm(samples, w);
}

}  // namespace

SeriesNorms assemble_series(const LatticeBasis& B, const Mode& seed,
                            const SampledFunction& u, const SampledFunction& v,
                            const TwistParameter& tw, int N) {
  (void)seed;  // the norm identity holds orbit-wise for every nonzero seed
  if (u.values.empty() || v.values.empty())
    fail(Err::EmptyInput, "assemble_series needs sampled functions");
  if (N < 1) fail(Err::DomainError, "truncation N must be >= 1");

  const double log_alpha = std::log(B.A(0, 0));
  const double w = tw.delta - 0.25;

  // u series: z_u = conj(beta) e^mu, |z_u| = alpha^{delta - 1/4};
  // v series: z_c = e^mu on c0 = e^{-t/2} v, |z_c| = alpha^{delta + 1/4}.
  const double zu = std::exp(w * log_alpha);
  const double zc = std::exp((tw.delta + 0.25) * log_alpha);

  SeriesNorms out;
  double acc_u = 0.0, acc_v = 0.0;
  for (int n = -N; n < N; ++n) {
    acc_u += series_cell(u, zu, log_alpha, n, false);
    acc_v += series_cell(v, zc, log_alpha, n, true);
  }
  out.series_u = std::sqrt(acc_u);
  out.series_v = std::sqrt(acc_v);
  out.line_u = line_norm(u, w);
  out.line_v = line_norm(v, w);
  return out;
}

namespace {

constexpr double kTailFar = 60.0;
constexpr double kTailNear = 30.0;
constexpr double kDivergentLog = 50.0;  // integrand above e^{50} at the window end
constexpr double kSlopeTol = 1e-9;

double bessel_log_x(int order, bool first_kind, double x) {
  return first_kind ? bessel_i_log(order, x) : bessel_k_log(order, x);
}

// Log of the weighted integrand e^{2wt} |y(x(t))|^2 for one Bessel basis
// solution y, with x(t) = 2q e^{-t/2}.
double log_integrand(int order, bool first_kind, double q, double w, double t) {
  const double x = 2.0 * q * std::exp(-0.5 * t);
  return 2.0 * bessel_log_x(order, first_kind, x) + 2.0 * w * t;
}

TailEvidence tail_evidence(int order, bool first_kind, double q, double w,
                           bool plus_tail) {
  const double sgn = plus_tail ? 1.0 : -1.0;
  TailEvidence ev;
  ev.log_integrand_near = log_integrand(order, first_kind, q, w, sgn * kTailNear);
  ev.log_integrand_far = log_integrand(order, first_kind, q, w, sgn * kTailFar);
  ev.slope = (ev.log_integrand_far - ev.log_integrand_near) /
             (kTailFar - kTailNear);  // d(log integrand)/d|t| toward the end
  ev.divergent = ev.slope >= -kSlopeTol || ev.log_integrand_far > kDivergentLog;
  return ev;
}

}  // namespace

PZeroMembership p_zero_membership(double q, double delta) {
  if (!(q > 0.0))
    fail(Err::DomainError, "p_zero_membership requires q > 0 (Q never vanishes)");
  const double w = delta - 0.25;

  PZeroMembership out;
  // Pairs under v = C1 I1 + C2 K1 with u proportional to the order-0 partner
  // through u' = Q e^{-t/2} v (P = 0). Left tail: order-1 evidence suffices,
  // both orders blow up or decay together there.
  out.i_minus = tail_evidence(1, true, q, w, /*plus_tail=*/false);
  out.k_minus = tail_evidence(1, false, q, w, /*plus_tail=*/false);
  out.i_plus_u = tail_evidence(0, true, q, w, /*plus_tail=*/true);
  out.i_plus_v = tail_evidence(1, true, q, w, /*plus_tail=*/true);
  out.k_plus_u = tail_evidence(0, false, q, w, /*plus_tail=*/true);
  out.k_plus_v = tail_evidence(1, false, q, w, /*plus_tail=*/true);

  const bool member_i = !out.i_minus.divergent && !out.i_plus_u.divergent &&
                        !out.i_plus_v.divergent;
  const bool member_k = !out.k_minus.divergent && !out.k_plus_u.divergent &&
                        !out.k_plus_v.divergent;
  out.no_nonzero_solution = !member_i && !member_k;
  if (member_k) {
    out.c1 = Complex(0.0, 0.0);
    out.c2 = Complex(1.0, 0.0);
  } else if (member_i) {
    out.c1 = Complex(1.0, 0.0);
    out.c2 = Complex(0.0, 0.0);
  }
  return out;
}

double fd_smallest_eigenvalue(const ModeCoeff& c, double t_lo, double t_hi,
                              double h) {
  if (!(t_hi > t_lo)) fail(Err::DomainError, "fd oracle needs t_lo < t_hi");
  const int n = static_cast<int>(std::round((t_hi - t_lo) / h)) - 1;
  if (n < 3) fail(Err::DomainError, "fd oracle interval too short for the step");

  // Everywhere-positive potential branch for the sign of P.
  std::vector<double> diag(n);
  double diag_min = std::numeric_limits<double>::max();
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i < n; ++i) {
    const double t = t_lo + h * (i + 1);
    const double u = (c.P < 0.0) ? sl_potential_u(c, t) : sl_potential_v(c, t);
    diag[i] = 2.0 * inv_h2 + u;
    diag_min = std::min(diag_min, diag[i]);
  }

  // Sturm-count bisection for the smallest eigenvalue of the symmetric
  // tridiagonal matrix (off-diagonal -1/h^2).
  const double off2 = inv_h2 * inv_h2;
  const auto count_below = [&](double sigma) {
    int count = 0;
    double d = diag[0] - sigma;
    if (d < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
      if (d == 0.0) d = 1e-300;
      d = diag[i] - sigma - off2 / d;
      if (d < 0.0) ++count;
    }
    return count;
  };

  double lo = diag_min - 2.0 * inv_h2;  // Gershgorin
  double hi = diag_min;                 // Cauchy interlacing
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace inoue
