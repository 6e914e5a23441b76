#include "inoue/algebra.hpp"

#include <cmath>
#include <string>

#include "inoue/errors.hpp"

namespace inoue {

namespace {

using I128 = __int128;

std::int64_t to_i64(I128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN)
    fail(Err::IntegerOverflow, std::string(what) + " exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

I128 det_i128(const Mat3i& a) {
  auto e = [&](int i, int j) { return static_cast<I128>(a[i][j]); };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

// Discriminant of lambda^3 + b lambda^2 + c lambda + d. Negative iff one
// real root and a complex-conjugate pair.
I128 cubic_discriminant(I128 b, I128 c, I128 d) {
  return 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c -
         27 * d * d;
}

double cubic(double c2, double c1, double x) {
  return ((x - c2) * x + c1) * x - 1.0;
}

double cubic_deriv(double c2, double c1, double x) {
  return (3.0 * x - 2.0 * c2) * x + c1;
}

// Generic 3x3 null-vector solve for (M - lambda I) x = 0: pick the free
// coordinate and row pair giving the largest 2x2 pivot, set that coordinate
// to 1 and solve for the rest. Stable for the well-separated eigenvalues
// validation guarantees.
template <typename Scalar>
std::array<Scalar, 3> null_vector(const Mat3i& M, Scalar lambda) {
  Scalar N[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      N[i][j] = Scalar(static_cast<double>(M[i][j])) - (i == j ? lambda : Scalar(0));

  int best_j = -1, best_r1 = -1, best_r2 = -1;
  double best_piv = -1.0;
  for (int j = 0; j < 3; ++j) {
    const int c0 = (j == 0) ? 1 : 0;
    const int c1 = (j == 2) ? 1 : 2;
    for (int r1 = 0; r1 < 3; ++r1)
      for (int r2 = r1 + 1; r2 < 3; ++r2) {
        const Scalar d = N[r1][c0] * N[r2][c1] - N[r1][c1] * N[r2][c0];
        if (std::abs(d) > best_piv) {
          best_piv = std::abs(d);
          best_j = j;
          best_r1 = r1;
          best_r2 = r2;
        }
      }
  }
  if (best_piv <= 0.0)
    fail(Err::RootFindingFailure, "eigenvector subsystem is singular");

  const int j = best_j;
  const int c0 = (j == 0) ? 1 : 0;
  const int c1 = (j == 2) ? 1 : 2;
  const Scalar d = N[best_r1][c0] * N[best_r2][c1] - N[best_r1][c1] * N[best_r2][c0];
  const Scalar rhs0 = -N[best_r1][j];
  const Scalar rhs1 = -N[best_r2][j];
  std::array<Scalar, 3> x{};
  x[j] = Scalar(1);
  x[c0] = (rhs0 * N[best_r2][c1] - rhs1 * N[best_r1][c1]) / d;
  x[c1] = (N[best_r1][c0] * rhs1 - N[best_r2][c0] * rhs0) / d;
  return x;
}

}  // namespace

InoueMatrix cappell_shaneson(int m) {
  Mat3i e{{{0, 1, 0}, {0, 1, 1}, {1, 0, static_cast<std::int64_t>(m) + 1}}};
  return validate_matrix(e);
}

InoueMatrix validate_matrix(const Mat3i& entries) {
  const I128 det = det_i128(entries);
  if (det != 1)
    fail(Err::NotUnimodular,
         "det = " + std::to_string(static_cast<long long>(det)) + ", expected 1");

  const I128 c2 = static_cast<I128>(entries[0][0]) + entries[1][1] + entries[2][2];
  I128 c1 = 0;
  {
    auto e = [&](int i, int j) { return static_cast<I128>(entries[i][j]); };
    c1 = (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) +
         (e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0)) +
         (e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0));
  }

  // Rational roots of the monic cubic with constant term -1 can only be +-1;
  // both are excluded exactly.
  const I128 p_at_1 = c1 - c2;         // p(1)  = 1 - c2 + c1 - 1
  const I128 p_at_m1 = -(2 + c2 + c1); // p(-1) = -1 - c2 - c1 - 1
  if (p_at_1 == 0)
    fail(Err::WrongEigenvaluePattern, "lambda = 1 is an eigenvalue");
  if (p_at_m1 == 0)
    fail(Err::WrongEigenvaluePattern, "lambda = -1 is an eigenvalue");

  if (cubic_discriminant(-c2, c1, -1) >= 0)
    fail(Err::WrongEigenvaluePattern,
         "characteristic cubic has three real roots");

  // With one real root and a positive-definite complex-pair factor, the sign
  // of p(1) is the sign of 1 - alpha.
  if (p_at_1 > 0)
    fail(Err::WrongEigenvaluePattern, "real eigenvalue is below 1");

  InoueMatrix M;
  M.entries = entries;
  M.det = 1;
  return M;
}

std::pair<std::int64_t, std::int64_t> char_poly(const InoueMatrix& M) {
  const auto& a = M.entries;
  auto e = [&](int i, int j) { return static_cast<I128>(a[i][j]); };
  const I128 c2 = e(0, 0) + e(1, 1) + e(2, 2);
  const I128 c1 = (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) +
                  (e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0)) +
                  (e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0));
  return {to_i64(c2, "trace"), to_i64(c1, "minor sum")};
}

EigenData eigen_data(const InoueMatrix& M) {
  const auto [c2i, c1i] = char_poly(M);
  const double c2 = static_cast<double>(c2i);
  const double c1 = static_cast<double>(c1i);

  // Isolate the real root on [1, Cauchy bound] by bisection, then polish
  // with Newton. p(1) < 0 and p(hi) > 0 are guaranteed by validation.
  double lo = 1.0;
  double hi = 1.0 + std::abs(c2) + std::abs(c1) + 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cubic(c2, c1, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double alpha = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double f = cubic(c2, c1, alpha);
    const double df = cubic_deriv(c2, c1, alpha);
    const double step = f / df;
    alpha -= step;
    if (std::abs(step) < 1e-16 * alpha) break;
  }
  const double scale = std::max(1.0, alpha * alpha * alpha);
  if (std::abs(cubic(c2, c1, alpha)) > 1e-12 * scale)
    fail(Err::RootFindingFailure, "real-root residual above tolerance");

  // Deflated quadratic: Re(beta) = (c2 - alpha)/2, |beta|^2 = 1/alpha.
  const double re_b = 0.5 * (c2 - alpha);
  const double disc = 1.0 / alpha - re_b * re_b;
  if (disc <= 0.0)
    fail(Err::RootFindingFailure, "deflated quadratic lost its complex pair");
  const Complex beta(re_b, std::sqrt(disc));

  EigenData E;
  E.alpha = alpha;
  E.beta = beta;
  E.log_alpha = std::log(alpha);
  E.a = null_vector<double>(M.entries, alpha);
  E.b = null_vector<Complex>(M.entries, beta);
  return E;
}

LatticeBasis lattice_basis(const EigenData& E, Complex b_scale) {
  CVec3 b{};
  for (int i = 0; i < 3; ++i) b[i] = b_scale * E.b[i];

  Mat3 Y0;
  for (int i = 0; i < 3; ++i) {
    Y0(i, 0) = E.a[i];
    Y0(i, 1) = b[i].real();
    Y0(i, 2) = b[i].imag();
  }
  const double d0 = det3(Y0);
  if (std::abs(d0) < 1e-12)
    fail(Err::SingularBasis, "eigenvector basis is numerically singular");

  // det is linear in the a column; rescaling a fixes det Y = 1.
  LatticeBasis B;
  B.Y = Y0;
  for (int i = 0; i < 3; ++i) B.Y(i, 0) = E.a[i] / d0;
  B.Yinv = inv3(B.Y);

  B.A = Mat3{};
  B.A(0, 0) = E.alpha;
  B.A(1, 1) = E.beta.real();
  B.A(1, 2) = -E.beta.imag();
  B.A(2, 1) = E.beta.imag();
  B.A(2, 2) = E.beta.real();
  return B;
}

}  // namespace inoue
