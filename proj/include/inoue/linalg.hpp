#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace inoue {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;
using Mat3i = std::array<std::array<std::int64_t, 3>, 3>;

struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r(i, i) = 1.0;
    return r;
  }
};

inline Vec3 matvec(const Mat3& a, const Vec3& x) {
  Vec3 y{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y[i] += a(i, j) * x[j];
  return y;
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
  return t;
}

inline double det3(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Adjugate-based inverse; caller checks det away from zero.
inline Mat3 inv3(const Mat3& a) {
  const double d = det3(a);
  Mat3 r;
  r(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
  r(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
  r(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
  r(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
  r(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
  r(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
  r(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
  r(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
  r(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
  return r;
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a(i, j) - b(i, j)));
  return r;
}

}  // namespace inoue
