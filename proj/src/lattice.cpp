#include "inoue/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "inoue/errors.hpp"

namespace inoue {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t checked_dot(const std::array<std::int64_t, 3>& row, const Mode& m) {
  std::int64_t acc = 0, prod = 0;
  const std::int64_t comp[3] = {m.k, m.l, m.m};
  for (int j = 0; j < 3; ++j) {
    if (__builtin_mul_overflow(row[j], comp[j], &prod) ||
        __builtin_add_overflow(acc, prod, &acc))
      fail(Err::IntegerOverflow, "orbit left the supported integer window");
  }
  return acc;
}

Mode apply_mat(const Mat3i& a, const Mode& m) {
  return Mode{checked_dot(a[0], m), checked_dot(a[1], m), checked_dot(a[2], m)};
}

}  // namespace

Mode apply_monodromy(const InoueMatrix& M, const Mode& mode) {
  return apply_mat(M.entries, mode);
}

Mat3i integer_inverse(const InoueMatrix& M) {
  const auto& a = M.entries;
  auto cof = [&](int i, int j) -> std::int64_t {
    const int r0 = (i == 0) ? 1 : 0, r1 = (i == 2) ? 1 : 2;
    const int c0 = (j == 0) ? 1 : 0, c1 = (j == 2) ? 1 : 2;
    const std::int64_t minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    return ((i + j) % 2 == 0) ? minor : -minor;
  };
  // det = 1, so the inverse is the transposed cofactor matrix.
  Mat3i inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inv[i][j] = cof(j, i);
  return inv;
}

ModeCoeff mode_coefficients(const LatticeBasis& B, const Mode& mode) {
  const double comp[3] = {static_cast<double>(mode.k),
                          static_cast<double>(mode.l),
                          static_cast<double>(mode.m)};
  double w[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[i] += B.Yinv(i, j) * comp[j];

  ModeCoeff c;
  c.mode = mode;
  c.P = kTwoPi * w[0];
  c.Q = Complex(kTwoPi * w[1], kTwoPi * w[2]);
  return c;
}

OrbitSegment orbit_segment(const InoueMatrix& M, const Mode& seed,
                           std::int64_t n_lo, std::int64_t n_hi) {
  if (n_lo > n_hi) fail(Err::DomainError, "orbit range requires n_lo <= n_hi");

  OrbitSegment seg;
  seg.seed = seed;
  seg.n_lo = n_lo;
  seg.n_hi = n_hi;

  const Mat3i inv = integer_inverse(M);
  Mode cur = seed;
  if (n_lo >= 0) {
    for (std::int64_t n = 0; n < n_lo; ++n) cur = apply_mat(M.entries, cur);
  } else {
    for (std::int64_t n = 0; n > n_lo; --n) cur = apply_mat(inv, cur);
  }
  seg.modes.push_back(cur);
  for (std::int64_t n = n_lo; n < n_hi; ++n) {
    cur = apply_mat(M.entries, cur);
    seg.modes.push_back(cur);
  }
  return seg;
}

std::vector<Mode> orbit_representatives(const InoueMatrix& M,
                                        const LatticeBasis& B, int bound) {
  if (bound < 1) fail(Err::DomainError, "seed bound must be >= 1");

  // |P| over the box is bounded by 2*pi*bound*sum|row0(Yinv)| and grows by a
  // factor alpha per forward step; once above the bound the orbit never
  // re-enters. Same backward with |Q| (growth factor alpha^{1/2}).
  double row_sum[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) row_sum[i] += std::abs(B.Yinv(i, j));
  const double p_box = kTwoPi * bound * row_sum[0] * (1.0 + 1e-12);
  const double q_box =
      kTwoPi * bound * std::hypot(row_sum[1], row_sum[2]) * (1.0 + 1e-12);

  const Mat3i inv = integer_inverse(M);
  const auto in_box = [&](const Mode& m) {
    return std::abs(m.k) <= bound && std::abs(m.l) <= bound &&
           std::abs(m.m) <= bound;
  };

  const auto box_orbit = [&](const Mode& seed) {
    std::vector<Mode> pts;
    Mode cur = seed;
    while (true) {
      const ModeCoeff c = mode_coefficients(B, cur);
      if (std::abs(c.P) > p_box) break;
      if (in_box(cur)) pts.push_back(cur);
      cur = apply_mat(M.entries, cur);
    }
    cur = apply_mat(inv, seed);
    while (true) {
      const ModeCoeff c = mode_coefficients(B, cur);
      if (std::abs(c.Q) > q_box) break;
      if (in_box(cur)) pts.push_back(cur);
      cur = apply_mat(inv, cur);
    }
    return pts;
  };

  std::set<Mode> seen;
  std::vector<Mode> reps;
  for (std::int64_t k = -bound; k <= bound; ++k)
    for (std::int64_t l = -bound; l <= bound; ++l)
      for (std::int64_t m = -bound; m <= bound; ++m) {
        const Mode mode{k, l, m};
        if (mode.is_zero() || seen.count(mode)) continue;
        auto orbit = box_orbit(mode);
        reps.push_back(*std::min_element(orbit.begin(), orbit.end()));
        seen.insert(orbit.begin(), orbit.end());
      }
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace inoue
