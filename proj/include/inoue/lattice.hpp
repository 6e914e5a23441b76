#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "inoue/algebra.hpp"

namespace inoue {

/// Fourier mode index (k, l, m) on the 3-torus lattice.
struct Mode {
  std::int64_t k = 0, l = 0, m = 0;

  friend auto operator<=>(const Mode&, const Mode&) = default;
  bool is_zero() const { return k == 0 && l == 0 && m == 0; }
};

/// Per-mode ODE coefficients: P real, Q complex, assembled from the dual
/// basis rows of Yinv. For nonzero modes Q != 0 and P scales by alpha along
/// the monodromy orbit while |Q| scales by alpha^{-1/2}.
struct ModeCoeff {
  Mode mode{};
  double P = 0.0;
  Complex Q{};
};

struct OrbitSegment {
  Mode seed{};
  std::int64_t n_lo = 0, n_hi = 0;
  std::vector<Mode> modes;  // modes[i] = M^{n_lo + i} * seed
};

/// Exact integer action of M on a mode; throws IntegerOverflow when a
/// coordinate would leave the int64 range.
Mode apply_monodromy(const InoueMatrix& M, const Mode& mode);

/// Exact integer inverse (adjugate; det = 1).
Mat3i integer_inverse(const InoueMatrix& M);

ModeCoeff mode_coefficients(const LatticeBasis& B, const Mode& mode);

OrbitSegment orbit_segment(const InoueMatrix& M, const Mode& seed,
                           std::int64_t n_lo, std::int64_t n_hi);

/// One canonical seed per monodromy orbit among the nonzero modes with
/// max-norm <= bound: the lexicographically smallest element of the orbit's
/// intersection with the box. Escape from the box is certified through the
/// monotone growth of |P| forward and |Q| backward.
std::vector<Mode> orbit_representatives(const InoueMatrix& M,
                                        const LatticeBasis& B, int bound);

}  // namespace inoue
