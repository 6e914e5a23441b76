#pragma once

#include <cstdint>

#include "inoue/linalg.hpp"

namespace inoue {

/// Integral matrix in SL(3,Z) with one real eigenvalue alpha > 1 and a
/// complex-conjugate pair. Construct through validate_matrix or
/// cappell_shaneson; the constructor is not validated on its own.
struct InoueMatrix {
  Mat3i entries{};
  std::int64_t det = 0;
};

/// Eigenvalues and eigenvectors of the defining matrix. alpha is the real
/// eigenvalue > 1, beta the complex one with Im(beta) > 0. The vectors are
/// pivot-normalized (largest-pivot coordinate set to 1); the det Y = 1
/// rescaling happens in lattice_basis.
struct EigenData {
  double alpha = 0.0;
  Complex beta{};
  Vec3 a{};
  CVec3 b{};
  double log_alpha = 0.0;
};

/// The torus lattice basis Y (rows xi, eta, zeta), its inverse (whose
/// columns form the dual basis) and the expansion matrix A = diag(alpha; R)
/// with R the rotation-scaling block of beta.
struct LatticeBasis {
  Mat3 Y{};
  Mat3 Yinv{};
  Mat3 A{};
};

/// A_m = [[0,1,0],[0,1,1],[1,0,m+1]]; valid exactly for -2 <= m <= 3.
InoueMatrix cappell_shaneson(int m);

InoueMatrix validate_matrix(const Mat3i& entries);

/// Coefficients (c2, c1) of the characteristic cubic
/// lambda^3 - c2*lambda^2 + c1*lambda - 1 (the constant term is -det = -1).
std::pair<std::int64_t, std::int64_t> char_poly(const InoueMatrix& M);

EigenData eigen_data(const InoueMatrix& M);

/// Builds Y from the eigenvectors, rescaling a so that det Y = 1.
/// b_scale premultiplies the complex eigenvector before assembly; the result
/// is a different (equally valid) basis, used to check convention-robustness.
LatticeBasis lattice_basis(const EigenData& E, Complex b_scale = Complex(1.0, 0.0));

}  // namespace inoue
