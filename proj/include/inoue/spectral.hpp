#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inoue/analysis.hpp"

namespace inoue {

enum class OperatorScale { dolbeault, dminus, dplus };
enum class PointSource { finite_orbit, scan_flag };

struct SpectralPoint {
  Complex z{};
  OperatorScale scale = OperatorScale::dolbeault;
  PointSource source = PointSource::finite_orbit;
  Mode mode{};        // meaningful for scan_flag points
  double delta = 0.0; // "
};

/// The two spectral points produced by the only finite lattice orbit
/// (the origin): z = 1 and z = alpha*beta, on the Dolbeault scale.
std::vector<SpectralPoint> finite_orbit_points(const EigenData& E);

/// Dolbeault -> D^-: multiply by alpha^{-1/4}. Throws ZeroInput.
Complex map_to_dminus(const EigenData& E, Complex z);

/// D^- -> D^+: inversion in the unit circle, z -> 1/conj(z). Throws ZeroInput.
Complex map_to_dplus(Complex z);

struct ScanConfig {
  int seed_bound = 3;
  double tol_rel = 1e-10;
  double tol_abs = 1e-12;
  double flag_threshold = 1e-3;   // |det| below this flags the cell
  double lambda = 40.0;
  double t_floor = 2.0;
  double oracle_threshold = 1e-4; // FD smallest eigenvalue below this confirms
  double fd_step = 0.01;
  int workers = 1;
};

/// 51-point style closed grid on [-1/4, 1/4] (endpoints included).
std::vector<double> delta_grid(int points);

struct CellResult {
  MatchingResult match{};
  bool p_zero_branch = false;
  PZeroMembership membership{};  // only meaningful on the p-zero branch
  bool flagged = false;
  std::string error;  // nonempty when the cell failed; scan continues
};

enum class Verdict { consistent_with_theorem, contradiction };

struct FiniteOrbitSet {
  std::vector<Complex> dolbeault, dminus, dplus;
};

struct SpectrumReport {
  // surface summary
  Mat3i matrix{};
  double alpha = 0.0;
  Complex beta{};
  double log_alpha = 0.0;

  ScanConfig config{};
  std::vector<double> deltas;
  std::vector<Mode> representatives;

  std::vector<CellResult> results;  // representative-major, delta-minor
  std::vector<SpectralPoint> flagged;  // oracle-confirmed candidates only
  std::vector<std::string> anomalies;  // unconfirmed flags, cell errors, warnings
  FiniteOrbitSet finite_orbit;
  Verdict verdict = Verdict::consistent_with_theorem;
  std::string contradiction_details;
};

/// Scans every orbit representative within the seed bound against every
/// delta in the grid. Cells with |P| above the p-zero threshold run the
/// matching determinant; a |det| below the flag threshold is re-examined by
/// the independent finite-difference oracle and only a confirmed near-kernel
/// produces a contradiction (otherwise the flag is recorded as a numerical
/// anomaly). Cells with |P| <= threshold run the closed-form Bessel
/// membership test and are additionally reported as anomalous, since that
/// branch is believed unreachable. Cell errors are recorded, not fatal.
/// The cell map is order-independent; the reduction is ordered, so the
/// report content does not depend on the worker count.
SpectrumReport annulus_scan(const EigenData& E, const LatticeBasis& B,
                            const InoueMatrix& M,
                            const std::vector<double>& deltas,
                            const ScanConfig& cfg = {});

}  // namespace inoue
