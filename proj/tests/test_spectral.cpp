#include <doctest.h>

#include <cmath>
#include <random>

#include "inoue/errors.hpp"
#include "inoue/report.hpp"
#include "inoue/spectral.hpp"

using namespace inoue;

namespace {

struct Surface {
  InoueMatrix M;
  EigenData E;
  LatticeBasis B;
  explicit Surface(int m)
      : M(cappell_shaneson(m)), E(eigen_data(M)), B(lattice_basis(E)) {}
};

}  // namespace

TEST_CASE("finite orbit points on the Dolbeault scale") {
  const Surface s(0);
  const auto pts = finite_orbit_points(s.E);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].z == Complex(1.0, 0.0));
  CHECK(pts[1].z == s.E.alpha * s.E.beta);
  CHECK(std::abs(std::abs(pts[1].z) - std::sqrt(s.E.alpha)) <= 1e-12);

  // the two points sit on the band boundary: delta = -1/4 and +1/4
  CHECK(TwistParameter::from_z(pts[0].z, s.E.log_alpha).delta ==
        doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(TwistParameter::from_z(pts[1].z, s.E.log_alpha).delta ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("operator-scale maps") {
  const Surface s(0);
  const double alpha = s.E.alpha;

  const Complex dm1 = map_to_dminus(s.E, Complex(1.0, 0.0));
  CHECK(dm1.real() == doctest::Approx(std::pow(alpha, -0.25)).epsilon(1e-12));
  CHECK(dm1.real() == doctest::Approx(0.868836961833).epsilon(1e-9));

  // z = alpha beta -> alpha^{3/4} beta with modulus alpha^{1/4}
  const Complex dm2 = map_to_dminus(s.E, alpha * s.E.beta);
  CHECK(std::abs(dm2 - std::pow(alpha, 0.75) * s.E.beta) <= 1e-12);
  CHECK(std::abs(std::abs(dm2) - std::pow(alpha, 0.25)) <= 1e-12);

  // inversion: fixed on the positive reals of modulus 1, swaps the moduli
  CHECK(map_to_dplus(Complex(1.0, 0.0)) == Complex(1.0, 0.0));
  const Complex dp1 = map_to_dplus(dm1);
  CHECK(dp1.real() == doctest::Approx(std::pow(alpha, 0.25)).epsilon(1e-12));
  const Complex dp2 = map_to_dplus(dm2);
  CHECK(std::abs(dp2 - std::pow(alpha, 0.25) * s.E.beta) <= 1e-12);
  CHECK(std::abs(std::abs(dp2) - std::pow(alpha, -0.25)) <= 1e-12);

  CHECK_THROWS_AS(map_to_dminus(s.E, Complex(0, 0)), Error);
  CHECK_THROWS_AS(map_to_dplus(Complex(0, 0)), Error);
}

TEST_CASE("delta grid includes both endpoints") {
  const auto g = delta_grid(51);
  REQUIRE(g.size() == 51);
  CHECK(g.front() == -0.25);
  CHECK(g.back() == 0.25);
  CHECK(g[25] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(delta_grid(1), Error);
}

TEST_CASE("small annulus scan is consistent and complete") {
  const Surface s(0);
  ScanConfig cfg;
  cfg.seed_bound = 1;
  const auto deltas = delta_grid(3);
  const SpectrumReport r = annulus_scan(s.E, s.B, s.M, deltas, cfg);

  CHECK(r.verdict == Verdict::consistent_with_theorem);
  CHECK(r.flagged.empty());
  CHECK(r.anomalies.empty());
  CHECK(r.results.size() == r.representatives.size() * deltas.size());
  for (const CellResult& cell : r.results) {
    CHECK(cell.error.empty());
    CHECK_FALSE(cell.flagged);
    CHECK(std::abs(cell.match.det) > 1e-3);
    CHECK(std::abs(cell.match.det) <= 1.0 + 1e-12);
  }

  // D+ set is the inversion of the D- set, and the boundary points are the
  // theorem's alpha^{1/4} and alpha^{1/4} beta
  REQUIRE(r.finite_orbit.dplus.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const Complex tau = 1.0 / std::conj(r.finite_orbit.dminus[i]);
    CHECK(std::abs(tau - r.finite_orbit.dplus[i]) <= 1e-12);
  }
  CHECK(std::abs(r.finite_orbit.dplus[0] -
                 Complex(std::pow(s.E.alpha, 0.25), 0.0)) <= 1e-12);
  CHECK(std::abs(r.finite_orbit.dplus[1] -
                 std::pow(s.E.alpha, 0.25) * s.E.beta) <= 1e-12);
}

TEST_CASE("empty delta grid leaves only the finite orbit") {
  const Surface s(1);
  ScanConfig cfg;
  cfg.seed_bound = 1;
  const SpectrumReport r = annulus_scan(s.E, s.B, s.M, {}, cfg);
  CHECK(r.results.empty());
  CHECK(r.verdict == Verdict::consistent_with_theorem);
  CHECK(r.finite_orbit.dolbeault.size() == 2);
}

TEST_CASE("scan config validation") {
  const Surface s(0);
  ScanConfig cfg;
  cfg.seed_bound = 0;
  CHECK_THROWS_AS(annulus_scan(s.E, s.B, s.M, delta_grid(2), cfg), Error);
  cfg.seed_bound = 1;
  CHECK_THROWS_AS(annulus_scan(s.E, s.B, s.M, {0.3}, cfg), Error);
}

TEST_CASE("scan is deterministic and worker-count independent") {
  const Surface s(0);
  ScanConfig cfg;
  cfg.seed_bound = 1;
  const auto deltas = delta_grid(3);

  const SpectrumReport a = annulus_scan(s.E, s.B, s.M, deltas, cfg);
  const SpectrumReport b = annulus_scan(s.E, s.B, s.M, deltas, cfg);
  CHECK(report_json(a).dump() == report_json(b).dump());

  ScanConfig par = cfg;
  par.workers = 4;
  const SpectrumReport c = annulus_scan(s.E, s.B, s.M, deltas, par);
  // content identical; only the embedded worker count differs
  CHECK(report_json(a)["results"].dump() == report_json(c)["results"].dump());
  CHECK(report_json(a)["verdict"] == report_json(c)["verdict"]);
}

TEST_CASE("verdicts survive rescaling the complex eigenvector") {
  const Surface s(0);
  std::mt19937 rng(20260811);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
  const Complex phase = std::polar(1.0, angle(rng));
  const LatticeBasis B2 = lattice_basis(s.E, phase);

  ScanConfig cfg;
  cfg.seed_bound = 1;
  const auto deltas = delta_grid(3);
  const SpectrumReport r1 = annulus_scan(s.E, s.B, s.M, deltas, cfg);
  const SpectrumReport r2 = annulus_scan(s.E, B2, s.M, deltas, cfg);

  CHECK(r1.verdict == r2.verdict);
  REQUIRE(r1.results.size() == r2.results.size());
  for (std::size_t i = 0; i < r1.results.size(); ++i) {
    CHECK(r1.results[i].flagged == r2.results[i].flagged);
    CHECK(std::abs(std::abs(r1.results[i].match.det) -
                   std::abs(r2.results[i].match.det)) <= 1e-10);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(r1.finite_orbit.dolbeault[i] - r2.finite_orbit.dolbeault[i]) <=
          1e-10);
    CHECK(std::abs(r1.finite_orbit.dplus[i] - r2.finite_orbit.dplus[i]) <= 1e-10);
  }
}

TEST_CASE("csv and plot outputs are well formed") {
  const Surface s(0);
  ScanConfig cfg;
  cfg.seed_bound = 1;
  const SpectrumReport r = annulus_scan(s.E, s.B, s.M, delta_grid(2), cfg);

  const std::string csv = report_csv(r);
  CHECK(csv.rfind("mode_k,mode_l,mode_m,delta,det_re,det_im,flagged\n", 0) == 0);
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == static_cast<long>(r.results.size()) + 1);

  const std::string plot = report_plot_data(r);
  CHECK(plot.rfind("# orbit_index delta abs_det\n", 0) == 0);

  const Json j = report_json(r);
  CHECK(j["verdict"] == "ConsistentWithTheorem");
  CHECK(j["version"] == kVersion);
  CHECK(j["config"]["seed_bound"] == 1);
}
