#include <doctest.h>

#include <cmath>

#include "inoue/bessel.hpp"
#include "inoue/errors.hpp"
#include "oracle_helpers.hpp"

using namespace inoue;

namespace {

// 18-digit reference values (mpmath, dps=30).
struct Ref {
  double x, i0, i1, k0, k1;
};
constexpr Ref kRefs[] = {
    {0.1, 1.0025015629340956, 0.0500625260470926949, 2.42706902470201656, 9.85384478087060557},
    {0.5, 1.06348337074132352, 0.257894305390896316, 0.924419071227665862, 1.65644112000330089},
    {1.0, 1.26606587775200834, 0.565159103992485027, 0.421024438240708333, 0.601907230197234575},
    {2.0, 2.27958530233606727, 1.59063685463732906, 0.113893872749533436, 0.139865881816522427},
    {2.5, 3.28983914405012304, 2.51671624528869844, 0.062347553200366186, 0.0738908163477470636},
    {5.0, 27.2398718236044469, 24.3356421424505272, 0.00369109833404259427, 0.00404461344545216421},
    {10.0, 2815.71662846625447, 2670.98830370125465, 1.77800623161676518e-5, 1.86487734538255846e-5},
    {15.0, 339649.37329791388, 328124.921970206397, 9.81953648239643454e-8, 1.01417293697620918e-7},
    {15.5, 550722.120314413814, 532649.702398440429, 5.86048162663739659e-8, 6.04665944230588709e-8},
    {20.0, 43558282.5595535333, 42454973.3851277702, 5.74123781533652429e-10, 5.88305796955703818e-10},
    {30.0, 781672297823.97749, 768532038938.956999, 2.13247749646305637e-14, 2.16773200189154942e-14},
};

}  // namespace

TEST_CASE("reference values across the branch splits") {
  for (const Ref& r : kRefs) {
    CHECK(bessel_i(0, r.x) == doctest::Approx(r.i0).epsilon(1e-12));
    CHECK(bessel_i(1, r.x) == doctest::Approx(r.i1).epsilon(1e-12));
    CHECK(bessel_k(0, r.x) == doctest::Approx(r.k0).epsilon(1e-12));
    CHECK(bessel_k(1, r.x) == doctest::Approx(r.k1).epsilon(1e-12));
  }
}

TEST_CASE("small-x leading behavior") {
  // I1(x) -> x/2
  CHECK(std::abs(bessel_i(1, 1e-6) - 5e-7) <= 1e-18);
  // K1(x) -> 1/x, K0(x) -> -ln(x/2) - gamma
  CHECK(bessel_k(1, 1e-8) == doctest::Approx(1e8).epsilon(1e-10));
}

TEST_CASE("I series against the long-double oracle") {
  for (double x : {0.1, 0.7, 1.0, 3.0, 8.0, 14.9, 15.1, 22.0, 30.0}) {
    const double ref0 = static_cast<double>(oracle::bessel_i_series_ld(0, x));
    const double ref1 = static_cast<double>(oracle::bessel_i_series_ld(1, x));
    CHECK(bessel_i(0, x) == doctest::Approx(ref0).epsilon(1e-12));
    CHECK(bessel_i(1, x) == doctest::Approx(ref1).epsilon(1e-12));
  }
}

TEST_CASE("Wronskian identity at selected points") {
  // I1 K1' - I1' K1 = -1/x with K1' = -K0 - K1/x, I1' = I0 - I1/x
  for (double x : {0.5, 1.0, 5.0, 20.0}) {
    const double i0 = bessel_i(0, x), i1 = bessel_i(1, x);
    const double k0 = bessel_k(0, x), k1 = bessel_k(1, x);
    const double w = i1 * (-k0 - k1 / x) - (i0 - i1 / x) * k1;
    CHECK(std::abs(w * (-x) - 1.0) <= 1e-10);
  }
}

TEST_CASE("Wronskian across the full range, both orders") {
  for (double x = 0.1; x <= 30.0; x += 0.37) {
    const double i0 = bessel_i(0, x), i1 = bessel_i(1, x);
    const double k0 = bessel_k(0, x), k1 = bessel_k(1, x);
    const double w0 = i0 * (-k1) - i1 * k0;
    const double w1 = i1 * (-k0 - k1 / x) - (i0 - i1 / x) * k1;
    CHECK(std::abs(w0 * (-x) - 1.0) <= 1e-10);
    CHECK(std::abs(w1 * (-x) - 1.0) <= 1e-10);
  }
}

TEST_CASE("finite-difference ODE residual of K1 and I1 at x=2") {
  // x^2 y'' + x y' - (x^2 + 1) y = 0
  const double x = 2.0, h = 1e-4;
  for (auto f : {+[](double t) { return bessel_k(1, t); },
                 +[](double t) { return bessel_i(1, t); }}) {
    const double ypp = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    const double yp = (f(x + h) - f(x - h)) / (2.0 * h);
    const double res = x * x * ypp + x * yp - (x * x + 1.0) * f(x);
    CHECK(std::abs(res) / ((x * x + 1.0) * std::abs(f(x))) < 1e-6);
  }
}

TEST_CASE("scaled and log variants") {
  for (double x : {0.5, 5.0, 20.0, 100.0, 700.0, 1e6, 1e13}) {
    const double is = bessel_i_scaled(1, x);
    const double ks = bessel_k_scaled(1, x);
    CHECK(is > 0.0);
    CHECK(ks > 0.0);
    if (x <= 30.0) {
      CHECK(is == doctest::Approx(bessel_i(1, x) * std::exp(-x)).epsilon(1e-12));
      CHECK(ks == doctest::Approx(bessel_k(1, x) * std::exp(x)).epsilon(1e-12));
    }
    // product I*K = scaled product (the exponentials cancel)
    const double prod = bessel_i_scaled(1, x) * bessel_k_scaled(1, x);
    CHECK(prod > 0.0);
    CHECK(prod < 1.0);
    CHECK(bessel_i_log(1, x) == doctest::Approx(x + std::log(is)).epsilon(1e-14));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_i(0, 0.0), Error);
  CHECK_THROWS_AS(bessel_i(0, -1.0), Error);
  CHECK_THROWS_AS(bessel_k(1, -2.0), Error);
  CHECK_THROWS_AS(bessel_i(1, 701.0), Error);
  CHECK_THROWS_AS(bessel_i(2, 1.0), Error);
  CHECK_NOTHROW(bessel_i_scaled(1, 1e14));
}
