#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "sphlrd/errors.hpp"
#include "sphlrd/quadrature.hpp"

using namespace sphlrd;
using doctest::Approx;

TEST_SUITE("quadrature") {
  TEST_CASE("smooth integrands") {
    CHECK(integrate_panels([](double x) { return std::sin(x); }, 0.0, oracle::pi) == Approx(2.0).epsilon(1e-14));
    CHECK(integrate_panels([](double x) { return x * x; }, -1.0, 2.0, 20) == Approx(3.0).epsilon(1e-14));
  }

  TEST_CASE("power singularity at the origin") {
    for (double a : {0.1, 0.3, 0.45, 0.49}) {
      const double exact = std::pow(oracle::pi, 1.0 - a) / (1.0 - a);
      const double got = integrate_origin_singular([a](double w) { return std::pow(w, -a); }, oracle::pi, a);
      CHECK(got == Approx(exact).epsilon(1e-12));
    }
  }

  TEST_CASE("fractional power without singularity") {
    const double exact = std::pow(oracle::pi, 2.05) / 2.05;
    CHECK(integrate_origin_singular([](double w) { return std::pow(w, 1.05); }, oracle::pi, -1.05) ==
          Approx(exact).epsilon(1e-12));
  }

  TEST_CASE("agrees with the graded midpoint oracle on a log-power integrand") {
    const auto f = [](double w) { return std::pow(w, -0.4) * std::log(1.0 + w); };
    CHECK(integrate_origin_singular(f, 2.0, 0.4) == Approx(oracle::graded_midpoint(f, 2.0)).epsilon(1e-8));
  }

  TEST_CASE("rejects non-integrable exponents") {
    CHECK_THROWS_AS(integrate_origin_singular([](double w) { return 1.0 / w; }, 1.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(integrate_panels([](double) { return 1.0; }, 0.0, 1.0, 0), InvalidParameter);
  }
}
