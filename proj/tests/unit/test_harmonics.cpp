#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "sphlrd/errors.hpp"
#include "sphlrd/harmonics.hpp"

using namespace sphlrd;
using doctest::Approx;

TEST_SUITE("harmonics") {
  TEST_CASE("legendre values") {
    CHECK(legendre(0, 0.3) == 1.0);
    CHECK(legendre(1, -0.7) == -0.7);
    CHECK(legendre(2, 0.5) == Approx(-0.125).epsilon(1e-15));
  }

  TEST_CASE("legendre clamps tiny overshoot and rejects larger") {
    CHECK(legendre(3, 1.0 + 5e-13) == Approx(1.0));
    CHECK_THROWS_AS(legendre(3, 1.0 + 1e-9), InvalidParameter);
    CHECK_THROWS_AS(legendre(-1, 0.2), InvalidParameter);
  }

  TEST_CASE("recurrence matches explicit polynomials") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng);
      for (int n = 0; n <= 5; ++n) CHECK(std::abs(legendre(n, x) - oracle::legendre_closed(n, x)) < 1e-12);
    }
  }

  TEST_CASE("legendre bounded by one") {
    for (int n = 0; n <= 60; ++n) {
      for (double x = -1.0; x <= 1.0; x += 0.01) CHECK(std::abs(legendre(n, x)) <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("orthogonality under Golub-Welsch nodes") {
    const auto [x, w] = oracle::golub_welsch(512);
    for (int n = 0; n <= 20; ++n) {
      for (int m = 0; m <= 20; ++m) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * legendre(n, x[i]) * legendre(m, x[i]);
        const double expected = n == m ? 2.0 / (2 * n + 1) : 0.0;
        CHECK(std::abs(s - expected) < 1e-8);
      }
    }
  }

  TEST_CASE("normalized jacobi") {
    for (int n = 0; n <= 50; ++n) CHECK(jacobi_normalized(n, 0.7, -0.3, 1.0) == 1.0);
    CHECK(jacobi_normalized(2, 0.0, 0.0, 0.5) == Approx(legendre(2, 0.5)).epsilon(1e-14));
    // degree one: ((a + b + 2) x + (a - b)) / 2, normalized by its value at 1
    const double a = 0.5, b = -0.5;
    const auto p1 = [&](double x) { return ((a + b + 2) * x + (a - b)) / 2; };
    CHECK(jacobi_normalized(1, a, b, 0.0) == Approx(p1(0.0) / p1(1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(jacobi_normalized(2, -1.0, 0.0, 0.2), InvalidParameter);
    CHECK_THROWS_AS(jacobi_normalized(2, 0.0, -1.5, 0.2), InvalidParameter);
  }

  TEST_CASE("jacobi with equal parameters is proportional to gegenbauer") {
    // alpha = beta = 1/2 on S^3: R_n(cos t) = sin((n+1)t) / ((n+1) sin t)
    for (int n = 0; n <= 12; ++n) {
      for (double t = 0.1; t < 3.1; t += 0.3) {
        const double expected = std::sin((n + 1) * t) / ((n + 1) * std::sin(t));
        CHECK(jacobi_normalized(n, 0.5, 0.5, std::cos(t)) == Approx(expected).epsilon(1e-11));
      }
    }
  }

  TEST_CASE("scale dimension") {
    for (int n = 0; n <= 40; ++n) {
      const auto s = HarmonicScale::sphere(n);
      CHECK(s.delta == 2 * n + 1);
      CHECK(s.lambda_lb == Approx(-n * (n + 1.0)));
    }
    // S^3: (n + 1)^2
    for (int n = 0; n <= 20; ++n) CHECK(HarmonicScale::sphere(n, 3).delta == Approx((n + 1.0) * (n + 1.0)));
    // Gamma-ratio formula with direct Gamma products
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
      for (double b : {-0.5, 0.0, 0.5}) {
        for (int n = 1; n <= 10; ++n) {
          const double expected = (2 * n + a + b + 1) * std::tgamma(b + 1) * std::tgamma(n + a + b + 1) *
                                  std::tgamma(n + a + 1) /
                                  (std::tgamma(a + 1) * std::tgamma(a + b + 2) * std::tgamma(n + 1) *
                                   std::tgamma(n + b + 1));
          CHECK(scale_dimension(n, a, b) == Approx(expected).epsilon(1e-10));
        }
      }
    }
    CHECK(sphere_area(2) == Approx(4.0 * oracle::pi));
    CHECK(sphere_area(1) == Approx(2.0 * oracle::pi));
    CHECK(sphere_area(3) == Approx(2.0 * oracle::pi * oracle::pi));
  }

  TEST_CASE("zonal kernel") {
    CHECK(zonal_kernel(HarmonicScale::sphere(0), 0.37) == Approx(1.0 / (4 * oracle::pi)).epsilon(1e-15));
    CHECK(zonal_kernel(HarmonicScale::sphere(3), 1.0) == Approx(7.0 / (4 * oracle::pi)).epsilon(1e-15));
    CHECK(zonal_kernel(HarmonicScale::sphere(2), 0.0) == Approx(-5.0 / (8 * oracle::pi)).epsilon(1e-15));
  }

  TEST_CASE("addition formula consistency") {
    for (int n = 0; n <= 50; ++n) {
      const auto s = HarmonicScale::sphere(n);
      for (double x = -1.0; x <= 1.0; x += 0.005) {
        CHECK(std::abs(zonal_kernel(s, x) - (2 * n + 1) / (4 * oracle::pi) * legendre(n, x)) < 1e-12);
      }
    }
  }

  TEST_CASE("geodesic cosine") {
    const auto p = SpherePoint::from_angles(0.8, 2.1);
    CHECK(geodesic_cos(p, p) == Approx(1.0));
    CHECK(geodesic_cos(SpherePoint::north_pole(), SpherePoint::from_vector({0, 0, -1})) == -1.0);
    CHECK(geodesic_cos(SpherePoint::from_vector({1, 0, 0}), SpherePoint::from_vector({0, 1, 0})) == 0.0);
    CHECK_THROWS_AS(SpherePoint::from_vector({0, 0, 0}), InvalidParameter);
  }

  TEST_CASE("points are unit vectors and angles round-trip") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.0, oracle::pi), ph(-oracle::pi, oracle::pi);
    for (int i = 0; i < 500; ++i) {
      const double t = th(rng), l = ph(rng);
      const auto p = SpherePoint::from_angles(t, l);
      const auto& v = p.xyz();
      CHECK(std::abs(std::hypot(v[0], v[1], v[2]) - 1.0) < 1e-12);
      CHECK(p.colatitude() == Approx(t).epsilon(1e-12));
    }
  }

  TEST_CASE("zonal kernel invariant under a common rotation") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    const auto rotate = [](const std::array<double, 3>& v, double a) {
      // rotation about the axis (1, 1, 1)/sqrt(3) by angle a (Rodrigues)
      const double k = 1.0 / std::sqrt(3.0);
      const std::array<double, 3> ax{k, k, k};
      const double c = std::cos(a), s = std::sin(a);
      const double dot = ax[0] * v[0] + ax[1] * v[1] + ax[2] * v[2];
      const std::array<double, 3> cr{ax[1] * v[2] - ax[2] * v[1], ax[2] * v[0] - ax[0] * v[2], ax[0] * v[1] - ax[1] * v[0]};
      std::array<double, 3> out{};
      for (int i = 0; i < 3; ++i) out[i] = v[i] * c + cr[i] * s + ax[i] * dot * (1 - c);
      return out;
    };
    for (int i = 0; i < 100; ++i) {
      const auto x = SpherePoint::from_vector({g(rng), g(rng), g(rng)});
      const auto y = SpherePoint::from_vector({g(rng), g(rng), g(rng)});
      const auto xr = SpherePoint::from_vector(rotate(x.xyz(), 1.234));
      const auto yr = SpherePoint::from_vector(rotate(y.xyz(), 1.234));
      for (int n : {1, 4, 9}) {
        const auto s = HarmonicScale::sphere(n);
        CHECK(zonal_kernel(s, geodesic_cos(x, y)) == Approx(zonal_kernel(s, geodesic_cos(xr, yr))).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("equiangular grid") {
    const auto grid = equiangular_grid();
    CHECK(grid.size() == 60u * 120u);
    CHECK(grid.front().colatitude() == Approx(oracle::pi / 120));
  }

  TEST_CASE("field reconstruction") {
    const auto pole = SpherePoint::from_angles(0.4, 1.0);
    const auto grid = equiangular_grid(10, 20);
    CHECK(reconstruct_field({pole, {0.0, 0.0, 0.0}}, grid) == std::vector<double>(grid.size(), 0.0));
    CHECK(reconstruct_field({pole, {1.0}}, {}).empty());
    const std::vector<SpherePoint> at_pole{pole};
    CHECK(reconstruct_field({pole, {0.0, 0.0, 1.0}}, at_pole)[0] == Approx(7.0 / (4 * oracle::pi)));
    // a point orthogonal to the pole
    const auto& p = pole.xyz();
    const auto q = SpherePoint::from_vector({p[1], -p[0], 0.0});
    const std::vector<SpherePoint> eq{q};
    CHECK(std::abs(reconstruct_field({pole, {1.0}}, eq)[0]) < 1e-15);
  }
}
