#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vpwav/chebyshev.hpp"

using namespace vpwav;

TEST_CASE("cheb_nodes closed forms") {
  CHECK(cheb_nodes(1)[0] == Catch::Approx(0.0).margin(1e-16));
  const auto x2 = cheb_nodes(2);
  CHECK(x2[0] == Catch::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(x2[1] == Catch::Approx(-std::sqrt(0.5)).epsilon(1e-15));
  CHECK(cheb_nodes(3)[1] == Catch::Approx(0.0).margin(1e-16));
  CHECK_THROWS_AS(cheb_nodes(0), std::invalid_argument);
}

TEST_CASE("cheb_nodes symmetry and monotonicity") {
  for (std::size_t n : {5u, 12u, 27u}) {
    const auto x = cheb_nodes(n);
    for (std::size_t k = 0; k < n; ++k) CHECK(x[k] == -x[n - 1 - k]);
    for (std::size_t k = 1; k < n; ++k) CHECK(x[k] < x[k - 1]);
  }
}

TEST_CASE("y_nodes closed form for n=1") {
  const auto y = y_nodes(1);
  REQUIRE(y.size() == 2);
  CHECK(y[0] == Catch::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(y[1] == Catch::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(y_nodes(0), std::invalid_argument);
}

TEST_CASE("x and y nodes merge onto the 3n grid") {
  for (std::size_t n = 1; n <= 243; ++n) {
    const auto x = cheb_nodes(n);
    const auto y = y_nodes(n);
    const auto grid = cheb_nodes(3 * n);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      worst = std::max(worst, std::abs(x[k] - grid[3 * k + 1]));
      worst = std::max(worst, std::abs(y[2 * k] - grid[3 * k]));
      worst = std::max(worst, std::abs(y[2 * k + 1] - grid[3 * k + 2]));
    }
    CHECK(worst <= 1e-15);
  }
  // disjoint index classes: no y node coincides with an x node
  for (std::size_t n : {2u, 6u, 27u}) {
    for (double yv : y_nodes(n))
      for (double xv : cheb_nodes(n)) CHECK(yv != xv);
  }
}

TEST_CASE("cheb_T basics") {
  CHECK(cheb_T(0, 0.37) == 1.0);
  CHECK(cheb_T(3, 0.5) == Catch::Approx(-1.0).epsilon(1e-14));
  const auto x = cheb_nodes(7);
  for (double xv : x) CHECK(std::abs(cheb_T(7, xv)) <= 1e-14);
  CHECK_THROWS_AS(cheb_T(2, 1.1), std::invalid_argument);
  CHECK(cheb_T(5, 1.0 + 1e-13) == Catch::Approx(1.0));  // clamped
}

TEST_CASE("gauss_cheb_integral exactness") {
  // f = 1 -> pi
  CHECK(gauss_cheb_integral(std::vector<double>(5, 1.0)) == Catch::Approx(kPi).epsilon(1e-15));
  // f = x^2, M = 4 -> pi/2
  {
    const auto x = cheb_nodes(4);
    std::vector<double> f(4);
    for (std::size_t i = 0; i < 4; ++i) f[i] = x[i] * x[i];
    CHECK(gauss_cheb_integral(f) == Catch::Approx(kPi / 2.0).epsilon(1e-14));
  }
  // f = T_3^2, M = 8 -> pi/2 (orthonormality)
  {
    const auto x = cheb_nodes(8);
    std::vector<double> f(8);
    for (std::size_t i = 0; i < 8; ++i) f[i] = cheb_T(3, x[i]) * cheb_T(3, x[i]);
    CHECK(gauss_cheb_integral(f) == Catch::Approx(kPi / 2.0).epsilon(1e-14));
  }
  // moments of x^r for r <= 2M-1 match the closed-form weighted moments
  for (std::size_t M : {3u, 6u, 10u}) {
    const auto x = cheb_nodes(M);
    for (std::size_t r = 0; r < 2 * M; ++r) {
      std::vector<double> f(M);
      for (std::size_t i = 0; i < M; ++i) f[i] = std::pow(x[i], static_cast<double>(r));
      // closed form: 0 for odd r, pi * (r-1)!! / r!! for even r
      double expect = 0.0;
      if (r % 2 == 0) {
        expect = kPi;
        for (std::size_t j = 2; j <= r; j += 2)
          expect *= static_cast<double>(j - 1) / static_cast<double>(j);
      }
      CHECK(gauss_cheb_integral(f) == Catch::Approx(expect).margin(1e-12));
    }
  }
  CHECK_THROWS_AS(gauss_cheb_integral({}), std::invalid_argument);
}
