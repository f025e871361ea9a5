#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "vpwav/dct.hpp"
#include "vpwav/rng.hpp"

using namespace vpwav;

namespace {

// Independent O(N^2) oracle for the DCT convention used throughout:
// u_r = sqrt(2/N)/sqrt(1+delta_{r,0}) * sum_s v_s cos(r (2s+1) pi / (2N)).
std::vector<double> oracle_dct(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> u(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    long double acc = 0.0L;
    for (std::size_t s = 0; s < n; ++s)
      acc += static_cast<long double>(v[s]) *
             std::cos(static_cast<long double>(r) * (2.0L * s + 1.0L) * 3.14159265358979323846264338327950288L /
                      (2.0L * n));
    const double w = (r == 0) ? std::sqrt(1.0 / static_cast<double>(n))
                              : std::sqrt(2.0 / static_cast<double>(n));
    u[r] = w * static_cast<double>(acc);
  }
  return u;
}

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  GaussianRng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("dct of a constant vector") {
  const std::vector<double> v(4, 1.0);
  const auto u = dct(v);
  CHECK(u[0] == Catch::Approx(2.0).epsilon(1e-14));
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(u[k]) <= 1e-14);
}

TEST_CASE("idct of the first unit vector") {
  std::vector<double> e1(4, 0.0);
  e1[0] = 1.0;
  const auto u = idct(e1);
  for (double x : u) CHECK(x == Catch::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("idct of e_2 at N=3 gives scaled nodes") {
  std::vector<double> e2(3, 0.0);
  e2[1] = 1.0;
  const auto u = idct(e2);
  const auto x = cheb_nodes(3);
  for (std::size_t s = 0; s < 3; ++s)
    CHECK(u[s] == Catch::Approx(std::sqrt(2.0 / 3.0) * x[s]).margin(1e-14));
}

TEST_CASE("dct/idct are mutually inverse") {
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto v = random_vec(n, 1000 + n);
    const auto r1 = idct(dct(v));
    const auto r2 = dct(idct(v));
    const double scale = max_abs(v);
    CHECK(max_abs_diff(v, r1) <= 1e-12 * scale);
    CHECK(max_abs_diff(v, r2) <= 1e-12 * scale);
  }
  for (std::size_t n : {81u, 243u, 729u}) {
    const auto v = random_vec(n, 2000 + n);
    CHECK(max_abs_diff(v, idct(dct(v))) <= 1e-12 * max_abs(v));
  }
}

TEST_CASE("fast dct agrees with the direct summation oracle") {
  // 3-smooth sizes exercise the mixed-radix path, the rest Bluestein
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u, 7u, 9u, 11u, 12u, 13u, 16u, 27u, 36u,
                        41u, 64u, 100u, 243u, 641u, 1000u}) {
    const auto v = random_vec(n, 31 * n);
    const auto fast = dct(v);
    const auto slow = oracle_dct(v);
    CHECK(max_abs_diff(fast, slow) <= 1e-12 * std::max(1.0, max_abs(slow)));
    // library direct path agrees with both
    CHECK(max_abs_diff(dct_direct(v), slow) <= 1e-12 * std::max(1.0, max_abs(slow)));
    // idct inverts the oracle output back to v
    CHECK(max_abs_diff(idct(slow), v) <= 1e-11 * std::max(1.0, max_abs(v)));
    CHECK(max_abs_diff(idct_direct(slow), v) <= 1e-11 * std::max(1.0, max_abs(v)));
  }
}

TEST_CASE("dct input validation") {
  CHECK_THROWS_AS(dct({}), std::invalid_argument);
  CHECK_THROWS_AS(idct({}), std::invalid_argument);
  CHECK_THROWS_AS(dct_direct({}), std::invalid_argument);
  CHECK_THROWS_AS(idct_direct({}), std::invalid_argument);
}

TEST_CASE("dct linearity") {
  const auto v = random_vec(24, 7);
  const auto w = random_vec(24, 8);
  std::vector<double> lin(24);
  for (std::size_t i = 0; i < 24; ++i) lin[i] = 2.5 * v[i] - 0.75 * w[i];
  const auto dl = dct(lin);
  const auto dv = dct(v);
  const auto dw = dct(w);
  for (std::size_t i = 0; i < 24; ++i)
    CHECK(dl[i] == Catch::Approx(2.5 * dv[i] - 0.75 * dw[i]).margin(1e-12));
}
