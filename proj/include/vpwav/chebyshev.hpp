#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vpwav {

inline constexpr double kPi = std::numbers::pi;

namespace detail {

// Angle of the k-th (0-based) zero of T_n: (2k+1)pi/(2n).
inline double node_angle(std::size_t n, std::size_t k) {
  return (2.0 * static_cast<double>(k) + 1.0) * kPi / (2.0 * static_cast<double>(n));
}

// 0-based index on the 3n grid of the 0-based y-node s (the zeros of T_{3n}
// that are not zeros of T_n occupy grid positions != 1 mod 3).
inline std::size_t y_grid_index(std::size_t s) {
  return (s % 2 == 0) ? 3 * (s / 2) : 3 * (s / 2) + 2;
}

// Angle of the 0-based y-node s on the 3n grid.
inline double y_node_angle(std::size_t n, std::size_t s) {
  return node_angle(3 * n, y_grid_index(s));
}

inline double clamp_to_unit(double x, const char* who) {
  if (std::abs(x) > 1.0 + 1e-12) throw std::invalid_argument(std::string(who) + ": |x| > 1");
  if (x > 1.0) return 1.0;
  if (x < -1.0) return -1.0;
  return x;
}

}  // namespace detail

// Zeros of the Chebyshev polynomial T_n, x_k = cos((2k+1)pi/(2n)) for
// k = 0..n-1, strictly decreasing. The lower half mirrors the upper half so
// that x_k == -x_{n-1-k} holds bit-exactly (and the midpoint is exactly 0).
inline std::vector<double> cheb_nodes(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cheb_nodes: n must be positive");
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    x[k] = std::cos(detail::node_angle(n, k));
    x[n - 1 - k] = -x[k];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return x;
}

// The 2n zeros of T_{3n} that are not zeros of T_n, in grid order:
// y[2k] and y[2k+1] sit immediately before and after x_k on the 3n grid.
// Mirrored like cheb_nodes (the symmetric partner of a y node is a y node).
inline std::vector<double> y_nodes(std::size_t n) {
  if (n == 0) throw std::invalid_argument("y_nodes: n must be positive");
  std::vector<double> y(2 * n);
  for (std::size_t s = 0; s < n; ++s) {
    y[s] = std::cos(detail::y_node_angle(n, s));
    y[2 * n - 1 - s] = -y[s];
  }
  return y;
}

// T_r(x) = cos(r arccos x). Inputs marginally outside [-1,1] are clamped.
inline double cheb_T(std::size_t r, double x) {
  x = detail::clamp_to_unit(x, "cheb_T");
  return std::cos(static_cast<double>(r) * std::acos(x));
}

// Gauss-Chebyshev quadrature of f dx/sqrt(1-x^2) from samples of f at
// cheb_nodes(M): (pi/M) * sum. Exact for polynomials of degree <= 2M-1.
inline double gauss_cheb_integral(const std::vector<double>& f_values) {
  if (f_values.empty()) throw std::invalid_argument("gauss_cheb_integral: empty input");
  double s = 0.0;
  for (double v : f_values) s += v;
  return kPi / static_cast<double>(f_values.size()) * s;
}

}  // namespace vpwav
