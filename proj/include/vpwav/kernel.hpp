#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "chebyshev.hpp"
#include "resolution.hpp"

// The de la Vallee Poussin kernel
//   phi_n^m(x,y) = (2/n) * sum'_{r=0}^{n+m-1} mu_{n,r}^m T_r(x) T_r(y)
// (first summand halved), its trigonometric form, and the basis functions
// built from it: scaling functions phi_{n,k}^m = phi_n^m(x_k^n, .) and
// wavelets psi_{n,k}^m interpolating on the complementary node set.
//
// Basis-function indices k and r are 1-based, matching the usual notation;
// vectors are plain 0-based arrays.

namespace vpwav {
namespace detail {

inline constexpr double kSingGuard = 1e-6;  // on |sin(delta/2)|

// sin(n d) sin(m d) / sin^2(d/2), 2*pi-periodic in d. Near the removable
// singularity the quotient is replaced by its Taylor expansion
// 4nm (1 + c2 d^2 + c4 d^4) about d = 0.
inline double kernel_fraction(const ResolutionSpec& s, double delta) {
  const double d = std::remainder(delta, 2.0 * kPi);
  const double sh = std::sin(0.5 * d);
  const double nd = static_cast<double>(s.n), md = static_cast<double>(s.m);
  if (std::abs(sh) < kSingGuard) {
    const double n2 = nd * nd, m2 = md * md;
    const double c2 = 1.0 / 12.0 - (n2 + m2) / 6.0;
    const double c4 = (n2 * n2 + m2 * m2) / 120.0 + n2 * m2 / 36.0 - (n2 + m2) / 72.0 + 1.0 / 240.0;
    const double d2 = d * d;
    return 4.0 * nd * md * (1.0 + c2 * d2 + c4 * d2 * d2);
  }
  return std::sin(nd * d) * std::sin(md * d) / (sh * sh);
}

}  // namespace detail

// Series form of phi_n^m(x, y).
inline double kernel_series(const ResolutionSpec& s, double x, double y) {
  check_spec(s);
  x = detail::clamp_to_unit(x, "kernel_series");
  y = detail::clamp_to_unit(y, "kernel_series");
  const double tx = std::acos(x), ty = std::acos(y);
  double acc = 0.5;  // r = 0: mu = 1, T_0 T_0 halved
  for (std::size_t r = 1; r < s.n + s.m; ++r) {
    const double rd = static_cast<double>(r);
    acc += mu(s, r) * (std::cos(rd * tx) * std::cos(rd * ty));  // grouped: exact x/y symmetry
  }
  return 2.0 / static_cast<double>(s.n) * acc;
}

// Trigonometric form of phi_n^m(cos t, cos s); O(1) per evaluation.
inline double kernel_trig(const ResolutionSpec& s, double t, double u) {
  check_spec(s);
  return (detail::kernel_fraction(s, t - u) + detail::kernel_fraction(s, t + u)) /
         (4.0 * static_cast<double>(s.n) * static_cast<double>(s.m));
}

// phi_{n,k}^m(x), k = 1..n.
inline double scaling_eval(const ResolutionSpec& s, std::size_t k, double x) {
  check_spec(s);
  if (k < 1 || k > s.n) throw std::invalid_argument("scaling_eval: k out of range");
  x = detail::clamp_to_unit(x, "scaling_eval");
  return kernel_trig(s, detail::node_angle(s.n, k - 1), std::acos(x));
}

// psi_{n,k}^m(x), k = 1..2n. The inner kernels run at resolution (3n, m).
inline double wavelet_eval(const ResolutionSpec& s, std::size_t k, double x) {
  check_spec(s);
  if (k < 1 || k > 2 * s.n) throw std::invalid_argument("wavelet_eval: k out of range");
  x = detail::clamp_to_unit(x, "wavelet_eval");
  const ResolutionSpec s3{3 * s.n, s.m, s.theta};
  const double ty = detail::y_node_angle(s.n, k - 1);
  const double tx = std::acos(x);
  double val = kernel_trig(s3, ty, tx);
  for (std::size_t h = 1; h <= s.n; ++h) {
    const double phi_h_at_y = kernel_trig(s, detail::node_angle(s.n, h - 1), ty);
    // x_h^n sits at position 3h-1 (1-based) of the 3n grid
    const double t_h = detail::node_angle(3 * s.n, 3 * (h - 1) + 1);
    val -= phi_h_at_y * kernel_trig(s3, t_h, tx);
  }
  return val;
}

// p_r(x) = sqrt(2/pi) T_{r-1}(x) / sqrt(1+delta_{r,1}), r >= 1.
inline double p_basis(std::size_t r, double x) {
  if (r == 0) throw std::invalid_argument("p_basis: r must be >= 1");
  const double norm = std::sqrt(2.0 / kPi) / (r == 1 ? std::sqrt(2.0) : 1.0);
  return norm * cheb_T(r - 1, x);
}

// q_r: equal to p_r up to r = n-m+1, then a folded combination of p_r and
// p_{2n-r+2}.
inline double q_basis(const ResolutionSpec& s, std::size_t r, double x) {
  check_spec(s);
  if (r < 1 || r > s.n) throw std::invalid_argument("q_basis: r out of range");
  if (r <= s.n - s.m + 1) return p_basis(r, x);
  const double j = static_cast<double>(s.n - r + 1);
  const double md = static_cast<double>(s.m);
  const double c1 = (md + j) / (2.0 * md);
  const double c2 = (md - j) / (2.0 * md);
  return c1 * p_basis(r, x) - c2 * p_basis(2 * s.n - r + 2, x);
}

// V_n^m f(x) = sum_k f(x_k^n) phi_{n,k}^m(x).
inline double vp_interpolate(const std::vector<double>& samples, const ResolutionSpec& s,
                             double x) {
  check_spec(s);
  if (samples.size() != s.n)
    throw std::invalid_argument("vp_interpolate: samples length must equal n");
  x = detail::clamp_to_unit(x, "vp_interpolate");
  const double tx = std::acos(x);
  double acc = 0.0;
  for (std::size_t k = 0; k < s.n; ++k)
    acc += samples[k] * kernel_trig(s, detail::node_angle(s.n, k), tx);
  return acc;
}

}  // namespace vpwav
