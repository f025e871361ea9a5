#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "chebyshev.hpp"
#include "dct.hpp"

// The four discrete transforms behind the fast decomposition:
//   T1(v)_r = sum_s v_s p_r(x_s^n)        (n -> n)
//   T2(v)_s = sum_r v_r p_r(x_s^n)        (n -> n)
//   T3(v)_r = sum_s v_s q_r(y_s^n)        (2n -> n)
//   T4(v)_s = sum_r v_r q_r(y_s^n)        (n -> 2n)
// T1/T2 are sqrt(n/pi)-scaled DCT/IDCT; T3/T4 go through a zero-padded
// length-3n DCT/IDCT with folding of the tail coefficients.

namespace vpwav {

struct FoldSpec {
  std::size_t n = 0;
  std::size_t m = 0;
};

inline void check_fold(const FoldSpec& f) {
  if (f.n < 2 || f.m == 0 || f.m >= f.n)
    throw std::invalid_argument("FoldSpec: requires 0 < m < n");
}

inline std::vector<double> t1(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("t1: empty input");
  std::vector<double> u = dct(v);
  const double s = std::sqrt(static_cast<double>(v.size()) / kPi);
  for (double& x : u) x *= s;
  return u;
}

inline std::vector<double> t2(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("t2: empty input");
  std::vector<double> u = idct(v);
  const double s = std::sqrt(static_cast<double>(v.size()) / kPi);
  for (double& x : u) x *= s;
  return u;
}

inline std::vector<double> t3(const std::vector<double>& v, const FoldSpec& f) {
  check_fold(f);
  const std::size_t n = f.n, m = f.m;
  if (v.size() != 2 * n) throw std::invalid_argument("t3: input length must equal 2n");
  // interleave onto the 3n grid, zeros at the x-node slots
  std::vector<double> w(3 * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    w[3 * k] = v[2 * k];
    w[3 * k + 2] = v[2 * k + 1];
  }
  std::vector<double> x = dct(w);
  const double scale = std::sqrt(3.0 * static_cast<double>(n) / kPi);
  for (double& t : x) t *= scale;
  std::vector<double> u(n);
  for (std::size_t k = 0; k < n - m + 1; ++k) u[k] = x[k];
  const double md = static_cast<double>(m);
  for (std::size_t k = n - m + 1; k < n; ++k) {
    const double j = static_cast<double>(n - k);  // n-(k+1)+1, 1-based
    u[k] = ((md + j) * x[k] - (md - j) * x[2 * n - k]) / (2.0 * md);
  }
  return u;
}

inline std::vector<double> t4(const std::vector<double>& v, const FoldSpec& f) {
  check_fold(f);
  const std::size_t n = f.n, m = f.m;
  if (v.size() != n) throw std::invalid_argument("t4: input length must equal n");
  std::vector<double> w(3 * n, 0.0);
  for (std::size_t k = 0; k < n - m + 1; ++k) w[k] = v[k];
  const double md = static_cast<double>(m);
  for (std::size_t k = n - m + 1; k < n; ++k) {
    const double j = static_cast<double>(n - k);
    w[k] = (md + j) / (2.0 * md) * v[k];
    w[2 * n - k] = -(md - j) / (2.0 * md) * v[k];
  }
  std::vector<double> x = idct(w);
  const double scale = std::sqrt(3.0 * static_cast<double>(n) / kPi);
  std::vector<double> u(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    u[2 * k] = scale * x[3 * k];
    u[2 * k + 1] = scale * x[3 * k + 2];
  }
  return u;
}

}  // namespace vpwav
