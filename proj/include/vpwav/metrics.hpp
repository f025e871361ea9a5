#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace vpwav {

inline double psnr(const Matrix& I, const Matrix& J, double peak) {
  if (I.rows != J.rows || I.cols != J.cols) throw std::invalid_argument("psnr: shape mismatch");
  if (I.size() == 0) throw std::invalid_argument("psnr: empty input");
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be positive");
  double mse = 0.0;
  for (std::size_t i = 0; i < I.data.size(); ++i) {
    const double d = I.data[i] - J.data[i];
    mse += d * d;
  }
  mse /= static_cast<double>(I.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

namespace detail {

inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  while (i < 0 || i >= sn) {
    if (i < 0) i = -i - 1;
    if (i >= sn) i = 2 * sn - 1 - i;
  }
  return static_cast<std::size_t>(i);
}

// Separable filtering with symmetric (mirror) boundary handling.
inline Matrix gaussian_filter(const Matrix& I, const std::vector<double>& k) {
  const auto r = static_cast<std::ptrdiff_t>(k.size() / 2);
  Matrix tmp(I.rows, I.cols), out(I.rows, I.cols);
  for (std::size_t i = 0; i < I.rows; ++i)
    for (std::size_t j = 0; j < I.cols; ++j) {
      double acc = 0.0;
      for (std::ptrdiff_t t = -r; t <= r; ++t)
        acc += k[static_cast<std::size_t>(t + r)] *
               I(i, reflect_index(static_cast<std::ptrdiff_t>(j) + t, I.cols));
      tmp(i, j) = acc;
    }
  for (std::size_t i = 0; i < I.rows; ++i)
    for (std::size_t j = 0; j < I.cols; ++j) {
      double acc = 0.0;
      for (std::ptrdiff_t t = -r; t <= r; ++t)
        acc += k[static_cast<std::size_t>(t + r)] *
               tmp(reflect_index(static_cast<std::ptrdiff_t>(i) + t, I.rows), j);
      out(i, j) = acc;
    }
  return out;
}

inline std::vector<double> ssim_window() {
  std::vector<double> k(11);
  double sum = 0.0;
  for (int i = 0; i < 11; ++i) {
    const double d = i - 5;
    k[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace detail

// Mean SSIM with the standard 11x11 Gaussian window (sigma 1.5),
// K1 = 0.01, K2 = 0.03. Optionally exports the per-pixel map.
inline double ssim(const Matrix& I, const Matrix& J, double dynamic_range,
                   Matrix* map_out = nullptr) {
  if (I.rows != J.rows || I.cols != J.cols) throw std::invalid_argument("ssim: shape mismatch");
  if (I.rows < 11 || I.cols < 11)
    throw std::invalid_argument("ssim: images must be at least 11x11");
  if (!(dynamic_range > 0.0)) throw std::invalid_argument("ssim: dynamic range must be positive");
  const double c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
  const double c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
  const std::vector<double> k = detail::ssim_window();

  Matrix ii(I.rows, I.cols), jj(I.rows, I.cols), ij(I.rows, I.cols);
  for (std::size_t t = 0; t < I.data.size(); ++t) {
    ii.data[t] = I.data[t] * I.data[t];
    jj.data[t] = J.data[t] * J.data[t];
    ij.data[t] = I.data[t] * J.data[t];
  }
  const Matrix mu_i = detail::gaussian_filter(I, k);
  const Matrix mu_j = detail::gaussian_filter(J, k);
  const Matrix e_ii = detail::gaussian_filter(ii, k);
  const Matrix e_jj = detail::gaussian_filter(jj, k);
  const Matrix e_ij = detail::gaussian_filter(ij, k);

  Matrix map(I.rows, I.cols);
  double acc = 0.0;
  for (std::size_t t = 0; t < map.data.size(); ++t) {
    const double mi = mu_i.data[t], mj = mu_j.data[t];
    const double si = e_ii.data[t] - mi * mi;
    const double sj = e_jj.data[t] - mj * mj;
    const double sij = e_ij.data[t] - mi * mj;
    const double v = ((2.0 * mi * mj + c1) * (2.0 * sij + c2)) /
                     ((mi * mi + mj * mj + c1) * (si + sj + c2));
    map.data[t] = v;
    acc += v;
  }
  if (map_out) *map_out = std::move(map);
  return acc / static_cast<double>(I.size());
}

}  // namespace vpwav
