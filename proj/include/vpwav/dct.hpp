#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "chebyshev.hpp"

// Orthonormal DCT-II / DCT-III pair in the MATLAB dct/idct convention:
//   dct(v)[r]  = sqrt(2/N) / sqrt(1+delta_{r,0}) * sum_s v[s] T_r(x_s^N)
//   idct(v)[s] = sqrt(2/N) * sum_r v[r] / sqrt(1+delta_{r,0}) * T_r(x_s^N)
// with x_s^N the zeros of T_N. The fast path is O(N log N) for every N:
// mixed-radix (2,3) FFT after Makhoul's even/odd permutation, Bluestein's
// chirp transform for sizes with other prime factors. dct_direct/idct_direct
// are the O(N^2) reference summations used for cross-checking.

namespace vpwav {
namespace detail {

using cd = std::complex<double>;

inline bool is_3smooth(std::size_t n) {
  if (n == 0) return false;
  while (n % 2 == 0) n /= 2;
  while (n % 3 == 0) n /= 3;
  return n == 1;
}

inline std::size_t next_3smooth(std::size_t n) {
  while (!is_3smooth(n)) ++n;
  return n;
}

inline std::vector<cd> make_twiddles(std::size_t n) {
  std::vector<cd> w(n);
  for (std::size_t j = 0; j < n; ++j)
    w[j] = std::polar(1.0, -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
  return w;
}

// Decimation-in-time FFT for 3-smooth n. Reads in[0], in[stride], ...;
// writes n contiguous outputs. tw holds exp(-2*pi*i*j/tw.size()) and
// twstep == tw.size()/n.
inline void fft_rec(const cd* in, std::size_t stride, cd* out, std::size_t n,
                    const std::vector<cd>& tw, std::size_t twstep) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  if (n % 2 == 0) {
    const std::size_t h = n / 2;
    fft_rec(in, stride * 2, out, h, tw, twstep * 2);
    fft_rec(in + stride, stride * 2, out + h, h, tw, twstep * 2);
    for (std::size_t k = 0; k < h; ++k) {
      const cd t = tw[k * twstep] * out[h + k];
      out[h + k] = out[k] - t;
      out[k] += t;
    }
    return;
  }
  // n is a power of 3 times possibly 1; radix-3 step
  const std::size_t h = n / 3;
  fft_rec(in, stride * 3, out, h, tw, twstep * 3);
  fft_rec(in + stride, stride * 3, out + h, h, tw, twstep * 3);
  fft_rec(in + 2 * stride, stride * 3, out + 2 * h, h, tw, twstep * 3);
  constexpr double kS3 = 0.8660254037844386467637231707529362;  // sqrt(3)/2
  const cd w1(-0.5, -kS3), w2(-0.5, kS3);                       // exp(-+2*pi*i/3)
  const std::size_t nmaster = tw.size();
  for (std::size_t k = 0; k < h; ++k) {
    const cd a = out[k];
    const cd b = tw[k * twstep] * out[h + k];
    const cd c = tw[(2 * k * twstep) % nmaster] * out[2 * h + k];
    out[k] = a + b + c;
    out[h + k] = a + w1 * b + w2 * c;
    out[2 * h + k] = a + w2 * b + w1 * c;
  }
}

struct FftPlan {
  std::size_t n = 0;
  std::vector<cd> tw;  // master twiddles (size n) when n is 3-smooth
  // Bluestein tables when n is not 3-smooth:
  std::size_t m = 0;          // 3-smooth convolution size >= 2n-1
  std::vector<cd> chirp;      // exp(+i*pi*j^2/n), j^2 reduced mod 2n exactly
  std::vector<cd> chirp_fft;  // FFT_m of the wrapped chirp
  std::vector<cd> tw_m;       // master twiddles of size m

  explicit FftPlan(std::size_t size) : n(size) {
    if (is_3smooth(n)) {
      tw = make_twiddles(n);
      return;
    }
    m = next_3smooth(2 * n - 1);
    tw_m = make_twiddles(m);
    chirp.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t q = (j * j) % (2 * n);  // exact argument reduction
      chirp[j] = std::polar(1.0, kPi * static_cast<double>(q) / static_cast<double>(n));
    }
    std::vector<cd> c(m, cd(0.0, 0.0));
    c[0] = chirp[0];
    for (std::size_t j = 1; j < n; ++j) {
      c[j] = chirp[j];
      c[m - j] = chirp[j];
    }
    chirp_fft.resize(m);
    fft_rec(c.data(), 1, chirp_fft.data(), m, tw_m, 1);
  }
};

inline void fft(const FftPlan& p, const cd* in, cd* out) {
  if (!p.tw.empty()) {
    fft_rec(in, 1, out, p.n, p.tw, 1);
    return;
  }
  // Bluestein: X[k] = conj(chirp[k]) * (a (*) chirp)[k]
  std::vector<cd> a(p.m, cd(0.0, 0.0));
  for (std::size_t j = 0; j < p.n; ++j) a[j] = in[j] * std::conj(p.chirp[j]);
  std::vector<cd> fa(p.m);
  fft_rec(a.data(), 1, fa.data(), p.m, p.tw_m, 1);
  for (std::size_t j = 0; j < p.m; ++j) fa[j] = std::conj(fa[j] * p.chirp_fft[j]);
  std::vector<cd> conv(p.m);
  fft_rec(fa.data(), 1, conv.data(), p.m, p.tw_m, 1);
  const double invm = 1.0 / static_cast<double>(p.m);
  for (std::size_t k = 0; k < p.n; ++k)
    out[k] = std::conj(conv[k]) * invm * std::conj(p.chirp[k]);
}

inline void ifft(const FftPlan& p, const cd* in, cd* out) {
  std::vector<cd> t(p.n);
  for (std::size_t j = 0; j < p.n; ++j) t[j] = std::conj(in[j]);
  std::vector<cd> ft(p.n);
  fft(p, t.data(), ft.data());
  const double invn = 1.0 / static_cast<double>(p.n);
  for (std::size_t j = 0; j < p.n; ++j) out[j] = std::conj(ft[j]) * invn;
}

struct DctPlan {
  FftPlan fft_plan;
  std::vector<cd> half;  // exp(-i*pi*k/(2n))

  explicit DctPlan(std::size_t n) : fft_plan(n), half(n) {
    for (std::size_t k = 0; k < n; ++k)
      half[k] = std::polar(1.0, -kPi * static_cast<double>(k) / (2.0 * static_cast<double>(n)));
  }
};

inline const DctPlan& dct_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<DctPlan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<DctPlan>(n)).first;
  return *it->second;
}

}  // namespace detail

inline std::vector<double> dct(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("dct: empty input");
  if (n == 1) return v;
  const detail::DctPlan& plan = detail::dct_plan(n);
  // Makhoul permutation: evens ascending, then odds descending.
  std::vector<detail::cd> y(n);
  for (std::size_t j = 0; 2 * j < n; ++j) y[j] = v[2 * j];
  for (std::size_t j = 0; 2 * j + 1 < n; ++j) y[n - 1 - j] = v[2 * j + 1];
  std::vector<detail::cd> fy(n);
  detail::fft(plan.fft_plan, y.data(), fy.data());
  std::vector<double> u(n);
  const double nd = static_cast<double>(n);
  u[0] = fy[0].real() / std::sqrt(nd);
  const double s = std::sqrt(2.0 / nd);
  for (std::size_t k = 1; k < n; ++k) u[k] = s * (plan.half[k] * fy[k]).real();
  return u;
}

inline std::vector<double> idct(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("idct: empty input");
  if (n == 1) return v;
  const detail::DctPlan& plan = detail::dct_plan(n);
  const double nd = static_cast<double>(n);
  std::vector<double> c(n);
  c[0] = v[0] * std::sqrt(nd);
  const double s = std::sqrt(nd / 2.0);
  for (std::size_t k = 1; k < n; ++k) c[k] = v[k] * s;
  std::vector<detail::cd> fy(n);
  fy[0] = detail::cd(c[0], 0.0);
  for (std::size_t k = 1; k < n; ++k)
    fy[k] = std::conj(plan.half[k]) * detail::cd(c[k], -c[n - k]);
  std::vector<detail::cd> y(n);
  detail::ifft(plan.fft_plan, fy.data(), y.data());
  std::vector<double> x(n);
  for (std::size_t j = 0; 2 * j < n; ++j) x[2 * j] = y[j].real();
  for (std::size_t j = 0; 2 * j + 1 < n; ++j) x[2 * j + 1] = y[n - 1 - j].real();
  return x;
}

// O(N^2) reference summations.
inline std::vector<double> dct_direct(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("dct_direct: empty input");
  const double nd = static_cast<double>(n);
  std::vector<double> u(n);
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      acc += v[s] * std::cos(static_cast<double>(r) * detail::node_angle(n, s));
    u[r] = (r == 0 ? 1.0 / std::sqrt(nd) : std::sqrt(2.0 / nd)) * acc;
  }
  return u;
}

inline std::vector<double> idct_direct(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("idct_direct: empty input");
  const double nd = static_cast<double>(n);
  std::vector<double> u(n);
  for (std::size_t s = 0; s < n; ++s) {
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double w = (r == 0 ? 1.0 / std::sqrt(nd) : std::sqrt(2.0 / nd));
      acc += v[r] * w * std::cos(static_cast<double>(r) * detail::node_angle(n, s));
    }
    u[s] = acc;
  }
  return u;
}

}  // namespace vpwav
