#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "resolution.hpp"
#include "transforms.hpp"

// One-level decomposition/reconstruction between V_{3n}^m and V_n^m (+) W_n^m,
// the any-size variants with padding and energy normalization, and multilevel
// pyramids.
//
// decompose_classic computes the L2-orthogonal projection f_n of f_{3n} onto
// V_n^m: the combine step divides the exact 3n-point discrete inner products
// <f, q_r> by the diagonal q-basis Gram entries (m^2+j^2)/(2m^2), so
// a_n = f_n at the x nodes and b = (f_{3n} - f_n) at the y nodes. Since
// g = f_{3n} - f_n is orthogonal to V_n^m, its x-node values follow from its
// y-node values via -(pi/n) T2(T3(b)), which is what reconstruct_classic
// uses. The pair is an exact mutual inverse (projection tested against the
// dense Gram oracle in projection.hpp).

namespace vpwav {

enum class PadMode : std::uint8_t { zeros = 0, replicate = 1 };

inline constexpr double kFsca = 1.7320508075688772935;  // sqrt(3)
inline constexpr double kFwav = 1.2247448713915890491;  // sqrt(3/2)

// a3n (nodal coefficients on the 3n grid) -> (a_n, b_2n).
inline std::pair<std::vector<double>, std::vector<double>> decompose_classic(
    const std::vector<double>& a3n, const ResolutionSpec& s) {
  check_spec(s);
  if (a3n.size() % 3 != 0 || a3n.size() != 3 * s.n)
    throw std::invalid_argument("decompose_classic: input length must equal 3n");
  const std::size_t n = s.n, m = s.m;
  std::vector<double> v(n), u(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    u[2 * k] = a3n[3 * k];
    v[k] = a3n[3 * k + 1];
    u[2 * k + 1] = a3n[3 * k + 2];
  }
  const FoldSpec fold{n, m};
  std::vector<double> x = t1(v);
  std::vector<double> y = t3(u, fold);
  const double w = kPi / (3.0 * static_cast<double>(n));
  for (std::size_t k = 0; k < n - m + 1; ++k) v[k] = w * (x[k] + y[k]);
  const double md = static_cast<double>(m);
  for (std::size_t k = n - m + 1; k < n; ++k) {
    const double j = static_cast<double>(n - k);
    v[k] = w * 2.0 * md * md * (x[k] + y[k]) / (md * md + j * j);
  }
  std::vector<double> an = t2(v);
  std::vector<double> b = t4(v, fold);
  for (std::size_t k = 0; k < 2 * n; ++k) b[k] = u[k] - b[k];
  return {std::move(an), std::move(b)};
}

// (a_n, b_2n) -> a3n.
inline std::vector<double> reconstruct_classic(const std::vector<double>& an,
                                               const std::vector<double>& b2n,
                                               const ResolutionSpec& s) {
  check_spec(s);
  if (an.size() != s.n || b2n.size() != 2 * s.n)
    throw std::invalid_argument("reconstruct_classic: band lengths inconsistent with spec");
  const std::size_t n = s.n;
  const FoldSpec fold{n, s.m};
  const double w = kPi / static_cast<double>(n);
  std::vector<double> x = t1(an);
  for (double& e : x) e *= w;
  std::vector<double> y = t3(b2n, fold);
  for (double& e : y) e *= w;
  std::vector<double> u = t2(y);
  for (std::size_t k = 0; k < n; ++k) u[k] = an[k] - u[k];
  std::vector<double> v = t4(x, fold);
  for (std::size_t k = 0; k < 2 * n; ++k) v[k] += b2n[k];
  std::vector<double> a3n(3 * n);
  for (std::size_t k = 0; k < n; ++k) {
    a3n[3 * k] = v[2 * k];
    a3n[3 * k + 1] = u[k];
    a3n[3 * k + 2] = v[2 * k + 1];
  }
  return a3n;
}

// Append 0, 1 or 2 elements so the length becomes a multiple of three.
inline std::pair<std::vector<double>, std::uint8_t> pad_to_multiple_of_3(
    std::vector<double> v, PadMode mode) {
  const std::size_t r = v.size() % 3;
  const std::uint8_t pad = r == 0 ? 0 : static_cast<std::uint8_t>(3 - r);
  const double tail = (v.empty() || mode == PadMode::zeros) ? 0.0 : v.back();
  for (std::uint8_t i = 0; i < pad; ++i) v.push_back(tail);
  return {std::move(v), pad};
}

struct DecomposeResult {
  std::vector<double> scaling;
  std::vector<double> detail;
  std::uint8_t pad_count = 0;
};

// Pad, decompose with m = clamp(floor(theta*n), 1, n-1), apply the energy
// factors f_sca/f_wav to the output bands.
inline DecomposeResult decompose_any(const std::vector<double>& v, double theta, PadMode mode,
                                     double f_sca = kFsca, double f_wav = kFwav) {
  auto [padded, pad] = pad_to_multiple_of_3(v, mode);
  if (padded.size() < 6)
    throw std::invalid_argument("decompose_any: signal too short (needs n >= 2 after split)");
  const ResolutionSpec s = spec_from_theta(padded.size() / 3, theta);
  auto [an, b] = decompose_classic(padded, s);
  for (double& e : an) e *= f_sca;
  for (double& e : b) e *= f_wav;
  return {std::move(an), std::move(b), pad};
}

// Inverse of decompose_any up to the appended padding: returns the full
// padded-length vector; callers drop pad_count trailing entries. A scaling
// vector longer than len(w)/2 is truncated first (it still carries padding
// from the next coarser level).
inline std::vector<double> reconstruct_any(const std::vector<double>& u,
                                           const std::vector<double>& w, double theta,
                                           double f_sca = kFsca, double f_wav = kFwav) {
  if (w.empty() || w.size() % 2 != 0)
    throw std::invalid_argument("reconstruct_any: detail length must be even and positive");
  const std::size_t n = w.size() / 2;
  if (u.size() < n) throw std::invalid_argument("reconstruct_any: scaling vector too short");
  const ResolutionSpec s = spec_from_theta(n, theta);
  std::vector<double> an(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
  for (double& e : an) e /= f_sca;
  std::vector<double> b = w;
  for (double& e : b) e /= f_wav;
  return reconstruct_classic(an, b, s);
}

struct LevelMeta {
  std::uint8_t pad_count = 0;
  PadMode mode = PadMode::replicate;
  bool normalized = true;
  double f_sca = kFsca;
  double f_wav = kFwav;
};

struct Pyramid1D {
  std::vector<std::vector<double>> details;  // finest first
  std::vector<double> coarse;
  double theta = 0.0;
  std::vector<LevelMeta> meta;  // parallel to details
  std::size_t original_length = 0;
};

// Repeatedly split the scaling band. Stops early (effective depth
// min(requested, attainable)) once the band is too short for a valid split.
inline Pyramid1D decompose_multi(const std::vector<double>& v, double theta, std::size_t levels,
                                 PadMode mode, double f_sca = kFsca, double f_wav = kFwav) {
  if (levels == 0) throw std::invalid_argument("decompose_multi: levels must be >= 1");
  Pyramid1D p;
  p.theta = theta;
  p.original_length = v.size();
  std::vector<double> cur = v;
  for (std::size_t l = 0; l < levels; ++l) {
    if (cur.size() < 4) break;  // padded n would be < 2, no valid 0 < m < n
    DecomposeResult r = decompose_any(cur, theta, mode, f_sca, f_wav);
    p.details.push_back(std::move(r.detail));
    p.meta.push_back(LevelMeta{r.pad_count, mode, true, f_sca, f_wav});
    cur = std::move(r.scaling);
  }
  p.coarse = std::move(cur);
  return p;
}

inline std::vector<double> reconstruct_multi(const Pyramid1D& p) {
  if (p.details.size() != p.meta.size())
    throw std::invalid_argument("reconstruct_multi: inconsistent pyramid metadata");
  std::vector<double> cur = p.coarse;
  for (std::size_t i = p.details.size(); i-- > 0;) {
    const std::vector<double>& w = p.details[i];
    if (w.empty() || w.size() % 2 != 0 || cur.size() != w.size() / 2)
      throw std::invalid_argument("reconstruct_multi: inconsistent band lengths");
    cur = reconstruct_any(cur, w, p.theta, p.meta[i].f_sca, p.meta[i].f_wav);
    cur.resize(cur.size() - p.meta[i].pad_count);  // drop this level's padding
  }
  if (cur.size() != p.original_length)
    throw std::invalid_argument("reconstruct_multi: reconstructed length mismatch");
  return cur;
}

}  // namespace vpwav
