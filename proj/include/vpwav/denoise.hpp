#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mra1d.hpp"
#include "rng.hpp"

// Per-subband Bayes soft-threshold denoising. The noise level is the minimum
// over the (calibration-normalized) detail bands of the MAD/0.6745 estimate:
// after normalization the noise floor is flat across bands, while chirp-like
// content can occupy a large fraction of the finest ternary band and would
// inflate a finest-band-only estimate. Each detail band then gets
// lambda = sigma^2 / sigma_x with sigma_x^2 the excess band variance; the
// coarse band is never thresholded. Optional Monte-Carlo calibration factors
// rescale the bands to unit noise response before estimation.

namespace vpwav {

struct CalibrationTable {
  double theta = 0.0;
  std::size_t signal_length = 0;
  std::size_t levels = 0;
  std::vector<double> factors;  // one per detail level (finest first) + one for the coarse band
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

enum class ThresholdRule : std::uint8_t { bayes_soft = 0 };

struct DenoiseConfig {
  double theta = 0.1;
  std::size_t levels = 8;
  ThresholdRule rule = ThresholdRule::bayes_soft;
  PadMode pad = PadMode::replicate;
  std::optional<CalibrationTable> calibration;
};

inline double soft_threshold(double x, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("soft_threshold: lambda must be >= 0");
  const double mag = std::abs(x) - lambda;
  return mag > 0.0 ? (x < 0.0 ? -mag : mag) : 0.0;
}

// MAD/0.6745 on the (normalized) finest detail band.
inline double estimate_noise_sigma(const std::vector<double>& finest_detail) {
  if (finest_detail.empty()) throw std::invalid_argument("estimate_noise_sigma: empty band");
  std::vector<double> mags(finest_detail.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(finest_detail[i]);
  std::sort(mags.begin(), mags.end());
  const std::size_t n = mags.size();
  const double med = (n % 2 == 1) ? mags[n / 2] : 0.5 * (mags[n / 2 - 1] + mags[n / 2]);
  return med / 0.6745;
}

// lambda = sigma^2 / sigma_x, with sigma_x^2 = max(mean(band^2) - sigma^2, 0).
// A band indistinguishable from noise gets the kill-band threshold max|band|.
inline double bayes_threshold(const std::vector<double>& band, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("bayes_threshold: sigma must be >= 0");
  double e2 = 0.0, amax = 0.0;
  for (double v : band) {
    e2 += v * v;
    amax = std::max(amax, std::abs(v));
  }
  if (!band.empty()) e2 /= static_cast<double>(band.size());
  const double sx2 = e2 - sigma * sigma;
  if (sx2 <= 0.0) return amax;
  return sigma * sigma / std::sqrt(sx2);
}

namespace detail {

inline double population_std(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace detail

// Average per-band standard deviation of decomposed N(0,1) signals. The
// returned factors divide the bands before thresholding (and multiply back
// after), on top of the analytic sqrt(3)/sqrt(3/2) transform factors.
inline CalibrationTable calibrate_factors(std::size_t length, double theta, std::size_t levels,
                                          std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("calibrate_factors: trials must be >= 1");
  CalibrationTable table;
  table.theta = theta;
  table.signal_length = length;
  table.trials = trials;
  table.seed = seed;
  std::vector<double> acc;
  for (std::size_t t = 0; t < trials; ++t) {
    GaussianRng rng(substream_seed(seed, t));
    std::vector<double> v(length);
    for (double& x : v) x = rng.normal();
    Pyramid1D p = decompose_multi(v, theta, levels, PadMode::replicate);
    if (t == 0) {
      table.levels = p.details.size();
      acc.assign(table.levels + 1, 0.0);
    }
    for (std::size_t i = 0; i < p.details.size(); ++i)
      acc[i] += detail::population_std(p.details[i]);
    acc[table.levels] += detail::population_std(p.coarse);
  }
  table.factors = acc;
  for (double& f : table.factors) f /= static_cast<double>(trials);
  return table;
}

inline std::vector<double> denoise_signal(const std::vector<double>& y,
                                          const DenoiseConfig& cfg) {
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0))
    throw std::invalid_argument("denoise_signal: theta must lie in (0,1)");
  Pyramid1D p = decompose_multi(y, cfg.theta, cfg.levels, cfg.pad);
  const std::size_t depth = p.details.size();
  std::vector<double> factors(depth, 1.0);
  if (cfg.calibration) {
    const CalibrationTable& t = *cfg.calibration;
    if (t.levels != depth || t.factors.size() != depth + 1)
      throw std::invalid_argument("denoise_signal: calibration table depth mismatch");
    for (std::size_t i = 0; i < depth; ++i) {
      if (!(t.factors[i] > 0.0))
        throw std::invalid_argument("denoise_signal: calibration factors must be positive");
      factors[i] = t.factors[i];
    }
  }
  for (std::size_t i = 0; i < depth; ++i)
    for (double& c : p.details[i]) c /= factors[i];
  if (depth == 0) return reconstruct_multi(p);
  // noise floor: minimum per-band MAD estimate, ignoring bands too short
  // for the median to be reliable
  constexpr std::size_t kMinBandForSigma = 128;
  double sigma = std::numeric_limits<double>::max();
  for (const auto& d : p.details)
    if (d.size() >= kMinBandForSigma) sigma = std::min(sigma, estimate_noise_sigma(d));
  if (sigma == std::numeric_limits<double>::max()) sigma = estimate_noise_sigma(p.details[0]);
  for (std::size_t i = 0; i < depth; ++i) {
    const double lambda = bayes_threshold(p.details[i], sigma);
    for (double& c : p.details[i]) c = soft_threshold(c, lambda) * factors[i];
  }
  return reconstruct_multi(p);
}

// 10 log10(var(reference) / var(reference - other)); +inf when the
// difference has zero variance.
inline double snr(const std::vector<double>& reference, const std::vector<double>& other) {
  if (reference.size() != other.size()) throw std::invalid_argument("snr: length mismatch");
  if (reference.empty()) throw std::invalid_argument("snr: empty input");
  std::vector<double> diff(reference.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = reference[i] - other[i];
  const double vs = detail::population_std(reference);
  const double vn = detail::population_std(diff);
  if (vs == 0.0) throw std::invalid_argument("snr: reference signal is constant");
  if (vn == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(vs / vn);
}

}  // namespace vpwav
