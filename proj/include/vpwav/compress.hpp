#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "metrics.hpp"
#include "mra2d.hpp"

// Retain-fraction thresholding of a 2D pyramid: keep the K largest-magnitude
// coefficients across all bands (coarse included), K = round(fraction * N*M)
// of the *original* image; padding-induced extra coefficients count against
// the same budget.

namespace vpwav {

struct CompressionReport {
  double cr = 0.0;
  double retained_fraction = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  std::size_t levels = 0;
  double theta = 0.0;
  std::vector<std::size_t> nonzero_counts;  // per band, in keep order
};

namespace detail {

// Bands in priority order: coarse, then coarser-to-finer details, H, V, D.
inline std::vector<std::vector<double>*> band_pointers(Pyramid2D& p) {
  std::vector<std::vector<double>*> bands;
  bands.push_back(&p.coarse.data);
  for (std::size_t i = p.levels.size(); i-- > 0;) {
    bands.push_back(&p.levels[i].H.data);
    bands.push_back(&p.levels[i].V.data);
    bands.push_back(&p.levels[i].D.data);
  }
  return bands;
}

}  // namespace detail

inline Pyramid2D keep_fraction(const Pyramid2D& p, double fraction,
                               std::vector<std::size_t>* kept_per_band = nullptr) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("keep_fraction: fraction must lie in (0,1]");
  Pyramid2D out = p;
  std::vector<std::vector<double>*> bands = detail::band_pointers(out);
  std::size_t total = 0;
  for (auto* b : bands) total += b->size();
  const auto budget = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(p.orig_rows * p.orig_cols)));
  const std::size_t keep = std::min(budget, total);

  struct Entry {
    double mag;
    std::uint32_t band;
    std::uint32_t pos;
  };
  std::vector<Entry> entries;
  entries.reserve(total);
  for (std::uint32_t b = 0; b < bands.size(); ++b)
    for (std::uint32_t i = 0; i < bands[b]->size(); ++i)
      entries.push_back({std::abs((*bands[b])[i]), b, i});
  // magnitude descending; ties by band priority, then row-major position
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.mag != b.mag) return a.mag > b.mag;
    if (a.band != b.band) return a.band < b.band;
    return a.pos < b.pos;
  });
  std::vector<std::vector<char>> kept(bands.size());
  for (std::size_t b = 0; b < bands.size(); ++b) kept[b].assign(bands[b]->size(), 0);
  for (std::size_t i = 0; i < keep; ++i) kept[entries[i].band][entries[i].pos] = 1;
  if (kept_per_band) kept_per_band->assign(bands.size(), 0);
  for (std::size_t b = 0; b < bands.size(); ++b)
    for (std::size_t i = 0; i < bands[b]->size(); ++i) {
      if (!kept[b][i])
        (*bands[b])[i] = 0.0;
      else if (kept_per_band && (*bands[b])[i] != 0.0)
        (*kept_per_band)[b] += 1;
    }
  return out;
}

// Magnitudes of all detail coefficients (coarse excluded), descending,
// truncated to count.
inline std::vector<double> sorted_detail_magnitudes(const Pyramid2D& p, std::size_t count) {
  if (count == 0) throw std::invalid_argument("sorted_detail_magnitudes: count must be >= 1");
  std::vector<double> mags;
  for (const Level2D& lv : p.levels) {
    for (double v : lv.H.data) mags.push_back(std::abs(v));
    for (double v : lv.V.data) mags.push_back(std::abs(v));
    for (double v : lv.D.data) mags.push_back(std::abs(v));
  }
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  if (mags.size() > count) mags.resize(count);
  return mags;
}

// Full pipeline: decompose, threshold, reconstruct, clamp to [0, peak] and
// round to the integer pixel grid, then report metrics against the original.
inline std::pair<Matrix, CompressionReport> compress_image(const Matrix& I, double theta,
                                                           std::size_t levels, double fraction,
                                                           PadMode mode, double peak = 255.0) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("compress_image: fraction must lie in (0,1]");
  Pyramid2D p = decompose2d_multi(I, theta, levels, mode);
  std::vector<std::size_t> counts;
  Pyramid2D kept = keep_fraction(p, fraction, &counts);
  Matrix rec = reconstruct2d_multi(kept);
  for (double& v : rec.data) v = std::round(std::clamp(v, 0.0, peak));
  CompressionReport rep;
  rep.cr = 1.0 / fraction;
  rep.retained_fraction = fraction;
  rep.levels = p.levels.size();
  rep.theta = theta;
  rep.nonzero_counts = std::move(counts);
  rep.psnr_db = psnr(I, rec, peak);
  rep.ssim = (I.rows >= 11 && I.cols >= 11) ? ssim(I, rec, peak) : 0.0;
  return {std::move(rec), std::move(rep)};
}

}  // namespace vpwav
