#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebyshev.hpp"

// The six standard test signals, sampled at t_k = k/N, k = 1..N. Blocks,
// Bumps, HeaviSine and Doppler follow the Donoho-Johnstone closed forms;
// QuadChirp and MishMash follow the toolbox chirp sums
//   quadchirp(t) = sin((pi/3) N t^3)
//   mishmash(t)  = quadchirp(t) + sin(pi (0.6902 N) t) + sin(pi (0.125 N) t^2).
// All generators are deterministic.

namespace vpwav {

enum class TestSignal { blocks, bumps, heavy_sine, doppler, quadchirp, mishmash };

inline TestSignal parse_signal_name(const std::string& name) {
  if (name == "blocks") return TestSignal::blocks;
  if (name == "bumps") return TestSignal::bumps;
  if (name == "heavy_sine" || name == "heavysine") return TestSignal::heavy_sine;
  if (name == "doppler") return TestSignal::doppler;
  if (name == "quadchirp") return TestSignal::quadchirp;
  if (name == "mishmash") return TestSignal::mishmash;
  throw std::invalid_argument("unknown test signal: " + name);
}

namespace detail {

inline constexpr double kDjPos[11] = {0.1, 0.13, 0.15, 0.23, 0.25, 0.4,
                                      0.44, 0.65, 0.76, 0.78, 0.81};

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// right-continuous step, so a sample landing exactly on a breakpoint takes
// the post-jump value and the sampled signal keeps its 11 jumps
inline double blocks_at(double t) {
  constexpr double h[11] = {4.0, -5.0, 3.0, -4.0, 5.0, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2};
  double v = 0.0;
  for (int j = 0; j < 11; ++j) v += t >= kDjPos[j] ? h[j] : 0.0;
  return v;
}

inline double bumps_at(double t) {
  constexpr double h[11] = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2};
  constexpr double w[11] = {0.005, 0.005, 0.006, 0.01, 0.01, 0.03,
                            0.01, 0.01, 0.005, 0.008, 0.005};
  double v = 0.0;
  for (int j = 0; j < 11; ++j) {
    const double a = 1.0 + std::abs((t - kDjPos[j]) / w[j]);
    v += h[j] / (a * a * a * a);
  }
  return v;
}

inline double heavy_sine_at(double t) {
  return 4.0 * std::sin(4.0 * kPi * t) - sign(t - 0.3) - sign(0.72 - t);
}

inline double doppler_at(double t) {
  return std::sqrt(std::max(t * (1.0 - t), 0.0)) * std::sin(2.0 * kPi * 1.05 / (t + 0.05));
}

}  // namespace detail

inline std::vector<double> gen_test_signal(TestSignal which, std::size_t length) {
  if (length < 16) throw std::invalid_argument("gen_test_signal: length must be >= 16");
  const double nd = static_cast<double>(length);
  std::vector<double> v(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double t = static_cast<double>(k + 1) / nd;
    switch (which) {
      case TestSignal::blocks:
        v[k] = detail::blocks_at(t);
        break;
      case TestSignal::bumps:
        v[k] = detail::bumps_at(t);
        break;
      case TestSignal::heavy_sine:
        v[k] = detail::heavy_sine_at(t);
        break;
      case TestSignal::doppler:
        v[k] = detail::doppler_at(t);
        break;
      case TestSignal::quadchirp:
        v[k] = std::sin(kPi / 3.0 * nd * t * t * t);
        break;
      case TestSignal::mishmash:
        v[k] = std::sin(kPi / 3.0 * nd * t * t * t) + std::sin(kPi * 0.6902 * nd * t) +
               std::sin(kPi * 0.125 * nd * t * t);
        break;
    }
  }
  return v;
}

inline std::vector<double> gen_test_signal(const std::string& name, std::size_t length) {
  return gen_test_signal(parse_signal_name(name), length);
}

}  // namespace vpwav
