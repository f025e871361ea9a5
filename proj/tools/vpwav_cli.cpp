// Command-line front end: signal generation, pyramid decomposition and
// reconstruction, denoising, image compression, calibration, theta sweeps
// and a one-level timing benchmark. All randomness is seeded via --seed.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "vpwav/compress.hpp"
#include "vpwav/denoise.hpp"
#include "vpwav/io.hpp"
#include "vpwav/mra1d.hpp"
#include "vpwav/mra2d.hpp"
#include "vpwav/rng.hpp"
#include "vpwav/signals.hpp"

namespace {

bool has_ext(const std::string& path, const std::string& ext) {
  return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
}

bool is_image_path(const std::string& path) {
  return has_ext(path, ".pgm") || has_ext(path, ".png");
}

vpwav::PadMode parse_pad(const std::string& s) {
  if (s == "replicate") return vpwav::PadMode::replicate;
  if (s == "zeros") return vpwav::PadMode::zeros;
  throw std::invalid_argument("--pad must be 'replicate' or 'zeros'");
}

double signal_variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / static_cast<double>(v.size());
}

std::vector<double> add_noise_at_snr(const std::vector<double>& clean, double snr_db,
                                     vpwav::GaussianRng& rng) {
  const double sigma = std::sqrt(signal_variance(clean) / std::pow(10.0, snr_db / 10.0));
  std::vector<double> noisy(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) noisy[i] = clean[i] + sigma * rng.normal();
  return noisy;
}

void append_metrics_row(const std::string& path, const std::string& image, double theta,
                        std::size_t levels, const vpwav::CompressionReport& rep) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open metrics file: " + path);
  if (fresh) out << "image,theta,levels,cr,fraction,psnr_db,ssim\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%s,%g,%zu,%g,%g,%.6f,%.6f\n", image.c_str(), theta, levels,
                rep.cr, rep.retained_fraction, rep.psnr_db, rep.ssim);
  out << line;
}

int run_gen(const std::string& name, std::size_t length, const std::string& out_path,
            double noise_snr, bool with_noise, std::uint64_t seed) {
  auto v = vpwav::gen_test_signal(name, length);
  if (with_noise) {
    vpwav::GaussianRng rng(seed);
    v = add_noise_at_snr(v, noise_snr, rng);
  }
  vpwav::write_signal_csv(out_path, v);
  return 0;
}

int run_decompose(const std::string& in, const std::string& out, double theta,
                  std::size_t levels, vpwav::PadMode pad) {
  if (is_image_path(in)) {
    const vpwav::Matrix img = vpwav::read_image(in);
    const auto p = vpwav::decompose2d_multi(img, theta, levels, pad);
    if (p.levels.size() < levels)
      std::cerr << "warning: depth capped at " << p.levels.size()
                << " levels (coarse band too short to split further)\n";
    vpwav::write_vpc(out, p);
  } else {
    const auto v = vpwav::read_signal_csv(in);
    const auto p = vpwav::decompose_multi(v, theta, levels, pad);
    if (p.details.size() < levels)
      std::cerr << "warning: depth capped at " << p.details.size()
                << " levels (coarse band too short to split further)\n";
    vpwav::write_vpc(out, p);
  }
  return 0;
}

int run_reconstruct(const std::string& in, const std::string& out) {
  if (vpwav::read_vpc_dims(in) == 1) {
    if (is_image_path(out))
      throw std::invalid_argument("1D container cannot be written as an image");
    vpwav::write_signal_csv(out, vpwav::reconstruct_multi(vpwav::read_vpc_1d(in)));
  } else {
    if (!is_image_path(out))
      throw std::invalid_argument("2D container must be written as .pgm or .png");
    vpwav::write_image(out, vpwav::reconstruct2d_multi(vpwav::read_vpc_2d(in)));
  }
  return 0;
}

int run_denoise(const std::string& in, const std::string& out, double theta, std::size_t levels,
                vpwav::PadMode pad, const std::string& calibration_path) {
  const auto noisy = vpwav::read_signal_csv(in);
  vpwav::DenoiseConfig cfg;
  cfg.theta = theta;
  cfg.levels = levels;
  cfg.pad = pad;
  if (!calibration_path.empty()) {
    auto table = vpwav::read_calibration_csv(calibration_path);
    if (std::abs(table.theta - theta) > 1e-12)
      throw std::invalid_argument("calibration table theta does not match --theta");
    cfg.calibration = std::move(table);
  }
  vpwav::write_signal_csv(out, vpwav::denoise_signal(noisy, cfg));
  return 0;
}

int run_calibrate(std::size_t length, double theta, std::size_t levels, std::size_t trials,
                  std::uint64_t seed, const std::string& out) {
  vpwav::write_calibration_csv(out, vpwav::calibrate_factors(length, theta, levels, trials, seed));
  return 0;
}

int run_compress(const std::string& in, const std::string& out, double theta, std::size_t levels,
                 double keep, vpwav::PadMode pad, const std::string& metrics_path,
                 const std::string& sorted_path, std::size_t sorted_count) {
  const vpwav::Matrix img = vpwav::read_image(in);
  const auto [rec, rep] = vpwav::compress_image(img, theta, levels, keep, pad);
  vpwav::write_image(out, rec);
  if (!metrics_path.empty())
    append_metrics_row(metrics_path, std::filesystem::path(in).filename().string(), theta,
                       rep.levels, rep);
  if (!sorted_path.empty()) {
    const auto p = vpwav::decompose2d_multi(img, theta, levels, pad);
    const auto mags = vpwav::sorted_detail_magnitudes(p, sorted_count);
    vpwav::write_signal_csv(sorted_path, mags);
  }
  std::cout << "cr=" << rep.cr << " psnr_db=" << rep.psnr_db << " ssim=" << rep.ssim << "\n";
  return 0;
}

int run_sweep(const std::string& in, const std::string& out, std::size_t levels,
              vpwav::PadMode pad, double theta_min, double theta_max, double theta_step,
              double input_snr, std::size_t trials, std::uint64_t seed,
              std::size_t calibration_trials, double keep) {
  if (is_image_path(in)) {
    const vpwav::Matrix img = vpwav::read_image(in);
    std::ofstream csv(out);
    if (!csv) throw std::runtime_error("cannot open output file: " + out);
    csv << "theta,psnr_db,ssim\n";
    for (double theta = theta_min; theta <= theta_max + 1e-9; theta += theta_step) {
      const auto [rec, rep] = vpwav::compress_image(img, theta, levels, keep, pad);
      csv << theta << "," << rep.psnr_db << "," << rep.ssim << "\n";
    }
  } else {
    const auto clean = vpwav::read_signal_csv(in);
    std::ofstream csv(out);
    if (!csv) throw std::runtime_error("cannot open output file: " + out);
    csv << "theta,snr_in_db,snr_out_db\n";
    for (double theta = theta_min; theta <= theta_max + 1e-9; theta += theta_step) {
      vpwav::DenoiseConfig cfg;
      cfg.theta = theta;
      cfg.levels = levels;
      cfg.pad = pad;
      cfg.calibration =
          vpwav::calibrate_factors(clean.size(), theta, levels, calibration_trials, seed);
      double in_sum = 0.0, out_sum = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        vpwav::GaussianRng rng(vpwav::substream_seed(seed, t));
        const auto noisy = add_noise_at_snr(clean, input_snr, rng);
        in_sum += vpwav::snr(clean, noisy);
        out_sum += vpwav::snr(clean, vpwav::denoise_signal(noisy, cfg));
      }
      csv << theta << "," << in_sum / static_cast<double>(trials) << ","
          << out_sum / static_cast<double>(trials) << "\n";
    }
  }
  return 0;
}

int run_bench(std::size_t base, std::size_t doublings, std::size_t reps, double theta,
              std::uint64_t seed, const std::string& out) {
  std::ofstream csv(out);
  if (!csv) throw std::runtime_error("cannot open output file: " + out);
  csv << "n,seconds\n";
  for (std::size_t j = 0; j <= doublings; ++j) {
    const std::size_t n = base << j;
    vpwav::GaussianRng rng(vpwav::substream_seed(seed, j));
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    (void)vpwav::decompose_any(v, theta, vpwav::PadMode::replicate);  // warm the plan cache
    double best = 1e300;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = vpwav::decompose_any(v, theta, vpwav::PadMode::replicate);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
      if (res.scaling.empty()) return 1;  // keep the call alive
    }
    csv << n << "," << best << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"de la Vallee Poussin polynomial wavelets on Chebyshev nodes"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a test signal CSV");
  std::string gen_signal, gen_out;
  std::size_t gen_length = 0;
  double gen_noise_snr = 0.0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--signal", gen_signal,
                  "blocks|bumps|heavy_sine|doppler|quadchirp|mishmash")
      ->required();
  gen->add_option("--length", gen_length, "number of samples")->required();
  gen->add_option("--out", gen_out, "output CSV path")->required();
  auto* noise_opt =
      gen->add_option("--noise-snr", gen_noise_snr, "add Gaussian noise at this input SNR (dB)");
  gen->add_option("--seed", gen_seed, "noise seed")->needs(noise_opt);

  // decompose
  auto* dec = app.add_subcommand("decompose", "decompose a signal or image into a .vpc pyramid");
  std::string dec_in, dec_out, dec_pad = "replicate";
  double dec_theta = 0.0;
  std::size_t dec_levels = 1;
  dec->add_option("--in", dec_in, "input CSV (1D) or PGM/PNG (2D)")->required();
  dec->add_option("--theta", dec_theta, "resolution parameter in (0,1)")->required();
  dec->add_option("--levels", dec_levels, "decomposition depth (default 1)");
  dec->add_option("--pad", dec_pad, "padding rule: replicate|zeros")
      ->check(CLI::IsMember({"replicate", "zeros"}));
  dec->add_option("--out", dec_out, "output .vpc path")->required();

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "reconstruct a signal or image from a .vpc");
  std::string rec_in, rec_out;
  rec->add_option("--in", rec_in, "input .vpc path")->required();
  rec->add_option("--out", rec_out, "output CSV (1D) or PGM/PNG (2D)")->required();

  // denoise
  auto* den = app.add_subcommand("denoise", "Bayes soft-threshold denoising of a signal CSV");
  std::string den_in, den_out, den_pad = "replicate", den_cal;
  double den_theta = 0.1;
  std::size_t den_levels = 8;
  den->add_option("--in", den_in, "noisy signal CSV")->required();
  den->add_option("--out", den_out, "denoised signal CSV")->required();
  den->add_option("--theta", den_theta, "resolution parameter (default 0.1)");
  den->add_option("--levels", den_levels, "decomposition depth (default 8)");
  den->add_option("--pad", den_pad, "padding rule: replicate|zeros")
      ->check(CLI::IsMember({"replicate", "zeros"}));
  den->add_option("--calibration", den_cal, "calibration table CSV (from 'calibrate')");

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "Monte-Carlo per-band normalization factors");
  std::size_t cal_length = 0, cal_levels = 0, cal_trials = 1000;
  double cal_theta = 0.1;
  std::uint64_t cal_seed = 0;
  std::string cal_out;
  cal->add_option("--length", cal_length, "signal length")->required();
  cal->add_option("--theta", cal_theta, "resolution parameter (default 0.1)");
  cal->add_option("--levels", cal_levels, "decomposition depth")->required();
  cal->add_option("--trials", cal_trials, "number of Gaussian trials (default 1000)");
  cal->add_option("--seed", cal_seed, "RNG seed");
  cal->add_option("--out", cal_out, "output calibration CSV")->required();

  // compress
  auto* cmp = app.add_subcommand("compress", "threshold-based image compressibility test");
  std::string cmp_in, cmp_out, cmp_pad = "replicate", cmp_metrics, cmp_sorted;
  double cmp_theta = 0.65, cmp_keep = 0.0, cmp_cr = 0.0;
  std::size_t cmp_levels = 4, cmp_sorted_count = 30000;
  cmp->add_option("--in", cmp_in, "input image (PGM/PNG)")->required();
  cmp->add_option("--out", cmp_out, "reconstructed image path")->required();
  cmp->add_option("--theta", cmp_theta, "resolution parameter (default 0.65)");
  cmp->add_option("--levels", cmp_levels, "decomposition depth (default 4)");
  auto* keep_opt = cmp->add_option("--keep", cmp_keep, "retained fraction in (0,1]");
  auto* cr_opt = cmp->add_option("--cr", cmp_cr, "compression ratio (keep = 1/cr)");
  keep_opt->excludes(cr_opt);
  cr_opt->excludes(keep_opt);
  cmp->add_option("--pad", cmp_pad, "padding rule: replicate|zeros")
      ->check(CLI::IsMember({"replicate", "zeros"}));
  cmp->add_option("--metrics", cmp_metrics, "append a metrics CSV row here");
  cmp->add_option("--sorted-coeffs", cmp_sorted, "write sorted detail magnitudes CSV");
  cmp->add_option("--sorted-count", cmp_sorted_count,
                  "how many sorted magnitudes to export (default 30000)");

  // sweep-theta
  auto* swp = app.add_subcommand("sweep-theta",
                                 "SNR-vs-theta (signal) or PSNR-vs-theta (image) study");
  std::string swp_in, swp_out, swp_pad = "replicate";
  std::size_t swp_levels = 4, swp_trials = 10, swp_cal_trials = 200;
  double swp_min = 0.1, swp_max = 0.9, swp_step = 0.1, swp_snr = 10.0, swp_keep = 0.5,
         swp_cr = 0.0;
  std::uint64_t swp_seed = 0;
  swp->add_option("--in", swp_in, "clean signal CSV or image")->required();
  swp->add_option("--out", swp_out, "output CSV")->required();
  swp->add_option("--levels", swp_levels, "decomposition depth (default 4)");
  swp->add_option("--pad", swp_pad, "padding rule: replicate|zeros")
      ->check(CLI::IsMember({"replicate", "zeros"}));
  swp->add_option("--theta-min", swp_min, "sweep start (default 0.1)");
  swp->add_option("--theta-max", swp_max, "sweep end (default 0.9)");
  swp->add_option("--theta-step", swp_step, "sweep step (default 0.1)");
  swp->add_option("--input-snr", swp_snr, "noisy-signal input SNR in dB (default 10)");
  swp->add_option("--trials", swp_trials, "noise realizations per theta (default 10)");
  swp->add_option("--seed", swp_seed, "RNG seed");
  swp->add_option("--calibration-trials", swp_cal_trials,
                  "calibration trials per theta (default 200)");
  auto* swp_keep_opt = swp->add_option("--keep", swp_keep, "retained fraction for images");
  auto* swp_cr_opt = swp->add_option("--cr", swp_cr, "compression ratio for images");
  swp_keep_opt->excludes(swp_cr_opt);
  swp_cr_opt->excludes(swp_keep_opt);

  // bench
  auto* ben = app.add_subcommand("bench", "one-level decomposition timings (CSV)");
  std::size_t ben_base = 6561, ben_doublings = 4, ben_reps = 3;
  double ben_theta = 0.1;
  std::uint64_t ben_seed = 0;
  std::string ben_out;
  ben->add_option("--base", ben_base, "smallest size (default 6561)");
  ben->add_option("--doublings", ben_doublings, "number of size doublings (default 4)");
  ben->add_option("--reps", ben_reps, "repetitions per size, min is kept (default 3)");
  ben->add_option("--theta", ben_theta, "resolution parameter (default 0.1)");
  ben->add_option("--seed", ben_seed, "RNG seed");
  ben->add_option("--out", ben_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen)
      return run_gen(gen_signal, gen_length, gen_out, gen_noise_snr, noise_opt->count() > 0,
                     gen_seed);
    if (*dec) return run_decompose(dec_in, dec_out, dec_theta, dec_levels, parse_pad(dec_pad));
    if (*rec) return run_reconstruct(rec_in, rec_out);
    if (*den)
      return run_denoise(den_in, den_out, den_theta, den_levels, parse_pad(den_pad), den_cal);
    if (*cal) return run_calibrate(cal_length, cal_theta, cal_levels, cal_trials, cal_seed, cal_out);
    if (*cmp) {
      if (cr_opt->count() > 0) cmp_keep = 1.0 / cmp_cr;
      if (keep_opt->count() == 0 && cr_opt->count() == 0)
        throw std::invalid_argument("compress requires --keep or --cr");
      return run_compress(cmp_in, cmp_out, cmp_theta, cmp_levels, cmp_keep, parse_pad(cmp_pad),
                          cmp_metrics, cmp_sorted, cmp_sorted_count);
    }
    if (*swp) {
      if (swp_cr_opt->count() > 0) swp_keep = 1.0 / swp_cr;
      return run_sweep(swp_in, swp_out, swp_levels, parse_pad(swp_pad), swp_min, swp_max,
                       swp_step, swp_snr, swp_trials, swp_seed, swp_cal_trials, swp_keep);
    }
    if (*ben) return run_bench(ben_base, ben_doublings, ben_reps, ben_theta, ben_seed, ben_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
