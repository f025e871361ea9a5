#include <catch2/catch_amalgamated.hpp>

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vpwav/io.hpp"
#include "vpwav/rng.hpp"
#include "vpwav/signals.hpp"

using namespace vpwav;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("vpwav_io_" + name)).string();
}

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

Matrix random_image(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  GaussianRng rng(seed);
  Matrix img(rows, cols);
  for (double& v : img.data) v = std::floor(rng.uniform() * 256.0);
  for (double& v : img.data) v = std::min(v, 255.0);
  return img;
}

}  // namespace

TEST_CASE("signal CSV round trip is bit exact") {
  GaussianRng rng(1);
  std::vector<double> v(257);
  for (double& x : v) x = rng.normal() * std::pow(10.0, std::floor(6.0 * rng.uniform()) - 3.0);
  v[0] = 0.0;
  v[1] = -0.0;
  v[2] = 1e-300;
  const auto path = tmp_path("sig.csv");
  write_signal_csv(path, v);
  const auto back = read_signal_csv(path);
  REQUIRE(back.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);
  std::remove(path.c_str());
}

TEST_CASE("signal CSV rejects malformed fields") {
  const auto path = tmp_path("bad.csv");
  std::ofstream(path) << "1.5\nnot-a-number\n";
  CHECK_THROWS_AS(read_signal_csv(path), format_error);
  std::remove(path.c_str());
}

TEST_CASE("calibration table CSV round trip") {
  CalibrationTable t;
  t.theta = 0.1;
  t.signal_length = 6561;
  t.levels = 4;
  t.trials = 100;
  t.seed = 42;
  t.factors = {1.01, 0.97, 1.13, 0.97, 1.005};
  const auto path = tmp_path("cal.csv");
  write_calibration_csv(path, t);
  const auto back = read_calibration_csv(path);
  CHECK(back.theta == t.theta);
  CHECK(back.signal_length == t.signal_length);
  CHECK(back.levels == t.levels);
  CHECK(back.trials == t.trials);
  CHECK(back.seed == t.seed);
  CHECK(back.factors == t.factors);
  std::remove(path.c_str());
}

TEST_CASE("pgm byte layout and round trip") {
  Matrix img(4, 4, 128.0);
  const auto path = tmp_path("const.pgm");
  write_pgm(path, img);
  const auto bytes = slurp(path);
  const std::string header = "P5\n4 4\n255\n";
  REQUIRE(bytes.size() == header.size() + 16);
  CHECK(std::string(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(header.size())) ==
        header);
  for (std::size_t i = header.size(); i < bytes.size(); ++i) CHECK(bytes[i] == 128);

  const Matrix back = read_pgm(path);
  REQUIRE(back.rows == 4);
  REQUIRE(back.cols == 4);
  CHECK(back.data == img.data);
  std::remove(path.c_str());
}

TEST_CASE("pgm round trips arbitrary 8-bit images and parses comments") {
  const Matrix img = random_image(13, 21, 5);
  const auto path = tmp_path("rand.pgm");
  write_pgm(path, img);
  CHECK(read_pgm(path).data == img.data);
  // comments in the header are legal
  std::ofstream(path, std::ios::binary) << "P5\n# a comment\n2 2\n255\n"
                                        << std::string("\x01\x02\x03\x04", 4);
  const Matrix small = read_pgm(path);
  CHECK(small(1, 1) == 4.0);
  std::remove(path.c_str());
}

TEST_CASE("pgm error paths carry byte offsets") {
  const auto path = tmp_path("trunc.pgm");
  std::ofstream(path, std::ios::binary) << "P5\n4 4\n255\n\x01\x02";
  try {
    read_pgm(path);
    FAIL("expected format_error");
  } catch (const format_error& e) {
    CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
  }
  std::ofstream(path, std::ios::binary) << "P6\n4 4\n255\n";
  CHECK_THROWS_AS(read_pgm(path), format_error);
  std::remove(path.c_str());
}

TEST_CASE("png round trip is bit exact") {
  const Matrix img = random_image(24, 17, 7);
  const auto path = tmp_path("img.png");
  write_png(path, img);
  const Matrix back = read_png(path);
  REQUIRE(back.rows == img.rows);
  REQUIRE(back.cols == img.cols);
  CHECK(back.data == img.data);
  // writers are byte-deterministic
  const auto b1 = slurp(path);
  write_png(path, img);
  CHECK(slurp(path) == b1);
  std::remove(path.c_str());
}

TEST_CASE("png reader handles all scanline filters") {
  // hand-build a 3x4 PNG using filters Sub, Up, Average, Paeth
  const std::size_t w = 4, h = 4;
  const unsigned char pixels[4][4] = {
      {10, 20, 30, 40}, {15, 25, 35, 45}, {20, 30, 40, 50}, {100, 90, 80, 70}};
  std::vector<unsigned char> raw;
  // row 0: Sub
  raw.push_back(1);
  for (std::size_t j = 0; j < w; ++j)
    raw.push_back(static_cast<unsigned char>(pixels[0][j] - (j ? pixels[0][j - 1] : 0)));
  // row 1: Up
  raw.push_back(2);
  for (std::size_t j = 0; j < w; ++j)
    raw.push_back(static_cast<unsigned char>(pixels[1][j] - pixels[0][j]));
  // row 2: Average
  raw.push_back(3);
  for (std::size_t j = 0; j < w; ++j) {
    const int left = j ? pixels[2][j - 1] : 0;
    raw.push_back(static_cast<unsigned char>(pixels[2][j] - (left + pixels[1][j]) / 2));
  }
  // row 3: Paeth
  raw.push_back(4);
  for (std::size_t j = 0; j < w; ++j) {
    const int a = j ? pixels[3][j - 1] : 0;
    const int b = pixels[2][j];
    const int c = j ? pixels[2][j - 1] : 0;
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    const int pred = (pa <= pb && pa <= pc) ? a : (pb <= pc ? b : c);
    raw.push_back(static_cast<unsigned char>(pixels[3][j] - pred));
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> idat(bound);
  REQUIRE(compress2(idat.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) == Z_OK);
  idat.resize(bound);

  detail::ByteWriter wtr;
  static const unsigned char sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  wtr.bytes(sig, 8);
  detail::ByteWriter ihdr;
  ihdr.u32be(w);
  ihdr.u32be(h);
  ihdr.u8(8);
  ihdr.u8(0);
  ihdr.u8(0);
  ihdr.u8(0);
  ihdr.u8(0);
  detail::png_chunk(wtr, "IHDR", ihdr.buf);
  detail::png_chunk(wtr, "IDAT", idat);
  detail::png_chunk(wtr, "IEND", {});
  const auto path = tmp_path("filters.png");
  detail::write_file(path, wtr.buf);

  const Matrix img = read_png(path);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) CHECK(img(i, j) == static_cast<double>(pixels[i][j]));
  std::remove(path.c_str());
}

TEST_CASE("png reader rejects corruption") {
  const auto path = tmp_path("corrupt.png");
  write_png(path, random_image(8, 8, 9));
  auto bytes = slurp(path);
  bytes[20] ^= 0xFF;  // flip a bit inside IHDR -> CRC mismatch
  detail::write_file(path, bytes);
  CHECK_THROWS_AS(read_png(path), format_error);
  std::ofstream(path, std::ios::binary) << "not a png at all";
  CHECK_THROWS_AS(read_png(path), format_error);
  std::remove(path.c_str());
}

TEST_CASE("vpc 1d container structure and bit-exact round trip") {
  const auto v = gen_test_signal(TestSignal::bumps, 100);
  const auto p = decompose_multi(v, 0.35, 3, PadMode::replicate);
  const auto path = tmp_path("p1.vpc");
  write_vpc(path, p);
  CHECK(read_vpc_dims(path) == 1);
  const Pyramid1D back = read_vpc_1d(path);
  CHECK(back.theta == p.theta);
  CHECK(back.original_length == p.original_length);
  REQUIRE(back.details.size() == p.details.size());
  for (std::size_t i = 0; i < p.details.size(); ++i) {
    CHECK(back.details[i] == p.details[i]);
    CHECK(back.meta[i].pad_count == p.meta[i].pad_count);
    CHECK(back.meta[i].mode == p.meta[i].mode);
  }
  CHECK(back.coarse == p.coarse);
  // reconstruction from the file matches reconstruction from memory
  CHECK(reconstruct_multi(back) == reconstruct_multi(p));
  std::remove(path.c_str());
}

TEST_CASE("vpc 2d container structure and bit-exact round trip") {
  const Matrix img = random_image(27, 12, 15);
  const auto p = decompose2d_multi(img, 0.5, 2, PadMode::zeros);
  const auto path = tmp_path("p2.vpc");
  write_vpc(path, p);
  CHECK(read_vpc_dims(path) == 2);
  const Pyramid2D back = read_vpc_2d(path);
  CHECK(back.theta == p.theta);
  CHECK(back.orig_rows == 27);
  CHECK(back.orig_cols == 12);
  REQUIRE(back.levels.size() == 2);
  for (std::size_t l = 0; l < 2; ++l) {
    CHECK(back.levels[l].H.data == p.levels[l].H.data);
    CHECK(back.levels[l].V.data == p.levels[l].V.data);
    CHECK(back.levels[l].D.data == p.levels[l].D.data);
    CHECK(back.levels[l].pad_rows == p.levels[l].pad_rows);
    CHECK(back.levels[l].pad_cols == p.levels[l].pad_cols);
  }
  CHECK(back.coarse.data == p.coarse.data);
  std::remove(path.c_str());
}

TEST_CASE("vpc header for a one-level 9x9 pyramid") {
  const auto p = decompose2d_multi(Matrix(9, 9, 1.0), 0.5, 1, PadMode::replicate);
  const auto path = tmp_path("hdr.vpc");
  write_vpc(path, p);
  const auto bytes = slurp(path);
  REQUIRE(bytes.size() >= 24);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "VPWC");
  CHECK(bytes[4] == 1);   // version 1 (little-endian u32)
  CHECK(bytes[8] == 2);   // dims = 2
  CHECK(bytes[20] == 1);  // levels = 1
  std::remove(path.c_str());
}

TEST_CASE("vpc validation errors") {
  const auto path = tmp_path("bad.vpc");
  std::ofstream(path, std::ios::binary) << "NOPE";
  CHECK_THROWS_AS(read_vpc_dims(path), format_error);
  const auto p = decompose_multi(gen_test_signal(TestSignal::blocks, 50), 0.5, 2,
                                 PadMode::replicate);
  write_vpc(path, p);
  auto bytes = slurp(path);
  bytes.resize(bytes.size() - 9);  // truncate the coarse payload
  detail::write_file(path, bytes);
  CHECK_THROWS_AS(read_vpc_1d(path), format_error);
  CHECK_THROWS_AS(read_vpc_2d(path), format_error);  // dims mismatch
  std::remove(path.c_str());
}
