#pragma once

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "denoise.hpp"
#include "matrix.hpp"
#include "mra1d.hpp"
#include "mra2d.hpp"

// Serialization: CSV signals (one float per line), calibration tables,
// binary PGM (P5, 8-bit), 8-bit grayscale PNG (zlib-backed), and the VPWC
// pyramid container. All writers are byte-deterministic; the VPWC container
// round-trips every float bit-exactly.

namespace vpwav {

class format_error : public std::runtime_error {
 public:
  format_error(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

inline std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::vector<unsigned char>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

class ByteReader {
 public:
  explicit ByteReader(std::vector<unsigned char> buf) : buf_(std::move(buf)) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return buf_.size() - pos_; }

  const unsigned char* need(std::size_t n, const char* what) {
    if (remaining() < n) throw format_error(std::string("truncated ") + what, pos_);
    const unsigned char* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::uint8_t u8(const char* what) { return *need(1, what); }

  std::uint32_t u32le(const char* what) {
    const unsigned char* p = need(4, what);
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
  }

  std::uint64_t u64le(const char* what) {
    const unsigned char* p = need(8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
  }

  double f64le(const char* what) {
    const std::uint64_t bits = u64le(what);
    double d;
    std::memcpy(&d, &bits, 8);
    return d;
  }

  std::uint32_t u32be(const char* what) {
    const unsigned char* p = need(4, what);
    return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
           (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
  }

 private:
  std::vector<unsigned char> buf_;
  std::size_t pos_ = 0;
};

struct ByteWriter {
  std::vector<unsigned char> buf;

  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    buf.insert(buf.end(), c, c + n);
  }
  void u8(std::uint8_t v) { buf.push_back(v); }
  void u32le(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void u64le(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void f64le(double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    u64le(bits);
  }
  void u32be(std::uint32_t v) {
    for (int i = 3; i >= 0; --i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
};

inline std::string format_double(double v) {
  char tmp[64];
  std::snprintf(tmp, sizeof(tmp), "%.17g", v);
  return tmp;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV signals

inline void write_signal_csv(const std::string& path, const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    out += detail::format_double(x);
    out += '\n';
  }
  detail::write_file(path, std::vector<unsigned char>(out.begin(), out.end()));
}

inline std::vector<double> read_signal_csv(const std::string& path) {
  const std::vector<unsigned char> buf = detail::read_file(path);
  std::vector<double> v;
  std::size_t i = 0;
  while (i < buf.size()) {
    std::size_t j = i;
    while (j < buf.size() && buf[j] != '\n') ++j;
    std::string line(buf.begin() + static_cast<std::ptrdiff_t>(i),
                     buf.begin() + static_cast<std::ptrdiff_t>(j));
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) {
      char* end = nullptr;
      const double d = std::strtod(line.c_str(), &end);
      if (end == line.c_str() || *end != '\0')
        throw format_error("invalid numeric field in CSV", i);
      v.push_back(d);
    }
    i = j + 1;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Calibration tables

inline void write_calibration_csv(const std::string& path, const CalibrationTable& t) {
  std::string out;
  out += "# theta=" + detail::format_double(t.theta) + "\n";
  out += "# length=" + std::to_string(t.signal_length) + "\n";
  out += "# levels=" + std::to_string(t.levels) + "\n";
  out += "# trials=" + std::to_string(t.trials) + "\n";
  out += "# seed=" + std::to_string(t.seed) + "\n";
  out += "band_index,factor\n";
  for (std::size_t i = 0; i < t.factors.size(); ++i)
    out += std::to_string(i) + "," + detail::format_double(t.factors[i]) + "\n";
  detail::write_file(path, std::vector<unsigned char>(out.begin(), out.end()));
}

inline CalibrationTable read_calibration_csv(const std::string& path) {
  const std::vector<unsigned char> buf = detail::read_file(path);
  CalibrationTable t;
  std::size_t i = 0;
  bool header_seen = false;
  while (i < buf.size()) {
    std::size_t j = i;
    while (j < buf.size() && buf[j] != '\n') ++j;
    std::string line(buf.begin() + static_cast<std::ptrdiff_t>(i),
                     buf.begin() + static_cast<std::ptrdiff_t>(j));
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# theta=", 0) == 0)
      t.theta = std::strtod(line.c_str() + 8, nullptr);
    else if (line.rfind("# length=", 0) == 0)
      t.signal_length = std::strtoull(line.c_str() + 9, nullptr, 10);
    else if (line.rfind("# levels=", 0) == 0)
      t.levels = std::strtoull(line.c_str() + 9, nullptr, 10);
    else if (line.rfind("# trials=", 0) == 0)
      t.trials = std::strtoull(line.c_str() + 9, nullptr, 10);
    else if (line.rfind("# seed=", 0) == 0)
      t.seed = std::strtoull(line.c_str() + 7, nullptr, 10);
    else if (line == "band_index,factor")
      header_seen = true;
    else if (!line.empty()) {
      const std::size_t comma = line.find(',');
      if (!header_seen || comma == std::string::npos)
        throw format_error("malformed calibration CSV row", i);
      t.factors.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    i = j + 1;
  }
  if (t.factors.size() != t.levels + 1)
    throw format_error("calibration CSV factor count does not match levels", buf.size());
  return t;
}

// ---------------------------------------------------------------------------
// PGM (P5, 8-bit)

inline void write_pgm(const std::string& path, const Matrix& img) {
  detail::ByteWriter w;
  const std::string header =
      "P5\n" + std::to_string(img.cols) + " " + std::to_string(img.rows) + "\n255\n";
  w.bytes(header.data(), header.size());
  for (double v : img.data) {
    const double c = std::round(std::clamp(v, 0.0, 255.0));
    w.u8(static_cast<std::uint8_t>(c));
  }
  detail::write_file(path, w.buf);
}

inline Matrix read_pgm(const std::string& path) {
  const std::vector<unsigned char> buf = detail::read_file(path);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < buf.size()) {
      if (buf[pos] == '#') {
        while (pos < buf.size() && buf[pos] != '\n') ++pos;
      } else if (std::isspace(buf[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&](const char* what) -> std::size_t {
    skip_ws();
    if (pos >= buf.size() || !std::isdigit(buf[pos]))
      throw format_error(std::string("expected integer for ") + what, pos);
    std::size_t v = 0;
    while (pos < buf.size() && std::isdigit(buf[pos])) {
      v = v * 10 + (buf[pos] - '0');
      ++pos;
    }
    return v;
  };
  if (buf.size() < 2 || buf[0] != 'P' || buf[1] != '5')
    throw format_error("not a binary PGM (P5) file", 0);
  pos = 2;
  const std::size_t cols = read_int("width");
  const std::size_t rows = read_int("height");
  const std::size_t maxval = read_int("maxval");
  if (maxval == 0 || maxval > 255) throw format_error("unsupported PGM maxval", pos);
  if (pos >= buf.size() || !std::isspace(buf[pos]))
    throw format_error("missing whitespace before PGM raster", pos);
  ++pos;
  if (buf.size() - pos < rows * cols) throw format_error("truncated PGM raster", buf.size());
  Matrix img(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) img.data[i] = buf[pos + i];
  return img;
}

// ---------------------------------------------------------------------------
// PNG (8-bit grayscale only)

namespace detail {

inline void png_chunk(ByteWriter& w, const char type[5], const std::vector<unsigned char>& data) {
  w.u32be(static_cast<std::uint32_t>(data.size()));
  std::vector<unsigned char> td(type, type + 4);
  td.insert(td.end(), data.begin(), data.end());
  w.bytes(td.data(), td.size());
  const auto crc = static_cast<std::uint32_t>(
      ::crc32(0L, td.data(), static_cast<uInt>(td.size())));
  w.u32be(crc);
}

inline unsigned char paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return static_cast<unsigned char>(a);
  if (pb <= pc) return static_cast<unsigned char>(b);
  return static_cast<unsigned char>(c);
}

}  // namespace detail

inline void write_png(const std::string& path, const Matrix& img) {
  static const unsigned char sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  detail::ByteWriter w;
  w.bytes(sig, 8);
  std::vector<unsigned char> ihdr;
  {
    detail::ByteWriter h;
    h.u32be(static_cast<std::uint32_t>(img.cols));
    h.u32be(static_cast<std::uint32_t>(img.rows));
    h.u8(8);  // bit depth
    h.u8(0);  // grayscale
    h.u8(0);  // deflate
    h.u8(0);  // adaptive filtering
    h.u8(0);  // no interlace
    ihdr = std::move(h.buf);
  }
  detail::png_chunk(w, "IHDR", ihdr);
  std::vector<unsigned char> raw;
  raw.reserve(img.rows * (img.cols + 1));
  for (std::size_t i = 0; i < img.rows; ++i) {
    raw.push_back(0);  // filter: none
    for (std::size_t j = 0; j < img.cols; ++j) {
      const double c = std::round(std::clamp(img(i, j), 0.0, 255.0));
      raw.push_back(static_cast<unsigned char>(c));
    }
  }
  uLongf bound = ::compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> idat(bound);
  if (::compress2(idat.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw std::runtime_error("png write: deflate failed");
  idat.resize(bound);
  detail::png_chunk(w, "IDAT", idat);
  detail::png_chunk(w, "IEND", {});
  detail::write_file(path, w.buf);
}

inline Matrix read_png(const std::string& path) {
  detail::ByteReader r(detail::read_file(path));
  static const unsigned char sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  const unsigned char* got = r.need(8, "PNG signature");
  if (std::memcmp(got, sig, 8) != 0) throw format_error("not a PNG file", 0);
  std::size_t width = 0, height = 0;
  bool have_ihdr = false, done = false;
  std::vector<unsigned char> idat;
  while (!done) {
    const std::size_t chunk_at = r.pos();
    const std::uint32_t len = r.u32be("chunk length");
    const unsigned char* type_and_data = r.need(len + 4, "chunk body");
    const std::uint32_t crc = r.u32be("chunk crc");
    const auto actual = static_cast<std::uint32_t>(
        ::crc32(0L, type_and_data, static_cast<uInt>(len + 4)));
    if (crc != actual) throw format_error("PNG chunk CRC mismatch", chunk_at);
    const std::string type(reinterpret_cast<const char*>(type_and_data), 4);
    const unsigned char* data = type_and_data + 4;
    if (type == "IHDR") {
      if (len != 13) throw format_error("bad IHDR length", chunk_at);
      width = (static_cast<std::size_t>(data[0]) << 24) | (data[1] << 16) | (data[2] << 8) |
              data[3];
      height = (static_cast<std::size_t>(data[4]) << 24) | (data[5] << 16) | (data[6] << 8) |
               data[7];
      if (data[8] != 8 || data[9] != 0)
        throw format_error("unsupported PNG format (need 8-bit grayscale)", chunk_at);
      if (data[12] != 0) throw format_error("interlaced PNG not supported", chunk_at);
      have_ihdr = true;
    } else if (type == "IDAT") {
      idat.insert(idat.end(), data, data + len);
    } else if (type == "IEND") {
      done = true;
    }
  }
  if (!have_ihdr || width == 0 || height == 0) throw format_error("missing PNG header", 0);
  const std::size_t stride = width + 1;
  std::vector<unsigned char> raw(height * stride);
  uLongf raw_len = static_cast<uLongf>(raw.size());
  if (::uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
      raw_len != raw.size())
    throw format_error("PNG inflate failed or wrong raster size", 8);
  Matrix img(height, width);
  std::vector<unsigned char> prev(width, 0);
  for (std::size_t i = 0; i < height; ++i) {
    const unsigned char filter = raw[i * stride];
    std::vector<unsigned char> row(raw.begin() + static_cast<std::ptrdiff_t>(i * stride + 1),
                                   raw.begin() + static_cast<std::ptrdiff_t>((i + 1) * stride));
    for (std::size_t j = 0; j < width; ++j) {
      const int left = j > 0 ? row[j - 1] : 0;
      const int up = prev[j];
      const int ul = j > 0 ? prev[j - 1] : 0;
      switch (filter) {
        case 0: break;
        case 1: row[j] = static_cast<unsigned char>(row[j] + left); break;
        case 2: row[j] = static_cast<unsigned char>(row[j] + up); break;
        case 3: row[j] = static_cast<unsigned char>(row[j] + (left + up) / 2); break;
        case 4: row[j] = static_cast<unsigned char>(row[j] + detail::paeth(left, up, ul)); break;
        default: throw format_error("unknown PNG filter type", i * stride);
      }
      img(i, j) = row[j];
    }
    prev = row;
  }
  return img;
}

// Reads a grayscale image by file extension (.pgm or .png).
inline Matrix read_image(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".png") return read_png(path);
  return read_pgm(path);
}

inline void write_image(const std::string& path, const Matrix& img) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".png")
    write_png(path, img);
  else
    write_pgm(path, img);
}

// ---------------------------------------------------------------------------
// VPWC pyramid container

namespace detail {

inline void vpc_header(ByteWriter& w, std::uint32_t dims, double theta, std::uint32_t levels) {
  w.bytes("VPWC", 4);
  w.u32le(1);  // version
  w.u32le(dims);
  w.f64le(theta);
  w.u32le(levels);
}

inline void vpc_band(ByteWriter& w, const std::vector<double>& v) {
  for (double x : v) w.f64le(x);
}

}  // namespace detail

inline void write_vpc(const std::string& path, const Pyramid1D& p) {
  detail::ByteWriter w;
  detail::vpc_header(w, 1, p.theta, static_cast<std::uint32_t>(p.details.size()));
  w.u64le(p.original_length);
  for (std::size_t i = 0; i < p.details.size(); ++i) {
    w.u8(p.meta[i].pad_count);
    w.u8(0);
    w.u8(static_cast<std::uint8_t>(p.meta[i].mode));
    w.u64le(p.details[i].size());
    detail::vpc_band(w, p.details[i]);
  }
  w.u64le(p.coarse.size());
  detail::vpc_band(w, p.coarse);
  detail::write_file(path, w.buf);
}

inline void write_vpc(const std::string& path, const Pyramid2D& p) {
  detail::ByteWriter w;
  detail::vpc_header(w, 2, p.theta, static_cast<std::uint32_t>(p.levels.size()));
  w.u64le(p.orig_rows);
  w.u64le(p.orig_cols);
  for (const Level2D& lv : p.levels) {
    w.u8(lv.pad_rows);
    w.u8(lv.pad_cols);
    w.u8(static_cast<std::uint8_t>(lv.mode));
    for (const Matrix* m : {&lv.H, &lv.V, &lv.D}) {
      w.u64le(m->rows);
      w.u64le(m->cols);
    }
    for (const Matrix* m : {&lv.H, &lv.V, &lv.D}) detail::vpc_band(w, m->data);
  }
  w.u64le(p.coarse.rows);
  w.u64le(p.coarse.cols);
  detail::vpc_band(w, p.coarse.data);
  detail::write_file(path, w.buf);
}

namespace detail {

inline std::uint32_t vpc_open(ByteReader& r, double* theta, std::uint32_t* levels) {
  const unsigned char* magic = r.need(4, "VPWC magic");
  if (std::memcmp(magic, "VPWC", 4) != 0) throw format_error("bad VPWC magic", 0);
  const std::uint32_t version = r.u32le("version");
  if (version != 1) throw format_error("unsupported VPWC version", 4);
  const std::uint32_t dims = r.u32le("dims");
  if (dims != 1 && dims != 2) throw format_error("VPWC dims must be 1 or 2", 8);
  *theta = r.f64le("theta");
  *levels = r.u32le("levels");
  return dims;
}

inline PadMode vpc_mode(ByteReader& r) {
  const std::uint8_t m = r.u8("pad mode");
  if (m > 1) throw format_error("bad pad mode byte", r.pos() - 1);
  return static_cast<PadMode>(m);
}

inline std::vector<double> vpc_payload(ByteReader& r, std::size_t count) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = r.f64le("band payload");
  return v;
}

}  // namespace detail

inline std::uint32_t read_vpc_dims(const std::string& path) {
  detail::ByteReader r(detail::read_file(path));
  double theta;
  std::uint32_t levels;
  return detail::vpc_open(r, &theta, &levels);
}

inline Pyramid1D read_vpc_1d(const std::string& path) {
  detail::ByteReader r(detail::read_file(path));
  double theta;
  std::uint32_t levels;
  if (detail::vpc_open(r, &theta, &levels) != 1)
    throw format_error("expected a 1D VPWC container", 8);
  Pyramid1D p;
  p.theta = theta;
  p.original_length = r.u64le("original length");
  for (std::uint32_t i = 0; i < levels; ++i) {
    LevelMeta meta;
    meta.pad_count = r.u8("pad count");
    r.u8("pad count (unused axis)");
    meta.mode = detail::vpc_mode(r);
    const std::uint64_t len = r.u64le("detail length");
    p.details.push_back(detail::vpc_payload(r, len));
    p.meta.push_back(meta);
  }
  const std::uint64_t clen = r.u64le("coarse length");
  p.coarse = detail::vpc_payload(r, clen);
  return p;
}

inline Pyramid2D read_vpc_2d(const std::string& path) {
  detail::ByteReader r(detail::read_file(path));
  double theta;
  std::uint32_t levels;
  if (detail::vpc_open(r, &theta, &levels) != 2)
    throw format_error("expected a 2D VPWC container", 8);
  Pyramid2D p;
  p.theta = theta;
  p.orig_rows = r.u64le("original rows");
  p.orig_cols = r.u64le("original cols");
  for (std::uint32_t i = 0; i < levels; ++i) {
    Level2D lv;
    lv.pad_rows = r.u8("pad rows");
    lv.pad_cols = r.u8("pad cols");
    lv.mode = detail::vpc_mode(r);
    std::size_t shape[6];
    for (auto& s : shape) s = r.u64le("band shape");
    Matrix* mats[3] = {&lv.H, &lv.V, &lv.D};
    for (int b = 0; b < 3; ++b) {
      *mats[b] = Matrix(shape[2 * b], shape[2 * b + 1]);
      mats[b]->data = detail::vpc_payload(r, mats[b]->size());
    }
    p.levels.push_back(std::move(lv));
  }
  const std::size_t rows = r.u64le("coarse rows");
  const std::size_t cols = r.u64le("coarse cols");
  p.coarse = Matrix(rows, cols);
  p.coarse.data = detail::vpc_payload(r, rows * cols);
  return p;
}

}  // namespace vpwav
