#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "mra1d.hpp"

// Tensor-product 2D transform: the 1D split applied to every column, then to
// every row of both parts. One level of an N x M input (padded to 3N1 x 3M1)
// yields A: N1 x M1, H: 2N1 x M1, V: N1 x 2M1, D: 2N1 x 2M1, so the element
// count 9 N1 M1 is conserved.

namespace vpwav {

struct QuadBands {
  Matrix A, H, V, D;
  ResolutionSpec row_spec;  // spec of the column pass (acts along rows)
  ResolutionSpec col_spec;  // spec of the row pass
  std::uint8_t pad_rows = 0;
  std::uint8_t pad_cols = 0;
  double theta = 0.0;
};

namespace detail {

// Split every column of I; returns (scaling part, detail part, pad).
inline std::pair<std::pair<Matrix, Matrix>, std::uint8_t> split_cols(const Matrix& I,
                                                                     double theta, PadMode mode) {
  std::uint8_t pad = 0;
  Matrix S, Dm;
  for (std::size_t j = 0; j < I.cols; ++j) {
    DecomposeResult r = decompose_any(I.col(j), theta, mode);
    if (j == 0) {
      pad = r.pad_count;
      S = Matrix(r.scaling.size(), I.cols);
      Dm = Matrix(r.detail.size(), I.cols);
    }
    S.set_col(j, r.scaling);
    Dm.set_col(j, r.detail);
  }
  return {{std::move(S), std::move(Dm)}, pad};
}

inline std::pair<std::pair<Matrix, Matrix>, std::uint8_t> split_rows(const Matrix& I,
                                                                     double theta, PadMode mode) {
  std::uint8_t pad = 0;
  Matrix S, Dm;
  for (std::size_t i = 0; i < I.rows; ++i) {
    DecomposeResult r = decompose_any(I.row(i), theta, mode);
    if (i == 0) {
      pad = r.pad_count;
      S = Matrix(I.rows, r.scaling.size());
      Dm = Matrix(I.rows, r.detail.size());
    }
    S.set_row(i, r.scaling);
    Dm.set_row(i, r.detail);
  }
  return {{std::move(S), std::move(Dm)}, pad};
}

inline Matrix merge_rows(const Matrix& S, const Matrix& Dm, double theta, std::uint8_t pad) {
  if (S.rows != Dm.rows || Dm.cols != 2 * S.cols)
    throw std::invalid_argument("reconstruct2d: row band shapes inconsistent");
  Matrix out(S.rows, 3 * S.cols - pad);
  for (std::size_t i = 0; i < S.rows; ++i) {
    std::vector<double> full = reconstruct_any(S.row(i), Dm.row(i), theta);
    full.resize(full.size() - pad);
    out.set_row(i, full);
  }
  return out;
}

inline Matrix merge_cols(const Matrix& S, const Matrix& Dm, double theta, std::uint8_t pad) {
  if (S.cols != Dm.cols || Dm.rows != 2 * S.rows)
    throw std::invalid_argument("reconstruct2d: column band shapes inconsistent");
  Matrix out(3 * S.rows - pad, S.cols);
  for (std::size_t j = 0; j < S.cols; ++j) {
    std::vector<double> full = reconstruct_any(S.col(j), Dm.col(j), theta);
    full.resize(full.size() - pad);
    out.set_col(j, full);
  }
  return out;
}

}  // namespace detail

inline QuadBands decompose2d(const Matrix& I, double theta, PadMode mode) {
  if (I.rows < 3 || I.cols < 3) throw std::invalid_argument("decompose2d: image too small");
  auto [col_parts, pad_rows] = detail::split_cols(I, theta, mode);
  auto& [S, Dm] = col_parts;
  auto [s_parts, pad_cols] = detail::split_rows(S, theta, mode);
  auto [d_parts, pad_cols2] = detail::split_rows(Dm, theta, mode);
  (void)pad_cols2;  // same length rows, same pad
  QuadBands q;
  q.A = std::move(s_parts.first);
  q.V = std::move(s_parts.second);
  q.H = std::move(d_parts.first);
  q.D = std::move(d_parts.second);
  q.pad_rows = pad_rows;
  q.pad_cols = pad_cols;
  q.theta = theta;
  q.row_spec = spec_from_theta(q.A.rows, theta);
  q.col_spec = spec_from_theta(q.A.cols, theta);
  return q;
}

inline Matrix reconstruct2d(const QuadBands& q) {
  if (q.H.rows != 2 * q.A.rows || q.H.cols != q.A.cols || q.V.rows != q.A.rows ||
      q.V.cols != 2 * q.A.cols || q.D.rows != 2 * q.A.rows || q.D.cols != 2 * q.A.cols)
    throw std::invalid_argument("reconstruct2d: band shapes inconsistent");
  Matrix S = detail::merge_rows(q.A, q.V, q.theta, q.pad_cols);
  Matrix Dm = detail::merge_rows(q.H, q.D, q.theta, q.pad_cols);
  return detail::merge_cols(S, Dm, q.theta, q.pad_rows);
}

struct Level2D {
  Matrix H, V, D;
  std::uint8_t pad_rows = 0;
  std::uint8_t pad_cols = 0;
  PadMode mode = PadMode::replicate;
};

struct Pyramid2D {
  std::vector<Level2D> levels;  // finest first
  Matrix coarse;
  double theta = 0.0;
  std::size_t orig_rows = 0;
  std::size_t orig_cols = 0;
};

inline Pyramid2D decompose2d_multi(const Matrix& I, double theta, std::size_t levels,
                                   PadMode mode) {
  if (levels == 0) throw std::invalid_argument("decompose2d_multi: levels must be >= 1");
  if (I.rows < 3 || I.cols < 3) throw std::invalid_argument("decompose2d_multi: image too small");
  Pyramid2D p;
  p.theta = theta;
  p.orig_rows = I.rows;
  p.orig_cols = I.cols;
  Matrix cur = I;
  for (std::size_t l = 0; l < levels; ++l) {
    if (cur.rows < 4 || cur.cols < 4) break;
    QuadBands q = decompose2d(cur, theta, mode);
    p.levels.push_back(Level2D{std::move(q.H), std::move(q.V), std::move(q.D), q.pad_rows,
                               q.pad_cols, mode});
    cur = std::move(q.A);
  }
  p.coarse = std::move(cur);
  return p;
}

inline Matrix reconstruct2d_multi(const Pyramid2D& p) {
  Matrix cur = p.coarse;
  for (std::size_t i = p.levels.size(); i-- > 0;) {
    const Level2D& lv = p.levels[i];
    QuadBands q;
    q.A = cur;
    q.H = lv.H;
    q.V = lv.V;
    q.D = lv.D;
    q.pad_rows = lv.pad_rows;
    q.pad_cols = lv.pad_cols;
    q.theta = p.theta;
    cur = reconstruct2d(q);
  }
  if (cur.rows != p.orig_rows || cur.cols != p.orig_cols)
    throw std::invalid_argument("reconstruct2d_multi: reconstructed shape mismatch");
  return cur;
}

}  // namespace vpwav
