#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chebyshev.hpp"
#include "kernel.hpp"
#include "matrix.hpp"
#include "resolution.hpp"

// Dense L^2_w orthogonal projection of V_{3n}^m onto V_n^m. This is the
// ground-truth reference for the fast decomposition: Gram matrix and inner
// products are formed by Gauss-Chebyshev quadrature with M = 8n nodes, which
// is exact for every polynomial degree that occurs.

namespace vpwav {
namespace detail {

// Cholesky solve for a small SPD system (in-place on copies).
inline std::vector<double> spd_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows;
  if (a.cols != n || b.size() != n) throw std::invalid_argument("spd_solve: shape mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > 0.0)) throw std::runtime_error("spd_solve: matrix not positive definite");
    const double ljj = std::sqrt(d);
    a(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / ljj;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * b[k];
    b[i] = s / a(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a(k, ii) * b[k];
    b[ii] = s / a(ii, ii);
  }
  return b;
}

}  // namespace detail

struct BasisMatrices {
  Matrix phi_at_3n;  // n x 3n, phi_{n,k}^m at the 3n grid
  Matrix psi_at_3n;  // 2n x 3n, psi_{n,k}^m at the 3n grid
  Matrix gram_phi;   // n x n, <phi_i, phi_j>_w
};

inline BasisMatrices basis_matrices(const ResolutionSpec& s) {
  check_spec(s);
  const std::size_t n = s.n;
  BasisMatrices bm;
  bm.phi_at_3n = Matrix(n, 3 * n);
  bm.psi_at_3n = Matrix(2 * n, 3 * n);
  const std::vector<double> grid = cheb_nodes(3 * n);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t j = 0; j < 3 * n; ++j) bm.phi_at_3n(k - 1, j) = scaling_eval(s, k, grid[j]);
  for (std::size_t k = 1; k <= 2 * n; ++k)
    for (std::size_t j = 0; j < 3 * n; ++j) bm.psi_at_3n(k - 1, j) = wavelet_eval(s, k, grid[j]);
  const std::size_t big = 8 * n;
  const std::vector<double> z = cheb_nodes(big);
  Matrix phi_q(n, big);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t q = 0; q < big; ++q) phi_q(k - 1, q) = scaling_eval(s, k, z[q]);
  bm.gram_phi = Matrix(n, n);
  const double w = kPi / static_cast<double>(big);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t q = 0; q < big; ++q) acc += phi_q(i, q) * phi_q(j, q);
      bm.gram_phi(i, j) = bm.gram_phi(j, i) = w * acc;
    }
  return bm;
}

// Reference decomposition of a3n (nodal coefficients of f_{3n} in V_{3n}^m)
// into the nodal coefficients of the orthogonal projection f_n and of the
// residual g_{2n} = f_{3n} - f_n at the y nodes.
inline std::pair<std::vector<double>, std::vector<double>> oracle_decompose(
    const std::vector<double>& a3n, const ResolutionSpec& s) {
  check_spec(s);
  if (a3n.size() % 3 != 0 || a3n.size() != 3 * s.n)
    throw std::invalid_argument("oracle_decompose: input length must equal 3n");
  const std::size_t n = s.n;
  const ResolutionSpec s3{3 * n, s.m, s.theta};
  const std::size_t big = 8 * n;
  const std::vector<double> z = cheb_nodes(big);
  const double w = kPi / static_cast<double>(big);

  // f_{3n} at the quadrature nodes
  std::vector<double> f(big, 0.0);
  for (std::size_t q = 0; q < big; ++q) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= 3 * n; ++k) acc += a3n[k - 1] * scaling_eval(s3, k, z[q]);
    f[q] = acc;
  }

  Matrix phi_q(n, big);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t q = 0; q < big; ++q) phi_q(k - 1, q) = scaling_eval(s, k, z[q]);

  Matrix gram(n, n);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t q = 0; q < big; ++q) acc += phi_q(i, q) * phi_q(j, q);
      gram(i, j) = gram(j, i) = w * acc;
    }
    double acc = 0.0;
    for (std::size_t q = 0; q < big; ++q) acc += f[q] * phi_q(i, q);
    rhs[i] = w * acc;
  }

  std::vector<double> an;
  try {
    an = detail::spd_solve(gram, rhs);  // interpolatory basis: coefficients are nodal values
  } catch (const std::runtime_error&) {
    throw std::runtime_error("oracle_decompose: Gram system singular (n=" + std::to_string(n) +
                             ", m=" + std::to_string(s.m) + ")");
  }

  std::vector<double> b2n(2 * n, 0.0);
  for (std::size_t sy = 0; sy < 2 * n; ++sy) {
    const double yv = std::cos(detail::y_node_angle(n, sy));
    double fn_at_y = 0.0;
    for (std::size_t i = 1; i <= n; ++i) fn_at_y += an[i - 1] * scaling_eval(s, i, yv);
    b2n[sy] = a3n[detail::y_grid_index(sy)] - fn_at_y;
  }
  return {std::move(an), std::move(b2n)};
}

}  // namespace vpwav
