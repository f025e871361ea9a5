#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vpwav {

// Resolution pair (n, m) with 0 < m < n. theta records the requested ratio
// when the spec was derived from one (informational otherwise).
struct ResolutionSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  double theta = 0.0;
};

inline void check_spec(const ResolutionSpec& s) {
  if (s.n < 2 || s.m == 0 || s.m >= s.n)
    throw std::invalid_argument("ResolutionSpec: requires 0 < m < n");
}

inline ResolutionSpec make_spec(std::size_t n, std::size_t m, double theta = 0.0) {
  ResolutionSpec s{n, m, theta};
  check_spec(s);
  return s;
}

// m = clamp(floor(theta*n), 1, n-1); keeps 0 < m < n at coarse levels.
inline ResolutionSpec spec_from_theta(std::size_t n, double theta) {
  if (n < 2) throw std::invalid_argument("spec_from_theta: n must be at least 2");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("spec_from_theta: theta must lie in (0,1)");
  auto m = static_cast<std::size_t>(std::floor(theta * static_cast<double>(n)));
  m = std::clamp<std::size_t>(m, 1, n - 1);
  return ResolutionSpec{n, m, theta};
}

// Filter coefficients mu_{n,r}^m: 1 on the plateau r <= n-m, then linear
// decay (m+n-r)/(2m) for n-m < r < n+m.
inline double mu(const ResolutionSpec& s, std::size_t r) {
  check_spec(s);
  if (r >= s.n + s.m) throw std::invalid_argument("mu: r out of range");
  if (r <= s.n - s.m) return 1.0;
  return static_cast<double>(s.m + s.n - r) / (2.0 * static_cast<double>(s.m));
}

inline std::vector<double> mu_table(const ResolutionSpec& s) {
  check_spec(s);
  std::vector<double> t(s.n + s.m);
  for (std::size_t r = 0; r < t.size(); ++r) t[r] = mu(s, r);
  return t;
}

}  // namespace vpwav
