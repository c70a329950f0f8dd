#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "slproj/linalg.hpp"
#include "slproj/matrix.hpp"
#include "slproj/testgen.hpp"

namespace slproj::test {

inline MatrixN random_matrix(int n, testgen::SplitMix64& rng, double scale = 1.0) {
  MatrixN m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_uniform(-scale, scale);
  return m;
}

inline MatrixN random_orthogonal(int n, testgen::SplitMix64& rng) {
  return svd(random_matrix(n, rng)).U;
}

// Random point of sl(n) in the order cone: exp of a sorted zero-sum vector.
inline std::vector<double> random_cone_sl_point(int n, testgen::SplitMix64& rng,
                                                double spread = 1.0) {
  std::vector<double> xi(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& v : xi) {
    v = rng.next_uniform(-spread, spread);
    sum += v;
  }
  for (double& v : xi) v -= sum / n;
  std::sort(xi.begin(), xi.end(), std::greater<double>());
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = std::exp(xi[static_cast<std::size_t>(i)]);
  return p;
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

inline double max_abs_diff(const MatrixN& x, const MatrixN& y) {
  return max_abs_diff(x.data(), y.data());
}

}  // namespace slproj::test
