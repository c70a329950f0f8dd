#include "slproj/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slproj/linalg.hpp"

namespace slproj {

Spectrum::Spectrum(std::vector<double> values, bool sign_flipped)
    : values_(std::move(values)), sign_flipped_(sign_flipped) {
  const int n = static_cast<int>(values_.size());
  if (n < 2) throw ShapeError("Spectrum: need at least 2 entries");
  for (double v : values_)
    if (!std::isfinite(v)) throw NonFiniteError("Spectrum: non-finite entry");
  for (int i = 0; i + 1 < n; ++i)
    if (values_[static_cast<std::size_t>(i)] < values_[static_cast<std::size_t>(i) + 1])
      throw DomainError("Spectrum: entries not sorted non-increasing");
  for (int i = 0; i + 1 < n; ++i)
    if (values_[static_cast<std::size_t>(i)] < 0.0)
      throw DomainError("Spectrum: entry before the last is negative");
  if (!sign_flipped_ && values_.back() < 0.0)
    throw DomainError("Spectrum: negative last entry requires sign_flipped");
}

double prod(const std::vector<double>& x) {
  double p = 1.0;
  for (double v : x) p *= v;
  return p;
}

double stationarity_residual(const std::vector<double>& a, const std::vector<double>& p,
                             double lambda) {
  double r = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) throw DivisionByZeroError("stationarity_residual: p has a zero component");
    r = std::max(r, std::abs(p[i] - a[i] + lambda / p[i]));
  }
  return r;
}

double stationarity_residual(const Spectrum& a, const std::vector<double>& p, double lambda) {
  return stationarity_residual(a.values(), p, lambda);
}

double estimate_lambda(const std::vector<double>& a, const std::vector<double>& p) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) throw DivisionByZeroError("estimate_lambda: p has a zero component");
    const double inv = 1.0 / p[i];
    num += (a[i] - p[i]) * inv;
    den += inv * inv;
  }
  return num / den;
}

double estimate_lambda(const Spectrum& a, const std::vector<double>& p) {
  return estimate_lambda(a.values(), p);
}

std::pair<Spectrum, std::vector<int>> sort_to_cone(const std::vector<double>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) {
    return sigma[static_cast<std::size_t>(x)] > sigma[static_cast<std::size_t>(y)];
  });
  std::vector<double> sorted(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    sorted[static_cast<std::size_t>(k)] = sigma[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
  const bool flipped = sorted.back() < 0.0;
  return {Spectrum(std::move(sorted), flipped), std::move(perm)};
}

MatrixN radial_scale(const MatrixN& a) {
  const double d = det(a);
  if (d == 0.0) throw SingularInputError("radial_scale: determinant is zero");
  const int n = a.n();
  if (d < 0.0 && n % 2 == 0)
    throw NoRealRootError("radial_scale: negative determinant has no real n-th root for even n");
  double scale = std::pow(std::abs(d), -1.0 / n);
  if (d < 0.0) scale = -scale;  // odd n
  return scale * a;
}

}  // namespace slproj
