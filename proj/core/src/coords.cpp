#include "slproj/coords.hpp"

#include <cmath>
#include <cstddef>

namespace slproj {

std::vector<double> HyperbolicBasis::xi_from_zeta_bar(const std::vector<double>& zeta_bar) const {
  std::vector<double> xi(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n - 1; ++j) s += B(i, j) * zeta_bar[static_cast<std::size_t>(j)];
    xi[static_cast<std::size_t>(i)] = s;
  }
  return xi;
}

std::vector<double> HyperbolicBasis::bbar_transpose_times(const std::vector<double>& g) const {
  std::vector<double> out(static_cast<std::size_t>(n - 1), 0.0);
  for (int j = 0; j < n - 1; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += B(i, j) * g[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(j)] = s;
  }
  return out;
}

std::vector<double> HyperbolicBasis::zeta_from_xi(const std::vector<double>& xi) const {
  std::vector<double> zeta(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += B_inv(i, j) * xi[static_cast<std::size_t>(j)];
    zeta[static_cast<std::size_t>(i)] = s;
  }
  return zeta;
}

HyperbolicBasis build_basis(int n) {
  MatrixN b(n);
  for (int j = 0; j < n - 1; ++j)
    for (int i = 0; i < n; ++i) b(i, j) = (i <= j) ? static_cast<double>(n - j - 1)
                                                   : -static_cast<double>(j + 1);
  for (int i = 0; i < n; ++i) b(i, n - 1) = 1.0;

  // Closed-form inverse: bidiagonal difference rows over n, last row all 1/n.
  MatrixN b_inv(n);
  const double inv_n = 1.0 / n;
  for (int i = 0; i < n - 1; ++i) {
    b_inv(i, i) = inv_n;
    b_inv(i, i + 1) = -inv_n;
  }
  for (int j = 0; j < n; ++j) b_inv(n - 1, j) = inv_n;

  return HyperbolicBasis{n, std::move(b), std::move(b_inv)};
}

HypDecomposition hyp_from_euclidean(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> xi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!(x[static_cast<std::size_t>(i)] > 0.0))
      throw NonPositiveInputError("hyp_from_euclidean: components must be positive");
    xi[static_cast<std::size_t>(i)] = std::log(x[static_cast<std::size_t>(i)]);
  }
  // zeta_i = (xi_i - xi_{i+1}) / n for i < n, zeta_n = mean(xi).
  HypDecomposition d;
  d.point.zeta_bar.resize(static_cast<std::size_t>(n - 1));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += xi[static_cast<std::size_t>(i)];
  for (int i = 0; i < n - 1; ++i)
    d.point.zeta_bar[static_cast<std::size_t>(i)] =
        (xi[static_cast<std::size_t>(i)] - xi[static_cast<std::size_t>(i) + 1]) / n;
  d.zeta_n = sum / n;
  return d;
}

std::vector<double> euclidean_from_hyp(const HypPoint& point) {
  const int n = static_cast<int>(point.zeta_bar.size()) + 1;
  const HyperbolicBasis basis = build_basis(n);
  std::vector<double> xi = basis.xi_from_zeta_bar(point.zeta_bar);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (std::abs(xi[static_cast<std::size_t>(i)]) > 700.0)
      throw OverflowError("euclidean_from_hyp: |B_bar zeta|_inf exceeds 700");
    x[static_cast<std::size_t>(i)] = std::exp(xi[static_cast<std::size_t>(i)]);
  }
  return x;
}

std::vector<double> initial_iterate(const Spectrum& a) {
  const int n = a.n();
  if (a.sign_flipped() || a[n - 1] < 0.0)
    throw DomainError("initial_iterate: requires a nonnegative spectrum");
  std::vector<double> v = a.values();

  double sum = 0.0;
  for (double x : v) sum += x;
  if (sum - n < 0.0) {
    // Below the tangent plane at the identity: lift onto it first.
    const double mean = sum / n;
    for (double& x : v) x = 1.0 + x - mean;
  }

  // Radial scaling onto sl(n); the shift keeps zero components off the axis.
  // The n-th root is taken in log space so that prod(v) may underflow without
  // harm (e.g. all-zero input at large n).
  const double shift = 1e-15;
  double log_prod = 0.0;
  for (double& x : v) {
    x += shift;
    log_prod += std::log(x);
  }
  const double scale = std::exp(-log_prod / n);
  for (double& x : v) x *= scale;

  if (v[0] > 1.0) {
    // Geodesic scaling within sl(n) so that the leading component equals a_1
    // (or its lifted value when the tangent projection was applied).
    const double lead = sum - n < 0.0 ? 1.0 + a[0] - sum / n : a[0];
    const double gamma = std::log(lead) / std::log(v[0]);
    for (double& x : v) x = std::exp(gamma * std::log(x));
  }
  return v;
}

}  // namespace slproj
