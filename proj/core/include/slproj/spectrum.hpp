#pragma once

#include <utility>
#include <vector>

#include "slproj/matrix.hpp"

namespace slproj {

/// Target point of the diagonal problem: non-increasing entries, the first
/// n-1 nonnegative. The last entry may be negative only when sign_flipped is
/// set (normalization of det A < 0 inputs, which negates the smallest
/// singular value).
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values, bool sign_flipped = false);

  int n() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  bool sign_flipped() const { return sign_flipped_; }

 private:
  std::vector<double> values_;
  bool sign_flipped_;
};

/// Product of the entries, evaluated left to right in index order.
double prod(const std::vector<double>& x);

/// ||p - a + lambda * p^-1||_inf. Throws DivisionByZeroError if some p_i = 0.
double stationarity_residual(const std::vector<double>& a, const std::vector<double>& p,
                             double lambda);
double stationarity_residual(const Spectrum& a, const std::vector<double>& p, double lambda);

/// Least-squares multiplier <a-p, p^-1> / <p^-1, p^-1>; equals the true
/// multiplier at an exact stationary point.
double estimate_lambda(const Spectrum& a, const std::vector<double>& p);
double estimate_lambda(const std::vector<double>& a, const std::vector<double>& p);

/// Stable descending sort into the order cone. The returned permutation maps
/// sorted positions to original indices: sorted[k] = sigma[perm[k]].
std::pair<Spectrum, std::vector<int>> sort_to_cone(const std::vector<double>& sigma);

/// Radial scaling baseline A * (det A)^(-1/n). Throws SingularInputError for
/// det A = 0 and NoRealRootError for det A < 0 with even n.
MatrixN radial_scale(const MatrixN& a);

}  // namespace slproj
