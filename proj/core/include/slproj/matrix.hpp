#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "slproj/errors.hpp"

namespace slproj {

/// Dense real square matrix, row-major storage. Dimension is fixed at
/// construction and must be at least 2; entries must be finite.
class MatrixN {
 public:
  explicit MatrixN(int n) : n_(check_dim(n)), data_(static_cast<std::size_t>(n) * n, 0.0) {}

  MatrixN(int n, std::vector<double> data) : n_(check_dim(n)), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(n_) * n_)
      throw ShapeError("MatrixN: data length does not equal n*n");
    for (double v : data_)
      if (!std::isfinite(v)) throw NonFiniteError("MatrixN: non-finite entry");
  }

  static MatrixN identity(int n) {
    MatrixN m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static MatrixN diagonal(const std::vector<double>& d) {
    MatrixN m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  int n() const { return n_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  static int check_dim(int n) {
    if (n < 2) throw ShapeError("MatrixN: dimension must be >= 2");
    return n;
  }

  int n_;
  std::vector<double> data_;
};

MatrixN operator*(const MatrixN& a, const MatrixN& b);
MatrixN operator+(const MatrixN& a, const MatrixN& b);
MatrixN operator-(const MatrixN& a, const MatrixN& b);
MatrixN operator*(double s, const MatrixN& a);
MatrixN transpose(const MatrixN& a);
double frobenius_norm(const MatrixN& a);
double max_abs(const MatrixN& a);
double trace(const MatrixN& a);

/// Componentwise reciprocal; throws DivisionByZeroError on a zero entry.
std::vector<double> reciprocal(const std::vector<double>& v);

double inf_norm(const std::vector<double>& v);

}  // namespace slproj
