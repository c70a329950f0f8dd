#include "slproj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

namespace slproj {

MatrixN operator*(const MatrixN& a, const MatrixN& b) {
  const int n = a.n();
  if (b.n() != n) throw ShapeError("matrix product: dimension mismatch");
  MatrixN c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

MatrixN operator+(const MatrixN& a, const MatrixN& b) {
  MatrixN c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

MatrixN operator-(const MatrixN& a, const MatrixN& b) {
  MatrixN c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

MatrixN operator*(double s, const MatrixN& a) {
  MatrixN c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

MatrixN transpose(const MatrixN& a) {
  MatrixN t(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) t(j, i) = a(i, j);
  return t;
}

double frobenius_norm(const MatrixN& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double max_abs(const MatrixN& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double trace(const MatrixN& a) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) s += a(i, i);
  return s;
}

std::vector<double> reciprocal(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) throw DivisionByZeroError("reciprocal: zero component");
    r[i] = 1.0 / v[i];
  }
  return r;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace {

// LU factorization with partial pivoting on a row-major m-by-m matrix.
struct Lu {
  std::vector<double> lu;
  std::vector<int> perm;
  int m = 0;
  int parity = 1;
  double min_pivot = 0.0;  // smallest |pivot| encountered
  bool zero_pivot = false;

  double& at(int i, int j) { return lu[static_cast<std::size_t>(i) * m + j]; }
  double at(int i, int j) const { return lu[static_cast<std::size_t>(i) * m + j]; }
};

Lu lu_factor(std::vector<double> data, int m) {
  Lu f;
  f.lu = std::move(data);
  f.m = m;
  f.perm.resize(static_cast<std::size_t>(m));
  std::iota(f.perm.begin(), f.perm.end(), 0);
  f.min_pivot = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k) {
    int piv = k;
    double best = std::abs(f.at(k, k));
    for (int i = k + 1; i < m; ++i) {
      const double v = std::abs(f.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < m; ++j) std::swap(f.at(k, j), f.at(piv, j));
      std::swap(f.perm[static_cast<std::size_t>(k)], f.perm[static_cast<std::size_t>(piv)]);
      f.parity = -f.parity;
    }
    const double pivot = f.at(k, k);
    f.min_pivot = std::min(f.min_pivot, std::abs(pivot));
    if (pivot == 0.0) {
      f.zero_pivot = true;
      continue;  // remaining rows stay as-is; determinant is exactly 0
    }
    for (int i = k + 1; i < m; ++i) {
      const double factor = f.at(i, k) / pivot;
      f.at(i, k) = factor;
      if (factor == 0.0) continue;
      for (int j = k + 1; j < m; ++j) f.at(i, j) -= factor * f.at(k, j);
    }
  }
  return f;
}

void lu_solve_in_place(const Lu& f, std::vector<double>& x) {
  const int m = f.m;
  std::vector<double> b(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) b[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(f.perm[static_cast<std::size_t>(i)])];
  for (int i = 1; i < m; ++i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) s -= f.at(i, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(i)] = s;
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) s -= f.at(i, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(i)] = s / f.at(i, i);
  }
  x = std::move(b);
}

double matrix_inf_norm(const std::vector<double>& m_data, int m) {
  double best = 0.0;
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += std::abs(m_data[static_cast<std::size_t>(i) * m + j]);
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

double det(const MatrixN& a) {
  const Lu f = lu_factor(a.data(), a.n());
  if (f.zero_pivot) return 0.0;
  double d = static_cast<double>(f.parity);
  for (int i = 0; i < f.m; ++i) d *= f.at(i, i);
  return d;
}

std::vector<double> dense_solve(const std::vector<double>& m_data, int m,
                                const std::vector<double>& rhs, double pivot_tol) {
  if (m < 1 || m_data.size() != static_cast<std::size_t>(m) * m ||
      rhs.size() != static_cast<std::size_t>(m))
    throw ShapeError("dense_solve: dimension mismatch");
  const double scale = matrix_inf_norm(m_data, m);
  const Lu f = lu_factor(m_data, m);
  if (f.zero_pivot || f.min_pivot < pivot_tol * scale)
    throw SingularMatrixError("dense_solve: pivot below " + std::to_string(pivot_tol) +
                              " * ||M||_inf");
  std::vector<double> x = rhs;
  lu_solve_in_place(f, x);
  return x;
}

std::vector<double> dense_solve(const MatrixN& m, const std::vector<double>& rhs,
                                double pivot_tol) {
  return dense_solve(m.data(), m.n(), rhs, pivot_tol);
}

namespace {

// (cos, sin) of the Jacobi rotation that orthogonalizes two columns given
// their Gram entries alpha = <wi,wi>, beta = <wj,wj>, gamma = <wi,wj>.
void jacobi_rotation(double alpha, double beta, double gamma, double* c, double* s) {
  const double zeta = (beta - alpha) / (2.0 * gamma);
  const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  *c = 1.0 / std::sqrt(1.0 + t * t);
  *s = *c * t;
}

}  // namespace

SvdResult svd(const MatrixN& a, const SvdOptions& opts) {
  const int n = a.n();
  MatrixN w = a;
  MatrixN v = MatrixN::identity(n);

  int sweeps = 0;
  bool converged = false;
  while (!converged) {
    if (sweeps >= opts.max_sweeps)
      throw Error("svd: one-sided Jacobi did not converge after " +
                  std::to_string(sweeps) + " sweeps");
    ++sweeps;
    converged = true;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int k = 0; k < n; ++k) {
          alpha += w(k, i) * w(k, i);
          beta += w(k, j) * w(k, j);
          gamma += w(k, i) * w(k, j);
        }
        if (std::abs(gamma) <= opts.convergence_tol * std::sqrt(alpha * beta)) continue;
        converged = false;
        double c, s;
        jacobi_rotation(alpha, beta, gamma, &c, &s);
        for (int k = 0; k < n; ++k) {
          const double wi = w(k, i), wj = w(k, j);
          w(k, i) = c * wi - s * wj;
          w(k, j) = s * wi + c * wj;
        }
        for (int k = 0; k < n; ++k) {
          const double vi = v(k, i), vj = v(k, j);
          v(k, i) = c * vi - s * vj;
          v(k, j) = s * vi + c * vj;
        }
      }
    }
  }

  std::vector<double> sigma(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += w(k, j) * w(k, j);
    sigma[static_cast<std::size_t>(j)] = std::sqrt(s);
  }

  // Stable descending order; ties keep their relative position.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return sigma[static_cast<std::size_t>(x)] > sigma[static_cast<std::size_t>(y)];
  });

  SvdResult r{MatrixN(n), MatrixN(n), std::vector<double>(static_cast<std::size_t>(n)), 1};
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    r.sigma[static_cast<std::size_t>(j)] = sigma[static_cast<std::size_t>(src)];
    for (int k = 0; k < n; ++k) r.V(k, j) = v(k, src);
  }

  // Left factor: normalized columns of W; numerically-zero columns are
  // replaced by an orthonormal completion so that U stays orthogonal even
  // for rank-deficient input.
  const double sigma_floor = 1e-290;
  std::vector<int> missing;
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    const double s = r.sigma[static_cast<std::size_t>(j)];
    if (s > sigma_floor) {
      for (int k = 0; k < n; ++k) r.U(k, j) = w(k, src) / s;
    } else {
      r.sigma[static_cast<std::size_t>(j)] = 0.0;
      missing.push_back(j);
    }
  }
  for (int j : missing) {
    // Gram-Schmidt a unit vector against the columns already in place.
    std::vector<double> col(static_cast<std::size_t>(n), 0.0);
    for (int cand = 0; cand < n; ++cand) {
      std::fill(col.begin(), col.end(), 0.0);
      col[static_cast<std::size_t>(cand)] = 1.0;
      for (int jj = 0; jj < n; ++jj) {
        if (jj == j) continue;
        bool filled = std::find(missing.begin(), missing.end(), jj) == missing.end() || jj < j;
        if (!filled) continue;
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += col[static_cast<std::size_t>(k)] * r.U(k, jj);
        for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] -= dot * r.U(k, jj);
      }
      double norm = 0.0;
      for (double x : col) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 0.5) {
        for (int k = 0; k < n; ++k) r.U(k, j) = col[static_cast<std::size_t>(k)] / norm;
        break;
      }
    }
  }

  const double sign_product = det(r.U) * det(r.V);
  r.sign = sign_product >= 0.0 ? 1 : -1;
  return r;
}

namespace {

// Degree-13 Padé numerator coefficients (Higham's scaling-and-squaring).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

}  // namespace

MatrixN expm(const MatrixN& t) {
  const int n = t.n();
  const double tr = trace(t);
  if (tr > 709.78)
    throw OverflowError("expm: exp(tr T) overflows the double range");

  double norm = frobenius_norm(t);
  int s = 0;
  if (norm > 0.5) {
    s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    norm = std::ldexp(norm, -s);
  }
  MatrixN x = std::ldexp(1.0, -s) * t;

  const MatrixN x2 = x * x;
  const MatrixN x4 = x2 * x2;
  const MatrixN x6 = x4 * x2;
  const MatrixN ident = MatrixN::identity(n);

  // U = X (X6 (b13 X6 + b11 X4 + b9 X2) + b7 X6 + b5 X4 + b3 X2 + b1 I)
  // V =    X6 (b12 X6 + b10 X4 + b8 X2) + b6 X6 + b4 X4 + b2 X2 + b0 I
  MatrixN u_inner = kPade13[13] * x6 + kPade13[11] * x4 + kPade13[9] * x2;
  MatrixN u = x * (x6 * u_inner + kPade13[7] * x6 + kPade13[5] * x4 + kPade13[3] * x2 +
                   kPade13[1] * ident);
  MatrixN v_inner = kPade13[12] * x6 + kPade13[10] * x4 + kPade13[8] * x2;
  MatrixN v = x6 * v_inner + kPade13[6] * x6 + kPade13[4] * x4 + kPade13[2] * x2 +
              kPade13[0] * ident;

  // Solve (V - U) R = (V + U) column by column.
  MatrixN lhs = v - u;
  MatrixN rhs = v + u;
  const Lu f = lu_factor(lhs.data(), n);
  if (f.zero_pivot)
    throw Error("expm: Padé denominator is singular");
  MatrixN r(n);
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = rhs(i, j);
    lu_solve_in_place(f, col);
    for (int i = 0; i < n; ++i) r(i, j) = col[static_cast<std::size_t>(i)];
  }

  for (int k = 0; k < s; ++k) r = r * r;

  for (double vv : r.data())
    if (!std::isfinite(vv)) throw OverflowError("expm: non-finite result");
  return r;
}

}  // namespace slproj
