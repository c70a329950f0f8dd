#pragma once

#include <vector>

#include "slproj/matrix.hpp"

namespace slproj {

/// Singular value decomposition A = U * diag(sigma) * V^T with orthogonal
/// U, V and sigma sorted non-increasing, all entries >= 0.
/// sign = round(det(U) * det(V)), which equals the sign of det(A) for
/// invertible A.
struct SvdResult {
  MatrixN U;
  MatrixN V;
  std::vector<double> sigma;
  int sign;
};

struct SvdOptions {
  double convergence_tol = 1e-15;  // relative off-diagonal threshold
  int max_sweeps = 60;
};

/// One-sided Jacobi SVD. Deterministic for fixed input; throws Error if the
/// sweep limit is exceeded.
SvdResult svd(const MatrixN& a, const SvdOptions& opts = {});

/// Matrix exponential by scaling-and-squaring with a degree-13 Padé core.
/// The input is scaled by 2^-s until its Frobenius norm is <= 0.5.
/// Throws OverflowError when exp(tr T) exceeds the double range or the
/// result is not finite.
MatrixN expm(const MatrixN& t);

/// Determinant via LU with partial pivoting; returns exactly 0 when a pivot
/// vanishes.
double det(const MatrixN& a);

/// Solves the m-by-m system M x = rhs (M row-major, length m*m) by LU with
/// partial pivoting. Throws SingularMatrixError when a pivot magnitude drops
/// below pivot_tol * ||M||_inf.
std::vector<double> dense_solve(const std::vector<double>& m_data, int m,
                                const std::vector<double>& rhs,
                                double pivot_tol = 1e-14);

std::vector<double> dense_solve(const MatrixN& m, const std::vector<double>& rhs,
                                double pivot_tol = 1e-14);

}  // namespace slproj
