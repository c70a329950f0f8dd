#include "slproj/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "slproj/linalg.hpp"

namespace slproj {

const char* to_string(IllPosedReason reason) {
  switch (reason) {
    case IllPosedReason::lambda_eq_sigma_sq: return "lambda_eq_sigma_sq";
    case IllPosedReason::lambda_eq_pm_sigma_prod: return "lambda_eq_pm_sigma_prod";
    case IllPosedReason::trace_zero: return "trace_zero";
  }
  return "unknown";
}

namespace {

constexpr double kWellPosedTol = 1e-10;

void check_well_posed(const std::vector<double>& sigma, double lambda) {
  const int n = static_cast<int>(sigma.size());
  for (int i = 0; i < n; ++i) {
    const double s2 = sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)];
    if (std::abs(lambda - s2) <= kWellPosedTol * s2)
      throw IllPosedError(IllPosedReason::lambda_eq_sigma_sq,
                          "sensitivity system ill-posed: lambda = Sigma_i^2 at i=" + std::to_string(i));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double sij = sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)];
      if (std::abs(lambda - sij) <= kWellPosedTol * sij ||
          std::abs(lambda + sij) <= kWellPosedTol * sij)
        throw IllPosedError(IllPosedReason::lambda_eq_pm_sigma_prod,
                            "sensitivity system ill-posed: lambda = +-Sigma_i Sigma_j at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  double tr = 0.0, abs_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s2 = sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)];
    tr += 1.0 / (s2 - lambda);
    abs_sum += std::abs(1.0 / (s2 - lambda));
  }
  if (std::abs(tr) <= kWellPosedTol * abs_sum)
    throw IllPosedError(IllPosedReason::trace_zero,
                        "sensitivity system ill-posed: sum 1/(Sigma_i^2 - lambda) = 0");
}

void check_positive(const std::vector<double>& sigma, const char* who) {
  for (double s : sigma)
    if (!(s > 0.0)) throw DomainError(std::string(who) + ": Sigma must be positive");
}

double system_residual(const std::vector<double>& sigma, double lambda, const MatrixN& r,
                       const MatrixN& dy, double deta) {
  const int n = r.n();
  const MatrixN s_dy = apply_s(sigma, lambda, dy);
  double defect = 0.0, scale = 0.0, constraint = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double lhs = s_dy(i, j);
      if (i == j) lhs += deta / sigma[static_cast<std::size_t>(i)];
      defect = std::max(defect, std::abs(lhs - r(i, j)));
      scale = std::max(scale, std::abs(r(i, j)));
    }
    constraint += dy(i, i) / sigma[static_cast<std::size_t>(i)];
  }
  defect = std::max(defect, std::abs(constraint));
  return defect / std::max(1.0, scale);
}

}  // namespace

MatrixN apply_s(const std::vector<double>& sigma, double lambda, const MatrixN& x) {
  check_positive(sigma, "apply_s");
  const int n = x.n();
  MatrixN out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = x(i, j) - lambda * x(j, i) / (sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)]);
  return out;
}

MatrixN apply_s_inverse(const std::vector<double>& sigma, double lambda, const MatrixN& z) {
  check_positive(sigma, "apply_s_inverse");
  const int n = z.n();
  MatrixN x(n);
  for (int i = 0; i < n; ++i) {
    const double s2 = sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)];
    const double diag_factor = 1.0 - lambda / s2;
    if (std::abs(diag_factor) <= kWellPosedTol)
      throw IllPosedError(IllPosedReason::lambda_eq_sigma_sq,
                          "apply_s_inverse: lambda = Sigma_i^2");
    x(i, i) = z(i, i) / diag_factor;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double kappa = lambda / (sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)]);
      const double det2 = 1.0 - kappa * kappa;
      if (std::abs(det2) <= kWellPosedTol)
        throw IllPosedError(IllPosedReason::lambda_eq_pm_sigma_prod,
                            "apply_s_inverse: lambda = +-Sigma_i Sigma_j");
      x(i, j) = (z(i, j) + kappa * z(j, i)) / det2;
      x(j, i) = (z(j, i) + kappa * z(i, j)) / det2;
    }
  }
  return x;
}

MatrixN dnabla_det(const MatrixN& p, const MatrixN& x) {
  const int n = p.n();
  const double d = det(p);
  if (d == 0.0) throw SingularInputError("dnabla_det: P is singular");

  // Columns of P^-1 via one LU factorization.
  MatrixN p_inv(n);
  std::vector<double> col(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[static_cast<std::size_t>(j)] = 1.0;
    std::vector<double> sol;
    try {
      sol = dense_solve(p.data(), n, col);
    } catch (const SingularMatrixError&) {
      throw SingularInputError("dnabla_det: P is numerically singular");
    }
    for (int i = 0; i < n; ++i) p_inv(i, j) = sol[static_cast<std::size_t>(i)];
  }

  const MatrixN p_inv_t = transpose(p_inv);
  const double tr_pinv_x = trace(p_inv * x);
  return (d * tr_pinv_x) * p_inv_t - d * (p_inv_t * transpose(x) * p_inv_t);
}

SensitivitySolution solve_sensitivity(const std::vector<double>& sigma, double lambda,
                                      const MatrixN& r, SensitivityMode mode) {
  check_positive(sigma, "solve_sensitivity");
  const int n = r.n();
  if (static_cast<int>(sigma.size()) != n)
    throw ShapeError("solve_sensitivity: Sigma and R dimensions differ");
  check_well_posed(sigma, lambda);

  SensitivitySolution sol{MatrixN(n), 0.0, MatrixN(n), 0.0, 0.0};

  if (mode == SensitivityMode::block) {
    // Off-diagonal (i,j)/(j,i) pairs decouple into 2x2 systems.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double kappa = lambda / (sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)]);
        const double det2 = 1.0 - kappa * kappa;
        sol.deltaY(i, j) = (r(i, j) + kappa * r(j, i)) / det2;
        sol.deltaY(j, i) = (r(j, i) + kappa * r(i, j)) / det2;
      }
    }
    // Diagonal entries couple to deltaEta through the trace constraint:
    // deltaY_ii = (R_ii - deltaEta/Sigma_i) / (1 - lambda/Sigma_i^2) and
    // sum_i deltaY_ii / Sigma_i = 0.
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = sigma[static_cast<std::size_t>(i)];
      const double w = 1.0 / (s * s - lambda);
      num += s * r(i, i) * w;
      den += w;
    }
    sol.deltaEta = num / den;
    for (int i = 0; i < n; ++i) {
      const double s = sigma[static_cast<std::size_t>(i)];
      sol.deltaY(i, i) = (r(i, i) - sol.deltaEta / s) / (1.0 - lambda / (s * s));
    }
  } else {
    // Dense assembly: unknowns vec(deltaY) followed by deltaEta.
    const int m = n * n + 1;
    std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
    auto idx = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int row = idx(i, j);
        mat[static_cast<std::size_t>(row) * m + idx(i, j)] += 1.0;
        mat[static_cast<std::size_t>(row) * m + idx(j, i)] -=
            lambda / (sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)]);
        if (i == j) mat[static_cast<std::size_t>(row) * m + (m - 1)] = 1.0 / sigma[static_cast<std::size_t>(i)];
        rhs[static_cast<std::size_t>(row)] = r(i, j);
      }
      mat[static_cast<std::size_t>(m - 1) * m + idx(i, i)] = 1.0 / sigma[static_cast<std::size_t>(i)];
    }
    const std::vector<double> x = dense_solve(mat, m, rhs);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sol.deltaY(i, j) = x[static_cast<std::size_t>(idx(i, j))];
    sol.deltaEta = x[static_cast<std::size_t>(m) - 1];
  }

  sol.deltaP = sol.deltaY;
  sol.deltaLambda = sol.deltaEta;
  sol.residual = system_residual(sigma, lambda, r, sol.deltaY, sol.deltaEta);
  return sol;
}

ProjectionDerivative projection_derivative(const MatrixN& a, const MatrixN& deltaA,
                                           const ProjectionResult& proj) {
  if (a.n() != proj.P.n() || deltaA.n() != a.n())
    throw ShapeError("projection_derivative: dimension mismatch");
  if (proj.sign_flipped)
    throw DegenerateProjectionError(
        "projection_derivative: sign-flipped (det A < 0) projections are not differentiable "
        "within the supported region");
  if (proj.report.status != SolveStatus::converged)
    throw DomainError("projection_derivative: projection did not converge");
  for (double v : proj.p_diag)
    if (!(v > 0.0)) throw DomainError("projection_derivative: projection has nonpositive diagonal");

  const MatrixN r = transpose(proj.U) * deltaA * proj.V;
  SensitivitySolution sol = solve_sensitivity(proj.p_diag, proj.lambda, r, SensitivityMode::block);
  ProjectionDerivative out{proj.U * sol.deltaY * transpose(proj.V), sol.deltaEta};
  return out;
}

}  // namespace slproj
