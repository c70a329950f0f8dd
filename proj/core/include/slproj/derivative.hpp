#pragma once

#include <vector>

#include "slproj/matrix.hpp"
#include "slproj/projector.hpp"

namespace slproj {

enum class SensitivityMode { block, dense };

/// Solution of the diagonalized sensitivity system: the rotated direction
/// deltaY with multiplier derivative deltaEta, and (after rotating back)
/// deltaP with deltaLambda = deltaEta.
struct SensitivitySolution {
  MatrixN deltaY;
  double deltaEta = 0.0;
  MatrixN deltaP;
  double deltaLambda = 0.0;
  double residual = 0.0;  // relative defect of the diagonalized system
};

/// S_{Sigma,lambda}(X) = X - lambda Sigma^-1 X^T Sigma^-1 with diagonal Sigma.
MatrixN apply_s(const std::vector<double>& sigma, double lambda, const MatrixN& x);

/// Inverse of S_{Sigma,lambda} on all of R^{n x n} (pairwise 2x2 blocks plus
/// diagonal scaling). Throws IllPosedError at the forbidden multiplier
/// values.
MatrixN apply_s_inverse(const std::vector<double>& sigma, double lambda, const MatrixN& z);

/// Directional derivative of grad det at P:
/// X -> det P tr(P^-1 X) P^-T - det P (P^-T X^T P^-T).
MatrixN dnabla_det(const MatrixN& p, const MatrixN& x);

/// Solves S(deltaY) + Sigma^-1 deltaEta = R subject to Sigma^-1 : deltaY = 0.
/// block mode uses the closed-form pairwise/diagonal decoupling; dense mode
/// assembles the (n^2+1)-square system and factorizes it. Well-posedness is
/// checked first (relative tolerance 1e-10) and violations raise
/// IllPosedError naming the failed condition.
SensitivitySolution solve_sensitivity(const std::vector<double>& sigma, double lambda,
                                      const MatrixN& r, SensitivityMode mode = SensitivityMode::block);

struct ProjectionDerivative {
  MatrixN deltaP;
  double deltaLambda = 0.0;
};

/// Derivative of the projection map at A in direction deltaA, computed from
/// a successful projection result. Sign-flipped projections are outside the
/// supported region (DegenerateProjectionError).
ProjectionDerivative projection_derivative(const MatrixN& a, const MatrixN& deltaA,
                                           const ProjectionResult& proj);

}  // namespace slproj
