#pragma once

#include <vector>

#include "slproj/report.hpp"
#include "slproj/spectrum.hpp"

namespace slproj::bisection {

/// Point on the combined solution path. lambda_path parametrizes the path;
/// lambda_true is the actual Lagrange multiplier (equal to lambda_path on
/// the positive stretch, a_n^2/2 - lambda_path on the negative stretch).
struct PathPoint {
  double lambda_path = 0.0;
  std::vector<double> p;
  double lambda_true = 0.0;
};

/// Evaluates the combined solution path. Requires lambda_path <= a_n^2/2 for
/// a_n >= 0, and lambda_path <= 0 when a_n < 0 (sign-flipped spectra).
/// Radicands within roundoff of zero are clamped; genuinely negative ones
/// raise DomainError.
PathPoint path_point(const Spectrum& a, double lambda_path);

/// Root-finding for the Lagrange multiplier: bisection of
/// prod(P(lambda)) - 1 on [-1, 0] (expanding the left end geometrically when
/// needed) for prod(a) < 1, on [0, a_n^2/2] otherwise.
SolveResult solve(const Spectrum& a, const SolverOptions& opts = {});

/// Samples prod(P(lambda)) - 1 on a uniform grid over [0, a_n^2/2] and
/// refines every sign change; returns all stationary points found,
/// deduplicated at path-parameter spacing 1e-9. Requires prod(a) >= 1 and
/// grid >= 100.
std::vector<StationaryPoint> scan_roots(const Spectrum& a, int grid);

}  // namespace slproj::bisection
