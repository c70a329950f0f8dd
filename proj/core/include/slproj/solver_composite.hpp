#pragma once

#include <vector>

#include "slproj/report.hpp"
#include "slproj/spectrum.hpp"

namespace slproj::composite {

struct StepResult {
  std::vector<double> p_next;
  double t = 0.0;
};

/// One composite step: line search from a along the normal direction
/// d = p^-1 for the intersection with sl(n). Requires prod(p) = 1 within
/// 1e-6 and strictly positive p (throws InvalidIterateError otherwise).
StepResult step(const Spectrum& a, const std::vector<double>& p);

/// Iterates step() until the relative iterate difference drops below
/// opts.tol; the multiplier is reported as -t of the last step. Exceeding
/// opts.max_iterations is a soft failure: the best iterate is returned with
/// status max_iterations.
SolveResult solve(const Spectrum& a, const std::vector<double>& p0,
                  const SolverOptions& opts = {});

}  // namespace slproj::composite
