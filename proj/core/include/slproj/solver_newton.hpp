#pragma once

#include <vector>

#include "slproj/coords.hpp"
#include "slproj/report.hpp"
#include "slproj/spectrum.hpp"

namespace slproj::newton {

/// Gradient and Hessian diagonal of the squared distance in logarithmic
/// coordinates: g_i = e_i (e_i - a_i), D_i = e_i (2 e_i - a_i) with
/// e_i = exp(xi_i).
struct NewtonSystemLog {
  std::vector<double> gradient;
  std::vector<double> hess_diag;
};

NewtonSystemLog newton_system_log(const Spectrum& a, const std::vector<double>& xi);

struct ArrowheadSolution {
  std::vector<double> c;
  double w = 0.0;
};

/// Solves [[diag(D), 1], [1^T, 0]] (c, w) = rhs in O(n) via the rank-one
/// inverse formula. rhs has n+1 entries. Throws SingularHessianError when
/// some |D_i| < 1e-14 ||D||_inf or |tr(D^-1)| < 1e-14 ||D^-1||_inf.
ArrowheadSolution arrowhead_solve(const std::vector<double>& d, const std::vector<double>& rhs);

/// Constrained Newton method in logarithmic coordinates (arrowhead solve,
/// constant step length 1, no Hessian modification). xi0 must satisfy
/// sum(xi0) = 0 within 1e-10.
SolveResult solve_log(const Spectrum& a, const std::vector<double>& xi0,
                      const SolverOptions& opts = {});

/// Newton method in hyperbolic coordinates with the constraint eliminated
/// (dense solve of B_bar^T diag(D) B_bar).
SolveResult solve_hyp(const Spectrum& a, const HypPoint& zeta0, const SolverOptions& opts = {});

}  // namespace slproj::newton
