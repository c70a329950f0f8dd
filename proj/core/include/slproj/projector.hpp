#pragma once

#include <string>
#include <vector>

#include "slproj/linalg.hpp"
#include "slproj/report.hpp"
#include "slproj/spectrum.hpp"

namespace slproj {

enum class Algorithm {
  bisection,
  composite,
  newton_hyp,
  newton_log,
  auto_select,  // newton_log with bisection fallback on failure
};

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

struct SpectrumProjection {
  StationaryPoint point;
  SolverReport report;
  Algorithm algorithm = Algorithm::newton_log;  // the solver that produced the result
};

/// Full matrix-level projection result. U and V are the orthogonal factors
/// diagonalizing both A and P (V already carries the det-sign fold);
/// spectrum is the sign-adjusted singular value vector the diagonal problem
/// was solved against.
struct ProjectionResult {
  MatrixN P;
  std::vector<double> p_diag;
  double lambda = 0.0;
  Algorithm algorithm = Algorithm::newton_log;
  SolverReport report;
  double distance = 0.0;  // (1/2) ||A - P||_F^2
  MatrixN U;
  MatrixN V;
  std::vector<double> spectrum;
  bool sign_flipped = false;
};

/// Projects a spectrum onto sl(n) with the chosen solver. Sign-flipped
/// spectra are always routed to bisection; auto_select falls back to
/// bisection when Newton fails.
SpectrumProjection project_spectrum(const Spectrum& a, Algorithm algorithm = Algorithm::auto_select,
                                    const SolverOptions& opts = {});

/// Closest-point projection of A onto SL(n). Never throws for finite input;
/// solver failures surface as the report status.
ProjectionResult project(const MatrixN& a, Algorithm algorithm = Algorithm::auto_select,
                         const SolverOptions& opts = {});

}  // namespace slproj
