#pragma once

#include <string>
#include <vector>

namespace slproj {

enum class SolveStatus {
  converged,
  max_iterations,
  singular_hessian,
  no_bracket,
};

const char* to_string(SolveStatus status);

struct SolverOptions {
  double tol = 1e-8;        // bisection interval width / relative correction size
  double value_tol = 1e-15; // |prod(P(lambda)) - 1| early exit for bisection searches
  int max_iterations = 200;
  bool record_iterates = false;
};

/// Outcome diagnostics shared by all solvers. `iterations` counts bisection
/// midpoint evaluations (Algorithm 1) or outer steps (all others).
struct SolverReport {
  SolveStatus status = SolveStatus::converged;
  int iterations = 0;
  double residual = 0.0;            // ||p - a + lambda p^-1||_inf at the result
  double feasibility = 0.0;         // |prod(p) - 1| at the result
  double last_step = 0.0;           // final bracket width / |t| / ||c||_inf
  double bracket_width = 0.0;       // initial bracket width (bisection only)
  double max_energy_increase = 0.0; // composite: worst dist increase between iterates
  std::string note;
  std::vector<std::vector<double>> iterates;  // filled when record_iterates is set
};

/// Solution of the diagonal stationarity system p - a + lambda p^-1 = 0,
/// prod(p) = 1.
struct StationaryPoint {
  std::vector<double> p;
  double lambda = 0.0;
  double residual = 0.0;
};

struct SolveResult {
  StationaryPoint point;
  SolverReport report;
};

}  // namespace slproj
