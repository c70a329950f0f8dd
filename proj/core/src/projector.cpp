#include "slproj/projector.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "slproj/coords.hpp"
#include "slproj/solver_bisection.hpp"
#include "slproj/solver_composite.hpp"
#include "slproj/solver_newton.hpp"

namespace slproj {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::singular_hessian: return "singular_hessian";
    case SolveStatus::no_bracket: return "no_bracket";
  }
  return "unknown";
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::bisection: return "bisection";
    case Algorithm::composite: return "composite";
    case Algorithm::newton_hyp: return "newton-hyp";
    case Algorithm::newton_log: return "newton-log";
    case Algorithm::auto_select: return "auto";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "bisection") return Algorithm::bisection;
  if (name == "composite") return Algorithm::composite;
  if (name == "newton-hyp") return Algorithm::newton_hyp;
  if (name == "newton-log") return Algorithm::newton_log;
  if (name == "auto") return Algorithm::auto_select;
  throw ParseError("unknown algorithm: " + name);
}

namespace {

SpectrumProjection run_solver(const Spectrum& a, Algorithm algorithm, const SolverOptions& opts) {
  SpectrumProjection out;
  out.algorithm = algorithm;
  switch (algorithm) {
    case Algorithm::bisection: {
      SolveResult r = bisection::solve(a, opts);
      out.point = std::move(r.point);
      out.report = std::move(r.report);
      return out;
    }
    case Algorithm::composite: {
      SolveResult r = composite::solve(a, initial_iterate(a), opts);
      out.point = std::move(r.point);
      out.report = std::move(r.report);
      return out;
    }
    case Algorithm::newton_log: {
      std::vector<double> xi0 = initial_iterate(a);
      double sum = 0.0;
      for (double& v : xi0) {
        v = std::log(v);
        sum += v;
      }
      // Exponent sums can carry roundoff slightly above the zero-sum
      // tolerance; recenter.
      const double shift = sum / static_cast<double>(xi0.size());
      for (double& v : xi0) v -= shift;
      SolveResult r = newton::solve_log(a, xi0, opts);
      out.point = std::move(r.point);
      out.report = std::move(r.report);
      return out;
    }
    case Algorithm::newton_hyp: {
      const HypDecomposition d = hyp_from_euclidean(initial_iterate(a));
      SolveResult r = newton::solve_hyp(a, d.point, opts);
      out.point = std::move(r.point);
      out.report = std::move(r.report);
      return out;
    }
    case Algorithm::auto_select:
      break;
  }
  throw Error("run_solver: unreachable algorithm");
}

}  // namespace

SpectrumProjection project_spectrum(const Spectrum& a, Algorithm algorithm,
                                    const SolverOptions& opts) {
  if (a.sign_flipped()) {
    // Only the solution-path solver extends to negative targets.
    SpectrumProjection out = run_solver(a, Algorithm::bisection, opts);
    if (algorithm != Algorithm::bisection && algorithm != Algorithm::auto_select)
      out.report.note += "; sign-flipped spectrum routed to bisection";
    return out;
  }
  if (algorithm == Algorithm::auto_select) {
    SpectrumProjection out = run_solver(a, Algorithm::newton_log, opts);
    if (out.report.status == SolveStatus::converged) return out;
    const std::string why = out.report.note.empty()
                                ? std::string(to_string(out.report.status))
                                : out.report.note;
    out = run_solver(a, Algorithm::bisection, opts);
    out.report.note += (out.report.note.empty() ? "" : "; ");
    out.report.note += "fallback from newton-log (" + why + ")";
    return out;
  }
  return run_solver(a, algorithm, opts);
}

ProjectionResult project(const MatrixN& a, Algorithm algorithm, const SolverOptions& opts) {
  const int n = a.n();
  SvdResult sv = svd(a);

  std::vector<double> target = sv.sigma;
  MatrixN v = std::move(sv.V);
  const bool flipped = sv.sign < 0;
  if (flipped) {
    // Fold det(U) det(V) = -1 into the last column of V; the smallest
    // singular value changes sign so the product constraint stays +1.
    target[static_cast<std::size_t>(n) - 1] = -target[static_cast<std::size_t>(n) - 1];
    for (int i = 0; i < n; ++i) v(i, n - 1) = -v(i, n - 1);
  }
  const Spectrum spectrum(target, flipped);

  SpectrumProjection sp = project_spectrum(spectrum, algorithm, opts);

  MatrixN p = sv.U * MatrixN::diagonal(sp.point.p) * transpose(v);
  double dist = 0.0;
  for (std::size_t i = 0; i < p.data().size(); ++i) {
    const double d = a.data()[i] - p.data()[i];
    dist += d * d;
  }

  ProjectionResult out{std::move(p),
                       std::move(sp.point.p),
                       sp.point.lambda,
                       sp.algorithm,
                       std::move(sp.report),
                       0.5 * dist,
                       std::move(sv.U),
                       std::move(v),
                       std::move(target),
                       flipped};
  return out;
}

}  // namespace slproj
