#include "slproj/solver_newton.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "slproj/linalg.hpp"

namespace slproj::newton {

namespace {

constexpr double kDenomFloor = 1e-30;

std::vector<double> exp_components(const std::vector<double>& xi) {
  std::vector<double> e(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (std::abs(xi[i]) > 700.0)
      throw OverflowError("newton: |xi|_inf exceeds 700");
    e[i] = std::exp(xi[i]);
  }
  return e;
}

SolveResult finish(const Spectrum& a, std::vector<double> p, SolverReport report) {
  SolveResult r;
  r.point.p = std::move(p);
  r.point.lambda = estimate_lambda(a, r.point.p);
  r.point.residual = stationarity_residual(a, r.point.p, r.point.lambda);
  report.residual = r.point.residual;
  report.feasibility = std::abs(prod(r.point.p) - 1.0);
  r.report = std::move(report);
  return r;
}

}  // namespace

NewtonSystemLog newton_system_log(const Spectrum& a, const std::vector<double>& xi) {
  const std::vector<double> e = exp_components(xi);
  NewtonSystemLog sys;
  sys.gradient.resize(e.size());
  sys.hess_diag.resize(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    sys.gradient[i] = e[i] * (e[i] - a[static_cast<int>(i)]);
    sys.hess_diag[i] = e[i] * (2.0 * e[i] - a[static_cast<int>(i)]);
  }
  return sys;
}

ArrowheadSolution arrowhead_solve(const std::vector<double>& d, const std::vector<double>& rhs) {
  const std::size_t n = d.size();
  if (rhs.size() != n + 1) throw ShapeError("arrowhead_solve: rhs must have n+1 entries");

  double d_max = 0.0;
  for (double v : d) d_max = std::max(d_max, std::abs(v));
  for (double v : d)
    if (std::abs(v) < 1e-14 * d_max || d_max == 0.0)
      throw SingularHessianError("arrowhead_solve: vanishing Hessian diagonal (2 exp xi_i = a_i)");

  std::vector<double> inv_d(n);
  double tr_inv = 0.0, inv_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inv_d[i] = 1.0 / d[i];
    tr_inv += inv_d[i];
    inv_max = std::max(inv_max, std::abs(inv_d[i]));
  }
  if (std::abs(tr_inv) < 1e-14 * inv_max)
    throw SingularHessianError("arrowhead_solve: tr(D^-1) = 0 (Hessian range contains the ones vector)");

  // M^-1 = [[D^-1, 0], [0, 0]] + rho u u^T, u = (diag(D^-1), -1).
  const double rho = -1.0 / tr_inv;
  double s = -rhs[n];
  for (std::size_t i = 0; i < n; ++i) s += rhs[i] * inv_d[i];

  ArrowheadSolution sol;
  sol.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.c[i] = rhs[i] * inv_d[i] + rho * s * inv_d[i];
  sol.w = s / tr_inv;
  return sol;
}

SolveResult solve_log(const Spectrum& a, const std::vector<double>& xi0,
                      const SolverOptions& opts) {
  const int n = a.n();
  double xi_sum = 0.0;
  for (double v : xi0) xi_sum += v;
  if (std::abs(xi_sum) > 1e-10)
    throw InvalidIterateError("solve_log: initial iterate is not zero-sum");

  std::vector<double> xi = xi0;
  SolverReport report;
  report.status = SolveStatus::max_iterations;
  if (opts.record_iterates) report.iterates.push_back(xi);

  std::vector<double> rhs(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= opts.max_iterations; ++k) {
    report.iterations = k;
    NewtonSystemLog sys;
    ArrowheadSolution sol;
    try {
      sys = newton_system_log(a, xi);
      for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = -sys.gradient[static_cast<std::size_t>(i)];
      rhs[static_cast<std::size_t>(n)] = 0.0;
      sol = arrowhead_solve(sys.hess_diag, rhs);
    } catch (const SingularHessianError& err) {
      report.status = SolveStatus::singular_hessian;
      report.note = err.what();
      break;
    } catch (const OverflowError& err) {
      report.status = SolveStatus::singular_hessian;
      report.note = std::string("iterate overflow after near-singular step: ") + err.what();
      // Pull the iterate back into the representable range for reporting.
      for (double& v : xi) v = std::clamp(v, -700.0, 700.0);
      break;
    }

    const double denom = std::max(inf_norm(xi), kDenomFloor);
    for (int i = 0; i < n; ++i) xi[static_cast<std::size_t>(i)] += sol.c[static_cast<std::size_t>(i)];
    if (opts.record_iterates) report.iterates.push_back(xi);
    report.last_step = inf_norm(sol.c);
    if (report.last_step / denom < opts.tol) {
      report.status = SolveStatus::converged;
      break;
    }
  }

  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = std::exp(std::clamp(xi[static_cast<std::size_t>(i)], -700.0, 700.0));
  return finish(a, std::move(p), std::move(report));
}

SolveResult solve_hyp(const Spectrum& a, const HypPoint& zeta0, const SolverOptions& opts) {
  const int n = a.n();
  const HyperbolicBasis basis = build_basis(n);
  std::vector<double> zeta = zeta0.zeta_bar;
  if (static_cast<int>(zeta.size()) != n - 1)
    throw ShapeError("solve_hyp: zeta0 must have n-1 entries");

  SolverReport report;
  report.status = SolveStatus::max_iterations;
  if (opts.record_iterates) report.iterates.push_back(zeta);

  for (int k = 1; k <= opts.max_iterations; ++k) {
    report.iterations = k;
    std::vector<double> c;
    try {
      const std::vector<double> xi = basis.xi_from_zeta_bar(zeta);
      const NewtonSystemLog sys = newton_system_log(a, xi);

      // H = B_bar^T diag(D) B_bar, rhs = -B_bar^T g.
      const int m = n - 1;
      std::vector<double> h(static_cast<std::size_t>(m) * m, 0.0);
      for (int i = 0; i < n; ++i) {
        const double di = sys.hess_diag[static_cast<std::size_t>(i)];
        for (int r = 0; r < m; ++r) {
          const double bir = basis.b_bar(i, r) * di;
          for (int col = 0; col < m; ++col)
            h[static_cast<std::size_t>(r) * m + col] += bir * basis.b_bar(i, col);
        }
      }
      std::vector<double> grad = basis.bbar_transpose_times(sys.gradient);
      for (double& v : grad) v = -v;
      c = dense_solve(h, m, grad);
    } catch (const SingularMatrixError& err) {
      report.status = SolveStatus::singular_hessian;
      report.note = std::string("singular reduced Hessian: ") + err.what();
      break;
    } catch (const OverflowError& err) {
      report.status = SolveStatus::singular_hessian;
      report.note = std::string("iterate overflow after near-singular step: ") + err.what();
      for (double& v : zeta) v = std::clamp(v, -700.0, 700.0);
      break;
    }

    const double denom = std::max(inf_norm(zeta), kDenomFloor);
    for (std::size_t i = 0; i < zeta.size(); ++i) zeta[i] += c[i];
    if (opts.record_iterates) report.iterates.push_back(zeta);
    report.last_step = inf_norm(c);
    if (report.last_step / denom < opts.tol) {
      report.status = SolveStatus::converged;
      break;
    }
  }

  std::vector<double> xi = basis.xi_from_zeta_bar(zeta);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = std::exp(std::clamp(xi[static_cast<std::size_t>(i)], -700.0, 700.0));
  return finish(a, std::move(p), std::move(report));
}

}  // namespace slproj::newton
