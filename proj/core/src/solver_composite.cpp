#include "slproj/solver_composite.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "root1d.hpp"

namespace slproj::composite {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (p[i] - a[i]) * (p[i] - a[i]);
  return 0.5 * s;
}

}  // namespace

StepResult step(const Spectrum& a, const std::vector<double>& p) {
  const int n = a.n();
  if (a[n - 1] < 0.0) throw DomainError("composite::step: requires a >= 0");
  for (double v : p)
    if (!(v >= 1e-300))
      throw InvalidIterateError("composite::step: iterate component underflowed");
  const double pp = prod(p);
  if (std::abs(pp - 1.0) > 1e-6)
    throw InvalidIterateError("composite::step: iterate left sl(n)");

  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = 1.0 / p[static_cast<std::size_t>(i)];

  auto point_at = [&](double t) {
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      q[static_cast<std::size_t>(i)] = a[i] + t * d[static_cast<std::size_t>(i)];
    return q;
  };
  auto g = [&](double t) { return prod(point_at(t)) - 1.0; };
  auto dg = [&](double t) {
    // Leave-one-out products keep the derivative finite at the bracket end
    // where one factor vanishes.
    const std::vector<double> q = point_at(t);
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 1.0);
    for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)];
    for (int i = n - 1; i >= 0; --i) suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] * q[static_cast<std::size_t>(i)];
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += d[static_cast<std::size_t>(i)] * prefix[static_cast<std::size_t>(i)] * suffix[static_cast<std::size_t>(i) + 1];
    return s;
  };

  const double pa = prod(a.values());
  double lo, hi;
  if (pa < 1.0) {
    lo = 0.0;
    // Minkowski bound on the unique zero; the n-th root is skipped for large
    // n in favour of the weaker bound 1.
    hi = n > 16 ? 1.0 : 1.0 - std::pow(pa, 1.0 / n);
    double ghi = g(hi);
    int guard = 0;
    // The bound is attained when a is proportional to p^-1; a short expansion
    // absorbs the roundoff of that boundary case.
    while (ghi < 0.0 && guard++ < 8) {
      hi = hi * 1.5 + 1e-9;
      ghi = g(hi);
    }
  } else {
    // t_min is the largest of the -a_i p_i: the first t at which a component
    // of a + t p^-1 reaches zero when stepping down from 0.
    hi = 0.0;
    lo = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      lo = std::max(lo, -a[i] * p[static_cast<std::size_t>(i)]);
  }

  const detail::RootResult root =
      detail::bisect_with_polish(g, dg, lo, g(lo), hi, g(hi), 1e-12, 1e-15);

  StepResult r;
  r.t = root.x;
  r.p_next = point_at(root.x);
  return r;
}

SolveResult solve(const Spectrum& a, const std::vector<double>& p0, const SolverOptions& opts) {
  SolveResult result;
  SolverReport& report = result.report;

  std::vector<double> p = p0;
  double t_last = 0.0;
  double energy = squared_distance(a.values(), p);
  if (opts.record_iterates) report.iterates.push_back(p);

  report.status = SolveStatus::max_iterations;
  for (int k = 1; k <= opts.max_iterations; ++k) {
    const StepResult s = step(a, p);
    t_last = s.t;
    report.iterations = k;

    const double next_energy = squared_distance(a.values(), s.p_next);
    report.max_energy_increase = std::max(report.max_energy_increase, next_energy - energy);
    energy = next_energy;

    double diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      diff = std::max(diff, std::abs(s.p_next[i] - p[i]));
    const double denom = inf_norm(s.p_next);
    p = s.p_next;
    if (opts.record_iterates) report.iterates.push_back(p);
    report.last_step = std::abs(t_last);
    if (diff / denom < opts.tol) {
      report.status = SolveStatus::converged;
      break;
    }
  }

  result.point.p = p;
  result.point.lambda = -t_last;
  result.point.residual = stationarity_residual(a, p, result.point.lambda);
  report.residual = result.point.residual;
  report.feasibility = std::abs(prod(p) - 1.0);
  if (report.status == SolveStatus::max_iterations)
    report.note = "iteration cap reached; best iterate returned";
  return result;
}

}  // namespace slproj::composite
