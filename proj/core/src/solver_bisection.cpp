#include "slproj/solver_bisection.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "root1d.hpp"

namespace slproj::bisection {

namespace {

double radicand_or_throw(double ai, double lam) {
  double rad = ai * ai / 4.0 - lam;
  if (rad < 0.0) {
    const double tol = 1e-14 * std::max(1.0, ai * ai / 4.0 + std::abs(lam));
    if (rad < -tol)
      throw DomainError("path_point: negative radicand outside roundoff tolerance");
    rad = 0.0;
  }
  return rad;
}

// prod(P(lambda)) and d/dlambda prod(P(lambda)) via leave-one-out products.
struct PathEval {
  double value = 1.0;
  double derivative = 0.0;
};

PathEval eval_path_product(const Spectrum& a, double lambda_path) {
  const PathPoint pt = path_point(a, lambda_path);
  const int n = a.n();
  const bool minus_branch = a[n - 1] >= 0.0 && lambda_path >= a[n - 1] * a[n - 1] / 4.0;
  // On the minus stretch p is a function of mu = a_n^2/2 - lambda_path, so the
  // chain rule flips the sign of every d p_i / d mu.
  const double lam = minus_branch ? pt.lambda_true : lambda_path;
  const double outer_sign = minus_branch ? -1.0 : 1.0;

  std::vector<double> dp(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double rad = radicand_or_throw(a[i], lam);
    const double root = std::sqrt(rad);
    double d = root > 0.0 ? -0.5 / root : 0.0;  // d/dlam of +sqrt branch
    if (minus_branch && i == n - 1) d = -d;
    dp[static_cast<std::size_t>(i)] = outer_sign * d;
  }

  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 1.0);
  std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 1.0);
  for (int i = 0; i < n; ++i)
    prefix[static_cast<std::size_t>(i) + 1] =
        prefix[static_cast<std::size_t>(i)] * pt.p[static_cast<std::size_t>(i)];
  for (int i = n - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i) + 1] * pt.p[static_cast<std::size_t>(i)];

  PathEval e;
  e.value = prefix[static_cast<std::size_t>(n)];
  for (int i = 0; i < n; ++i)
    e.derivative += prefix[static_cast<std::size_t>(i)] * dp[static_cast<std::size_t>(i)] *
                    suffix[static_cast<std::size_t>(i) + 1];
  return e;
}

SolveResult make_result(const Spectrum& a, const PathPoint& pt, SolverReport report) {
  SolveResult r;
  r.point.p = pt.p;
  r.point.lambda = pt.lambda_true;
  bool positive = true;
  for (double v : pt.p) positive = positive && v > 0.0;
  r.point.residual = positive ? stationarity_residual(a, pt.p, pt.lambda_true) : 0.0;
  report.residual = r.point.residual;
  report.feasibility = std::abs(prod(pt.p) - 1.0);
  r.report = std::move(report);
  return r;
}

}  // namespace

PathPoint path_point(const Spectrum& a, double lambda_path) {
  const int n = a.n();
  const double an = a[n - 1];
  if (an < 0.0) {
    if (lambda_path > 0.0)
      throw DomainError("path_point: positive path parameter with a_n < 0");
  } else if (lambda_path > an * an / 2.0) {
    throw DomainError("path_point: path parameter beyond a_n^2/2");
  }

  PathPoint pt;
  pt.lambda_path = lambda_path;
  pt.p.resize(static_cast<std::size_t>(n));
  const bool minus_branch = an >= 0.0 && lambda_path >= an * an / 4.0;
  const double lam = minus_branch ? an * an / 2.0 - lambda_path : lambda_path;
  pt.lambda_true = lam;
  for (int i = 0; i < n; ++i) {
    const double root = std::sqrt(radicand_or_throw(a[i], lam));
    const double half = a[i] / 2.0;
    pt.p[static_cast<std::size_t>(i)] =
        (minus_branch && i == n - 1) ? half - root : half + root;
  }
  return pt;
}

SolveResult solve(const Spectrum& a, const SolverOptions& opts) {
  const int n = a.n();
  const double pa = prod(a.values());
  auto f = [&](double lam) { return eval_path_product(a, lam).value - 1.0; };
  auto df = [&](double lam) { return eval_path_product(a, lam).derivative; };

  double lo, hi;
  SolverReport report;
  if (pa < 1.0) {
    lo = -1.0;
    hi = 0.0;
    // For a >= 0 the root provably lies in [-1, 0]; the expansion only fires
    // in the sign-flipped extension a_n < 0.
    int expansions = 0;
    while (f(lo) < 0.0) {
      if (++expansions > 60) {
        report.status = SolveStatus::no_bracket;
        report.note = "no sign change after 60 bracket doublings";
        return make_result(a, path_point(a, hi), std::move(report));
      }
      lo *= 2.0;
    }
  } else {
    lo = 0.0;
    hi = a[n - 1] * a[n - 1] / 2.0;
  }
  report.bracket_width = hi - lo;

  const double flo = f(lo);
  const double fhi = f(hi);
  const detail::RootResult root = detail::bisect_with_polish(
      f, df, lo, flo, hi, fhi, opts.tol, opts.value_tol);

  report.iterations = root.bisection_iterations;
  report.last_step = root.polish_iterations > 0 ? 0.0 : hi - lo;
  if (root.polish_iterations > 0)
    report.note = "+" + std::to_string(root.polish_iterations) + " polish steps";
  return make_result(a, path_point(a, root.x), std::move(report));
}

std::vector<StationaryPoint> scan_roots(const Spectrum& a, int grid) {
  const int n = a.n();
  const double pa = prod(a.values());
  if (pa < 1.0) throw DomainError("scan_roots: requires prod(a) >= 1");
  if (grid < 100) throw DomainError("scan_roots: grid must be >= 100");

  const double hi = a[n - 1] * a[n - 1] / 2.0;
  auto f = [&](double lam) { return eval_path_product(a, lam).value - 1.0; };
  auto df = [&](double lam) { return eval_path_product(a, lam).derivative; };

  std::vector<double> roots;
  double prev_lam = 0.0;
  double prev_f = f(prev_lam);
  if (prev_f == 0.0) roots.push_back(prev_lam);
  for (int j = 1; j <= grid; ++j) {
    const double lam = hi * static_cast<double>(j) / grid;
    const double fj = f(lam);
    if (fj == 0.0) {
      roots.push_back(lam);
    } else if ((fj > 0.0) != (prev_f > 0.0) && prev_f != 0.0) {
      const detail::RootResult r =
          detail::bisect_with_polish(f, df, prev_lam, prev_f, lam, fj, 1e-12, 1e-15);
      roots.push_back(r.x);
    }
    prev_lam = lam;
    prev_f = fj;
  }

  std::sort(roots.begin(), roots.end());
  std::vector<StationaryPoint> out;
  double last = -1.0;
  for (double lam : roots) {
    if (!out.empty() && lam - last < 1e-9) continue;
    last = lam;
    const PathPoint pt = path_point(a, lam);
    StationaryPoint sp;
    sp.p = pt.p;
    sp.lambda = pt.lambda_true;
    bool positive = true;
    for (double v : pt.p) positive = positive && v > 0.0;
    sp.residual = positive ? stationarity_residual(a, pt.p, pt.lambda_true) : 0.0;
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace slproj::bisection
