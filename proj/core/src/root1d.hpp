#pragma once

#include <cmath>
#include <functional>

namespace slproj::detail {

struct RootResult {
  double x = 0.0;
  double f = 0.0;
  int bisection_iterations = 0;  // midpoint evaluations until nominal stop
  int polish_iterations = 0;
};

// Bracketed bisection followed by a guarded Newton polish. The bracket
// [lo, hi] must satisfy f(lo) * f(hi) <= 0 (values are passed in). Bisection
// stops once the interval is narrower than width_tol or |f| < value_tol;
// the polish then drives |f| towards value_tol without leaving the final
// bracket, so the feasibility of the returned root is limited by arithmetic,
// not by width_tol.
inline RootResult bisect_with_polish(const std::function<double(double)>& f,
                                     const std::function<double(double)>& df, double lo,
                                     double flo, double hi, double fhi, double width_tol,
                                     double value_tol) {
  RootResult r;
  if (flo == 0.0) {
    r.x = lo;
    return r;
  }
  if (fhi == 0.0) {
    r.x = hi;
    return r;
  }

  double mid = 0.5 * (lo + hi), fmid = 0.0;
  while (hi - lo >= width_tol) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval no longer splittable
    fmid = f(mid);
    ++r.bisection_iterations;
    if (std::abs(fmid) < value_tol) {
      r.x = mid;
      r.f = fmid;
      return r;
    }
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }

  double x = 0.5 * (lo + hi);
  double fx = f(x);
  // Newton steps may leave the (already tiny) final bracket by roundoff when
  // the root sits next to an endpoint; allow one bracket width of slack.
  const double slack = hi - lo;
  double best_x = x, best_fx = fx;
  for (int k = 0; k < 8 && std::abs(fx) >= value_tol; ++k) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next >= lo - slack && next <= hi + slack)) break;
    x = next;
    fx = f(x);
    ++r.polish_iterations;
    if (std::abs(fx) < std::abs(best_fx)) {
      best_fx = fx;
      best_x = x;
    } else if (std::abs(fx) > 4.0 * std::abs(best_fx)) {
      break;  // diverging; keep the best point seen
    }
  }
  x = best_x;
  fx = best_fx;
  // Fall back to more bisection if the polish could not reach feasibility.
  int extra = 0;
  while (std::abs(fx) >= value_tol && extra < 80) {
    const double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    const double fm = f(m);
    ++extra;
    if (std::abs(fm) < std::abs(fx)) {
      x = m;
      fx = fm;
    }
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
      fhi = fm;
    }
  }
  r.polish_iterations += extra;
  r.x = x;
  r.f = fx;
  return r;
}

}  // namespace slproj::detail
