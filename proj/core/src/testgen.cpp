#include "slproj/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

#include "slproj/coords.hpp"
#include "slproj/linalg.hpp"

namespace slproj::testgen {

const char* to_string(Family family) {
  switch (family) {
    case Family::ge1: return "ge1";
    case Family::lt1: return "lt1";
    case Family::singular: return "singular";
    case Family::cone_boundary: return "cone_boundary";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "ge1") return Family::ge1;
  if (name == "lt1") return Family::lt1;
  if (name == "singular") return Family::singular;
  if (name == "cone_boundary") return Family::cone_boundary;
  throw ParseError("unknown family: " + name);
}

MatrixN gen_matrix(int n, double epsilon, SplitMix64& rng) {
  if (n < 2 || !(epsilon > 1.0)) throw DomainError("gen_matrix: need n >= 2 and epsilon > 1");
  const double w = std::sqrt(static_cast<double>(n)) * std::log(epsilon) / n;
  MatrixN t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = rng.next_uniform(-w, w);
  return expm(t);
}

MatrixN derive_family(const MatrixN& a, Family family, SplitMix64& rng) {
  const int n = a.n();
  SvdResult sv = svd(a);
  std::vector<double> sigma = sv.sigma;

  if (family == Family::singular) {
    const int zeros = (n + 2) / 3;  // ceil(n/3)
    for (int i = n - zeros; i < n; ++i) sigma[static_cast<std::size_t>(i)] = 0.0;
  } else if (family == Family::cone_boundary) {
    const int k = n / 3;
    if (k == 0) return a;
    // k distinct indices in {1,..,n-1} (1-based), via partial Fisher-Yates.
    std::vector<int> pool(static_cast<std::size_t>(n) - 1);
    std::iota(pool.begin(), pool.end(), 1);
    for (int t = 0; t < k; ++t) {
      const std::size_t j = static_cast<std::size_t>(t) +
                            static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(n - 1 - t)));
      std::swap(pool[static_cast<std::size_t>(t)], pool[j]);
    }
    std::vector<int> indices(pool.begin(), pool.begin() + k);
    std::sort(indices.begin(), indices.end());

    // Each maximal consecutive run {i..j} merges sigma_i..sigma_{j+1} into
    // their geometric mean (log space; the determinant is preserved).
    std::size_t pos = 0;
    while (pos < indices.size()) {
      std::size_t end = pos;
      while (end + 1 < indices.size() && indices[end + 1] == indices[end] + 1) ++end;
      const int first = indices[pos];       // 1-based
      const int last = indices[end] + 1;    // include the next smaller value
      double log_sum = 0.0;
      for (int i = first; i <= last; ++i)
        log_sum += std::log(sigma[static_cast<std::size_t>(i) - 1]);
      const double gm = std::exp(log_sum / (last - first + 1));
      for (int i = first; i <= last; ++i) sigma[static_cast<std::size_t>(i) - 1] = gm;
      pos = end + 1;
    }
  } else {
    throw DomainError("derive_family: family must be singular or cone_boundary");
  }

  return sv.U * MatrixN::diagonal(sigma) * transpose(sv.V);
}

std::vector<MatrixN> generate_set(const TestSetSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<MatrixN> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    switch (spec.family) {
      case Family::ge1: {
        MatrixN a = gen_matrix(spec.n, spec.epsilon, rng);
        while (det(a) < 1.0) a = gen_matrix(spec.n, spec.epsilon, rng);
        out.push_back(std::move(a));
        break;
      }
      case Family::lt1: {
        MatrixN a = gen_matrix(spec.n, spec.epsilon, rng);
        while (det(a) >= 1.0) a = gen_matrix(spec.n, spec.epsilon, rng);
        out.push_back(std::move(a));
        break;
      }
      case Family::singular:
      case Family::cone_boundary: {
        const MatrixN a = gen_matrix(spec.n, spec.epsilon, rng);
        out.push_back(derive_family(a, spec.family, rng));
        break;
      }
    }
  }
  return out;
}

namespace {

double quartic(const std::vector<double>& a, double x) {
  return ((x - a[0]) * x * x + a[1]) * x - 1.0;
}

double quartic_deriv(const std::vector<double>& a, double x) {
  return (4.0 * x - 3.0 * a[0]) * x * x + a[1];
}

// Bisection of a function monotone on [lo, hi] with f(lo) f(hi) <= 0.
double bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                       double flo, double tol) {
  if (flo == 0.0) return lo;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Standard Nelder-Mead on R^2 (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2), started from an axis-aligned simplex of the given size.
std::vector<double> nelder_mead_2d(const std::function<double(const std::vector<double>&)>& f,
                                   const std::vector<double>& start, double size) {
  struct Vertex {
    std::vector<double> x;
    double fx;
  };
  std::vector<Vertex> v(3);
  v[0] = {start, f(start)};
  for (int c = 0; c < 2; ++c) {
    std::vector<double> x = start;
    x[static_cast<std::size_t>(c)] += size;
    v[static_cast<std::size_t>(c) + 1] = {x, f(x)};
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };

  for (int it = 0; it < 20000; ++it) {
    std::sort(v.begin(), v.end(), by_value);
    double diameter = 0.0;
    for (int c = 0; c < 2; ++c)
      diameter = std::max(diameter, std::max(std::abs(v[1].x[static_cast<std::size_t>(c)] - v[0].x[static_cast<std::size_t>(c)]),
                                             std::abs(v[2].x[static_cast<std::size_t>(c)] - v[0].x[static_cast<std::size_t>(c)])));
    if (diameter < 1e-9 && v[2].fx - v[0].fx < 1e-14) break;

    std::vector<double> centroid = {0.5 * (v[0].x[0] + v[1].x[0]), 0.5 * (v[0].x[1] + v[1].x[1])};
    auto blend = [&](double t) {
      return std::vector<double>{centroid[0] + t * (centroid[0] - v[2].x[0]),
                                 centroid[1] + t * (centroid[1] - v[2].x[1])};
    };
    const std::vector<double> xr = blend(1.0);
    const double fr = f(xr);
    if (fr < v[0].fx) {
      const std::vector<double> xe = blend(2.0);
      const double fe = f(xe);
      v[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < v[1].fx) {
      v[2] = {xr, fr};
    } else {
      const std::vector<double> xc = blend(fr < v[2].fx ? 0.5 : -0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, v[2].fx)) {
        v[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          for (int c = 0; c < 2; ++c)
            v[static_cast<std::size_t>(i)].x[static_cast<std::size_t>(c)] =
                0.5 * (v[static_cast<std::size_t>(i)].x[static_cast<std::size_t>(c)] + v[0].x[static_cast<std::size_t>(c)]);
          v[static_cast<std::size_t>(i)].fx = f(v[static_cast<std::size_t>(i)].x);
        }
      }
    }
  }
  std::sort(v.begin(), v.end(), by_value);
  return v[0].x;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<QuarticStationaryPoint> oracle_quartic_2d(const std::vector<double>& a) {
  if (a.size() != 2) throw ShapeError("oracle_quartic_2d: needs a 2-vector");
  auto q = [&](double x) { return quartic(a, x); };
  auto dq = [&](double x) { return quartic_deriv(a, x); };

  const double r = 1.0 + std::max({1.0, std::abs(a[0]), std::abs(a[1])});

  // Root isolation through the derivative chain: q'' = 6x(2x - a1) has the
  // closed-form roots {0, a1/2}, q' is monotone between them, and q is
  // monotone between the critical points of q'. Every real root is therefore
  // bracketed exactly.
  auto roots_on_monotone_chain = [](const std::function<double(double)>& f,
                                    std::vector<double> nodes, double tol) {
    std::sort(nodes.begin(), nodes.end());
    std::vector<double> found;
    for (double x : nodes)
      if (f(x) == 0.0) found.push_back(x);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double lo = nodes[i], hi = nodes[i + 1];
      if (hi <= lo) continue;
      const double flo = f(lo), fhi = f(hi);
      if (flo != 0.0 && fhi != 0.0 && (flo > 0.0) != (fhi > 0.0))
        found.push_back(bisect_monotone(f, lo, hi, flo, tol));
    }
    std::sort(found.begin(), found.end());
    return found;
  };

  std::vector<double> critical = roots_on_monotone_chain(dq, {-r, 0.0, a[0] / 2.0, r}, 1e-14);
  std::vector<double> segments = {-r, r};
  for (double c : critical)
    if (c > -r && c < r) segments.push_back(c);
  std::vector<double> roots = roots_on_monotone_chain(q, segments, 1e-13);

  std::sort(roots.begin(), roots.end(), std::greater<double>());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-11; }),
              roots.end());

  std::vector<QuarticStationaryPoint> out;
  for (double x : roots) {
    if (x == 0.0) continue;  // the quartic has value -1 at zero, never a root
    QuarticStationaryPoint sp;
    sp.p1 = x;
    sp.p = {x, 1.0 / x};
    sp.lambda = (a[0] - x) * x;
    const double d1 = x - a[0], d2 = 1.0 / x - a[1];
    sp.distance = 0.5 * (d1 * d1 + d2 * d2);
    out.push_back(std::move(sp));
  }
  return out;
}

GridMinimum oracle_grid(const Spectrum& a, double span, int cells) {
  const int n = a.n();
  if (n != 2 && n != 3) throw DomainError("oracle_grid: only n = 2 and n = 3 are supported");
  if (!(span > 0.0) || cells < 2) throw DomainError("oracle_grid: bad search box");

  const HyperbolicBasis basis = build_basis(n);
  auto dist_at = [&](const std::vector<double>& zeta) {
    const std::vector<double> xi = basis.xi_from_zeta_bar(zeta);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = std::exp(xi[static_cast<std::size_t>(i)]) - a[i];
      s += d * d;
    }
    return 0.5 * s;
  };

  GridMinimum best;
  best.distance = std::numeric_limits<double>::infinity();
  const double h = 2.0 * span / cells;

  if (n == 2) {
    int best_idx = -1;
    for (int i = 0; i <= cells; ++i) {
      const double t = -span + h * i;
      const double d = dist_at({t});
      if (d < best.distance) {
        best.distance = d;
        best_idx = i;
      }
    }
    if (best_idx == 0 || best_idx == cells)
      throw SpanTooSmallError("oracle_grid: minimum on the search boundary");
    const double t0 = -span + h * best_idx;
    const double t = golden_section([&](double x) { return dist_at({x}); }, t0 - h, t0 + h, 1e-10);
    best.zeta_bar = {t};
  } else {
    int bi = -1, bj = -1;
    for (int i = 0; i <= cells; ++i) {
      for (int j = 0; j <= cells; ++j) {
        const double d = dist_at({-span + h * i, -span + h * j});
        if (d < best.distance) {
          best.distance = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == 0 || bi == cells || bj == 0 || bj == cells)
      throw SpanTooSmallError("oracle_grid: minimum on the search boundary");
    // Downhill-simplex refinement from the best grid cell; coordinate-wise
    // searches stall in the long curved valleys this energy exhibits.
    std::vector<double> zeta = {-span + h * bi, -span + h * bj};
    best.zeta_bar = nelder_mead_2d(dist_at, zeta, h);
  }

  const std::vector<double> xi = basis.xi_from_zeta_bar(best.zeta_bar);
  best.p.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) best.p[static_cast<std::size_t>(i)] = std::exp(xi[static_cast<std::size_t>(i)]);
  best.distance = dist_at(best.zeta_bar);
  return best;
}

std::vector<std::vector<double>> finite_difference_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& f,
    const std::vector<double>& x, double h) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> jac;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    const std::vector<double> fp = f(xp);
    const std::vector<double> fm = f(xm);
    if (jac.empty()) jac.assign(fp.size(), std::vector<double>(n, 0.0));
    for (std::size_t r = 0; r < fp.size(); ++r)
      jac[r][c] = (fp[r] - fm[r]) / (2.0 * h);
  }
  return jac;
}

}  // namespace slproj::testgen
