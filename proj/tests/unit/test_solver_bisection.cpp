#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "slproj/solver_bisection.hpp"

using namespace slproj;
using namespace slproj::bisection;

TEST_CASE("path_point endpoints and closed forms") {
  const Spectrum a({2.5, 2.5});
  CHECK(test::max_abs_diff(path_point(a, 0.0).p, {2.5, 2.5}) == 0.0);
  CHECK(test::max_abs_diff(path_point(a, 2.5 * 2.5 / 2.0).p, {2.5, 0.0}) <= 1e-15);

  const PathPoint mid = path_point(a, 2.125);
  CHECK(mid.lambda_true == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(test::max_abs_diff(mid.p, {2.0, 0.5}) <= 1e-14);

  CHECK_THROWS_AS(path_point(a, 4.0), DomainError);
}

TEST_CASE("path stays in the order cone and is monotone on the plus branch") {
  testgen::SplitMix64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    std::vector<double> raw(static_cast<std::size_t>(n));
    for (double& v : raw) v = rng.next_uniform(0.0, 3.0);
    const auto [a, perm] = sort_to_cone(raw);
    const double top = a[n - 1] * a[n - 1] / 2.0;
    double prev_prod = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 20; ++k) {
      const double lam = std::min(top, -2.0 + (top + 2.0) * k / 20.0);
      const PathPoint pt = path_point(a, lam);
      for (int i = 0; i + 1 < n; ++i)
        CHECK(pt.p[static_cast<std::size_t>(i)] >= pt.p[static_cast<std::size_t>(i) + 1] - 1e-14);
      if (lam <= 0.0) {
        const double pp = prod(pt.p);
        CHECK(pp < prev_prod + 1e-12);
        prev_prod = pp;
      }
    }
  }
}

TEST_CASE("solve: reverse-constructed convex cases hit exactly") {
  // P+(-0.2) of (1.9, 0.1) evaluates to (2, 0.5) in closed form.
  const SolveResult r = solve(Spectrum({1.9, 0.1}));
  CHECK(r.report.status == SolveStatus::converged);
  CHECK(test::max_abs_diff(r.point.p, {2.0, 0.5}) <= 1e-9);
  CHECK(r.point.lambda == doctest::Approx(-0.2).epsilon(1e-8));

  const SolveResult r3 = solve(Spectrum({1.875, 0.75, 0.0}));
  CHECK(test::max_abs_diff(r3.point.p, {2.0, 1.0, 0.5}) <= 1e-9);
  CHECK(r3.point.lambda == doctest::Approx(-0.25).epsilon(1e-8));
}

TEST_CASE("solve: symmetric nonconvex case returns the cone representative") {
  const SolveResult r = solve(Spectrum({2.5, 2.5}));
  CHECK(test::max_abs_diff(r.point.p, {2.0, 0.5}) <= 1e-8);
  CHECK(r.point.lambda == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.report.feasibility <= 1e-10);
  CHECK(r.point.residual <= 1e-7 * 3.5);
}

TEST_CASE("solve: feasibility and iteration bound") {
  testgen::SplitMix64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    std::vector<double> raw(static_cast<std::size_t>(n));
    for (double& v : raw) v = rng.next_uniform(0.0, 3.0);
    const auto [a, perm] = sort_to_cone(raw);
    const SolveResult r = solve(a);
    REQUIRE(r.report.status == SolveStatus::converged);
    CHECK(r.report.feasibility <= 1e-10);
    CHECK(r.point.residual <= 1e-7 * (1.0 + inf_norm(a.values())));
    const double width = prod(a.values()) < 1.0 ? 1.0 : a[n - 1] * a[n - 1] / 2.0;
    const int bound = static_cast<int>(std::ceil(std::log2(std::max(width, 1e-8) / 1e-8))) + 1;
    CHECK(r.report.iterations <= bound);
  }
}

TEST_CASE("solve: sign-flipped extension") {
  // Negated smallest singular value; the unique root sits at lambda < 0.
  const Spectrum a({2.0, 1.0, -0.5}, true);
  const SolveResult r = solve(a);
  CHECK(r.report.status == SolveStatus::converged);
  CHECK(r.report.feasibility <= 1e-10);
  CHECK(r.point.lambda < 0.0);
  CHECK(r.point.residual <= 1e-7 * 3.0);
  // p stays component-wise nonnegative even though a_n < 0.
  for (double v : r.point.p) CHECK(v > 0.0);
}

TEST_CASE("solve: prod(a) = 1 exactly returns the input") {
  const SolveResult r = solve(Spectrum({2.0, 0.5}));
  CHECK(r.point.lambda == 0.0);
  CHECK(test::max_abs_diff(r.point.p, {2.0, 0.5}) == 0.0);
  CHECK(r.report.iterations == 0);
}

TEST_CASE("scan_roots") {
  const std::vector<StationaryPoint> one = scan_roots(Spectrum({2.5, 2.5}), 1000);
  REQUIRE(one.size() == 1);
  CHECK(test::max_abs_diff(one[0].p, {2.0, 0.5}) <= 1e-10);

  const std::vector<StationaryPoint> three = scan_roots(Spectrum({1.92, 1.9199, 1.9198}), 10000);
  REQUIRE(three.size() == 3);
  for (const StationaryPoint& sp : three) {
    CHECK(sp.residual <= 1e-7 * 3.0);
    CHECK(std::abs(prod(sp.p) - 1.0) <= 1e-10);
    for (std::size_t i = 0; i + 1 < sp.p.size(); ++i) CHECK(sp.p[i] >= sp.p[i + 1] - 1e-12);
  }

  const std::vector<StationaryPoint> exact = scan_roots(Spectrum({2.0, 0.5}), 100);
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].lambda == 0.0);
  CHECK(test::max_abs_diff(exact[0].p, {2.0, 0.5}) == 0.0);

  CHECK_THROWS_AS(scan_roots(Spectrum({0.5, 0.5}), 1000), DomainError);
  CHECK_THROWS_AS(scan_roots(Spectrum({2.5, 2.5}), 10), DomainError);
}
