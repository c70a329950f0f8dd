#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "slproj/derivative.hpp"
#include "slproj/linalg.hpp"
#include "slproj/testgen.hpp"

using namespace slproj;

TEST_CASE("apply_s closed forms") {
  const MatrixN x(2, {0, 1, 0, 0});
  CHECK(test::max_abs_diff(apply_s({2.0, 0.5}, 0.0, x), x) == 0.0);

  // Sigma = ones, lambda = 1: X - X^T.
  const MatrixN y(2, {1, 2, 3, 4});
  const MatrixN skew = apply_s({1.0, 1.0}, 1.0, y);
  CHECK(test::max_abs_diff(skew, MatrixN(2, {0, -1, 1, 0})) <= 1e-15);

  const MatrixN z = apply_s({2.0, 0.5}, 0.7, x);
  CHECK(test::max_abs_diff(z, MatrixN(2, {0, 1, -0.7, 0})) <= 1e-15);
}

TEST_CASE("apply_s image orthogonality and bijectivity") {
  testgen::SplitMix64 rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (double& s : sigma) s = rng.next_uniform(0.3, 3.0);
    const double lambda = rng.next_uniform(-1.5, 1.5);

    bool well_posed = true;
    for (int i = 0; i < n && well_posed; ++i) {
      if (std::abs(lambda - sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)]) < 1e-3)
        well_posed = false;
      for (int j = i + 1; j < n && well_posed; ++j)
        if (std::abs(std::abs(lambda) - sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)]) < 1e-3)
          well_posed = false;
    }
    if (!well_posed) continue;

    // X orthogonal to Sigma^-1 (trace-weighted): S(X) is orthogonal to
    // (Sigma - lambda Sigma^-1)^-1.
    MatrixN x = test::random_matrix(n, rng);
    double dot = 0.0, norm = 0.0;
    for (int i = 0; i < n; ++i) {
      dot += x(i, i) / sigma[static_cast<std::size_t>(i)];
      norm += 1.0 / (sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i) x(i, i) -= dot / norm / sigma[static_cast<std::size_t>(i)];

    const MatrixN sx = apply_s(sigma, lambda, x);
    double image_dot = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = sigma[static_cast<std::size_t>(i)];
      image_dot += sx(i, i) / (s - lambda / s);
    }
    CHECK(std::abs(image_dot) <= 1e-12 * (1.0 + max_abs(sx)));

    const MatrixN back = apply_s_inverse(sigma, lambda, sx);
    CHECK(test::max_abs_diff(back, x) <= 1e-11 * (1.0 + max_abs(x)));
  }
}

TEST_CASE("dnabla_det closed forms and finite differences") {
  const MatrixN x(2, {1, 2, 3, 4});
  const MatrixN at_identity = dnabla_det(MatrixN::identity(2), x);
  CHECK(test::max_abs_diff(at_identity, MatrixN(2, {5 - 1, -3, -2, 5 - 4})) <= 1e-14);

  const MatrixN d = dnabla_det(MatrixN::diagonal({2.0, 0.5}), MatrixN::identity(2));
  CHECK(test::max_abs_diff(d, MatrixN::identity(2)) <= 1e-14);

  // Central finite differences of grad det = det(P) P^-T.
  testgen::SplitMix64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    MatrixN p = test::random_matrix(n, rng);
    for (int i = 0; i < n; ++i) p(i, i) += 2.0;  // keep it comfortably invertible
    const MatrixN x2 = test::random_matrix(n, rng);
    const MatrixN analytic = dnabla_det(p, x2);

    const double h = 1e-6;
    auto grad_det = [&](const MatrixN& m) {
      MatrixN g(m.n());
      const double dm = det(m);
      // grad det via cofactor solve: det(m) * m^-T.
      for (int j = 0; j < m.n(); ++j) {
        std::vector<double> e(static_cast<std::size_t>(m.n()), 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        const std::vector<double> col = dense_solve(transpose(m), e);
        for (int i = 0; i < m.n(); ++i) g(i, j) = dm * col[static_cast<std::size_t>(i)];
      }
      return g;
    };
    const MatrixN fd = (1.0 / (2.0 * h)) * (grad_det(p + h * x2) - grad_det(p - h * x2));
    CHECK(test::max_abs_diff(analytic, fd) <= 1e-6 * (1.0 + max_abs(analytic)));
  }

  CHECK_THROWS_AS(dnabla_det(MatrixN(2, {1, 1, 1, 1}), x), SingularInputError);
}

TEST_CASE("solve_sensitivity closed forms") {
  // Tangential case: identity R splits into deltaEta = 1, deltaY = 0.
  const SensitivitySolution s0 = solve_sensitivity({1.0, 1.0}, 0.0, MatrixN::identity(2));
  CHECK(s0.deltaEta == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_abs(s0.deltaY) <= 1e-14);

  const SensitivitySolution s1 =
      solve_sensitivity({2.0, 0.5}, 0.7, MatrixN(2, {0, 1, 0, 0}));
  CHECK(s1.deltaY(0, 1) == doctest::Approx(1.0 / 0.51).epsilon(1e-12));
  CHECK(s1.deltaY(1, 0) == doctest::Approx(0.7 / 0.51).epsilon(1e-12));
  CHECK(std::abs(s1.deltaY(0, 0)) <= 1e-14);
  CHECK(std::abs(s1.deltaY(1, 1)) <= 1e-14);
  CHECK(std::abs(s1.deltaEta) <= 1e-14);
  CHECK(s1.residual <= 1e-9);
}

TEST_CASE("solve_sensitivity ill-posedness guards") {
  const MatrixN r = MatrixN::identity(2);
  CHECK_THROWS_AS(solve_sensitivity({2.0, 0.5}, 1.0, r), IllPosedError);   // lambda = s1 s2
  CHECK_THROWS_AS(solve_sensitivity({2.0, 0.5}, 4.0, r), IllPosedError);   // lambda = s1^2
  CHECK_THROWS_AS(solve_sensitivity({2.0, 0.5}, -1.0, r), IllPosedError);  // lambda = -s1 s2

  try {
    solve_sensitivity({2.0, 0.5}, 1.0, r);
  } catch (const IllPosedError& e) {
    CHECK(e.reason() == IllPosedReason::lambda_eq_pm_sigma_prod);
  }
  try {
    solve_sensitivity({2.0, 0.5}, 4.0, r);
  } catch (const IllPosedError& e) {
    CHECK(e.reason() == IllPosedReason::lambda_eq_sigma_sq);
  }
  // Trace-zero instance: sigma = (1, 1), any lambda with sum 1/(1-l) + 1/(1-l) = 0
  // is impossible; use distinct sigmas: 1/(1-l) + 1/(4-l) = 0 -> l = 2.5.
  try {
    solve_sensitivity({2.0, 1.0}, 2.5, r);
    CHECK(false);
  } catch (const IllPosedError& e) {
    CHECK(e.reason() == IllPosedReason::trace_zero);
  }
}

TEST_CASE("block and dense sensitivity modes agree") {
  testgen::SplitMix64 rng(113);
  int done = 0;
  while (done < 100) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (double& s : sigma) s = rng.next_uniform(0.3, 2.5);
    const double lambda = rng.next_uniform(-1.0, 1.0);
    MatrixN r = test::random_matrix(n, rng);
    SensitivitySolution blk{MatrixN(n), 0.0, MatrixN(n), 0.0, 0.0};
    SensitivitySolution dns = blk;
    try {
      blk = solve_sensitivity(sigma, lambda, r, SensitivityMode::block);
      dns = solve_sensitivity(sigma, lambda, r, SensitivityMode::dense);
    } catch (const IllPosedError&) {
      continue;
    }
    ++done;
    CHECK(test::max_abs_diff(blk.deltaY, dns.deltaY) <= 1e-10 * (1.0 + max_abs(r)));
    CHECK(std::abs(blk.deltaEta - dns.deltaEta) <= 1e-10 * (1.0 + max_abs(r)));
    CHECK(blk.residual <= 1e-9);
  }
}

TEST_CASE("projection_derivative at the identity") {
  const ProjectionResult proj = project(MatrixN::identity(2));
  REQUIRE(proj.report.status == SolveStatus::converged);
  const MatrixN da(2, {0.3, -0.2, 0.1, 0.5});
  const ProjectionDerivative d = projection_derivative(MatrixN::identity(2), da, proj);
  // lambda = 0 tangential projection: deltaP = deltaA - (tr deltaA / n) I.
  const MatrixN expect = da - (trace(da) / 2.0) * MatrixN::identity(2);
  CHECK(test::max_abs_diff(d.deltaP, expect) <= 1e-9);
}

TEST_CASE("projection_derivative matches finite differences") {
  testgen::SplitMix64 rng(127);
  int done = 0;
  while (done < 15) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    const MatrixN a = expm(test::random_matrix(n, rng, 0.8));
    const ProjectionResult proj = project(a);
    if (proj.report.status != SolveStatus::converged) continue;

    MatrixN da = test::random_matrix(n, rng);
    ProjectionDerivative d{MatrixN(n), 0.0};
    try {
      d = projection_derivative(a, da, proj);
    } catch (const IllPosedError&) {
      continue;
    }
    ++done;

    const double h = 1e-6;
    const ProjectionResult pp = project(a + h * da);
    const ProjectionResult pm = project(a - h * da);
    REQUIRE(pp.report.status == SolveStatus::converged);
    REQUIRE(pm.report.status == SolveStatus::converged);
    const MatrixN fd = (1.0 / (2.0 * h)) * (pp.P - pm.P);
    CHECK(test::max_abs_diff(d.deltaP, fd) <= 1e-5 * (1.0 + max_abs(fd)));
    const double fd_lambda = (pp.lambda - pm.lambda) / (2.0 * h);
    CHECK(std::abs(d.deltaLambda - fd_lambda) <= 1e-4 * (1.0 + std::abs(fd_lambda)));
  }
}

TEST_CASE("matrix-level sensitivity system agrees with the diagonalized solve") {
  testgen::SplitMix64 rng(131);
  int done = 0;
  while (done < 10) {
    const int n = 2;
    const MatrixN a = expm(test::random_matrix(n, rng, 0.7));
    const ProjectionResult proj = project(a);
    if (proj.report.status != SolveStatus::converged) continue;
    const MatrixN da = test::random_matrix(n, rng);
    ProjectionDerivative fast{MatrixN(n), 0.0};
    try {
      fast = projection_derivative(a, da, proj);
    } catch (const IllPosedError&) {
      continue;
    }
    ++done;

    // Assemble the matrix-space operator deltaP + lambda * dnabla_det(P, deltaP)
    // + deltaLambda * P^-T = deltaA with constraint P^-T : deltaP = 0.
    const int m = n * n + 1;
    std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);

    MatrixN p_inv_t(n);
    for (int j = 0; j < n; ++j) {
      std::vector<double> e(static_cast<std::size_t>(n), 0.0);
      e[static_cast<std::size_t>(j)] = 1.0;
      const std::vector<double> col = dense_solve(transpose(proj.P), e);
      for (int i = 0; i < n; ++i) p_inv_t(i, j) = col[static_cast<std::size_t>(i)];
    }

    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        MatrixN basis(n);
        basis(k, l) = 1.0;
        const MatrixN lhs = basis + proj.lambda * dnabla_det(proj.P, basis);
        const int col = k * n + l;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) mat[static_cast<std::size_t>(i * n + j) * m + col] = lhs(i, j);
        mat[static_cast<std::size_t>(m - 1) * m + col] = p_inv_t(k, l);
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mat[static_cast<std::size_t>(i * n + j) * m + (m - 1)] = p_inv_t(i, j);
        rhs[static_cast<std::size_t>(i * n + j)] = da(i, j);
      }

    const std::vector<double> sol = dense_solve(mat, m, rhs);
    MatrixN delta_p(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) delta_p(i, j) = sol[static_cast<std::size_t>(i * n + j)];
    CHECK(test::max_abs_diff(delta_p, fast.deltaP) <= 1e-9 * (1.0 + max_abs(fast.deltaP)));
    CHECK(std::abs(sol[static_cast<std::size_t>(m) - 1] - fast.deltaLambda) <=
          1e-9 * (1.0 + std::abs(fast.deltaLambda)));
  }
}

TEST_CASE("projection_derivative refuses sign-flipped projections") {
  const ProjectionResult proj = project(MatrixN::diagonal({2.0, -0.5}));
  REQUIRE(proj.sign_flipped);
  CHECK_THROWS_AS(projection_derivative(MatrixN::diagonal({2.0, -0.5}), MatrixN::identity(2), proj),
                  DegenerateProjectionError);
}