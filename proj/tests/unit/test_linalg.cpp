#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "slproj/linalg.hpp"

using namespace slproj;

namespace {

double reconstruction_residual(const MatrixN& a, const SvdResult& sv) {
  const MatrixN rec = sv.U * MatrixN::diagonal(sv.sigma) * transpose(sv.V);
  return frobenius_norm(a - rec);
}

double orthogonality_defect(const MatrixN& q) {
  return frobenius_norm(transpose(q) * q - MatrixN::identity(q.n()));
}

}  // namespace

TEST_CASE("matrix construction rejects bad input") {
  CHECK_THROWS_AS(MatrixN(2, {1.0, 2.0, 3.0}), ShapeError);
  CHECK_THROWS_AS(MatrixN(1, {1.0}), ShapeError);
  CHECK_THROWS_AS(MatrixN(2, {1.0, 2.0, 3.0, std::nan("")}), NonFiniteError);
}

TEST_CASE("svd of diagonal matrices") {
  const SvdResult sv = svd(MatrixN::diagonal({2.35, 1.9}));
  CHECK(sv.sigma[0] == doctest::Approx(2.35).epsilon(1e-14));
  CHECK(sv.sigma[1] == doctest::Approx(1.9).epsilon(1e-14));
  CHECK(sv.sign == 1);
  CHECK(reconstruction_residual(MatrixN::diagonal({2.35, 1.9}), sv) <= 1e-12);

  const SvdResult neg = svd(MatrixN::diagonal({1.9, -0.1}));
  CHECK(neg.sigma[0] == doctest::Approx(1.9).epsilon(1e-14));
  CHECK(neg.sigma[1] == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(neg.sign == -1);
}

TEST_CASE("svd round trip on seeded random matrices") {
  testgen::SplitMix64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const MatrixN a = test::random_matrix(n, rng, 2.0);
    const SvdResult sv = svd(a);
    const double norm_a = frobenius_norm(a);
    CHECK(reconstruction_residual(a, sv) <= 1e-10 * std::max(1.0, norm_a));
    CHECK(orthogonality_defect(sv.U) <= 1e-12 * n);
    CHECK(orthogonality_defect(sv.V) <= 1e-12 * n);
    for (std::size_t i = 0; i + 1 < sv.sigma.size(); ++i) CHECK(sv.sigma[i] >= sv.sigma[i + 1]);
    const double d = det(a);
    if (d != 0.0) CHECK((d > 0 ? 1 : -1) == sv.sign);
  }
}

TEST_CASE("svd handles rank-deficient input") {
  // Two zero singular values out of four.
  MatrixN a = MatrixN::diagonal({3.0, 2.0, 0.0, 0.0});
  testgen::SplitMix64 rng(11);
  const MatrixN q1 = test::random_orthogonal(4, rng);
  const MatrixN q2 = test::random_orthogonal(4, rng);
  a = q1 * a * transpose(q2);
  const SvdResult sv = svd(a);
  CHECK(sv.sigma[2] <= 1e-12);
  CHECK(sv.sigma[3] <= 1e-12);
  CHECK(orthogonality_defect(sv.U) <= 1e-11);
  CHECK(reconstruction_residual(a, sv) <= 1e-10 * std::max(1.0, frobenius_norm(a)));
}

TEST_CASE("expm basics") {
  MatrixN zero(3);
  CHECK(test::max_abs_diff(expm(zero), MatrixN::identity(3)) == 0.0);

  const MatrixN d = expm(MatrixN::diagonal({std::log(2.0), std::log(3.0)}));
  CHECK(d(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(d(1, 1) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(std::abs(d(0, 1)) + std::abs(d(1, 0)) <= 1e-15);
}

TEST_CASE("expm trace identity and inverse property") {
  testgen::SplitMix64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    const MatrixN t = test::random_matrix(n, rng, 1.5);
    const MatrixN e = expm(t);
    const double dd = det(e);
    const double expected = std::exp(trace(t));
    CHECK(std::abs(dd - expected) <= 1e-8 * std::abs(expected));

    const MatrixN m = expm(-1.0 * t);
    CHECK(frobenius_norm(e * m - MatrixN::identity(n)) <= 1e-9 * n);
  }
}

TEST_CASE("expm rejects overflowing trace") {
  CHECK_THROWS_AS(expm(MatrixN::diagonal({400.0, 400.0})), OverflowError);
}

TEST_CASE("expm closed-form oracles") {
  // Skew generator: exp maps to the rotation by theta.
  for (double theta : {1.0, 5.0, 20.0}) {
    const MatrixN r = expm(MatrixN(2, {0.0, theta, -theta, 0.0}));
    CHECK(r(0, 0) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(r(0, 1) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
    CHECK(r(1, 0) == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
  }

  // Nilpotent generator: the series terminates at I + T.
  const MatrixN n2 = expm(MatrixN(2, {0.0, 3.0, 0.0, 0.0}));
  CHECK(test::max_abs_diff(n2, MatrixN(2, {1.0, 3.0, 0.0, 1.0})) <= 1e-14);

  // Symmetric generator: exp through the eigendecomposition Q diag(e^d) Q^T.
  testgen::SplitMix64 rng(23571);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    const MatrixN q = test::random_orthogonal(n, rng);
    std::vector<double> d(static_cast<std::size_t>(n));
    for (double& v : d) v = rng.next_uniform(-10.0, 10.0);
    const MatrixN t = q * MatrixN::diagonal(d) * transpose(q);
    std::vector<double> ed(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) ed[i] = std::exp(d[i]);
    const MatrixN expected = q * MatrixN::diagonal(ed) * transpose(q);
    const MatrixN got = expm(t);
    CHECK(frobenius_norm(got - expected) <= 1e-11 * frobenius_norm(expected));
  }
}

TEST_CASE("determinant") {
  CHECK(det(MatrixN::identity(3)) == 1.0);
  CHECK(det(MatrixN::diagonal({2.0, 1.0})) == doctest::Approx(2.0).epsilon(1e-15));
  // diag(k, 2/k) keeps determinant 2 for every k
  CHECK(det(MatrixN::diagonal({2.0, 2.0 / 2.0})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(det(MatrixN(2, {1, 1, 1, 1})) == 0.0);

  testgen::SplitMix64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixN q = test::random_orthogonal(3 + static_cast<int>(rng.next_below(3)), rng);
    CHECK(std::abs(std::abs(det(q)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("dense_solve") {
  CHECK(test::max_abs_diff(dense_solve(MatrixN::identity(3), {1, 2, 3}), {1, 2, 3}) == 0.0);

  const std::vector<double> x = dense_solve({1, -0.7, -0.7, 1}, 2, {1, 0});
  CHECK(x[0] == doctest::Approx(1.0 / 0.51).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.7 / 0.51).epsilon(1e-12));

  CHECK_THROWS_AS(dense_solve({1, 1, 1, 1}, 2, {1, 0}), SingularMatrixError);

  // Residual contract on random systems, including 1x1.
  testgen::SplitMix64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.next_below(8));
    std::vector<double> mat(static_cast<std::size_t>(m) * m);
    std::vector<double> rhs(static_cast<std::size_t>(m));
    for (double& v : mat) v = rng.next_uniform(-3.0, 3.0);
    for (double& v : rhs) v = rng.next_uniform(-3.0, 3.0);
    std::vector<double> sol;
    try {
      sol = dense_solve(mat, m, rhs);
    } catch (const SingularMatrixError&) {
      continue;
    }
    double norm_m = 0.0, norm_x = inf_norm(sol), norm_b = inf_norm(rhs);
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      double row = 0.0, resid = -rhs[static_cast<std::size_t>(i)];
      for (int j = 0; j < m; ++j) {
        row += std::abs(mat[static_cast<std::size_t>(i) * m + j]);
        resid += mat[static_cast<std::size_t>(i) * m + j] * sol[static_cast<std::size_t>(j)];
      }
      norm_m = std::max(norm_m, row);
      worst = std::max(worst, std::abs(resid));
    }
    CHECK(worst <= 1e-9 * (norm_m * norm_x + norm_b));
  }
}
