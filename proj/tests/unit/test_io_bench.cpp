#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "slproj/bench.hpp"
#include "slproj/io.hpp"

using namespace slproj;

TEST_CASE("parse_matrix JSON and CSV") {
  const MatrixN j = io::parse_matrix(R"({"n":2,"data":[2.35,0,0,1.9]})");
  CHECK(j(0, 0) == 2.35);
  CHECK(j(1, 1) == 1.9);

  const MatrixN c = io::parse_matrix("1,0\n0,1\n");
  CHECK(test::max_abs_diff(c, MatrixN::identity(2)) == 0.0);

  CHECK_THROWS_AS(io::parse_matrix(R"({"n":2,"data":[1,2,3]})"), ShapeError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"n":2)"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix("1,2\n3\n"), ShapeError);
  CHECK_THROWS_AS(io::parse_matrix("1,2\n3,x\n"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix("1,2\n3,inf\n"), NonFiniteError);
  CHECK_THROWS_AS(io::parse_matrix(""), ParseError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"n":1,"data":[1]})"), ShapeError);
}

TEST_CASE("format/parse round trip is bitwise") {
  testgen::SplitMix64 rng(167);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(6));
    MatrixN a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a(i, j) = rng.next_uniform(-1e3, 1e3) * std::pow(10.0, static_cast<double>(rng.next_below(13)) - 6.0);
    const MatrixN back = io::parse_matrix(io::format_matrix(a));
    REQUIRE(back.n() == n);
    CHECK(back.data() == a.data());
  }
}

TEST_CASE("bench: record counts, order, and determinism") {
  bench::BenchConfig config;
  config.sizes = {2, 3};
  config.count = 10;
  config.seed = 42;
  config.repetitions = 1;

  const std::vector<bench::BenchRecord> run1 = bench::run_bench(config);
  CHECK(run1.size() == 4u * 2u * 10u * 4u);  // families * sizes * count * algorithms

  const std::vector<bench::BenchRecord> run2 = bench::run_bench(config);
  REQUIRE(run2.size() == run1.size());
  for (std::size_t i = 0; i < run1.size(); ++i) {
    CHECK(run1[i].iterations == run2[i].iterations);
    CHECK(run1[i].status == run2[i].status);
    CHECK(run1[i].lambda == run2[i].lambda);
  }

  // Deterministic (family, n, index, algorithm) order.
  std::size_t idx = 0;
  for (int f = 0; f < 4; ++f)
    for (int n_i = 0; n_i < 2; ++n_i)
      for (int m = 0; m < 10; ++m)
        for (int alg = 0; alg < 4; ++alg, ++idx) {
          CHECK(static_cast<int>(run1[idx].family) == f);
          CHECK(run1[idx].matrix_index == m);
        }

  // Bisection rows respect the analytic iteration bound.
  for (const bench::BenchRecord& r : run1) {
    CHECK(r.iterations <= 200);
    if (r.algorithm == Algorithm::bisection) CHECK(r.status == SolveStatus::converged);
  }
}

TEST_CASE("bench csv layout") {
  bench::BenchConfig config;
  config.sizes = {2};
  config.count = 3;
  config.seed = 1;
  config.repetitions = 1;
  config.families = {testgen::Family::ge1};
  config.algorithms = {Algorithm::bisection, Algorithm::newton_log};

  const std::string csv = bench::render_csv(bench::run_bench(config));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "family,n,matrix_index,algorithm,iterations,status,wall_time_ns,distance,lambda,residual");
  int data_rows = 0, blank = 0, summary_rows = 0;
  bool in_summary = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      ++blank;
      in_summary = true;
      continue;
    }
    if (!in_summary)
      ++data_rows;
    else
      ++summary_rows;
  }
  CHECK(data_rows == 6);
  CHECK(blank == 1);
  CHECK(summary_rows == 3);  // header + one row per algorithm group
}
