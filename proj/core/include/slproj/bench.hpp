#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slproj/projector.hpp"
#include "slproj/testgen.hpp"

namespace slproj::bench {

struct BenchRecord {
  testgen::Family family = testgen::Family::ge1;
  int n = 0;
  int matrix_index = 0;
  Algorithm algorithm = Algorithm::bisection;
  int iterations = 0;
  SolveStatus status = SolveStatus::converged;
  std::int64_t wall_time_ns = 0;
  double distance = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
};

struct BenchConfig {
  std::vector<int> sizes = {2, 3, 4, 8, 16, 32, 64};
  int count = 100;
  std::uint64_t seed = 42;
  double epsilon = 100.0;
  std::vector<testgen::Family> families = {testgen::Family::ge1, testgen::Family::lt1,
                                           testgen::Family::singular,
                                           testgen::Family::cone_boundary};
  std::vector<Algorithm> algorithms = {Algorithm::bisection, Algorithm::composite,
                                       Algorithm::newton_hyp, Algorithm::newton_log};
  int repetitions = 3;  // wall time is the best of these
};

/// Per-(family, n) generation seed; exposed so external checks can
/// regenerate the exact matrices a record refers to.
std::uint64_t stream_seed(const BenchConfig& config, testgen::Family family, int n);

/// Runs every (family, size, matrix, algorithm) combination; iteration and
/// status columns are deterministic for a fixed config, wall times are not.
/// Record order is (family, n, index, algorithm).
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// Data CSV with the fixed header, then a blank line, then the per-group
/// min/mean/max summary block.
std::string render_csv(const std::vector<BenchRecord>& records);

void write_bench_csv(const std::vector<BenchRecord>& records, const std::string& path);

}  // namespace slproj::bench
