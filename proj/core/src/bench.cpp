#include "slproj/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "slproj/io.hpp"

namespace slproj::bench {

std::uint64_t stream_seed(const BenchConfig& config, testgen::Family family, int n) {
  return config.seed + 1000003ull * static_cast<std::uint64_t>(family) +
         1009ull * static_cast<std::uint64_t>(n);
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<BenchRecord> records;
  using clock = std::chrono::steady_clock;

  for (testgen::Family family : config.families) {
    for (int n : config.sizes) {
      testgen::TestSetSpec spec;
      spec.n = n;
      spec.count = config.count;
      spec.epsilon = config.epsilon;
      spec.seed = stream_seed(config, family, n);
      spec.family = family;
      const std::vector<MatrixN> matrices = testgen::generate_set(spec);

      for (int idx = 0; idx < static_cast<int>(matrices.size()); ++idx) {
        const SvdResult sv = svd(matrices[static_cast<std::size_t>(idx)]);
        const Spectrum a(sv.sigma, false);  // generated families have det >= 0

        for (Algorithm alg : config.algorithms) {
          BenchRecord rec;
          rec.family = family;
          rec.n = n;
          rec.matrix_index = idx;
          rec.algorithm = alg;

          std::int64_t best = std::numeric_limits<std::int64_t>::max();
          SpectrumProjection proj{{}, {}, alg};
          for (int rep = 0; rep < std::max(1, config.repetitions); ++rep) {
            const auto t0 = clock::now();
            proj = project_spectrum(a, alg);
            const auto t1 = clock::now();
            best = std::min(best,
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
          }

          rec.iterations = proj.report.iterations;
          rec.status = proj.report.status;
          rec.wall_time_ns = best;
          double d = 0.0;
          for (int i = 0; i < n; ++i) {
            const double diff = proj.point.p[static_cast<std::size_t>(i)] - a[i];
            d += diff * diff;
          }
          rec.distance = 0.5 * d;
          rec.lambda = proj.point.lambda;
          rec.residual = proj.point.residual;
          records.push_back(rec);
        }
      }
    }
  }
  return records;
}

std::string render_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "family,n,matrix_index,algorithm,iterations,status,wall_time_ns,distance,lambda,residual\n";
  for (const BenchRecord& r : records) {
    out << testgen::to_string(r.family) << ',' << r.n << ',' << r.matrix_index << ','
        << to_string(r.algorithm) << ',' << r.iterations << ',' << to_string(r.status) << ','
        << r.wall_time_ns << ',' << io::format_double(r.distance) << ','
        << io::format_double(r.lambda) << ',' << io::format_double(r.residual) << '\n';
  }

  struct Group {
    long long min_it = std::numeric_limits<long long>::max(), max_it = 0, sum_it = 0;
    std::int64_t min_ns = std::numeric_limits<std::int64_t>::max(), max_ns = 0, sum_ns = 0;
    int count = 0, failures = 0;
  };
  std::map<std::tuple<int, int, int>, Group> groups;  // key preserves record order
  std::vector<std::tuple<int, int, int>> order;
  for (const BenchRecord& r : records) {
    const auto key = std::make_tuple(static_cast<int>(r.family), r.n, static_cast<int>(r.algorithm));
    if (groups.find(key) == groups.end()) order.push_back(key);
    Group& g = groups[key];
    g.min_it = std::min<long long>(g.min_it, r.iterations);
    g.max_it = std::max<long long>(g.max_it, r.iterations);
    g.sum_it += r.iterations;
    g.min_ns = std::min(g.min_ns, r.wall_time_ns);
    g.max_ns = std::max(g.max_ns, r.wall_time_ns);
    g.sum_ns += r.wall_time_ns;
    ++g.count;
    if (r.status != SolveStatus::converged) ++g.failures;
  }
  std::sort(order.begin(), order.end());

  out << "\nfamily,n,algorithm,min_iterations,mean_iterations,max_iterations,"
         "min_wall_time_ns,mean_wall_time_ns,max_wall_time_ns,failures\n";
  for (const auto& key : order) {
    const Group& g = groups.at(key);
    out << testgen::to_string(static_cast<testgen::Family>(std::get<0>(key))) << ','
        << std::get<1>(key) << ',' << to_string(static_cast<Algorithm>(std::get<2>(key))) << ','
        << g.min_it << ',' << io::format_double(static_cast<double>(g.sum_it) / g.count) << ','
        << g.max_it << ',' << g.min_ns << ','
        << io::format_double(static_cast<double>(g.sum_ns) / g.count) << ',' << g.max_ns << ','
        << g.failures << '\n';
  }
  return out.str();
}

void write_bench_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  io::write_file(path, render_csv(records));
}

}  // namespace slproj::bench
