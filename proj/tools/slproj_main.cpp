#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slproj/slproj.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitIllPosed = 4;

std::string matrix_json(const slproj::MatrixN& m) { return slproj::io::format_matrix(m); }

std::string projection_json(const slproj::ProjectionResult& r) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"P\": " << matrix_json(r.P) << ",\n";
  out << "  \"p_diag\": [";
  for (std::size_t i = 0; i < r.p_diag.size(); ++i)
    out << (i ? ", " : "") << slproj::io::format_double(r.p_diag[i]);
  out << "],\n";
  out << "  \"lambda\": " << slproj::io::format_double(r.lambda) << ",\n";
  out << "  \"distance\": " << slproj::io::format_double(r.distance) << ",\n";
  out << "  \"algorithm\": \"" << slproj::to_string(r.algorithm) << "\",\n";
  out << "  \"status\": \"" << slproj::to_string(r.report.status) << "\",\n";
  out << "  \"iterations\": " << r.report.iterations << ",\n";
  out << "  \"residual\": " << slproj::io::format_double(r.report.residual) << ",\n";
  out << "  \"feasibility\": " << slproj::io::format_double(r.report.feasibility) << ",\n";
  out << "  \"sign_flipped\": " << (r.sign_flipped ? "true" : "false") << "\n";
  out << "}\n";
  return out.str();
}

int run_project(const std::string& input, const std::string& algorithm, double tol, int max_iter,
                const std::string& json_out) {
  const slproj::MatrixN a = slproj::io::read_matrix_file(input);
  slproj::SolverOptions opts;
  opts.tol = tol;
  opts.max_iterations = max_iter;
  const slproj::ProjectionResult r =
      slproj::project(a, slproj::algorithm_from_string(algorithm), opts);
  const std::string rendered = projection_json(r);
  std::cout << rendered;
  if (!json_out.empty()) slproj::io::write_file(json_out, rendered);
  return r.report.status == slproj::SolveStatus::converged ? kExitOk : kExitSolverFailure;
}

int run_derivative(const std::string& input, const std::string& direction) {
  const slproj::MatrixN a = slproj::io::read_matrix_file(input);
  const slproj::MatrixN da = slproj::io::read_matrix_file(direction);
  const slproj::ProjectionResult proj = slproj::project(a);
  if (proj.report.status != slproj::SolveStatus::converged) {
    std::cerr << "error: projection did not converge (" << slproj::to_string(proj.report.status)
              << ")\n";
    return kExitSolverFailure;
  }
  const slproj::ProjectionDerivative d = slproj::projection_derivative(a, da, proj);
  std::cout << "{\n  \"deltaP\": " << matrix_json(d.deltaP)
            << ",\n  \"deltaLambda\": " << slproj::io::format_double(d.deltaLambda) << "\n}\n";
  return kExitOk;
}

int run_gen(int n, const std::string& family, int count, std::uint64_t seed, double epsilon,
            const std::string& out_dir) {
  slproj::testgen::TestSetSpec spec;
  spec.n = n;
  spec.count = count;
  spec.epsilon = epsilon;
  spec.seed = seed;
  spec.family = slproj::testgen::family_from_string(family);
  const std::vector<slproj::MatrixN> set = slproj::testgen::generate_set(spec);

  std::filesystem::create_directories(out_dir);
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::ostringstream name;
    name << family << "_n" << n << "_" << i << ".json";
    slproj::io::write_file((std::filesystem::path(out_dir) / name.str()).string(),
                           matrix_json(set[i]) + "\n");
  }
  std::cout << "wrote " << set.size() << " matrices to " << out_dir << "\n";
  return kExitOk;
}

int run_path_scan(const std::string& input, int grid) {
  const slproj::MatrixN a = slproj::io::read_matrix_file(input);
  const slproj::SvdResult sv = slproj::svd(a);
  std::vector<double> sigma = sv.sigma;
  bool flipped = sv.sign < 0;
  if (flipped) sigma.back() = -sigma.back();
  const slproj::Spectrum spectrum(sigma, flipped);

  std::vector<slproj::StationaryPoint> roots;
  if (slproj::prod(sigma) >= 1.0) {
    roots = slproj::bisection::scan_roots(spectrum, grid);
  } else {
    // Convex case: exactly one stationary point; the scan interval of the
    // combined path does not apply.
    const slproj::SolveResult r = slproj::bisection::solve(spectrum);
    if (r.report.status != slproj::SolveStatus::converged) {
      std::cerr << "error: root search failed (" << slproj::to_string(r.report.status) << ")\n";
      return kExitSolverFailure;
    }
    roots.push_back(r.point);
  }

  std::cout << "{\n  \"roots\": [";
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::cout << (i ? ",\n    " : "\n    ") << "{\"lambda\": "
              << slproj::io::format_double(roots[i].lambda) << ", \"p\": [";
    for (std::size_t j = 0; j < roots[i].p.size(); ++j)
      std::cout << (j ? ", " : "") << slproj::io::format_double(roots[i].p[j]);
    std::cout << "], \"residual\": " << slproj::io::format_double(roots[i].residual) << "}";
  }
  std::cout << "\n  ]\n}\n";
  return kExitOk;
}

int run_bench_cmd(const std::vector<int>& sizes, int count, std::uint64_t seed,
                  const std::vector<std::string>& families,
                  const std::vector<std::string>& algorithms, const std::string& out) {
  slproj::bench::BenchConfig config;
  if (!sizes.empty()) config.sizes = sizes;
  config.count = count;
  config.seed = seed;
  if (!families.empty()) {
    config.families.clear();
    for (const std::string& f : families)
      config.families.push_back(slproj::testgen::family_from_string(f));
  }
  if (!algorithms.empty()) {
    config.algorithms.clear();
    for (const std::string& a : algorithms)
      config.algorithms.push_back(slproj::algorithm_from_string(a));
  }
  const std::vector<slproj::bench::BenchRecord> records = slproj::bench::run_bench(config);
  slproj::bench::write_bench_csv(records, out);
  std::cout << "wrote " << records.size() << " records to " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closest-point projection onto SL(n) in the Frobenius norm"};
  app.require_subcommand(1);

  // project
  auto* project = app.add_subcommand("project", "Project a matrix onto SL(n)");
  std::string input, algorithm = "auto", json_out;
  double tol = 1e-8;
  int max_iter = 200;
  project->add_option("--input", input, "Matrix file (JSON or CSV)")->required();
  project->add_option("--algorithm", algorithm, "bisection|composite|newton-hyp|newton-log")
      ->check(CLI::IsMember({"bisection", "composite", "newton-hyp", "newton-log", "auto"}));
  project->add_option("--tol", tol, "Termination tolerance");
  project->add_option("--max-iter", max_iter, "Iteration cap");
  project->add_option("--json-out", json_out, "Write the result JSON to this path");

  // derivative
  auto* derivative = app.add_subcommand("derivative", "Directional derivative of the projection");
  std::string d_input, d_direction;
  derivative->add_option("--input", d_input, "Matrix file")->required();
  derivative->add_option("--direction", d_direction, "Direction matrix file")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate reproducible random test matrices");
  int g_n = 2, g_count = 100;
  std::uint64_t g_seed = 42;
  double g_epsilon = 100.0;
  std::string g_family = "ge1", g_out_dir = ".";
  gen->add_option("--n", g_n, "Matrix dimension")->required();
  gen->add_option("--family", g_family, "ge1|lt1|singular|cone_boundary");
  gen->add_option("--count", g_count, "Number of matrices");
  gen->add_option("--seed", g_seed, "RNG seed (SplitMix64)");
  gen->add_option("--epsilon", g_epsilon, "Log-space width parameter");
  gen->add_option("--out-dir", g_out_dir, "Output directory");

  // bench
  auto* bench = app.add_subcommand("bench", "Run the benchmark sweep and write CSV");
  std::vector<int> b_sizes;
  int b_count = 100;
  std::uint64_t b_seed = 42;
  std::vector<std::string> b_families, b_algorithms;
  std::string b_out = "bench.csv";
  bench->add_option("--sizes", b_sizes, "Matrix sizes (default 2 3 4 8 16 32 64)");
  bench->add_option("--count", b_count, "Matrices per family and size");
  bench->add_option("--seed", b_seed, "Sweep seed");
  bench->add_option("--families", b_families, "Subset of ge1 lt1 singular cone_boundary");
  bench->add_option("--algorithms", b_algorithms,
                    "Subset of bisection composite newton-hyp newton-log");
  bench->add_option("--out", b_out, "Output CSV path");

  // path-scan
  auto* scan = app.add_subcommand("path-scan", "Scan the solution path for stationary points");
  std::string s_input;
  int s_grid = 10000;
  scan->add_option("--input", s_input, "Matrix file")->required();
  scan->add_option("--grid", s_grid, "Grid resolution");

  CLI11_PARSE(app, argc, argv);

  try {
    if (project->parsed())
      return run_project(input, algorithm, tol, max_iter, json_out);
    if (derivative->parsed()) return run_derivative(d_input, d_direction);
    if (gen->parsed()) return run_gen(g_n, g_family, g_count, g_seed, g_epsilon, g_out_dir);
    if (bench->parsed()) return run_bench_cmd(b_sizes, b_count, b_seed, b_families, b_algorithms, b_out);
    if (scan->parsed()) return run_path_scan(s_input, s_grid);
  } catch (const slproj::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const slproj::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const slproj::NonFiniteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const slproj::IllPosedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIllPosed;
  } catch (const slproj::DegenerateProjectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIllPosed;
  } catch (const slproj::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
