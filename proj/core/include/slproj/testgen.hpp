#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slproj/matrix.hpp"
#include "slproj/spectrum.hpp"

namespace slproj::testgen {

/// SplitMix64: the reproducibility contract of all random generation in this
/// library. State advances by the 64-bit golden-ratio constant; outputs are
/// finalized with two xor-shift-multiply rounds. Uniform doubles take the
/// top 53 bits. Fixed for all time; changing it silently would break every
/// seeded test set.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

enum class Family { ge1, lt1, singular, cone_boundary };

const char* to_string(Family family);
Family family_from_string(const std::string& name);

struct TestSetSpec {
  int n = 2;
  int count = 100;
  double epsilon = 100.0;
  std::uint64_t seed = 0;
  Family family = Family::ge1;
};

/// Draws T with i.i.d. uniform entries in sqrt(n) * [-(ln eps)/n, (ln eps)/n]
/// (row-major order) and returns exp(T); the determinant then lies in
/// [eps^-sqrt(n), eps^sqrt(n)].
MatrixN gen_matrix(int n, double epsilon, SplitMix64& rng);

/// singular: zeroes the smallest ceil(n/3) singular values.
/// cone_boundary: draws floor(n/3) distinct indices in {1,..,n-1} and
/// replaces each maximal consecutive run of singular values (plus the next
/// smaller one) by their geometric mean; the determinant is preserved.
MatrixN derive_family(const MatrixN& a, Family family, SplitMix64& rng);

/// Deterministic test set: identical spec yields bitwise-identical matrices.
std::vector<MatrixN> generate_set(const TestSetSpec& spec);

struct QuarticStationaryPoint {
  std::vector<double> p;  // (p1, 1/p1)
  double lambda = 0.0;
  double distance = 0.0;  // (1/2) ||p - a||^2
  double p1 = 0.0;
};

/// All real roots of p1^4 - a1 p1^3 + a2 p1 - 1 (n = 2 stationarity with the
/// multiplier eliminated), found by sign-change bracketing and bisection to
/// 1e-13.
std::vector<QuarticStationaryPoint> oracle_quartic_2d(const std::vector<double>& a);

struct GridMinimum {
  std::vector<double> p;
  double distance = 0.0;
  std::vector<double> zeta_bar;
};

/// Exhaustive search over the exponential chart (n = 2: hyperbolic angle
/// line, n = 3: 2-D chart) followed by golden-section / coordinate-descent
/// refinement; accurate to about 1e-8 in distance. Throws SpanTooSmallError
/// when the grid minimum sits on the search boundary.
GridMinimum oracle_grid(const Spectrum& a, double span, int cells);

/// Central finite differences (f(x+h e_i) - f(x-h e_i)) / 2h; one row per
/// output component of f.
std::vector<std::vector<double>> finite_difference_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& f,
    const std::vector<double>& x, double h = 1e-6);

}  // namespace slproj::testgen
