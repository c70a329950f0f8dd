#pragma once

#include <vector>

#include "slproj/matrix.hpp"
#include "slproj/spectrum.hpp"

namespace slproj {

/// Basis of the hyperbolic coordinates: columns of B span the logarithmic
/// order cone, the first n-1 lie in the zero-sum subspace, the last is the
/// all-ones vector. Both B and its closed-form inverse are kept; B_bar
/// denotes the n x (n-1) block of the first n-1 columns.
struct HyperbolicBasis {
  int n;
  MatrixN B;
  MatrixN B_inv;

  double b_bar(int i, int j) const { return B(i, j); }  // j < n-1

  /// xi = B_bar * zeta_bar (the zeta_n = 0 slice).
  std::vector<double> xi_from_zeta_bar(const std::vector<double>& zeta_bar) const;

  /// B_bar^T * g, the pullback of a logarithmic-coordinate gradient.
  std::vector<double> bbar_transpose_times(const std::vector<double>& g) const;

  /// Full coordinates zeta = B_inv * xi.
  std::vector<double> zeta_from_xi(const std::vector<double>& xi) const;
};

HyperbolicBasis build_basis(int n);

/// Hyperbolic coordinates with the geometric-mean component fixed to zero.
struct HypPoint {
  std::vector<double> zeta_bar;
};

struct HypDecomposition {
  HypPoint point;
  double zeta_n;
};

/// zeta = B^-1 log(x); zeta_n is (1/n) log prod(x). Throws
/// NonPositiveInputError unless all components are positive.
HypDecomposition hyp_from_euclidean(const std::vector<double>& x);

/// x = exp(B_bar zeta_bar) componentwise; prod(x) = 1 up to roundoff.
/// Throws OverflowError when |B_bar zeta_bar|_inf exceeds 700.
std::vector<double> euclidean_from_hyp(const HypPoint& zeta_bar);

/// Initial iterate on sl(n): tangent-plane lift for points below the tangent
/// space at the identity, radial scaling onto sl(n), then geodesic scaling so
/// the leading component matches a_1.
std::vector<double> initial_iterate(const Spectrum& a);

}  // namespace slproj
