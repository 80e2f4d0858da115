#pragma once

#include "pcfdyn/qomega.hpp"
#include "pcfdyn/ring.hpp"
#include "pcfdyn/unipoly.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace pcfdyn {

using ComplexL = std::complex<long double>;

struct AberthOptions {
  int max_iterations = 200;
  /// Relative correction size at which a root is considered converged.
  long double tolerance = 1e-17L;
};

struct RootSet {
  std::vector<Complex> roots;
  bool converged = false;
  int iterations = 0;
};

/// Aberth-Ehrlich simultaneous iteration on a polynomial given by its
/// ascending coefficients. Leading coefficient must be nonzero.
RootSet aberth(const std::vector<ComplexL>& coeffs, const AberthOptions& opt = {});

/// Aberth-Ehrlich for a function known only through its Newton ratio
/// f/f' (e.g. evaluated along an orbit); `degree` roots are sought starting
/// on a circle of the given radius.
RootSet aberth_ratio(int degree, const std::function<ComplexL(ComplexL)>& newton_ratio, long double radius,
                     const AberthOptions& opt = {});

long double to_long_double(const Rational& q);
ComplexL to_complexl(const QOmega& q);

/// Complex roots of an exact polynomial (with multiplicity). Throws
/// RootFindingFailure when the iteration does not converge.
std::vector<Complex> complex_roots(const UniPoly<QOmega>& p, const AberthOptions& opt = {});
std::vector<Complex> complex_roots(const UniPoly<Complex>& p, const AberthOptions& opt = {});

/// Roots of p that lie in Q(omega), each listed once. Found by pairing the
/// two real embeddings and confirming exactly.
std::vector<QOmega> exact_roots(const UniPoly<QOmega>& p);

struct Cluster {
  Complex center;
  int multiplicity;
};
/// Groups points closer than tol * max(1, |z|).
std::vector<Cluster> cluster_points(const std::vector<Complex>& pts, double tol);

/// Distinct points (cluster centers) sorted lexicographically by rounded
/// coordinates for deterministic output.
std::vector<Complex> distinct_sorted(const std::vector<Complex>& pts, double tol);

/// Set equality up to tol via mutual-nearest-neighbor pairing.
bool sets_match(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol);

/// Largest distance from a point of `a` to its nearest point of `b` and back.
double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace pcfdyn
