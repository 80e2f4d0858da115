#pragma once

#include "pcfdyn/rational.hpp"
#include "pcfdyn/unipoly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pcfdyn {

using QPoly = UniPoly<Rational>;

struct NewtonSegment {
  Rational slope;
  int length = 0;
};

struct NewtonPolygon {
  unsigned long p = 0;
  /// (i, v_p(f_i)) for the nonzero coefficients.
  std::vector<std::pair<int, int>> points;
  /// Lower convex hull from the lowest to the highest nonzero coefficient.
  std::vector<NewtonSegment> hull;
  /// Multiplicity of the root 0.
  int zero_order = 0;

  /// Valuations of the nonzero roots with multiplicities (-slope, length).
  std::vector<std::pair<Rational, int>> root_valuations() const;
};

NewtonPolygon newton_polygon(const QPoly& f, unsigned long p);

struct MultiplierSpec {
  int d = 2;
  QPoly t_minpoly;
  int m = 1;
  /// Res_t(t_minpoly, Res_z(Phi*_m(z), x - (Q^m)'(z))) for Q = z^d + t.
  QPoly lambda_poly;
};

/// Throws DegreeCapExceeded when d^m deg(t_minpoly) > 200 and
/// ZeroResultant when the elimination degenerates.
MultiplierSpec multiplier_poly(int d, const QPoly& t_minpoly, int m);

struct PrimeCheck {
  unsigned long p = 0;
  bool divides_d = false;
  NewtonPolygon polygon;
  bool pass = false;
};

struct MultiplierReport {
  MultiplierSpec spec;
  /// Power of x removed before reading the polygon.
  int zero_roots_removed = 0;
  std::vector<PrimeCheck> checks;
  bool pass = false;
};

/// v_p(lambda) > 0 for p | d and v_p(lambda) = 0 for p not dividing d, for
/// every nonzero root lambda of the lambda polynomial.
MultiplierReport verify_prop_multiplier(const MultiplierSpec& spec, const std::vector<unsigned long>& primes);

/// P_{0,a}(s w) / s = w^3 + t with s = sqrt(3) = 3 omega and t = omega a^3,
/// checked as an identity of polynomials in w over Q(omega)[a].
bool verify_unicritical_conjugacy();

/// Minimal-polynomial data for t = omega u from a polynomial in u = a^3:
/// the squarefree part of U(3 omega t) U(-3 omega t), which lies in Q[t].
QPoly unicritical_t_poly(const QPoly& u_poly);

/// The relation P^(n+k)(0) = P^n(0) on the line c = 0, written in u = a^3,
/// with the factor u (the parameter a = 0) removed and made squarefree.
QPoly unicritical_u_poly(int n, int k);

}  // namespace pcfdyn
