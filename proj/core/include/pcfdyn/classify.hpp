#pragma once

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/dynamics.hpp"
#include "pcfdyn/periodic.hpp"
#include "pcfdyn/puiseux.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace pcfdyn {

/// 12a^3 - c^3 - 6c.
BiPoly symmetry_curve();

/// Q = zeta P^m + (1 - zeta) c / 2 as a polynomial in z, zeta = +1 or -1.
ZPoly symmetry_polynomial(int m, int zeta);

/// Coefficients (in z, ascending) of Q o P - P o Q, each reduced modulo
/// the curve. All zero iff Q commutes with P identically on the curve.
std::vector<BiPoly> commutator_on_curve(int m, int zeta, const BiPoly& curve);

struct CollisionCurve {
  int m = 0, k = 0;
  BiPoly poly;  // P^m(c_1) - P^k(c_0)
  /// (m, k) = (1, 1) is excluded from the persistent-collision statement;
  /// the polynomial is still returned.
  bool excluded = false;
};

/// Throws DegreeCapExceeded when 3^max(m,k) > cap.
CollisionCurve collision_curve(int m, int k, long cap = 81);

struct ZWitness {
  bool member = false;
  int k = 0;     // iterate P^k that Q commutes with
  int i = -1, j = -1;  // Q(P^q(c_i)) = P^q(c_j)
  double commutation_residual = 0;  // numeric mode only
};

/// Exact test for zeta = +1 or -1.
ZWitness z_membership(int q, int m, int zeta, const ExactParam& p);
/// Numeric test for any root of unity zeta: commutation on 30 sample
/// points to 1e-9 (relative) and the orbit relation to 1e-9.
ZWitness z_membership(int q, int m, Complex zeta, const CubicParam& p);

struct ZProbe {
  enum class Kind { Finite, Curve } kind = Kind::Finite;
  /// Squarefree union of the curve components (Kind::Curve).
  BiPoly curve;
  /// Isolated points (Kind::Finite, exact zeta only).
  std::vector<std::pair<Complex, Complex>> points;
};

/// Eliminates the commutation and orbit conditions of Z(q, m, zeta) for
/// zeta = +1 or -1.
ZProbe z_probe(int q, int m, int zeta);

/// Dimension test for arbitrary roots of unity: intersects with random
/// complex lines and looks for common roots. Returns Kind::Curve with an
/// empty polynomial when a curve is detected.
ZProbe z_probe_numeric(int q, int m, Complex zeta, unsigned seed = 1);

/// Lemma-style check Q(crit P^(k+m)) = Q(crit P^m) u crit P^k, as sets,
/// Hausdorff tolerance 1e-7.
bool critical_set_permutation_check(const CubicParam& p, int m, int k, int zeta);

/// Critical points of P^j with multiplicity (roots of (P^j)').
std::vector<Complex> critical_set(const CubicParam& p, int j);

struct BranchGrowth {
  Branch<Complex> branch;
  bool exact = true;
  int ramification = 1;
  /// orders[i][q-1] = ord_t P^q(c_i) in units of 1/ramification;
  /// kExactPrecision-sized values mean the iterate vanished identically.
  std::array<std::vector<long>, 2> orders;
  enum class Kind { Bounded, Escaping };
  std::array<Kind, 2> kind{Kind::Bounded, Kind::Bounded};
  /// a(branch) = -ord / (ram 3^q) on the stabilized tail, when Escaping.
  std::array<std::optional<Rational>, 2> rate;
};

/// Branch `branch_index` in the order of centers_at_infinity, then the
/// order newton_puiseux lists branches at each center. Q <= 8.
BranchGrowth branch_growth(const BiPoly& curve, int branch_index, int Q);

/// Number of branches at infinity of the curve.
int branch_count(const BiPoly& curve);

}  // namespace pcfdyn
