#pragma once

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/series.hpp"

#include <vector>

namespace pcfdyn {

/// A point [c* : a* : 0] on the line at infinity.
struct InfinityCenter {
  Complex c_star{1.0, 0.0};
  Complex a_star{0.0, 0.0};
};

/// One branch at infinity: c = c(t), a = a(t).
template <class K>
struct Branch {
  PuiseuxSeries<K> c;
  PuiseuxSeries<K> a;
  int ramification = 1;  // n with c(t) = t^-n (or a(t) = t^-n on the [0:1:0] chart)
};

struct NewtonPuiseuxResult {
  /// False when some coefficient left Q(omega) and the complex fallback ran.
  bool exact = true;
  std::vector<Branch<QOmega>> exact_branches;
  /// Always filled; the complex images of exact_branches when exact.
  std::vector<Branch<Complex>> branches;
};

/// Points where the closure of {curve = 0} meets the line at infinity:
/// roots of the top-degree form.
std::vector<InfinityCenter> centers_at_infinity(const BiPoly& curve);

/// Branches of {curve = 0} through the given center, each truncated so that
/// the local equation vanishes to order `order` in t.
NewtonPuiseuxResult newton_puiseux(const BiPoly& curve, const InfinityCenter& center, int order);

/// Order in t to which the curve equation, rescaled by t^(n * deg), vanishes
/// along the branch (the precision limit when every known coefficient is
/// zero). Complex coefficients below tol count as zero.
template <class K>
long branch_residual_order(const BiPolyT<K>& curve, const Branch<K>& br, double tol = 1e-8);

}  // namespace pcfdyn
