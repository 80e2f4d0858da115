#pragma once

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/dynamics.hpp"
#include "pcfdyn/green.hpp"

#include <vector>

namespace pcfdyn {

/// phi(z) = omega (z - c/2) + sum_{k=1}^{K} a_k z^-k with phi(P(z)) = phi(z)^3.
struct BoettcherExpansion {
  int order = 0;
  std::vector<BiPoly> coeffs;  // a_1 .. a_K

  const BiPoly& a(int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); }
};

BoettcherExpansion bottcher_coeffs(int K);

/// a_1..a_K evaluated at a numeric parameter, by the same recursion.
std::vector<Complex> bottcher_coeffs_numeric(const CubicParam& p, int K);

struct FunctionalEquationReport {
  bool pass = true;
  int order = 0;
  /// Exponent j of the first z^j coefficient of phi(P) - phi^3 that is
  /// nonzero, when !pass.
  int first_failing_exponent = 0;
  /// Lowest exponent checked: -(K-2).
  int lowest_exponent = 0;
};

FunctionalEquationReport verify_functional_equation(const BoettcherExpansion& e);
FunctionalEquationReport verify_functional_equation(int K);

struct CoefficientBoundRow {
  int k = 0;
  /// max over monomials of -v_2 of the basis coordinates x, y.
  int max_neg_v2 = 0;
  /// max over monomials of -2 v_3(x + y omega).
  int max_neg_twice_v3 = 0;
  bool two_adic_ok = true;    // max_neg_v2 <= k + 1
  bool three_adic_ok = true;  // max_neg_twice_v3 <= k
  bool denominators_ok = true;  // only 2 and 3 in denominators
  int degree = 0;
};

struct CoefficientBoundsReport {
  bool pass = true;
  std::vector<CoefficientBoundRow> rows;
};

CoefficientBoundsReport coefficient_bounds_report(const BoettcherExpansion& e);

struct BoettcherValue {
  Complex value;
  double tail_bound = 0;
  int order = 0;
};

/// Domain guard: |z| > 4 R_b with R_b = 2 max(1, |c|, |a|), and
/// log|z| > rho + G(c, a).
bool bottcher_domain_ok(const CubicParam& p, Complex z, double tol = 1e-12);

/// Partial sum to order K with a tail estimate from the fitted growth
/// |a_k| <= M R_b^(k+1). Throws OutOfDomain when the guard fails.
BoettcherValue bottcher_eval(const CubicParam& p, Complex z, int K);

/// Independent oracle: pulls omega (P^n(z) - c/2) back through cube roots,
/// choosing the branch closest to omega (P^j(z) - c/2) at each step.
Complex bottcher_numeric(const CubicParam& p, Complex z);

}  // namespace pcfdyn
