#pragma once

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/dynamics.hpp"
#include "pcfdyn/resultant.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcfdyn {

using ZPoly = UniPoly<BiPoly>;  // polynomial in z with coefficients in Q(omega)[c, a]

inline constexpr int kSymbolicDynatomicCap = 3;
inline constexpr int kSymbolicPermCap = 2;
inline constexpr int kNumericPermCap = 2;
inline constexpr int kSpecializedPermCap = 3;

namespace detail {

template <class R>
struct Lift {
  static R make(const QOmega& q) { return R(q); }
};
template <>
struct Lift<Complex> {
  static Complex make(const QOmega& q) { return q.to_complex(); }
};
template <class K>
struct Lift<UniPoly<K>> {
  static UniPoly<K> make(const QOmega& q) { return UniPoly<K>::constant(Lift<K>::make(q)); }
};

}  // namespace detail

/// P^k(z) as a polynomial in z over the coefficient ring of (c, a).
template <class R>
UniPoly<R> iterate_poly(const R& c, const R& a, int k) {
  const R third = detail::Lift<R>::make(QOmega(Rational(1, 3)));
  const R half = detail::Lift<R>::make(QOmega(Rational(1, 2)));
  UniPoly<R> z = UniPoly<R>::x();
  const R a3 = a * a * a;
  for (int i = 0; i < k; ++i) {
    UniPoly<R> sq = z * z;
    z = sq * z * third - sq * (c * half) + UniPoly<R>::constant(a3);
  }
  return z;
}

/// Phi*_m = prod_{k | m} (P^k(z) - z)^mu(m/k), divided exactly.
template <class R>
UniPoly<R> dynatomic_over(const R& c, const R& a, int m) {
  UniPoly<R> num = UniPoly<R>::constant(R(1L)), den = UniPoly<R>::constant(R(1L));
  for (int k = 1; k <= m; ++k) {
    if (m % k) continue;
    const int mu = mobius(m / k);
    if (!mu) continue;
    UniPoly<R> f = iterate_poly(c, a, k) - UniPoly<R>::x();
    (mu > 0 ? num : den) *= f;
  }
  auto [q, r] = divmod_exact_lead(num, den);
  if (!r.is_zero()) throw Error(ErrorKind::InvalidArgument, "dynatomic division left a remainder");
  return q;
}

struct DynatomicPoly {
  int m = 0;
  ZPoly poly;
};

/// Symbolic dynatomic polynomial, m <= kSymbolicDynatomicCap.
DynatomicPoly dynatomic(int m);

/// Dynatomic polynomial at an exact parameter (no degree cap beyond cost).
UniPoly<QOmega> dynatomic_at(const ExactParam& p, int m);

/// Per_m(lambda) for a fixed exact lambda:
/// Res_z(Phi*_m(z), lambda - (P^m)'(z)) in Q(omega)[c, a].
struct PermPoly {
  int m = 0;
  bool symbolic_lambda = false;
  QOmega lambda;
  /// Fixed lambda: the single entry is the polynomial. Symbolic lambda:
  /// coefficients of lambda^0, lambda^1, ...
  std::vector<BiPoly> lambda_coeffs;
  bool zero_resultant = false;
  std::string note;

  const BiPoly& poly() const { return lambda_coeffs.at(0); }
  BiPoly at(const QOmega& lambda) const;
};

PermPoly perm_poly(int m, const QOmega& lambda);
/// Per_m(lambda) restricted to a rational line c = c0, as a polynomial in a.
UniPoly<QOmega> perm_poly_at(int m, const QOmega& lambda, const QOmega& c0);
/// Symbolic lambda by interpolation over lambda = 0, 1, ..., deg.
PermPoly perm_poly_lambda(int m);

struct PermSample {
  Complex a;
  bool exact_period_ok = false;
};

/// Roots in a of Per_m(lambda) at a fixed complex c.
std::vector<PermSample> perm_sample(const PermPoly& pp, Complex c, bool filter_exact);

struct LeadingFormReport {
  int n = 0;
  int i = 0;
  BiPoly leading_form;
  /// Closed form 3^((1 - 3^(n-1))/2) a^(3^n) (i = 0) or
  /// 3^((1 - 3^(n-1))/2) (a^3 - c^3/6)^(3^(n-1)) (i = 1).
  BiPoly derived_form;
  bool matches_derived = false;
  /// Scalar in front of a^(3^n) in the leading form (i = 0).
  QOmega scalar;
  /// The quoted normalization sqrt(3)^(1 - 3^n).
  QOmega quoted_scalar;
  bool matches_quoted = false;
  /// Zeros on the line at infinity: [1:0:0] for i = 0, [zeta:1:0] with
  /// zeta^3 = 6 for i = 1.
  bool infinity_points_ok = false;
};

LeadingFormReport leading_form(int n, int i);

/// sqrt(3)^e in Q(omega) (sqrt 3 = 3 omega).
QOmega sqrt3_pow(int e);

}  // namespace pcfdyn
