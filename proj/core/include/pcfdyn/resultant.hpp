#pragma once

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/unipoly.hpp"

#include <utility>
#include <vector>

namespace pcfdyn {

/// Degree threshold above which resultant() switches from the Bareiss
/// Sylvester determinant to the subresultant PRS.
inline constexpr int kSylvesterMaxDegree = 6;

template <class R>
R ring_pow(const R& x, int e) {
  R r(1);
  R b = x;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

/// Sylvester matrix of f (degree m) and g (degree n), (m+n) x (m+n).
template <class R>
std::vector<std::vector<R>> sylvester_matrix(const UniPoly<R>& f, const UniPoly<R>& g) {
  const int m = f.degree(), n = g.degree();
  const int N = m + n;
  std::vector<std::vector<R>> M(static_cast<std::size_t>(N), std::vector<R>(static_cast<std::size_t>(N), R(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = g.coeff(n - j);
  return M;
}

/// Fraction-free Bareiss determinant over an integral domain with exact_div.
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> M) {
  const std::size_t n = M.size();
  if (n == 0) return R(1);
  R prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(M[k][k])) {
      std::size_t piv = k + 1;
      while (piv < n && is_zero(M[piv][k])) ++piv;
      if (piv == n) return R(0);
      std::swap(M[k], M[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R v = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = exact_div(v, prev);
      }
      M[i][k] = R(0);
    }
    prev = M[k][k];
  }
  R d = M[n - 1][n - 1];
  return negate ? R(-d) : d;
}

template <class R>
R resultant_sylvester(const UniPoly<R>& f, const UniPoly<R>& g) {
  if (f.is_zero() || g.is_zero()) return R(0);
  if (f.degree() == 0 && g.degree() == 0) return R(1);
  if (f.degree() == 0) return ring_pow(f.lead(), g.degree());
  if (g.degree() == 0) return ring_pow(g.lead(), f.degree());
  return bareiss_determinant(sylvester_matrix(f, g));
}

/// Resultant by the subresultant pseudo-remainder sequence.
template <class R>
R resultant_subresultant(UniPoly<R> A, UniPoly<R> B) {
  if (A.is_zero() || B.is_zero()) return R(0);
  bool negate = false;
  if (A.degree() < B.degree()) {
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) negate = true;
    std::swap(A, B);
  }
  if (B.degree() == 0) {
    R r = ring_pow(B.lead(), A.degree());
    return negate ? R(-r) : r;
  }
  R g(1), h(1);
  while (true) {
    const int delta = A.degree() - B.degree();
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) negate = !negate;
    UniPoly<R> Rm = pseudo_remainder(A, B);
    A = std::move(B);
    if (Rm.is_zero()) return R(0);
    R divisor = g * ring_pow(h, delta);
    std::vector<R> co;
    for (const auto& v : Rm.coeffs()) co.push_back(exact_div(v, divisor));
    B = UniPoly<R>(std::move(co));
    g = A.lead();
    // h <- h^(1 - delta) g^delta
    if (delta == 0) {
      // h unchanged
    } else {
      h = exact_div(ring_pow(g, delta), ring_pow(h, delta - 1));
    }
    if (B.degree() == 0) break;
  }
  const int da = A.degree();
  R r = exact_div(ring_pow(B.lead(), da), ring_pow(h, da - 1));
  return negate ? R(-r) : r;
}

/// Resultant of two univariate polynomials over an integral domain R.
/// Small inputs use the Sylvester determinant, larger ones the
/// subresultant PRS. A zero result signals a common factor.
template <class R>
R resultant(const UniPoly<R>& f, const UniPoly<R>& g) {
  if (std::max(f.degree(), g.degree()) <= kSylvesterMaxDegree) return resultant_sylvester(f, g);
  return resultant_subresultant(f, g);
}

/// Res_v(f, g) for bivariate f, g: a polynomial in the other variable,
/// returned as a BiPoly.
template <class K>
BiPolyT<K> resultant(const BiPolyT<K>& f, const BiPolyT<K>& g, Var eliminate) {
  auto F = f.to_nested(eliminate);
  auto G = g.to_nested(eliminate);
  UniPoly<K> r = resultant(F, G);
  return BiPolyT<K>::from_univariate(r, other(eliminate));
}

/// Pseudo-remainder of p by curve in the given variable. r satisfies
/// lc(curve)^multiplier * p = q * curve + r with deg_var(r) < deg_var(curve).
template <class K>
struct CurveReduction {
  BiPolyT<K> remainder;
  BiPolyT<K> leading_coefficient;  // lc(curve) in var, a polynomial in the other variable
  int multiplier = 0;
};

template <class K>
CurveReduction<K> reduce_mod_curve(const BiPolyT<K>& p, const BiPolyT<K>& curve, Var principal) {
  if (curve.degree(principal) < 1)
    throw Error(ErrorKind::InvalidArgument, "curve has no positive degree in the principal variable");
  auto P = p.to_nested(principal);
  auto C = curve.to_nested(principal);
  CurveReduction<K> out;
  out.leading_coefficient = BiPolyT<K>::from_univariate(C.lead(), other(principal));
  if (P.degree() < C.degree()) {
    out.remainder = p;
    return out;
  }
  int e = 0;
  auto r = pseudo_remainder(P, C, &e);
  // A constant leading coefficient can be divided out exactly.
  if (C.lead().degree() == 0 && e > 0) {
    K inv = exact_div(K(1), ring_pow(C.lead().lead(), e));
    std::vector<UniPoly<K>> co;
    for (const auto& x : r.coeffs()) co.push_back(x * inv);
    r = UniPoly<UniPoly<K>>(std::move(co));
    e = 0;
  }
  out.remainder = BiPolyT<K>::from_nested(r, principal);
  out.multiplier = e;
  return out;
}

}  // namespace pcfdyn
