#include "pcfdyn/periodic.hpp"

#include "pcfdyn/roots.hpp"

#include <cmath>

namespace pcfdyn {

DynatomicPoly dynatomic(int m) {
  if (m < 1 || m > kSymbolicDynatomicCap)
    throw Error(ErrorKind::DegreeCapExceeded, "symbolic dynatomic polynomial is capped at m = 3");
  return {m, dynatomic_over(BiPoly::c(), BiPoly::a(), m)};
}

UniPoly<QOmega> dynatomic_at(const ExactParam& p, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
  return dynatomic_over(p.c, p.a, m);
}

namespace {

// Res_z(f, g) where f has a constant leading coefficient: reduce g mod f
// first, using Res(f, g) = lc(f)^(deg g - deg r) Res(f, r).
BiPoly resultant_reduced(const ZPoly& f, const ZPoly& g) {
  auto [q, r] = divmod_exact_lead(g, f);
  if (r.is_zero()) return BiPoly();
  BiPoly res = resultant(f, r);
  const int e = g.degree() - r.degree();
  return res * ring_pow(f.lead(), e);
}

ZPoly derivative_iterate(int m) {
  return iterate_poly(BiPoly::c(), BiPoly::a(), m).derivative();
}

}  // namespace

BiPoly PermPoly::at(const QOmega& l) const {
  BiPoly r;
  QOmega lp(1);
  for (const auto& co : lambda_coeffs) {
    r += co * lp;
    lp *= l;
  }
  return r;
}

PermPoly perm_poly(int m, const QOmega& lambda) {
  if (m < 1 || m > kNumericPermCap) throw Error(ErrorKind::DegreeCapExceeded, "Per_m(lambda) is capped at m = 2");
  const ZPoly f = dynatomic_over(BiPoly::c(), BiPoly::a(), m);
  const ZPoly g = ZPoly::constant(BiPoly(lambda)) - derivative_iterate(m);
  PermPoly pp;
  pp.m = m;
  pp.lambda = lambda;
  pp.lambda_coeffs.push_back(resultant_reduced(f, g));
  pp.zero_resultant = pp.lambda_coeffs[0].is_zero();
  if (m > 1)
    pp.note = "contains parameters where a cycle of period k | m has multiplier a primitive (m/k)-th root of unity";
  return pp;
}

UniPoly<QOmega> perm_poly_at(int m, const QOmega& lambda, const QOmega& c0) {
  if (m < 1 || m > kSpecializedPermCap)
    throw Error(ErrorKind::DegreeCapExceeded, "Per_m(lambda) on a line is capped at m = 3");
  using AP = UniPoly<QOmega>;
  const AP c = AP::constant(c0), a = AP::x();
  const UniPoly<AP> f = dynatomic_over(c, a, m);
  const UniPoly<AP> g = UniPoly<AP>::constant(AP::constant(lambda)) - iterate_poly(c, a, m).derivative();
  auto [q, r] = divmod_exact_lead(g, f);
  if (r.is_zero()) return AP();
  return resultant(f, r) * ring_pow(f.lead(), g.degree() - r.degree());
}

PermPoly perm_poly_lambda(int m) {
  if (m < 1 || m > kSymbolicPermCap)
    throw Error(ErrorKind::DegreeCapExceeded, "symbolic-lambda Per_m is capped at m = 2");
  const ZPoly f = dynatomic_over(BiPoly::c(), BiPoly::a(), m);
  const ZPoly dP = derivative_iterate(m);
  const int deg = f.degree();  // degree in lambda
  // Newton divided differences on nodes 0..deg.
  std::vector<BiPoly> dd;
  for (int j = 0; j <= deg; ++j) dd.push_back(resultant_reduced(f, ZPoly::constant(BiPoly(QOmega(j))) - dP));
  for (int k = 1; k <= deg; ++k)
    for (int j = deg; j >= k; --j)
      dd[static_cast<std::size_t>(j)] =
          (dd[static_cast<std::size_t>(j)] - dd[static_cast<std::size_t>(j - 1)]) * QOmega(Rational(1, k));
  // Expand the Newton form into monomial coefficients.
  std::vector<BiPoly> coef(1, dd[static_cast<std::size_t>(deg)]);
  for (int j = deg - 1; j >= 0; --j) {
    // coef <- coef * (lambda - j) + dd[j]
    std::vector<BiPoly> next(coef.size() + 1);
    for (std::size_t i = 0; i < coef.size(); ++i) {
      next[i + 1] += coef[i];
      next[i] -= coef[i] * QOmega(j);
    }
    next[0] += dd[static_cast<std::size_t>(j)];
    coef = std::move(next);
  }
  while (!coef.empty() && coef.back().is_zero()) coef.pop_back();
  PermPoly pp;
  pp.m = m;
  pp.symbolic_lambda = true;
  pp.lambda_coeffs = std::move(coef);
  pp.zero_resultant = pp.lambda_coeffs.empty();
  return pp;
}

std::vector<PermSample> perm_sample(const PermPoly& pp, Complex c, bool filter_exact) {
  if (pp.symbolic_lambda) throw Error(ErrorKind::InvalidArgument, "perm_sample needs a fixed lambda");
  const BiPoly& f = pp.poly();
  std::vector<Complex> co(static_cast<std::size_t>(std::max(f.degree(Var::A), 0)) + 1, Complex(0.0));
  for (const auto& [k, v] : f.terms()) co[static_cast<std::size_t>(k.second)] += v.to_complex() * std::pow(c, k.first);
  UniPoly<Complex> ua(std::move(co));
  std::vector<PermSample> out;
  if (ua.degree() < 1) return out;
  const Complex lam = pp.lambda.to_complex();
  for (const Complex& a : complex_roots(ua)) {
    PermSample s{a, false};
    if (filter_exact) {
      for (const auto& cy : find_cycles(CubicParam{c, a}, pp.m))
        if (std::abs(cy.multiplier - lam) < 1e-6) s.exact_period_ok = true;
      if (!s.exact_period_ok) continue;
    }
    out.push_back(s);
  }
  return out;
}

QOmega sqrt3_pow(int e) {
  // sqrt(3) = 3 omega.
  const QOmega s(Rational(0), Rational(3));
  QOmega r = pow(s, static_cast<unsigned>(std::abs(e)));
  return e >= 0 ? r : r.inverse();
}

LeadingFormReport leading_form(int n, int i) {
  if (n < 1 || n > 3) throw Error(ErrorKind::DegreeCapExceeded, "leading_form supports 1 <= n <= 3");
  if (i != 0 && i != 1) throw Error(ErrorKind::InvalidArgument, "critical index must be 0 or 1");
  const BiPoly c = BiPoly::c(), a = BiPoly::a();
  const BiPoly z0 = i == 0 ? BiPoly() : c;
  BiPoly w = z0;
  const QOmega third(Rational(1, 3)), half(Rational(1, 2));
  for (int k = 0; k < n; ++k) w = w * w * w * third - c * w * w * half + a * a * a;
  LeadingFormReport r;
  r.n = n;
  r.i = i;
  r.leading_form = (w - z0).top_form();
  int p3 = 1;
  for (int k = 1; k < n; ++k) p3 *= 3;  // 3^(n-1)
  const QOmega s = sqrt3_pow(1 - p3);
  r.derived_form = i == 0 ? pow(a, static_cast<unsigned>(3 * p3)) * s
                          : pow(a * a * a - c * c * c * QOmega(Rational(1, 6)), static_cast<unsigned>(p3)) * s;
  r.matches_derived = r.leading_form == r.derived_form;
  r.scalar = r.leading_form.coeff(0, 3 * p3);
  r.quoted_scalar = sqrt3_pow(1 - 3 * p3);
  r.matches_quoted = r.scalar == r.quoted_scalar;
  if (i == 0) {
    r.infinity_points_ok = r.leading_form.size() == 1 && r.leading_form.terms().begin()->first.first == 0;
  } else {
    // With a = 1 the form becomes a polynomial in c whose distinct roots
    // must be the cube roots of 6, and it must not vanish at [1:0:0].
    UniPoly<QOmega> f = r.leading_form.specialize(Var::A, QOmega(1));
    bool ok = !r.leading_form.coeff(3 * p3, 0).is_zero();
    for (const Complex& z : complex_roots(squarefree_part(f))) ok = ok && std::abs(z * z * z - 6.0) < 1e-8;
    r.infinity_points_ok = ok && squarefree_part(f).degree() == 3;
  }
  return r;
}

}  // namespace pcfdyn
