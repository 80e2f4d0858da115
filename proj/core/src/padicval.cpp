#include "pcfdyn/padicval.hpp"

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/dynamics.hpp"
#include "pcfdyn/pcf.hpp"
#include "pcfdyn/periodic.hpp"
#include "pcfdyn/resultant.hpp"

namespace pcfdyn {

std::vector<std::pair<Rational, int>> NewtonPolygon::root_valuations() const {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& s : hull) out.push_back({-s.slope, s.length});
  return out;
}

NewtonPolygon newton_polygon(const QPoly& f, unsigned long p) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "Newton polygon of the zero polynomial");
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be prime");
  NewtonPolygon np;
  np.p = p;
  for (int i = 0; i <= f.degree(); ++i)
    if (f.coeff(i) != 0) np.points.push_back({i, valuation(f.coeff(i), p)});
  np.zero_order = np.points.front().first;
  // Lower hull by a monotone chain; cross <= 0 drops non-convex points.
  std::vector<std::pair<int, int>> h;
  for (const auto& pt : np.points) {
    while (h.size() >= 2) {
      const auto& o = h[h.size() - 2];
      const auto& a = h.back();
      const long cross = static_cast<long>(a.first - o.first) * (pt.second - o.second) -
                         static_cast<long>(a.second - o.second) * (pt.first - o.first);
      if (cross > 0) break;
      h.pop_back();
    }
    h.push_back(pt);
  }
  for (std::size_t i = 1; i < h.size(); ++i) {
    const int len = h[i].first - h[i - 1].first;
    np.hull.push_back({make_rational(h[i].second - h[i - 1].second, len), len});
  }
  return np;
}

namespace {

using B = BiPolyT<Rational>;  // Q[t, x] with t in the C slot and x in the A slot
using ZB = UniPoly<B>;

}  // namespace

MultiplierSpec multiplier_poly(int d, const QPoly& t_minpoly, int m) {
  if (d < 2 || m < 1) throw Error(ErrorKind::InvalidArgument, "need d >= 2 and m >= 1");
  if (t_minpoly.degree() < 1) throw Error(ErrorKind::InvalidArgument, "t_minpoly must be nonconstant");
  long cost = t_minpoly.degree();
  for (int i = 0; i < m; ++i) {
    cost *= d;
    if (cost > 200) throw Error(ErrorKind::DegreeCapExceeded, "d^m deg(t_minpoly) exceeds 200");
  }
  const B t = B::c(), x = B::a();
  std::vector<B> qc(static_cast<std::size_t>(d) + 1, B());
  qc[0] = t;
  qc[static_cast<std::size_t>(d)] = B(1L);
  const ZB Q(std::move(qc));

  std::vector<ZB> iter{ZB::x()};
  for (int k = 1; k <= m; ++k) iter.push_back(Q.compose(iter.back()));
  ZB num = ZB::constant(B(1L)), den = ZB::constant(B(1L));
  for (int k = 1; k <= m; ++k) {
    if (m % k) continue;
    const int mu = mobius(m / k);
    if (mu > 0) num *= iter[static_cast<std::size_t>(k)] - ZB::x();
    if (mu < 0) den *= iter[static_cast<std::size_t>(k)] - ZB::x();
  }
  const ZB phi = divide_exact(num, den);
  const ZB g = ZB::constant(x) - iter[static_cast<std::size_t>(m)].derivative();
  // phi is monic in z, so Res(phi, g) = Res(phi, g mod phi).
  const ZB r = divmod_exact_lead(g, phi).second;
  if (r.is_zero()) throw Error(ErrorKind::ZeroResultant, "multiplier resultant vanished");
  const B inner = resultant(phi, r);
  const B tm = B::from_univariate(t_minpoly, Var::C);
  const B outer = t_minpoly.degree() == 1 ? B::from_univariate(inner.specialize(Var::C, -t_minpoly.coeff(0) / t_minpoly.coeff(1)), Var::A)
                                          : resultant(tm, inner, Var::C);
  if (outer.is_zero()) throw Error(ErrorKind::ZeroResultant, "lambda polynomial vanished");
  MultiplierSpec spec;
  spec.d = d;
  spec.t_minpoly = t_minpoly;
  spec.m = m;
  spec.lambda_poly = outer.specialize(Var::C, Rational(0));
  return spec;
}

MultiplierReport verify_prop_multiplier(const MultiplierSpec& spec, const std::vector<unsigned long>& primes) {
  MultiplierReport rep;
  rep.spec = spec;
  const QPoly& f = spec.lambda_poly;
  if (f.is_zero()) throw Error(ErrorKind::ZeroResultant, "lambda polynomial is zero");
  int k = 0;
  while (f.coeff(k) == 0) ++k;
  rep.zero_roots_removed = k;
  const QPoly g(std::vector<Rational>(f.coeffs().begin() + k, f.coeffs().end()));
  rep.pass = true;
  for (unsigned long p : primes) {
    PrimeCheck pc;
    pc.p = p;
    pc.divides_d = spec.d % static_cast<long>(p) == 0;
    pc.polygon = newton_polygon(g, p);
    pc.pass = true;
    for (const auto& [v, mult] : pc.polygon.root_valuations()) pc.pass = pc.pass && (pc.divides_d ? v > 0 : v == 0);
    rep.pass = rep.pass && pc.pass;
    rep.checks.push_back(std::move(pc));
  }
  return rep;
}

bool verify_unicritical_conjugacy() {
  const BiPoly a = BiPoly::a();
  const QOmega s(Rational(0), Rational(3));  // 3 omega = sqrt(3)
  const ZPoly P = iterate_poly(BiPoly(), a, 1);
  const ZPoly lhs = P.compose(ZPoly::x() * BiPoly(s)) * BiPoly(s.inverse());
  const ZPoly rhs = ZPoly::x() * ZPoly::x() * ZPoly::x() + ZPoly::constant(a * a * a * QOmega::omega());
  return (lhs - rhs).is_zero();
}

QPoly unicritical_t_poly(const QPoly& u_poly) {
  if (u_poly.degree() < 1) throw Error(ErrorKind::InvalidArgument, "u polynomial must be nonconstant");
  const QOmega s(Rational(0), Rational(3));
  std::vector<QOmega> plus, minus;
  QOmega sp(1);
  for (int i = 0; i <= u_poly.degree(); ++i) {
    plus.push_back(QOmega(u_poly.coeff(i)) * sp);
    minus.push_back(QOmega(u_poly.coeff(i)) * (i % 2 ? -sp : sp));
    sp *= s;
  }
  const UniPoly<QOmega> prod = UniPoly<QOmega>(std::move(plus)) * UniPoly<QOmega>(std::move(minus));
  std::vector<Rational> co;
  for (const auto& v : prod.coeffs()) {
    if (v.y() != 0) throw Error(ErrorKind::InvalidArgument, "norm left Q");
    co.push_back(v.x());
  }
  return squarefree_part(QPoly(std::move(co)));
}

QPoly unicritical_u_poly(int n, int k) {
  const UniPoly<QOmega> f = orbit_relation(0, n, k, 729).poly.specialize(Var::C, QOmega(0));
  std::vector<Rational> co;
  for (int i = 0; i <= f.degree(); ++i) {
    const QOmega& v = f.coeff(i);
    if (v.is_zero()) {
      if (i % 3 == 0) co.push_back(Rational(0));
      continue;
    }
    if (i % 3 != 0 || v.y() != 0) throw Error(ErrorKind::InvalidArgument, "relation on c = 0 is not rational in a^3");
    co.push_back(v.x());
  }
  std::size_t low = 0;
  while (low < co.size() && co[low] == 0) ++low;
  QPoly u(std::vector<Rational>(co.begin() + static_cast<long>(low), co.end()));
  if (u.degree() < 1) throw Error(ErrorKind::InvalidArgument, "only the parameter a = 0 satisfies the relation");
  return squarefree_part(u);
}

}  // namespace pcfdyn
