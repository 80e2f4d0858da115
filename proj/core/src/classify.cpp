#include "pcfdyn/classify.hpp"

#include "pcfdyn/pcf.hpp"
#include "pcfdyn/resultant.hpp"
#include "pcfdyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pcfdyn {

BiPoly symmetry_curve() {
  const BiPoly c = BiPoly::c(), a = BiPoly::a();
  return a * a * a * QOmega(12) - c * c * c - c * QOmega(6);
}

ZPoly symmetry_polynomial(int m, int zeta) {
  if (zeta != 1 && zeta != -1) throw Error(ErrorKind::InvalidArgument, "exact mode needs zeta = +1 or -1");
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "m must be non-negative");
  const BiPoly c = BiPoly::c();
  ZPoly Q = iterate_poly(c, BiPoly::a(), m) * BiPoly(QOmega(zeta));
  return Q + ZPoly::constant(c * QOmega(make_rational(1 - zeta, 2)));
}

namespace {

ZPoly commutator(int m, int zeta) {
  const ZPoly Q = symmetry_polynomial(m, zeta);
  const ZPoly P = iterate_poly(BiPoly::c(), BiPoly::a(), 1);
  return Q.compose(P) - P.compose(Q);
}

Var principal_for(const BiPoly& curve) {
  for (Var v : {Var::A, Var::C}) {
    if (curve.degree(v) < 1) continue;
    if (curve.to_nested(v).lead().degree() == 0) return v;
  }
  return curve.degree(Var::A) >= 1 ? Var::A : Var::C;
}

}  // namespace

std::vector<BiPoly> commutator_on_curve(int m, int zeta, const BiPoly& curve) {
  if (curve.total_degree() < 1) throw Error(ErrorKind::InvalidArgument, "curve must be nonconstant");
  const Var v = principal_for(curve);
  std::vector<BiPoly> out;
  const ZPoly comm = commutator(m, zeta);
  for (const BiPoly& co : comm.coeffs()) out.push_back(reduce_mod_curve(co, curve, v).remainder);
  return out;
}

CollisionCurve collision_curve(int m, int k, long cap) {
  if (m < 0 || k < 0) throw Error(ErrorKind::InvalidArgument, "m, k must be non-negative");
  long d = 1;
  for (int i = 0; i < std::max(m, k); ++i) {
    d *= 3;
    if (d > cap) throw Error(ErrorKind::DegreeCapExceeded, "collision curve degree exceeds the cap");
  }
  CollisionCurve cc;
  cc.m = m;
  cc.k = k;
  cc.poly = critical_orbit_point(1, m) - critical_orbit_point(0, k);
  cc.excluded = m == 1 && k == 1;
  return cc;
}

ZWitness z_membership(int q, int m, int zeta, const ExactParam& p) {
  if (zeta != 1 && zeta != -1) throw Error(ErrorKind::InvalidArgument, "exact mode needs zeta = +1 or -1");
  if (q < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "q, m must be non-negative");
  using U = UniPoly<QOmega>;
  const U Q = iterate_poly(p.c, p.a, m) * QOmega(zeta) + U::constant(p.c * QOmega(make_rational(1 - zeta, 2)));
  const U P = iterate_poly(p.c, p.a, 1);
  ZWitness w;
  w.k = 1;
  if (!(Q.compose(P) - P.compose(Q)).is_zero()) return w;
  const QOmega x[2] = {eval_Pn(p, QOmega(0), q), eval_Pn(p, p.c, q)};
  for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
    if (Q.eval(x[i]) == x[j]) {
      w.member = true;
      w.i = i;
      w.j = j;
      return w;
    }
  }
  return w;
}

ZWitness z_membership(int q, int m, Complex zeta, const CubicParam& p) {
  if (q < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "q, m must be non-negative");
  ZWitness w;
  // Least k with zeta^(3^k) = zeta.
  Complex zk = zeta;
  for (int k = 1; k <= 6 && !w.k; ++k) {
    zk = zk * zk * zk;
    if (std::abs(zk - zeta) < 1e-12) w.k = k;
  }
  if (!w.k) return w;
  auto Q = [&](Complex z) { return zeta * eval_Pn(p, z, m) + (1.0 - zeta) * p.c * 0.5; };
  const double r = 1 + std::abs(p.c) + std::abs(p.a);
  double worst = 0;
  for (int s = 0; s < 30; ++s) {
    const Complex z = std::polar(r * (0.3 + 0.7 * s / 29.0), 2.399963229728653 * s);
    const Complex lhs = Q(eval_Pn(p, z, w.k)), rhs = eval_Pn(p, Q(z), w.k);
    worst = std::max(worst, std::abs(lhs - rhs) / (1 + std::abs(lhs)));
  }
  w.commutation_residual = worst;
  if (worst > 1e-9) return w;
  const Complex x[2] = {eval_Pn(p, Complex(0.0), q), eval_Pn(p, p.c, q)};
  for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
    const Complex v = Q(x[i]);
    if (std::abs(v - x[j]) <= 1e-9 * (1 + std::abs(v))) {
      w.member = true;
      w.i = i;
      w.j = j;
      return w;
    }
  }
  return w;
}

namespace {

double bipoly_scale(const BiPoly& f, Complex c, Complex a) {
  double s = 0;
  for (const auto& [k, v] : f.terms())
    s += std::abs(v.to_complex()) * std::pow(std::abs(c), k.first) * std::pow(std::abs(a), k.second);
  return s;
}

}  // namespace

ZProbe z_probe(int q, int m, int zeta) {
  if (q < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "q, m must be non-negative");
  std::vector<BiPoly> comm;
  const ZPoly full = commutator(m, zeta);
  for (const BiPoly& co : full.coeffs())
    if (!co.is_zero()) comm.push_back(co);
  const ZPoly Q = symmetry_polynomial(m, zeta);
  const BiPoly x[2] = {critical_orbit_point(0, q), critical_orbit_point(1, q)};

  ZProbe out;
  std::vector<std::vector<BiPoly>> systems;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
    std::vector<BiPoly> S = comm;
    const BiPoly rel = Q.eval(x[i]) - x[j];
    if (!rel.is_zero()) S.push_back(rel);
    if (S.empty()) throw Error(ErrorKind::InvalidArgument, "Z(q, m, zeta) is the whole plane");
    std::sort(S.begin(), S.end(), [](const BiPoly& u, const BiPoly& v) { return u.total_degree() < v.total_degree(); });
    BiPoly g = S.front();
    for (std::size_t s = 1; s < S.size() && g.total_degree() > 0; ++s) g = gcd(g, S[s]);
    if (g.total_degree() > 0) out.curve = out.curve.is_zero() ? squarefree_part(g) : squarefree_part(out.curve * g);
    systems.push_back(std::move(S));
  }
  if (!out.curve.is_zero()) {
    out.kind = ZProbe::Kind::Curve;
    return out;
  }
  std::vector<PcfPoint> pts;
  for (const auto& S : systems) {
    // First coprime pair, then filter by the rest.
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (std::size_t u = 0; u < S.size() && !pick; ++u)
      for (std::size_t v = u + 1; v < S.size() && !pick; ++v)
        if (gcd(S[u], S[v]).total_degree() == 0) pick = std::pair{u, v};
    if (!pick) continue;
    for (const auto& p : solve_system(S[pick->first], S[pick->second])) {
      bool ok = true;
      for (const auto& h : S) ok = ok && std::abs(h.eval_complex(p.c, p.a)) <= 1e-6 * std::max(1.0, bipoly_scale(h, p.c, p.a));
      if (ok) pts.push_back(p);
    }
  }
  for (const auto& p : dedupe_points(std::move(pts))) out.points.push_back({p.c, p.a});
  return out;
}

namespace {

using CT = UniPoly<Complex>;  // polynomial in the line parameter t

bool negligible(const CT& f, double tol) {
  for (const auto& v : f.coeffs())
    if (std::abs(v) > tol) return false;
  return true;
}

double scale_at(const CT& f, Complex t) {
  double s = 0, tp = 1;
  for (const auto& v : f.coeffs()) {
    s += std::abs(v) * tp;
    tp *= std::abs(t);
  }
  return s;
}

}  // namespace

ZProbe z_probe_numeric(int q, int m, Complex zeta, unsigned seed) {
  if (q < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "q, m must be non-negative");
  int k = 0;
  Complex zk = zeta;
  for (int j = 1; j <= 3 && !k; ++j) {
    zk = zk * zk * zk;
    if (std::abs(zk - zeta) < 1e-12) k = j;
  }
  ZProbe out;
  if (!k) return out;  // no iterate to commute with: empty
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int curve_hits = 0;
  const int lines = 2;
  for (int line = 0; line < lines; ++line) {
    const CT ct({Complex(u(rng), u(rng)), Complex(u(rng), u(rng))});
    const CT at({Complex(u(rng), u(rng)), Complex(u(rng), u(rng))});
    using ZT = UniPoly<CT>;
    const ZT Q = iterate_poly(ct, at, m) * CT::constant(zeta) + ZT::constant(ct * CT::constant((1.0 - zeta) * 0.5));
    const ZT Pk = iterate_poly(ct, at, k);
    std::vector<CT> eqs;
    const ZT diff = Q.compose(Pk) - Pk.compose(Q);
    for (const auto& co : diff.coeffs())
      if (!negligible(co, 1e-9)) eqs.push_back(co);
    CT x[2] = {iterate_poly(ct, at, q).eval(CT()), iterate_poly(ct, at, q).eval(ct)};
    bool hit = false;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
      std::vector<CT> S = eqs;
      const CT rel = Q.eval(x[i]) - x[j];
      if (!negligible(rel, 1e-9)) S.push_back(rel);
      if (S.empty()) {
        hit = true;
        break;
      }
      auto lowest = std::min_element(S.begin(), S.end(), [](const CT& a, const CT& b) { return a.degree() < b.degree(); });
      if (lowest->degree() < 1) continue;
      for (const Complex& t0 : complex_roots(*lowest)) {
        bool common = true;
        for (const auto& h : S) common = common && std::abs(h.eval(t0)) <= 1e-7 * std::max(1.0, scale_at(h, t0));
        if (common) hit = true;
      }
    }
    curve_hits += hit;
  }
  // A curve meets every generic line; finitely many points meet none.
  if (curve_hits == lines) out.kind = ZProbe::Kind::Curve;
  return out;
}

std::vector<Complex> critical_set(const CubicParam& p, int j) {
  if (j < 0) throw Error(ErrorKind::InvalidArgument, "j must be non-negative");
  if (j == 0) return {};
  return complex_roots(iterate_poly(p.c, p.a, j).derivative());
}

bool critical_set_permutation_check(const CubicParam& p, int m, int k, int zeta) {
  if (k < 1 || m < 0) throw Error(ErrorKind::InvalidArgument, "need k >= 1 and m >= 0");
  auto Q = [&](Complex z) { return double(zeta) * eval_Pn(p, z, m) + (1.0 - zeta) * p.c * 0.5; };
  std::vector<Complex> lhs, rhs = critical_set(p, k);
  for (const Complex& z : critical_set(p, k + m)) lhs.push_back(Q(z));
  for (const Complex& z : critical_set(p, m)) rhs.push_back(Q(z));
  return sets_match(distinct_sorted(lhs, 1e-6), distinct_sorted(rhs, 1e-6), 1e-7);
}

namespace {

constexpr long kWindow = 48;

template <class K>
PuiseuxSeries<K> relative(const PuiseuxSeries<K>& s) {
  if (s.is_zero()) return s;
  return s.truncated(s.order() + kWindow);
}

// x + y + z with leading coefficients that cancel to rounding level
// (relative to the summands) treated as zero.
template <class K>
PuiseuxSeries<K> cancel_sum(const PuiseuxSeries<K>& x, const PuiseuxSeries<K>& y, const PuiseuxSeries<K>& z) {
  PuiseuxSeries<K> s = x + y + z;
  if constexpr (!FieldTraits<K>::exact) {
    const auto& co = s.coeffs();
    std::size_t first = 0;
    for (; first < co.size(); ++first) {
      const long e = s.lo() + static_cast<long>(first);
      const double mag = std::abs(x.coeff(e)) + std::abs(y.coeff(e)) + std::abs(z.coeff(e));
      if (std::abs(co[first]) > 1e-10 * mag) break;
    }
    if (first > 0) {
      if (first == co.size()) return PuiseuxSeries<K>({}, 0, s.exact() ? s.lo() + static_cast<long>(first) : s.prec(), s.ram());
      std::vector<K> rest(co.begin() + static_cast<long>(first), co.end());
      return PuiseuxSeries<K>(std::move(rest), s.lo() + static_cast<long>(first), s.prec(), s.ram());
    }
  }
  return s;
}

template <class K>
std::array<std::vector<long>, 2> orbit_orders(const Branch<K>& br, int Q, int& ram) {
  ram = std::lcm(br.c.ram(), br.a.ram());
  const PuiseuxSeries<K> c = br.c.with_ram(ram), a = br.a.with_ram(ram);
  const K third = FieldTraits<K>::from_rational(Rational(1, 3)), half = FieldTraits<K>::from_rational(Rational(1, 2));
  const PuiseuxSeries<K> a3 = relative(a * a * a);
  std::array<std::vector<long>, 2> out;
  for (int i = 0; i < 2; ++i) {
    PuiseuxSeries<K> w = i == 0 ? PuiseuxSeries<K>::zero().with_ram(ram) : relative(c);
    for (int q = 1; q <= Q; ++q) {
      const PuiseuxSeries<K> w2 = relative(w * w);
      w = relative(cancel_sum(relative(w2 * w) * third, -(relative(c * w2) * half), a3));
      out[static_cast<std::size_t>(i)].push_back(w.order());
    }
  }
  return out;
}

constexpr int kBranchOrder = 12;

std::vector<std::pair<InfinityCenter, NewtonPuiseuxResult>> all_branches(const BiPoly& curve) {
  std::vector<std::pair<InfinityCenter, NewtonPuiseuxResult>> out;
  for (const auto& ctr : centers_at_infinity(curve)) out.push_back({ctr, newton_puiseux(curve, ctr, kBranchOrder)});
  return out;
}

}  // namespace

int branch_count(const BiPoly& curve) {
  int n = 0;
  for (const auto& [ctr, res] : all_branches(curve)) n += static_cast<int>(res.branches.size());
  return n;
}

BranchGrowth branch_growth(const BiPoly& curve, int branch_index, int Q) {
  if (Q < 3 || Q > 8) throw Error(ErrorKind::InvalidArgument, "branch growth needs 3 <= Q <= 8");
  int idx = branch_index;
  for (const auto& [ctr, res] : all_branches(curve)) {
    if (idx >= static_cast<int>(res.branches.size())) {
      idx -= static_cast<int>(res.branches.size());
      continue;
    }
    BranchGrowth g;
    const auto u = static_cast<std::size_t>(idx);
    g.branch = res.branches[u];
    g.exact = res.exact;
    if (res.exact) {
      g.orders = orbit_orders(res.exact_branches[u], Q, g.ramification);
    } else {
      // Leading coefficients scale like r^(3^q); double underflows by q = 7.
      auto widen = [](const PuiseuxSeries<Complex>& s) {
        std::vector<ComplexL> co;
        for (const auto& v : s.coeffs()) co.emplace_back(v.real(), v.imag());
        return PuiseuxSeries<ComplexL>(std::move(co), s.lo(), s.prec(), s.ram());
      };
      const Branch<Complex>& b = res.branches[u];
      g.orders = orbit_orders(Branch<ComplexL>{widen(b.c), widen(b.a), b.ramification}, Q, g.ramification);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<Rational> v;
      long p3 = 1;
      for (int q = 1; q <= Q; ++q) {
        p3 *= 3;
        const long ord = g.orders[i][static_cast<std::size_t>(q - 1)];
        v.push_back(Rational(Integer(-ord)) / Rational(Integer(g.ramification * p3)));
      }
      const Rational& last = v.back();
      bool stable = last > 0 && v[v.size() - 2] == last && v[v.size() - 3] == last;
      if (stable) {
        g.kind[i] = BranchGrowth::Kind::Escaping;
        g.rate[i] = last;
      }
    }
    return g;
  }
  throw Error(ErrorKind::InvalidArgument, "branch index out of range");
}

}  // namespace pcfdyn
