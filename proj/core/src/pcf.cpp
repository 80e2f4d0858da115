#include "pcfdyn/pcf.hpp"

#include "pcfdyn/interval.hpp"
#include "pcfdyn/parallel.hpp"
#include "pcfdyn/resultant.hpp"
#include "pcfdyn/roots.hpp"

#include <algorithm>
#include <cmath>

namespace pcfdyn {

BiPoly critical_orbit_point(int i, int n) {
  if (i != 0 && i != 1) throw Error(ErrorKind::InvalidArgument, "critical index must be 0 or 1");
  const BiPoly c = BiPoly::c(), a = BiPoly::a();
  const BiPoly a3 = a * a * a;
  const QOmega third(Rational(1, 3)), half(Rational(1, 2));
  BiPoly w = i == 0 ? BiPoly() : c;
  for (int j = 0; j < n; ++j) {
    BiPoly sq = w * w;
    w = sq * w * third - c * sq * half + a3;
  }
  return w;
}

OrbitRelation orbit_relation(int i, int n, int k, long cap) {
  if (n < 0 || k < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 0 and k >= 1");
  long deg = 1;
  for (int j = 0; j < n + k; ++j) {
    deg *= 3;
    if (deg > cap) throw Error(ErrorKind::DegreeCapExceeded, "orbit relation degree exceeds the cap");
  }
  OrbitRelation r;
  r.critical_index = i;
  r.n = n;
  r.k = k;
  const BiPoly pn = critical_orbit_point(i, n);
  BiPoly pnk = pn;
  const BiPoly c = BiPoly::c(), a3 = pow(BiPoly::a(), 3);
  const QOmega third(Rational(1, 3)), half(Rational(1, 2));
  for (int j = 0; j < k; ++j) {
    BiPoly sq = pnk * pnk;
    pnk = sq * pnk * third - c * sq * half + a3;
  }
  r.poly = pnk - pn;
  return r;
}

namespace {

using CL = ComplexL;

CL eval_l(const BiPoly& f, CL c, CL a) {
  return f.eval(c, a, [](const QOmega& q) { return to_complexl(q); });
}

struct System {
  BiPoly f, g, fc, fa, gc, ga;
  explicit System(BiPoly f0, BiPoly g0) : f(std::move(f0)), g(std::move(g0)) {
    fc = f.derivative(Var::C);
    fa = f.derivative(Var::A);
    gc = g.derivative(Var::C);
    ga = g.derivative(Var::A);
  }
};

// Newton on (f, g) = 0 in extended precision.
void polish(const System& s, CL& c, CL& a) {
  for (int it = 0; it < 30; ++it) {
    const CL F = eval_l(s.f, c, a), G = eval_l(s.g, c, a);
    const CL j11 = eval_l(s.fc, c, a), j12 = eval_l(s.fa, c, a), j21 = eval_l(s.gc, c, a), j22 = eval_l(s.ga, c, a);
    const CL det = j11 * j22 - j12 * j21;
    if (det == CL(0)) return;
    const CL dc = (j22 * F - j12 * G) / det, da = (j11 * G - j21 * F) / det;
    c -= dc;
    a -= da;
    if (std::abs(dc) + std::abs(da) < 1e-18L * (1 + std::abs(c) + std::abs(a))) return;
  }
}

// Ordering key on coordinates rounded to 1e-8.
std::array<double, 4> key(const PcfPoint& p) {
  auto r = [](double x) {
    double v = std::round(x * 1e8) / 1e8;
    return v == 0 ? 0.0 : v;
  };
  return {r(p.c.real()), r(p.c.imag()), r(p.a.real()), r(p.a.imag())};
}

UniPoly<Complex> specialize_c(const BiPoly& f, Complex c) {
  std::vector<Complex> co(static_cast<std::size_t>(std::max(f.degree(Var::A), 0)) + 1, Complex(0.0));
  for (const auto& [k, v] : f.terms()) co[static_cast<std::size_t>(k.second)] += v.to_complex() * std::pow(c, k.first);
  return UniPoly<Complex>(std::move(co));
}

double poly_scale(const UniPoly<Complex>& p, Complex a) {
  double s = 0, ap = 1;
  for (const auto& v : p.coeffs()) {
    s += std::abs(v) * ap;
    ap *= std::abs(a);
  }
  return s;
}

bool numerically_zero(const UniPoly<Complex>& p) {
  double m = 0;
  for (const auto& v : p.coeffs()) m = std::max(m, std::abs(v));
  return m < 1e-12;
}

// Splits P^(n+k)(c_i) - P^n(c_i) into the pieces P^d(c_i) - c_i divided
// through by proper divisors (d | k), then the quotients by the previous
// preperiod. Each piece is made squarefree; the product has the same
// zero set as the relation.
std::vector<BiPoly> relation_factors(const OrbitRelation& rel) {
  std::vector<BiPoly> out;
  std::vector<std::pair<int, BiPoly>> base;  // d -> P^d(c_i) - c_i
  const BiPoly ci = critical_orbit_point(rel.critical_index, 0);
  for (int d = 1; d <= rel.k; ++d)
    if (rel.k % d == 0) base.push_back({d, critical_orbit_point(rel.critical_index, d) - ci});
  for (const auto& [d, poly] : base) {
    BiPoly num(1L), den(1L);
    for (const auto& [e, q] : base) {
      if (d % e) continue;
      const int mu = mobius(d / e);
      if (mu > 0) num *= q;
      if (mu < 0) den *= q;
    }
    out.push_back(squarefree_part(divide_exact(num, den)));
  }
  BiPoly prev = base.back().second;
  for (int j = 1; j <= rel.n; ++j) {
    BiPoly cur = critical_orbit_point(rel.critical_index, j + rel.k) - critical_orbit_point(rel.critical_index, j);
    out.push_back(squarefree_part(divide_exact(cur, prev)));
    prev = std::move(cur);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const BiPoly& f) { return f.total_degree() < 1; }), out.end());
  return out;
}

void solve_factors(const BiPoly& f, const BiPoly& g, const std::array<int, 4>& witness, std::vector<PcfPoint>& pts);

}  // namespace

bool certify_box(const BiPoly& f, const BiPoly& g, Complex c, Complex a, double r) {
  const System s(f, g);
  const CInterval Xc = CInterval::around(c, r), Xa = CInterval::around(a, r);
  const CInterval pc(c), pa(a);
  const CInterval F[2] = {eval_interval(s.f, pc, pa), eval_interval(s.g, pc, pa)};
  const CInterval J[2][2] = {{eval_interval(s.fc, Xc, Xa), eval_interval(s.fa, Xc, Xa)},
                             {eval_interval(s.gc, Xc, Xa), eval_interval(s.ga, Xc, Xa)}};
  const Complex j11 = s.fc.eval_complex(c, a), j12 = s.fa.eval_complex(c, a);
  const Complex j21 = s.gc.eval_complex(c, a), j22 = s.ga.eval_complex(c, a);
  const Complex det = j11 * j22 - j12 * j21;
  if (det == 0.0) return false;
  const Complex Y[2][2] = {{j22 / det, -j12 / det}, {-j21 / det, j11 / det}};
  const CInterval D[2] = {Xc - pc, Xa - pa};
  const CInterval X[2] = {Xc, Xa};
  const CInterval x[2] = {pc, pa};
  for (int i = 0; i < 2; ++i) {
    CInterval K = x[i] - (CInterval(Y[i][0]) * F[0] + CInterval(Y[i][1]) * F[1]);
    for (int j = 0; j < 2; ++j) {
      CInterval m = CInterval(Complex(i == j ? 1.0 : 0.0)) - (CInterval(Y[i][0]) * J[0][j] + CInterval(Y[i][1]) * J[1][j]);
      K = K + m * D[j];
    }
    if (!K.strictly_inside(X[i])) return false;
  }
  return true;
}

bool certify_pcf(const ExactParam& p, int orbit_cap) {
  if (orbit_cap < 1) throw Error(ErrorKind::InvalidArgument, "orbit cap must be positive");
  auto radius = [&](bool conj) {
    auto emb = [&](const QOmega& q) { return std::fabs(conj ? q.conj_embedding() : q.to_complex().real()); };
    return std::max(10.0, 4.0 * (1.0 + emb(p.c) + emb(p.a)));
  };
  const double R1 = radius(false), R2 = radius(true);
  for (const QOmega& z0 : {QOmega(0), p.c}) {
    std::vector<QOmega> seen{z0};
    QOmega w = z0;
    bool done = false;
    for (int s = 0; s < orbit_cap && !done; ++s) {
      w = eval_P(p, w);
      if (std::fabs(w.to_complex().real()) >= R1 || std::fabs(w.conj_embedding()) >= R2) return false;
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) done = true;
      // Exact orbits of non-PCF parameters can grow without escaping
      // archimedeanly; stop before the rationals become unwieldy.
      if (mpz_sizeinbase(w.x().get_den_mpz_t(), 2) + mpz_sizeinbase(w.y().get_den_mpz_t(), 2) > 4096) break;
      seen.push_back(w);
    }
    if (!done) throw Error(ErrorKind::Undecided, "critical orbit neither repeats nor escapes within the cap");
  }
  return true;
}

std::vector<PcfPoint> dedupe_points(std::vector<PcfPoint> pts, double tol) {
  std::stable_sort(pts.begin(), pts.end(), [](const PcfPoint& x, const PcfPoint& y) { return key(x) < key(y); });
  std::vector<PcfPoint> out;
  for (auto& p : pts) {
    bool merged = false;
    for (auto& q : out) {
      const double d = std::abs(p.c - q.c) + std::abs(p.a - q.a);
      if (d <= tol * std::max({1.0, std::abs(p.c), std::abs(p.a)})) {
        if ((!q.exact && p.exact) || (!q.certified && p.certified)) q = p;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(p);
  }
  return out;
}

namespace {

void solve_factors(const BiPoly& f, const BiPoly& g, const std::array<int, 4>& witness, std::vector<PcfPoint>& pts) {
  const BiPoly res = resultant(f, g, Var::A);
  if (res.is_zero()) throw Error(ErrorKind::ZeroResultant, "resultant vanished without a common factor");
  const UniPoly<QOmega> rc = squarefree_part(res.specialize(Var::A, QOmega(0)));
  if (rc.degree() < 1) return;
  const System sys(f, g);

  for (const QOmega& ce : exact_roots(rc)) {
    UniPoly<QOmega> G = gcd(f.specialize(Var::C, ce), g.specialize(Var::C, ce));
    if (G.degree() < 1) continue;
    for (const QOmega& ae : exact_roots(G)) {
      PcfPoint p;
      p.c = ce.to_complex();
      p.a = ae.to_complex();
      p.exact = ExactParam{ce, ae};
      p.witness = witness;
      try {
        p.certified = certify_pcf(*p.exact);
      } catch (const Error&) {
        p.certified = false;
      }
      pts.push_back(p);
    }
  }

  for (const Complex& c0 : complex_roots(rc)) {
    UniPoly<Complex> fa = specialize_c(f, c0), ga = specialize_c(g, c0);
    const bool fz = numerically_zero(fa) || fa.degree() < 1, gz = numerically_zero(ga) || ga.degree() < 1;
    if (fz && gz) continue;
    const bool use_g = fz || (!gz && ga.degree() < fa.degree());
    const UniPoly<Complex>& base = use_g ? ga : fa;
    const UniPoly<Complex>& other = use_g ? fa : ga;
    for (const Complex& a0 : complex_roots(base)) {
      if (!numerically_zero(other) && std::abs(other.eval(a0)) > 1e-6 * std::max(1.0, poly_scale(other, a0))) continue;
      CL c(c0.real(), c0.imag()), a(a0.real(), a0.imag());
      polish(sys, c, a);
      PcfPoint p;
      p.c = Complex(static_cast<double>(c.real()), static_cast<double>(c.imag()));
      p.a = Complex(static_cast<double>(a.real()), static_cast<double>(a.imag()));
      p.witness = witness;
      for (double r : {1e-12, 1e-10, 1e-8}) {
        const double rr = r * std::max({1.0, std::abs(p.c), std::abs(p.a)});
        if (certify_box(f, g, p.c, p.a, rr)) {
          p.certified = true;
          p.radius = rr;
          break;
        }
      }
      pts.push_back(p);
    }
  }
}

}  // namespace

std::vector<PcfPoint> solve_system(const BiPoly& f, const BiPoly& g) {
  const BiPoly fs = squarefree_part(f), gs = squarefree_part(g);
  if (gcd(fs, gs).total_degree() > 0) throw Error(ErrorKind::InvalidArgument, "polynomials share a component");
  std::vector<PcfPoint> pts;
  solve_factors(fs, gs, {}, pts);
  return dedupe_points(std::move(pts));
}

PcfSolveResult pcf_solve(const OrbitRelation& rel0, const OrbitRelation& rel1) {
  if (rel0.poly.is_zero() || rel1.poly.is_zero()) throw Error(ErrorKind::InvalidArgument, "relations must be nonzero");
  PcfSolveResult out;
  const auto fs = relation_factors(rel0), gs = relation_factors(rel1);
  for (const auto& f : fs)
    for (const auto& g : gs) {
      const BiPoly h = gcd(f, g);
      if (h.total_degree() > 0) {
        out.curve_detected = true;
        out.component = h;
        return out;
      }
    }
  const std::array<int, 4> witness{rel0.n, rel0.k, rel1.n, rel1.k};
  std::vector<PcfPoint> pts;
  for (const auto& f : fs)
    for (const auto& g : gs) solve_factors(f, g, witness, pts);
  out.points = dedupe_points(std::move(pts));
  return out;
}

PcfEnumeration pcf_enumerate(long maxdeg, int threads) {
  std::vector<std::pair<int, int>> nk;
  for (int total = 1;; ++total) {
    long d = 1;
    for (int j = 0; j < total; ++j) d *= 3;
    if (d > maxdeg) break;
    for (int k = 1; k <= total; ++k) nk.push_back({total - k, k});
  }
  std::vector<std::array<int, 4>> pairs;
  for (auto [n0, k0] : nk)
    for (auto [n1, k1] : nk) pairs.push_back({n0, k0, n1, k1});
  std::vector<PcfSolveResult> results(pairs.size());
  std::vector<std::string> errs(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const auto& q = pairs[i];
    try {
      results[i] = pcf_solve(orbit_relation(0, q[0], q[1], maxdeg), orbit_relation(1, q[2], q[3], maxdeg));
    } catch (const Error& e) {
      errs[i] = e.what();
    }
  });
  PcfEnumeration en;
  std::vector<PcfPoint> all;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!errs[i].empty()) en.errors.push_back(errs[i]);
    if (results[i].curve_detected) en.curve_pairs.push_back(pairs[i]);
    for (const auto& p : results[i].points) all.push_back(p);
  }
  en.points = dedupe_points(std::move(all));
  for (const auto& p : en.points) {
    en.max_abs_c = std::max(en.max_abs_c, std::abs(p.c));
    en.max_abs_a = std::max(en.max_abs_a, std::abs(p.a));
  }
  return en;
}

}  // namespace pcfdyn
