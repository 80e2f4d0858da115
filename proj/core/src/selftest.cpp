#include "pcfdyn/selftest.hpp"

#include "pcfdyn/boettcher.hpp"
#include "pcfdyn/classify.hpp"
#include "pcfdyn/equidist.hpp"
#include "pcfdyn/green.hpp"
#include "pcfdyn/padicval.hpp"
#include "pcfdyn/pcf.hpp"
#include "pcfdyn/periodic.hpp"
#include "pcfdyn/roots.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

namespace pcfdyn {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double log_plus(double x) { return x > 1 ? std::log(x) : 0.0; }

struct Context {
  const RunConfig& cfg;
  int threads;
  std::optional<BoettcherExpansion> bottcher;

  const BoettcherExpansion& coeffs() {
    if (!bottcher) bottcher = bottcher_coeffs(cfg.bottcher_order);
    return *bottcher;
  }
  std::mt19937_64 rng(int id) const { return std::mt19937_64(cfg.seed + static_cast<std::uint64_t>(id)); }
};

Complex disk_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  for (;;) {
    Complex z(u(rng), u(rng));
    if (std::abs(z) <= r) return z;
  }
}

// Criteria 1..4: Boettcher expansion.

CriterionResult c1(Context&) {
  const auto e = bottcher_coeffs(2);
  const BiPoly c = BiPoly::c(), a = BiPoly::a();
  const QOmega w = QOmega::omega();
  const BiPoly a1 = c * c * (w * QOmega(Rational(-1, 4)));
  const BiPoly a2 = c * c * c * (w * QOmega(make_rational(-5, 24))) + (a * a * a - c * QOmega(Rational(1, 2))) * w;
  const bool ok1 = e.a(1) == a1, ok2 = e.a(2) == a2;
  return {1, "Boettcher closed forms a1, a2", ok1 && ok2,
          std::string("a1 ") + (ok1 ? "exact" : "differs") + ", a2 " + (ok2 ? "exact" : "differs")};
}

CriterionResult c2(Context& ctx) {
  const auto r = verify_functional_equation(ctx.coeffs());
  return {2, "functional equation phi(P) = phi^3 to order " + std::to_string(r.order), r.pass,
          r.pass ? "all residual coefficients zero down to z^" + std::to_string(r.lowest_exponent)
                 : "first nonzero residual at z^" + std::to_string(r.first_failing_exponent)};
}

CriterionResult c3(Context& ctx) {
  const auto& e = ctx.coeffs();
  std::string bad;
  for (int k = 1; k <= e.order; ++k)
    if (e.a(k).total_degree() != k + 1) bad += " " + std::to_string(k);
  return {3, "deg(a_k) = k + 1 for k = 1.." + std::to_string(e.order), bad.empty(), bad.empty() ? "all degrees match" : "mismatch at k =" + bad};
}

CriterionResult c4(Context& ctx) {
  const auto r = coefficient_bounds_report(ctx.coeffs());
  std::string two, three;
  for (const auto& row : r.rows) {
    if (!row.two_adic_ok || !row.denominators_ok) two += " " + std::to_string(row.k);
    if (!row.three_adic_ok) three += " " + std::to_string(row.k);
  }
  const bool pass = two.empty() && three.empty();
  std::string detail = "2-adic " + (two.empty() ? std::string("ok") : "fails at k =" + two);
  detail += ", 3-adic " + (three.empty() ? std::string("ok") : "fails at k =" + three);
  return {4, "2-adic and 3-adic coefficient bounds", pass, detail};
}

// Criterion 5: g = log|phi| far out.

CriterionResult c5(Context& ctx) {
  auto rng = ctx.rng(5);
  std::uniform_real_distribution<double> u(-2, 2), ang(0, 6.283185307179586);
  double worst = 0;
  for (int s = 0; s < 100; ++s) {
    const CubicParam p{Complex(u(rng), 0), Complex(u(rng), 0)};
    const double G = g0g1G(p, 1e-12).G.value;
    const double rb = 2 * std::max({1.0, std::abs(p.c), std::abs(p.a)});
    const double r = std::max(6 * rb, 2 * std::exp(green_bounds(p).rho + G));
    const Complex z = std::polar(r, ang(rng));
    const double g = green_arch(p, z, 1e-13).value;
    const double lphi = std::log(std::abs(bottcher_eval(p, z, 40).value));
    worst = std::max(worst, std::abs(g - lphi));
  }
  return {5, "g = log|phi| on 100 random parameters", worst < 1e-9, "max deviation " + fmt("%.2e", worst)};
}

// Criterion 6: growth envelope and finite places.

int oracle_valuation(Integer n, unsigned long p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int oracle_neg_v(const Rational& q, unsigned long p) {
  if (q == 0) return 0;
  return oracle_valuation(q.get_den(), p) - oracle_valuation(q.get_num(), p);
}

CriterionResult c6(Context& ctx) {
  double worst_excess = -1e300;
  int undecided = 0;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const CubicParam p{Complex(-2 + 4.0 * i / 49, 0), Complex(-2 + 4.0 * j / 49, 0)};
      try {
        const double G = g0g1G(p, 1e-10).G.value;
        const double env = log_plus(std::max(std::abs(p.a), std::abs(p.c)));
        worst_excess = std::max(worst_excess, std::abs(G - env) - green_bounds(p).growth_C);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Undecided) throw;
        ++undecided;
      }
    }
  auto rng = ctx.rng(6);
  const unsigned long small[] = {2, 3, 5, 7, 11, 13};
  std::uniform_int_distribution<int> ex(-3, 3), sg(0, 1);
  auto draw = [&] {
    Rational q(1);
    for (unsigned long p : small) {
      const int e = ex(rng);
      for (int k = 0; k < std::abs(e); ++k) q = e > 0 ? Rational(q * static_cast<long>(p)) : Rational(q / static_cast<long>(p));
    }
    return sg(rng) ? q : Rational(-q);
  };
  double worst_finite = 0;
  for (int s = 0; s < 50; ++s) {
    const Rational c = draw(), a = draw();
    for (unsigned long p : {5UL, 7UL, 11UL}) {
      double bound = -1;
      const double got = green_finite(p, c, a, &bound);
      const double want = std::max({0, oracle_neg_v(c, p), oracle_neg_v(a, p)}) * std::log(static_cast<double>(p));
      worst_finite = std::max(worst_finite, std::abs(got - want) + bound);
    }
  }
  const bool pass = undecided == 0 && worst_excess <= 0 && worst_finite <= 1e-14;
  return {6, "growth envelope and finite-place Green values", pass,
          "envelope slack " + fmt("%.3f", -worst_excess) + ", undecided " + std::to_string(undecided) + ", finite-place error " +
              fmt("%.1e", worst_finite)};
}

// Criteria 7, 8: sampled points on curves.

// Roots of f in variable v with the other variable fixed at x.
std::vector<Complex> roots_in(const BiPoly& f, Var v, Complex x) {
  std::vector<Complex> co(static_cast<std::size_t>(f.degree(v)) + 1, Complex(0));
  for (const auto& [key, k] : f.terms()) {
    const auto [dx, dv] = v == Var::A ? key : std::pair{key.second, key.first};
    co[static_cast<std::size_t>(dv)] += k.to_complex() * std::pow(x, dx);
  }
  return complex_roots(UniPoly<Complex>(std::move(co)));
}

// Draws points on {f = 0} until `count` of them have decided Green values.
template <class Check>
int sample_curve(const BiPoly& f, std::mt19937_64& rng, int count, double radius, Check&& check) {
  int done = 0, draws = 0;
  while (done < count) {
    if (++draws > 40 * count) break;
    // Solve for a when the curve involves a, otherwise for c.
    const Var v = f.degree(Var::A) > 0 ? Var::A : Var::C;
    const Complex x = disk_point(rng, radius);
    const auto roots = roots_in(f, v, x);
    if (roots.empty()) continue;
    const Complex y = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
    const Complex c = v == Var::A ? x : y, a = v == Var::A ? y : x;
    try {
      check(g0g1G(CubicParam{c, a}, 1e-10));
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Undecided) throw;
    }
  }
  return done;
}

CriterionResult c7(Context& ctx) {
  const BiPoly curve = symmetry_curve();
  bool zero_on_curve = true, nonzero_on_a = false;
  for (const auto& co : commutator_on_curve(0, -1, curve)) zero_on_curve = zero_on_curve && co.is_zero();
  for (const auto& co : commutator_on_curve(0, -1, BiPoly::a())) nonzero_on_a = nonzero_on_a || !co.is_zero();
  auto rng = ctx.rng(7);
  double worst = 0;
  int escaping = 0;
  const int n = sample_curve(curve, rng, 20, 4.0, [&](const CriticalGreen& g) {
    worst = std::max(worst, std::abs(g.g0.value - g.g1.value));
    escaping += g.G.value > 0;
  });
  const bool pass = zero_on_curve && nonzero_on_a && n == 20 && worst < 1e-7;
  return {7, "symmetry curve commutator and g0 = g1", pass,
          std::string("commutator mod curve ") + (zero_on_curve ? "zero" : "nonzero") + ", mod a " + (nonzero_on_a ? "nonzero" : "zero") +
              ", max |g0 - g1| " + fmt("%.1e", worst) + " over " + std::to_string(n) + " points (" + std::to_string(escaping) + " escaping)"};
}

CriterionResult c8(Context& ctx) {
  auto rng = ctx.rng(8);
  bool pass = true;
  std::string detail;
  for (auto [m, k] : {std::pair{1, 1}, std::pair{2, 1}}) {
    const auto cc = collision_curve(m, k);
    double worst = 0;
    const int n = sample_curve(cc.poly, rng, 20, 2.0, [&](const CriticalGreen& g) {
      worst = std::max(worst, std::abs(std::pow(3.0, m) * g.g1.value - std::pow(3.0, k) * g.g0.value));
    });
    pass = pass && n == 20 && worst < 1e-6;
    if (!detail.empty()) detail += "; ";
    detail += "(" + std::to_string(m) + "," + std::to_string(k) + ") max " + fmt("%.1e", worst) + " over " + std::to_string(n);
  }
  return {8, "collision curves scale g0 and g1", pass, detail};
}

// Criterion 9: PCF solver against a seeded Newton oracle.

double halton(int i, int base) {
  double f = 1, r = 0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

// Newton on (P(0), P(c) - c) from 40000 Halton seeds in [-3, 3]^4.
std::vector<Complex> newton_oracle_c(std::vector<Complex>* as) {
  std::vector<Complex> cs;
  for (int s = 1; s <= 40000; ++s) {
    Complex c(-3 + 6 * halton(s, 2), -3 + 6 * halton(s, 3)), a(-3 + 6 * halton(s, 5), -3 + 6 * halton(s, 7));
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      const Complex a2 = a * a, f1 = a2 * a, f2 = -c * c * c / 6.0 - c + a2 * a;
      const Complex j11 = 0, j12 = 3.0 * a2, j21 = -c * c / 2.0 - 1.0, j22 = 3.0 * a2;
      const Complex det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-300) break;
      const Complex dc = (j22 * f1 - j12 * f2) / det, da = (-j21 * f1 + j11 * f2) / det;
      c -= dc;
      a -= da;
      // a = 0 is a triple root, so a converges only linearly.
      if (std::abs(dc) + std::abs(da) < 1e-15 * (1 + std::abs(c))) {
        ok = true;
        break;
      }
      if (std::abs(c) > 1e6 || std::abs(a) > 1e6) break;
    }
    if (ok) {
      cs.push_back(c);
      as->push_back(a);
    }
  }
  return cs;
}

CriterionResult c9(Context&) {
  const auto res = pcf_solve(orbit_relation(0, 0, 1), orbit_relation(1, 0, 1));
  const double r6 = std::sqrt(6.0);
  const std::vector<std::pair<Complex, Complex>> want{{0, 0}, {Complex(0, r6), 0}, {Complex(0, -r6), 0}};
  double worst = 0;
  bool matched = !res.curve_detected && res.points.size() == want.size();
  for (const auto& w : want) {
    double best = 1e300;
    for (const auto& p : res.points) best = std::min(best, std::max(std::abs(p.c - w.first), std::abs(p.a - w.second)));
    worst = std::max(worst, best);
  }
  matched = matched && worst < 1e-10;

  std::vector<Complex> oa;
  const auto oc = newton_oracle_c(&oa);
  const auto oracle_c = distinct_sorted(oc, 1e-6);
  std::vector<Complex> solver_c;
  for (const auto& p : res.points) solver_c.push_back(p.c);
  double max_a = 0;
  for (const Complex& a : oa) max_a = std::max(max_a, std::abs(a));
  const bool oracle_ok = oracle_c.size() == solver_c.size() && sets_match(oracle_c, solver_c, 1e-6) && max_a < 1e-6;

  double hmax = 0;
  for (const auto& p : res.points) {
    double h;
    if (p.exact && p.exact->c.y() == 0 && p.exact->a.y() == 0)
      h = canonical_height(p.exact->c.x(), p.exact->a.x(), 1, 1, 1e-10);
    else
      h = g0g1G(CubicParam{p.c, p.a}, 1e-10).G.value;
    hmax = std::max(hmax, h);
  }
  const bool pass = matched && oracle_ok && hmax < 1e-6;
  return {9, "PCF solver on relations (0,1)/(0,1)", pass,
          std::to_string(res.points.size()) + " points, max error " + fmt("%.1e", worst) + ", oracle " + (oracle_ok ? "agrees" : "disagrees") +
              " (" + std::to_string(oracle_c.size()) + " clusters), max height " + fmt("%.1e", hmax)};
}

// Criterion 10: Per_1(0) against critical substitution.

CriterionResult c10(Context&) {
  const BiPoly f = perm_poly(1, QOmega(0)).poly();
  // A fixed point of multiplier 0 is a critical point c_i with P(c_i) = c_i.
  const CubicParamT<BiPoly> p{BiPoly::c(), BiPoly::a()};
  const std::array<BiPoly, 2> crit{BiPoly(), BiPoly::c()};
  BiPoly rest = f;
  std::array<int, 2> mult{0, 0};
  std::array<BiPoly, 2> factors;
  for (int i = 0; i < 2; ++i) {
    factors[static_cast<std::size_t>(i)] = squarefree_part(eval_P(p, crit[static_cast<std::size_t>(i)]) - crit[static_cast<std::size_t>(i)]);
    for (;;) {
      try {
        rest = divide_exact(rest, factors[static_cast<std::size_t>(i)]);
        ++mult[static_cast<std::size_t>(i)];
      } catch (const Error&) {
        break;
      }
    }
  }
  const BiPoly a3 = BiPoly::a() * BiPoly::a() * BiPoly::a();
  const BiPoly second = a3 - BiPoly::c() * BiPoly::c() * BiPoly::c() * QOmega(make_rational(1, 6)) - BiPoly::c();
  const bool shapes = is_associate(factors[0], BiPoly::a()) && is_associate(factors[1], second);
  const bool pass = shapes && rest.is_constant() && !rest.is_zero() && mult[0] > 0 && mult[1] > 0;
  return {10, "Per_1(0) factors into a^3 and a^3 - c^3/6 - c", pass,
          "a^" + std::to_string(mult[0]) + " * (" + to_string(factors[1]) + ")^" + std::to_string(mult[1]) + ", cofactor " +
              (rest.is_constant() ? "constant" : "nonconstant")};
}

// Criterion 11: multiplier valuations.

CriterionResult c11(Context&) {
  std::vector<std::pair<int, QPoly>> cases;
  for (long t : {0L, -1L, -2L}) cases.push_back({2, QPoly(std::vector<Rational>{Rational(-t), Rational(1)})});
  cases.push_back({3, QPoly::x()});
  cases.push_back({3, unicritical_t_poly(unicritical_u_poly(0, 2))});
  const std::vector<unsigned long> primes{2, 3, 5, 7, 11};
  int ran = 0, failed = 0;
  std::string bad;
  for (const auto& [d, tp] : cases)
    for (int m = 1; m <= 2; ++m) {
      const auto rep = verify_prop_multiplier(multiplier_poly(d, tp, m), primes);
      ++ran;
      if (!rep.pass) {
        ++failed;
        bad += " d=" + std::to_string(d) + ",m=" + std::to_string(m);
      }
    }
  return {11, "multiplier valuations for unicritical PCF maps", failed == 0,
          std::to_string(ran - failed) + "/" + std::to_string(ran) + " cases pass over p in {2,3,5,7,11}" + (bad.empty() ? "" : ";" + bad)};
}

// Criterion 12: Z-set probes.

CriterionResult c12(Context&) {
  const BiPoly sym = symmetry_curve();
  auto curve_is = [](const ZProbe& z, const BiPoly& want) { return z.kind == ZProbe::Kind::Curve && is_associate(z.curve, want); };
  const bool p00 = curve_is(z_probe(0, 0, -1), sym), p10 = curve_is(z_probe(1, 0, -1), sym), p101 = curve_is(z_probe(1, 0, 1), BiPoly::c());
  auto word = [](bool b) { return b ? "ok" : "wrong"; };
  return {12, "Z(q, m, zeta) probes", p00 && p10 && p101,
          std::string("Z(0,0,-1) ") + word(p00) + ", Z(1,0,-1) " + word(p10) + ", Z(1,0,1) " + word(p101)};
}

// Criterion 13: branch growth.

CriterionResult c13(Context&) {
  using K = BranchGrowth::Kind;
  struct Want {
    BiPoly curve;
    std::string name;
    std::array<K, 2> kind;
  };
  const std::vector<Want> wants{{BiPoly::a(), "a=0", {K::Bounded, K::Escaping}}, {BiPoly::c(), "c=0", {K::Escaping, K::Escaping}}};
  bool pass = true;
  std::string detail;
  for (const auto& w : wants) {
    bool ok = branch_count(w.curve) == 1;
    for (int Q = 6; Q <= 8; ++Q) {
      const auto bg = branch_growth(w.curve, 0, Q);
      for (int i = 0; i < 2; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        ok = ok && bg.kind[iu] == w.kind[iu];
        if (w.kind[iu] == K::Escaping) ok = ok && bg.rate[iu] && *bg.rate[iu] == 1;
      }
    }
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += w.name + (ok ? " stable for Q = 6..8" : " wrong or unstable");
  }
  return {13, "branch growth dichotomy", pass, detail};
}

// Criterion 14: equidistribution trend.

CriterionResult c14(Context& ctx) {
  const auto line = ParamLine::c_zero();
  const auto nu = bifurcation_density(line, Window{}, ctx.cfg.resolution, ctx.threads);
  std::vector<double> dist;
  std::string detail;
  for (int cap : ctx.cfg.caps) {
    dist.push_back(compare(pcf_on_line(line, cap), nu));
    detail += "cap " + std::to_string(cap) + " " + fmt("%.4e", dist.back()) + ", ";
  }
  bool mono = dist.size() >= 2;
  for (std::size_t i = 1; i < dist.size(); ++i) mono = mono && dist[i] < dist[i - 1];
  detail += "mask " + fmt("%.4f", nu.mask_fraction);
  return {14, "equidistribution trend on c = 0", mono && nu.mask_fraction < 0.05, detail};
}

using Runner = std::function<CriterionResult(Context&)>;

const std::vector<Runner>& runners() {
  static const std::vector<Runner> r{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, c14};
  return r;
}

CriterionResult timed(const Runner& f, Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  const int id = static_cast<int>(&f - runners().data()) + 1;
  try {
    r = f(ctx);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SelftestReport run_range(const RunConfig& cfg, int threads, const std::vector<int>& ids) {
  Context ctx{cfg, threads, std::nullopt};
  SelftestReport rep;
  rep.seed = cfg.seed;
  for (int id : ids) rep.criteria.push_back(timed(runners()[static_cast<std::size_t>(id - 1)], ctx));
  return rep;
}

}  // namespace

SelftestReport run_selftest(const RunConfig& cfg, const std::vector<int>& only) {
  cfg.validate();
  std::vector<int> ids = only;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int id : ids)
    if (id < 1 || id > kCriterionCount) throw Error(ErrorKind::InvalidArgument, "no criterion " + std::to_string(id));
  const bool with15 = ids.back() == kCriterionCount;
  if (with15) ids.pop_back();

  SelftestReport rep = run_range(cfg, cfg.threads, ids);
  if (with15) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> all;
    for (int i = 1; i < kCriterionCount; ++i) all.push_back(i);
    const int other = cfg.threads == 1 ? 4 : 1;
    const std::string a = ids == all ? to_json(rep).dump() : to_json(run_range(cfg, cfg.threads, all)).dump();
    const std::string b = to_json(run_range(cfg, other, all)).dump();
    CriterionResult r{kCriterionCount, "byte-identical reports across thread counts", a == b,
                      "threads " + std::to_string(cfg.threads) + " vs " + std::to_string(other) + ", " + std::to_string(a.size()) + " bytes"};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.criteria.push_back(r);
  }
  return rep;
}

Json to_json(const SelftestReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["criteria"] = Json::array();
  for (const auto& c : r.criteria) j["criteria"].push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

std::string format_table(const SelftestReport& r) {
  std::ostringstream os;
  for (const auto& c : r.criteria) os << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << "  (" << c.detail << ")\n";
  return os.str();
}

}  // namespace pcfdyn
