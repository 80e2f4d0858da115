#include "pcfdyn/pcf.hpp"
#include "pcfdyn/roots.hpp"
#include "pcfdyn/serialize.hpp"

#include <doctest.h>

using namespace pcfdyn;

namespace {

// Value with partials in (c, a).
struct D {
  Complex v, dc, da;
};
D operator+(D x, D y) { return {x.v + y.v, x.dc + y.dc, x.da + y.da}; }
D operator-(D x, D y) { return {x.v - y.v, x.dc - y.dc, x.da - y.da}; }
D operator*(D x, D y) { return {x.v * y.v, x.dc * y.v + x.v * y.dc, x.da * y.v + x.v * y.da}; }
D scale(D x, double s) { return {x.v * s, x.dc * s, x.da * s}; }

D relation(int i, int n, int k, Complex c, Complex a) {
  const D C{c, 1, 0}, A{a, 0, 1};
  const D a3 = A * A * A;
  D w = i == 0 ? D{0, 0, 0} : C;
  D wn{};
  for (int s = 0; s < n + k; ++s) {
    if (s == n) wn = w;
    w = scale(w * w * w, 1.0 / 3) - scale(C * w * w, 0.5) + a3;
  }
  if (n + k == n) wn = w;
  return w - wn;
}

double halton(int i, int base) {
  double f = 1, r = 0;
  for (; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

// Newton from Halton seeds in a box; returns converged (c, a) pairs.
std::vector<std::pair<Complex, Complex>> newton_oracle(std::array<int, 4> w, double box, int seeds) {
  std::vector<std::pair<Complex, Complex>> out;
  for (int s = 1; s <= seeds; ++s) {
    Complex c(box * (2 * halton(s, 2) - 1), box * (2 * halton(s, 3) - 1));
    Complex a(box * (2 * halton(s, 5) - 1), box * (2 * halton(s, 7) - 1));
    for (int it = 0; it < 300; ++it) {
      const D f = relation(0, w[0], w[1], c, a), g = relation(1, w[2], w[3], c, a);
      const Complex det = f.dc * g.da - f.da * g.dc;
      if (std::abs(det) < 1e-300) break;
      const Complex dc = (g.da * f.v - f.da * g.v) / det, da = (-g.dc * f.v + f.dc * g.v) / det;
      c -= dc;
      a -= da;
      if (!(std::abs(c) < 1e3 && std::abs(a) < 1e3)) break;
      if (std::abs(dc) + std::abs(da) < 1e-14 * (1 + std::abs(c) + std::abs(a))) {
        out.push_back({c, a});
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("orbit relations in closed form") {
  CHECK(to_string(orbit_relation(0, 0, 1).poly) == "a^3");
  CHECK(to_string(orbit_relation(1, 0, 1).poly) == "a^3 - 1/6*c^3 - c");
  CHECK(orbit_relation(0, 1, 2).poly.total_degree() == 27);
  CHECK_THROWS_AS(orbit_relation(0, 2, 3, 81), Error);
}

TEST_CASE("relation (0,1)/(0,1) gives (0,0) and (+-i sqrt 6, 0)") {
  const auto r = pcf_solve(orbit_relation(0, 0, 1), orbit_relation(1, 0, 1));
  CHECK_FALSE(r.curve_detected);
  REQUIRE(r.points.size() == 3);
  for (const auto& p : r.points) {
    CHECK(p.certified);
    CHECK(std::abs(p.a) < 1e-12);
    const bool ok = std::abs(p.c) < 1e-12 || std::abs(std::abs(p.c) - std::sqrt(6.0)) < 1e-12;
    CHECK(ok);
  }
}

TEST_CASE("solver agrees with a seeded Newton oracle") {
  const std::vector<std::array<int, 4>> systems{{0, 1, 0, 1}, {0, 1, 1, 1}, {0, 2, 0, 1}, {1, 1, 0, 2}};
  for (const auto& w : systems) {
    CAPTURE(w[0]);
    CAPTURE(w[1]);
    CAPTURE(w[2]);
    CAPTURE(w[3]);
    const auto res = pcf_solve(orbit_relation(0, w[0], w[1]), orbit_relation(1, w[2], w[3]));
    REQUIRE_FALSE(res.curve_detected);
    double box = 1;
    for (const auto& p : res.points) box = std::max({box, 1.1 * std::abs(p.c), 1.1 * std::abs(p.a)});
    const auto oracle = newton_oracle(w, box, 20000);
    REQUIRE(!oracle.empty());
    // Every oracle limit is a solver point; the oracle may miss small basins.
    // Newton only reaches eps^(1/m) at a root of multiplicity m, and the
    // (1,1) relation for c0 is a^6 (a^3/3 - c/2). Solver points are at
    // least 0.1 apart, so 1e-2 still identifies them.
    for (const auto& [c, a] : oracle) {
      double best = 1e9;
      for (const auto& p : res.points) best = std::min(best, std::abs(p.c - c) + std::abs(p.a - a));
      CHECK(best < 1e-2);
    }
    for (std::size_t i = 0; i < res.points.size(); ++i)
      for (std::size_t j = i + 1; j < res.points.size(); ++j)
        CHECK(std::abs(res.points[i].c - res.points[j].c) + std::abs(res.points[i].a - res.points[j].a) > 0.1);
    // Every solver point satisfies both relations.
    for (const auto& p : res.points) {
      CHECK(std::abs(relation(0, w[0], w[1], p.c, p.a).v) < 1e-8 * (1 + std::pow(std::abs(p.c) + std::abs(p.a), 9)));
      CHECK(std::abs(relation(1, w[2], w[3], p.c, p.a).v) < 1e-8 * (1 + std::pow(std::abs(p.c) + std::abs(p.a), 9)));
    }
  }
}

TEST_CASE("a shared component is reported as a curve") {
  const auto r = pcf_solve(orbit_relation(0, 0, 1), orbit_relation(0, 0, 1));
  CHECK(r.curve_detected);
  CHECK(is_associate(r.component, BiPoly::a()));
  CHECK_THROWS_AS(solve_system(BiPoly::a() * BiPoly::c(), BiPoly::a()), Error);
}

TEST_CASE("exact PCF certification") {
  CHECK(certify_pcf(ExactParam{QOmega(0), QOmega(0)}));
  // (c, a) = (0, 1): P(0) = 1, P(1) = 4/3, ... escapes.
  CHECK_FALSE(certify_pcf(ExactParam{QOmega(0), QOmega(1)}));
}

TEST_CASE("Krawczyk box rejects a box without a zero") {
  const BiPoly f = orbit_relation(0, 0, 1).poly, g = orbit_relation(1, 0, 1).poly;
  CHECK(certify_box(f - BiPoly(QOmega(Rational(1, 1000))), g, Complex(0, 2.449), Complex(0.2, 0), 1e-3) == false);
  CHECK(certify_box(BiPoly::c() - BiPoly(1L), BiPoly::a() - BiPoly::c(), Complex(1, 0), Complex(1, 0), 1e-8));
}

TEST_CASE("enumeration at cap 9 is certified, consistent and thread independent") {
  const auto e1 = pcf_enumerate(9, 1);
  const auto e4 = pcf_enumerate(9, 4);
  CHECK(e1.errors.empty());
  REQUIRE(e1.points.size() == e4.points.size());
  for (std::size_t i = 0; i < e1.points.size(); ++i) {
    CHECK(e1.points[i].c == e4.points[i].c);
    CHECK(e1.points[i].a == e4.points[i].a);
    CHECK(e1.points[i].certified);
  }
  CHECK(e1.points.size() > 20);
  CHECK(dedupe_points(e1.points).size() == e1.points.size());
  // Every point satisfies its witness relations.
  for (const auto& p : e1.points) {
    const auto& w = p.witness;
    CHECK(std::abs(relation(0, w[0], w[1], p.c, p.a).v) < 1e-7);
    CHECK(std::abs(relation(1, w[2], w[3], p.c, p.a).v) < 1e-7);
  }
}
