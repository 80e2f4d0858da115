#include "pcfdyn/dynamics.hpp"
#include "pcfdyn/periodic.hpp"
#include "pcfdyn/roots.hpp"

#include <doctest.h>

#include <random>

using namespace pcfdyn;

TEST_CASE("critical points are 0 and c") {
  const CubicParam p{Complex(0.7, -0.2), Complex(0.3, 0.9)};
  CHECK(std::abs(eval_dP(p, Complex(0))) == 0);
  CHECK(std::abs(eval_dP(p, p.c)) < 1e-15);
  // P(z) = z^3/3 - c z^2/2 + a^3 by hand at z = 2.
  const Complex z(2, 0);
  CHECK(std::abs(eval_P(p, z) - (8.0 / 3 - p.c * 2.0 + p.a * p.a * p.a)) < 1e-14);
}

TEST_CASE("dynatomic degrees and Moebius") {
  CHECK(dynatomic_degree(1) == 3);
  CHECK(dynatomic_degree(2) == 6);
  CHECK(dynatomic_degree(3) == 24);
  CHECK(dynatomic_degree(4) == 72);
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(7) == -1);
}

TEST_CASE("cycles have the right count, period and holomorphic index") {
  std::mt19937 g(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 10; ++t) {
    const CubicParam p{Complex(u(g), u(g)), Complex(u(g), u(g))};
    const auto fixed = find_cycles(p, 1);
    REQUIRE(fixed.size() == 3);
    // Sum of 1/(1 - lambda) over the finite fixed points of a polynomial is 0.
    Complex s = 0;
    for (const auto& cy : fixed) s += 1.0 / (1.0 - cy.multiplier);
    CHECK(std::abs(s) < 1e-8);
    const auto two = find_cycles(p, 2);
    CHECK(two.size() == 3);
    for (const auto& cy : two) {
      REQUIRE(cy.points.size() == 2);
      CHECK(std::abs(eval_Pn(p, cy.points[0], 2) - cy.points[0]) < 1e-9);
      CHECK(std::abs(eval_P(p, cy.points[0]) - cy.points[0]) > 1e-6);
      const Complex lam = eval_dP(p, cy.points[0]) * eval_dP(p, cy.points[1]);
      CHECK(std::abs(lam - cy.multiplier) < 1e-8 * std::max(1.0, std::abs(lam)));
    }
  }
}

TEST_CASE("symbolic iterates agree with numeric iteration") {
  const auto P3 = iterate_poly(BiPoly::c(), BiPoly::a(), 3);
  const CubicParam p{Complex(0.4, 0.1), Complex(-0.3, 0.5)};
  const Complex z(0.2, -0.7);
  Complex v = 0;
  for (int i = P3.degree(); i >= 0; --i) v = v * z + P3.coeff(i).eval_complex(p.c, p.a);
  CHECK(std::abs(v - eval_Pn(p, z, 3)) < 1e-12);
}

TEST_CASE("symbolic dynatomic specializes to the pointwise one") {
  const auto D = dynatomic(2);
  const ExactParam p{QOmega(Rational(1, 2)), QOmega(Rational(0), Rational(1))};
  const auto direct = dynatomic_at(p, 2);
  REQUIRE(D.poly.degree() == direct.degree());
  for (int i = 0; i <= direct.degree(); ++i) CHECK(D.poly.coeff(i).eval(p.c, p.a) == direct.coeff(i));
}

TEST_CASE("Per_1(0) is a^3 (a^3 - c^3/6 - c) up to a unit") {
  const BiPoly a = BiPoly::a(), c = BiPoly::c();
  const BiPoly want = a * a * a * (a * a * a - c * c * c * QOmega(make_rational(1, 6)) - c);
  CHECK(is_associate(perm_poly(1, QOmega(0)).poly(), want));
}

TEST_CASE("Per_m on a line agrees with the specialized symbolic polynomial") {
  const QOmega lam(3), c0(Rational(1, 2));
  const auto line = perm_poly_at(2, lam, c0);
  const auto full = perm_poly(2, lam).poly().specialize(Var::C, c0);
  // Both are defined up to a constant factor.
  REQUIRE(line.degree() == full.degree());
  const QOmega ratio = line.coeff(line.degree()) / full.coeff(full.degree());
  for (int i = 0; i <= line.degree(); ++i) CHECK(line.coeff(i) == full.coeff(i) * ratio);
}

TEST_CASE("Per_m(lambda) vanishes where a cycle has multiplier lambda") {
  const auto pp = perm_poly(2, QOmega(Rational(1, 2)));
  const auto samples = perm_sample(pp, Complex(0.3, 0.2), true);
  REQUIRE(!samples.empty());
  int checked = 0;
  for (const auto& s : samples) {
    if (!s.exact_period_ok) continue;
    double best = 1e9;
    for (const auto& cy : find_cycles(CubicParam{Complex(0.3, 0.2), s.a}, 2)) best = std::min(best, std::abs(cy.multiplier - 0.5));
    CHECK(best < 1e-6);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("leading form of P^n(0) and P^n(c)") {
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 2; ++i) {
      const auto r = leading_form(n, i);
      CHECK(r.matches_derived);
      CHECK(r.infinity_points_ok);
    }
  // The quoted scalar sqrt(3)^(1 - 3^n) is one step off for n >= 2.
  CHECK_FALSE(leading_form(2, 0).matches_quoted);
}
