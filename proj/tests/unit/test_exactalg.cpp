#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/resultant.hpp"
#include "pcfdyn/roots.hpp"
#include "pcfdyn/serialize.hpp"

#include <doctest.h>

#include <random>

using namespace pcfdyn;

namespace {

Rational rnd_rational(std::mt19937& g) {
  std::uniform_int_distribution<int> n(-9, 9), d(1, 6);
  return make_rational(n(g), d(g));
}

QOmega rnd_qomega(std::mt19937& g) { return QOmega(rnd_rational(g), rnd_rational(g)); }

UniPoly<Rational> rnd_upoly(std::mt19937& g, int deg) {
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.push_back(rnd_rational(g));
  if (c.back() == 0) c.back() = 1;
  return UniPoly<Rational>(std::move(c));
}

BiPoly rnd_bipoly(std::mt19937& g, int deg) {
  std::uniform_int_distribution<int> n(-3, 3);
  BiPoly p;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) p.add_term(i, j, QOmega(n(g)));
  return p;
}

}  // namespace

TEST_CASE("omega squares to 1/3 and embeds as 1/sqrt(3)") {
  const QOmega w = QOmega::omega();
  CHECK(w * w == QOmega(Rational(1, 3)));
  CHECK(std::abs(w.to_complex() - Complex(1 / std::sqrt(3.0), 0)) < 1e-15);
}

TEST_CASE("QOmega arithmetic is a field and to_complex is a ring map") {
  std::mt19937 g(7);
  for (int i = 0; i < 200; ++i) {
    const QOmega x = rnd_qomega(g), y = rnd_qomega(g);
    CHECK(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-12);
    CHECK(std::abs((x + y).to_complex() - (x.to_complex() + y.to_complex())) < 1e-12);
    if (!x.is_zero()) CHECK(x * x.inverse() == QOmega(1));
  }
}

TEST_CASE("rationals are canonical and round-trip through text") {
  CHECK(make_rational(14, 7) == Rational(2));
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK(parse_rational("-3/2") == make_rational(-3, 2));
  CHECK(valuation(make_rational(40, 9), 2) == 3);
  CHECK(valuation(make_rational(40, 9), 3) == -2);
  CHECK(valuation(Rational(0), 5) == kInfiniteValuation);
}

TEST_CASE("polynomial division satisfies a = q b + r") {
  std::mt19937 g(11);
  for (int i = 0; i < 50; ++i) {
    const auto a = rnd_upoly(g, 7), b = rnd_upoly(g, 3);
    const auto [q, r] = divmod_exact_lead(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("resultant matches lc(f)^deg g times the product of g over the roots of f") {
  std::mt19937 g(3);
  std::uniform_int_distribution<int> n(-5, 5);
  for (int t = 0; t < 30; ++t) {
    std::vector<QOmega> fc, gc;
    for (int i = 0; i < 4; ++i) fc.push_back(QOmega(n(g)));
    fc.push_back(QOmega(1 + std::abs(n(g))));
    for (int i = 0; i < 3; ++i) gc.push_back(QOmega(n(g)));
    gc.push_back(QOmega(1 + std::abs(n(g))));
    const UniPoly<QOmega> f(fc), h(gc);
    Complex prod = std::pow(fc.back().to_complex(), h.degree());
    for (const Complex& r : complex_roots(f)) prod *= h.eval(r, [](const QOmega& q) { return q.to_complex(); });
    const Complex res = resultant(f, h).to_complex();
    CHECK(std::abs(res - prod) <= 1e-7 * std::max(1.0, std::abs(res)));
    CHECK(resultant_subresultant(f, h) == resultant_sylvester(f, h));
  }
}

TEST_CASE("bivariate resultant eliminates a") {
  const BiPoly c = BiPoly::c(), a = BiPoly::a();
  const BiPoly f = a - c * c, h = a * a - c - BiPoly(1L);
  const BiPoly r = resultant(f, h, Var::A);
  CHECK(is_associate(r, c * c * c * c - c - BiPoly(1L)));
}

TEST_CASE("bivariate gcd recovers a planted common factor") {
  std::mt19937 g(5);
  for (int t = 0; t < 10; ++t) {
    const BiPoly f = rnd_bipoly(g, 2) + BiPoly::c() * BiPoly::c() * BiPoly::c();
    const BiPoly h = rnd_bipoly(g, 2) + BiPoly::a() * BiPoly::a() * BiPoly::a();
    const BiPoly common = BiPoly::a() - BiPoly::c() * BiPoly::c() + BiPoly(2L);
    const BiPoly d = gcd(f * common, h * common);
    // f and h are coprime for these seeds unless gcd(f, h) is nonconstant.
    const BiPoly fh = gcd(f, h);
    CHECK(is_associate(d, common * fh));
  }
}

TEST_CASE("squarefree part removes repeated factors") {
  const BiPoly f = BiPoly::a() - BiPoly::c(), h = BiPoly::a() * BiPoly::a() + BiPoly::c();
  CHECK(is_associate(squarefree_part(f * f * f * h), f * h));
}

TEST_CASE("JSON round trip is exact") {
  std::mt19937 g(9);
  for (int t = 0; t < 20; ++t) {
    BiPoly p;
    for (int i = 0; i < 4; ++i) p.add_term(i, 3 - i, rnd_qomega(g));
    CHECK(bipoly_from_json(to_json(p)) == p);
    const QOmega q = rnd_qomega(g);
    CHECK(qomega_from_json(to_json(q)) == q);
  }
  CHECK(to_string(BiPoly::a() * BiPoly::a() * BiPoly::a() - BiPoly::c()) == "a^3 - c");
}

TEST_CASE("exact roots find the rational and omega-rational roots") {
  // (x - 1/2)(x - 2 omega)(x^2 + 1)
  const UniPoly<QOmega> x = UniPoly<QOmega>::x();
  const auto f = (x - UniPoly<QOmega>::constant(QOmega(Rational(1, 2)))) *
                 (x - UniPoly<QOmega>::constant(QOmega(Rational(0), Rational(2)))) * (x * x + UniPoly<QOmega>::constant(QOmega(1)));
  const auto r = exact_roots(f);
  CHECK(r.size() == 2);
}

TEST_CASE("complex roots reproduce the coefficients") {
  std::mt19937 g(21);
  std::uniform_int_distribution<int> n(-9, 9);
  for (int t = 0; t < 20; ++t) {
    std::vector<QOmega> co;
    for (int i = 0; i < 12; ++i) co.push_back(QOmega(n(g)));
    co.push_back(QOmega(1));
    const auto roots = complex_roots(UniPoly<QOmega>(co));
    REQUIRE(roots.size() == 12);
    // Expand prod (x - r) and compare with the monic input.
    std::vector<Complex> e{Complex(1)};
    for (const Complex& r : roots) {
      std::vector<Complex> next(e.size() + 1, Complex(0));
      for (std::size_t i = 0; i < e.size(); ++i) {
        next[i + 1] += e[i];
        next[i] -= r * e[i];
      }
      e = next;
    }
    for (std::size_t i = 0; i < co.size(); ++i) CHECK(std::abs(e[i] - co[i].to_complex()) < 1e-7);
  }
}
