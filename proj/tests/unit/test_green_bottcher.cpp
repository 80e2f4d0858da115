#include "pcfdyn/boettcher.hpp"
#include "pcfdyn/green.hpp"

#include <doctest.h>

#include <random>

using namespace pcfdyn;

namespace {

// Escape rate by brute iteration: L_n = log|w_n| - log(3)/2 triples per step
// once |w| is large, so g = 3^-n L_n up to O(1/|w|).
std::optional<double> brute_green(const CubicParam& p, Complex z) {
  std::complex<long double> w(z.real(), z.imag());
  const std::complex<long double> c(p.c.real(), p.c.imag()), a(p.a.real(), p.a.imag());
  const std::complex<long double> a3 = a * a * a;
  long double scale = 1;
  for (int n = 0; n < 400; ++n) {
    if (std::abs(w) > 1e60L) return static_cast<double>(scale * (std::log(std::abs(w)) - std::log(3.0L) / 2));
    w = w * w * w / 3.0L - c * w * w / 2.0L + a3;
    scale /= 3;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("green_arch agrees with brute-force escape rate") {
  std::mt19937 g(4);
  std::uniform_real_distribution<double> u(-2, 2);
  int compared = 0;
  for (int t = 0; t < 200; ++t) {
    const CubicParam p{Complex(u(g), u(g)), Complex(u(g), u(g))};
    const Complex z(u(g), u(g));
    const auto want = brute_green(p, z);
    if (!want) continue;
    const auto got = green_arch(p, z, 1e-12);
    CHECK(std::abs(got.value - *want) < 1e-9);
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("g(P(z)) = 3 g(z) and g >= 0") {
  std::mt19937 g(8);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 100; ++t) {
    const CubicParam p{Complex(u(g), u(g)), Complex(u(g), u(g))};
    const Complex z(u(g), u(g));
    try {
      const double g1 = green_arch(p, z, 1e-12).value, g3 = green_arch(p, eval_P(p, z), 1e-12).value;
      CHECK(g1 >= 0);
      CHECK(std::abs(g3 - 3 * g1) < 1e-9 * std::max(1.0, g3));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Undecided);
    }
  }
}

TEST_CASE("G is the max of the critical values") {
  const CubicParam p{Complex(1.5, 0.3), Complex(-0.8, 1.1)};
  const auto cg = g0g1G(p, 1e-12);
  CHECK(cg.G.value == doctest::Approx(std::max(cg.g0.value, cg.g1.value)));
}

TEST_CASE("finite places: closed form for p >= 5 and PCF height zero") {
  CHECK(green_finite(5, make_rational(1, 25), Rational(3)) == doctest::Approx(2 * std::log(5.0)));
  CHECK(green_finite(7, Rational(1), Rational(2)) == 0);
  CHECK(canonical_height(Rational(0), Rational(0), 1, 1, 1e-10) < 1e-9);
  // (c, a) = (0, 2): P(0) = 8 escapes.
  CHECK(canonical_height(Rational(0), Rational(2), 1, 1, 1e-10) > 0.1);
}

TEST_CASE("p-adic critical Green values at 2 and 3 are decided on simple parameters") {
  // a = 0, c = 0: both critical points are fixed.
  const auto z = green_padic_critical(2, Rational(0), Rational(0));
  CHECK(z.g0 == 0);
  CHECK(z.g1 == 0);
  // a = 1/2: |a^3|_2 = 8 and the orbit of 0 escapes 2-adically.
  const auto e = green_padic_critical(2, Rational(0), make_rational(1, 2));
  CHECK(e.g0 > 0);
}

TEST_CASE("Boettcher closed forms for a1 and a2") {
  const auto e = bottcher_coeffs(3);
  const BiPoly c = BiPoly::c(), a = BiPoly::a();
  const QOmega w = QOmega::omega();
  CHECK(e.a(1) == c * c * (w * QOmega(Rational(-1, 4))));
  CHECK(e.a(2) == c * c * c * (w * QOmega(make_rational(-5, 24))) + (a * a * a - c * QOmega(Rational(1, 2))) * w);
}

TEST_CASE("functional equation holds and detects a perturbation") {
  auto e = bottcher_coeffs(8);
  CHECK(verify_functional_equation(e).pass);
  e.coeffs[3] += BiPoly(1L);
  const auto r = verify_functional_equation(e);
  CHECK_FALSE(r.pass);
}

TEST_CASE("coefficient bounds: 2-adic holds, 3-adic fails only at k = 2 and 8") {
  const auto rep = coefficient_bounds_report(bottcher_coeffs(12));
  for (const auto& row : rep.rows) {
    CHECK(row.degree == row.k + 1);
    CHECK(row.two_adic_ok);
    CHECK(row.denominators_ok);
    CHECK(row.three_adic_ok == (row.k != 2 && row.k != 8));
    // The weaker bound 3^((k+1)/2) holds throughout.
    CHECK(row.max_neg_twice_v3 <= row.k + 1);
  }
}

TEST_CASE("numeric coefficients equal the symbolic ones") {
  const auto e = bottcher_coeffs(10);
  const CubicParam p{Complex(0.7, -0.3), Complex(-1.2, 0.5)};
  const auto num = bottcher_coeffs_numeric(p, 10);
  for (int k = 1; k <= 10; ++k) {
    const Complex s = e.a(k).eval_complex(p.c, p.a);
    CHECK(std::abs(num[static_cast<std::size_t>(k - 1)] - s) < 1e-10 * std::max(1.0, std::abs(s)));
  }
}

TEST_CASE("series evaluation matches the pull-back oracle and log|phi| = g") {
  std::mt19937 g(12);
  std::uniform_real_distribution<double> u(-2, 2), ang(0, 6.283185307179586);
  for (int t = 0; t < 30; ++t) {
    const CubicParam p{Complex(u(g), u(g)), Complex(u(g), u(g))};
    const double rb = 2 * std::max({1.0, std::abs(p.c), std::abs(p.a)});
    const Complex z = std::polar(6 * rb + std::exp(green_bounds(p).rho + g0g1G(p, 1e-10).G.value), ang(g));
    REQUIRE(bottcher_domain_ok(p, z));
    const auto v = bottcher_eval(p, z, 40);
    CHECK(std::abs(v.value - bottcher_numeric(p, z)) < 1e-9 * std::abs(v.value));
    CHECK(std::abs(std::log(std::abs(v.value)) - green_arch(p, z, 1e-13).value) < 1e-9);
  }
}

TEST_CASE("evaluation outside the domain is refused") {
  const CubicParam p{Complex(1, 0), Complex(1, 0)};
  CHECK_THROWS_AS(bottcher_eval(p, Complex(1.5, 0), 10), Error);
}
