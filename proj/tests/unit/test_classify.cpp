#include "pcfdyn/classify.hpp"
#include "pcfdyn/green.hpp"
#include "pcfdyn/roots.hpp"

#include <doctest.h>

#include <random>

using namespace pcfdyn;

namespace {

// A point on 12a^3 = c^3 + 6c.
CubicParam on_symmetry_curve(Complex c) {
  return {c, std::pow((c * c * c + 6.0 * c) / 12.0, 1.0 / 3)};
}

}  // namespace

TEST_CASE("z -> -z + c commutes with P exactly on the symmetry curve") {
  for (const auto& co : commutator_on_curve(0, -1, symmetry_curve())) CHECK(co.is_zero());
  bool nonzero = false;
  for (const auto& co : commutator_on_curve(0, -1, BiPoly::a())) nonzero = nonzero || !co.is_zero();
  CHECK(nonzero);
  // Q = P commutes with P everywhere.
  for (const auto& co : commutator_on_curve(1, 1, BiPoly::a())) CHECK(co.is_zero());
}

TEST_CASE("numeric commutation on sampled symmetry-curve points") {
  std::mt19937 g(2);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    const auto p = on_symmetry_curve(Complex(u(g), u(g)));
    const Complex z(u(g), u(g));
    const Complex lhs = -eval_P(p, z) + p.c, rhs = eval_P(p, -z + p.c);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
    const auto w = z_membership(0, 0, Complex(-1, 0), p);
    CHECK(w.member);
  }
}

TEST_CASE("collision curves and the exclusion flag") {
  const auto c11 = collision_curve(1, 1);
  CHECK(c11.excluded);
  CHECK(is_associate(c11.poly, BiPoly::c() * BiPoly::c() * BiPoly::c()));
  CHECK_FALSE(collision_curve(2, 1).excluded);
  CHECK_THROWS_AS(collision_curve(5, 1), Error);
}

TEST_CASE("Z probes for zeta = +-1") {
  const BiPoly sym = symmetry_curve();
  const auto p0 = z_probe(0, 0, -1);
  CHECK(p0.kind == ZProbe::Kind::Curve);
  CHECK(is_associate(p0.curve, sym));
  const auto p1 = z_probe(1, 0, -1);
  CHECK(p1.kind == ZProbe::Kind::Curve);
  CHECK(is_associate(p1.curve, sym));
  const auto q = z_probe(1, 0, 1);
  CHECK(q.kind == ZProbe::Kind::Curve);
  CHECK(is_associate(q.curve, BiPoly::c()));
  CHECK(z_probe(1, 1, -1).kind == ZProbe::Kind::Finite);
}

TEST_CASE("numeric probe: curves for zeta = +-1, finite for zeta = i") {
  CHECK(z_probe_numeric(1, 0, Complex(-1, 0), 3).kind == ZProbe::Kind::Curve);
  CHECK(z_probe_numeric(1, 0, Complex(0, 1), 3).kind == ZProbe::Kind::Finite);
}

TEST_CASE("critical sets are permuted by the symmetry") {
  std::mt19937 g(6);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 5; ++t) {
    const auto p = on_symmetry_curve(Complex(u(g), u(g)));
    CHECK(critical_set_permutation_check(p, 0, 1, -1));
    CHECK(critical_set_permutation_check(p, 0, 2, -1));
  }
  // (P^j)' has degree 3^j - 1 counted with multiplicity.
  CHECK(critical_set(CubicParam{Complex(0.3, 0), Complex(0.2, 0.1)}, 2).size() == 8);
}

TEST_CASE("g0 = g1 on the symmetry curve") {
  std::mt19937 g(10);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 10; ++t) {
    const auto p = on_symmetry_curve(Complex(u(g), u(g)));
    const auto cg = g0g1G(p, 1e-11);
    CHECK(std::abs(cg.g0.value - cg.g1.value) < 1e-8);
  }
}

TEST_CASE("branch growth dichotomy on a = 0 and c = 0") {
  using K = BranchGrowth::Kind;
  for (int Q = 6; Q <= 8; ++Q) {
    const auto a0 = branch_growth(BiPoly::a(), 0, Q);
    CHECK(a0.kind[0] == K::Bounded);
    CHECK(a0.kind[1] == K::Escaping);
    REQUIRE(a0.rate[1]);
    CHECK(*a0.rate[1] == 1);
    const auto c0 = branch_growth(BiPoly::c(), 0, Q);
    CHECK(c0.kind[0] == K::Escaping);
    CHECK(c0.kind[1] == K::Escaping);
  }
  // On {a = 0} the order of P^q(c) is -3^q exactly.
  const auto a0 = branch_growth(BiPoly::a(), 0, 5);
  long want = -1;
  for (int q = 1; q <= 5; ++q) CHECK(a0.orders[1][static_cast<std::size_t>(q - 1)] == (want *= 3));
}

TEST_CASE("symmetry curve has three branches, all escaping at rate 1") {
  const BiPoly sym = symmetry_curve();
  REQUIRE(branch_count(sym) == 3);
  for (int b = 0; b < 3; ++b) {
    const auto bg = branch_growth(sym, b, 6);
    for (int i = 0; i < 2; ++i) {
      CHECK(bg.kind[static_cast<std::size_t>(i)] == BranchGrowth::Kind::Escaping);
      REQUIRE(bg.rate[static_cast<std::size_t>(i)]);
      CHECK(*bg.rate[static_cast<std::size_t>(i)] == 1);
    }
  }
}
