#include "pcfdyn/equidist.hpp"
#include "pcfdyn/green.hpp"

#include <doctest.h>

#include <numeric>

using namespace pcfdyn;

TEST_CASE("PCF atoms on c = 0") {
  const auto line = ParamLine::c_zero();
  CHECK(pcf_on_line(line, 1).atoms.size() == 1);
  const auto two = pcf_on_line(line, 2);
  REQUIRE(two.atoms.size() == 7);
  int sextic = 0;
  for (const Complex& a : two.atoms) {
    if (std::abs(a) < 1e-12) continue;
    CHECK(std::abs(std::pow(a, 6) + 3.0) < 1e-9);
    ++sextic;
  }
  CHECK(sextic == 6);
  std::size_t prev = 0;
  for (int cap = 1; cap <= 4; ++cap) {
    const auto mu = pcf_on_line(line, cap);
    CHECK(mu.atoms.size() > prev);
    prev = mu.atoms.size();
    CHECK(std::accumulate(mu.weights.begin(), mu.weights.end(), 0.0) == doctest::Approx(1.0));
    // Each atom is PCF: both critical values decided bounded.
    for (const Complex& a : mu.atoms) CHECK(g0g1G(line.at(a), 1e-10).G.value < 1e-9);
  }
}

TEST_CASE("PCF atoms on a = 0 include the fixed-point parameters") {
  const auto mu = pcf_on_line(ParamLine::a_zero(), 1);
  // P(c) = c with a = 0: c (c^2 + 6) = 0.
  CHECK(mu.atoms.size() == 3);
}

TEST_CASE("renormalization invariance of the density") {
  const int N = 32;
  const Window w;
  std::vector<double> g(static_cast<std::size_t>(N + 2) * (N + 2));
  const double h = w.width() / N;
  const auto line = ParamLine::c_zero();
  for (int j = -1; j <= N; ++j)
    for (int i = -1; i <= N; ++i)
      g[static_cast<std::size_t>(j + 1) * (N + 2) + (i + 1)] =
          green_arch(line.at(Complex(w.x0 + (i + 0.5) * h, w.y0 + (j + 0.5) * h)), Complex(0), 1e-8).value;
  const auto base = density_from_potential(g, w, N);
  for (double s : {0.5, 3.0, 17.0}) {
    auto gs = g;
    for (auto& v : gs) v *= s;
    const auto d = density_from_potential(gs, w, N);
    CHECK(d.unnormalized_mass == doctest::Approx(s * base.unnormalized_mass).epsilon(1e-12));
    for (std::size_t k = 0; k < d.values.size(); ++k) CHECK(std::abs(d.values[k] - base.values[k]) <= 1e-12);
  }
}

TEST_CASE("undecided nodes are masked") {
  const int N = 8;
  std::vector<double> g(static_cast<std::size_t>(N + 2) * (N + 2), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = static_cast<double>(k % 7);
  g[5 * (N + 2) + 5] = std::numeric_limits<double>::quiet_NaN();
  const auto d = density_from_potential(g, Window{}, N);
  // The NaN node touches itself and its four neighbours.
  CHECK(d.mask_fraction == doctest::Approx(5.0 / (N * N)));
  CHECK(std::accumulate(d.values.begin(), d.values.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("density is small where g is harmonic or zero") {
  const auto line = ParamLine::c_zero();
  const Window w{-3, 3, -3, 3};
  const auto d = bifurcation_density(line, w, 96, 2);
  const double h = w.width() / 96;
  CHECK(d.mask_fraction < 0.05);
  for (int j = 0; j < 96; ++j)
    for (int i = 0; i < 96; ++i) {
      const Complex s = d.cell_center(i, j);
      const double v = d.values[static_cast<std::size_t>(j) * 96 + i] * d.unnormalized_mass;
      // Deep in the escape region (|a| > 2.6) and near a = 0 (bounded).
      if (std::abs(s) > 2.6 || std::abs(s) < 0.3) CHECK(v < 50 * h * h);
    }
}

TEST_CASE("unnormalized mass stabilizes as the window grows") {
  const auto line = ParamLine::c_zero();
  const auto m3 = bifurcation_density(line, Window{-3, 3, -3, 3}, 192, 2).unnormalized_mass;
  const auto m4 = bifurcation_density(line, Window{-4, 4, -4, 4}, 256, 2).unnormalized_mass;
  CHECK(std::abs(m3 - m4) < 0.02 * m4);
}

TEST_CASE("compare: zero against itself, large against a translate") {
  const auto mu = pcf_on_line(ParamLine::c_zero(), 3);
  const Window w;
  CHECK(compare(mu, mu, w) == 0);
  auto moved = mu;
  for (auto& a : moved.atoms) a += Complex(w.width(), 0);
  CHECK(compare(mu, moved, w) > 0.3);
  // A density grid built from the atoms themselves is close to them.
  DensityGrid grid;
  grid.window = w;
  grid.resolution = 400;
  grid.values.assign(400 * 400, 0.0);
  for (std::size_t k = 0; k < mu.atoms.size(); ++k) {
    const int i = static_cast<int>((mu.atoms[k].real() - w.x0) / w.width() * 400);
    const int j = static_cast<int>((mu.atoms[k].imag() - w.y0) / w.height() * 400);
    grid.values[static_cast<std::size_t>(j) * 400 + i] += mu.weights[k];
  }
  CHECK(compare(mu, grid) < 0.02);
}

TEST_CASE("distance decreases over caps 2, 3, 4 on c = 0") {
  const auto line = ParamLine::c_zero();
  const auto nu = bifurcation_density(line, Window{}, 256, 4);
  double prev = 1e9;
  for (int cap = 2; cap <= 4; ++cap) {
    const double d = compare(pcf_on_line(line, cap), nu);
    CHECK(d < prev);
    prev = d;
  }
}
