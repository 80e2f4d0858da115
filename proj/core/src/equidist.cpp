#include "pcfdyn/equidist.hpp"

#include "pcfdyn/green.hpp"
#include "pcfdyn/parallel.hpp"
#include "pcfdyn/roots.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace pcfdyn {

ParamLine ParamLine::c_zero() { return {"c=0", UniPoly<QOmega>(), UniPoly<QOmega>::x()}; }
ParamLine ParamLine::a_zero() { return {"a=0", UniPoly<QOmega>::x(), UniPoly<QOmega>()}; }

CubicParam ParamLine::at(Complex s) const {
  auto ev = [&](const UniPoly<QOmega>& p) { return p.eval(s, [](const QOmega& q) { return q.to_complex(); }); };
  return {ev(c), ev(a)};
}

namespace {

using SP = UniPoly<QOmega>;

// w_0 .. w_N along the line, starting from the critical point c_i.
std::vector<SP> line_orbit(const ParamLine& line, int i, int N) {
  const QOmega third(Rational(1, 3)), half(Rational(1, 2));
  const SP a3 = line.a * line.a * line.a;
  std::vector<SP> w{i == 0 ? SP() : line.c};
  for (int n = 0; n < N; ++n) {
    const SP sq = w.back() * w.back();
    w.push_back(sq * w.back() * third - line.c * sq * half + a3);
  }
  return w;
}

// Roots of a nonzero polynomial, using s -> s^g when only multiples of g
// occur (P_{0,a} depends on a^3 alone).
std::vector<Complex> line_roots(const SP& f) {
  std::size_t low = 0;
  while (f.coeff(static_cast<int>(low)).is_zero()) ++low;
  std::vector<Complex> out(low > 0 ? 1 : 0, Complex(0.0));
  int g = 0;
  for (int e = static_cast<int>(low) + 1; e <= f.degree(); ++e)
    if (!f.coeff(e).is_zero()) g = std::gcd(g, e - static_cast<int>(low));
  if (g == 0) return out;
  std::vector<QOmega> co;
  for (int e = static_cast<int>(low); e <= f.degree(); e += g) co.push_back(f.coeff(e));
  const SP h = squarefree_part(SP(std::move(co)));
  if (h.degree() < 1) return out;
  const double two_pi = 6.283185307179586;
  for (const Complex& u : complex_roots(h)) {
    const double r = std::pow(std::abs(u), 1.0 / g), th = std::arg(u) / g;
    for (int j = 0; j < g; ++j) out.push_back(std::polar(r, th + two_pi * j / g));
  }
  return out;
}

bool vanishes(const SP& f, Complex s) {
  Complex v = 0;
  double scale = 0;
  for (int e = f.degree(); e >= 0; --e) {
    v = v * s + f.coeff(e).to_complex();
    scale = scale * std::abs(s) + std::abs(f.coeff(e).to_complex());
  }
  return std::abs(v) <= 1e-8 * std::max(1.0, scale);
}

}  // namespace

EmpiricalMeasure pcf_on_line(const ParamLine& line, int max_orbit) {
  if (max_orbit < 1 || max_orbit > 5) throw Error(ErrorKind::InvalidArgument, "max_orbit must be in 1..5");
  if (line.c.degree() > 2 || line.a.degree() > 2) throw Error(ErrorKind::InvalidArgument, "line degree must be <= 2");
  std::array<std::vector<SP>, 2> rel;
  for (int i = 0; i < 2; ++i) {
    const auto w = line_orbit(line, i, max_orbit);
    for (int total = 1; total <= max_orbit; ++total)
      for (int k = 1; k <= total; ++k) rel[static_cast<std::size_t>(i)].push_back(w[static_cast<std::size_t>(total)] - w[static_cast<std::size_t>(total - k)]);
  }
  auto always = [&](int i) {
    for (const auto& r : rel[static_cast<std::size_t>(i)])
      if (r.is_zero()) return true;
    return false;
  };
  const bool free0 = always(0), free1 = always(1);
  EmpiricalMeasure mu;
  if (free0 && free1) throw Error(ErrorKind::InvalidArgument, "every parameter on the line is PCF");
  const int src = free0 ? 1 : 0, other = 1 - src;
  std::vector<Complex> cand;
  for (const auto& r : rel[static_cast<std::size_t>(src)]) {
    const auto roots = line_roots(r);
    cand.insert(cand.end(), roots.begin(), roots.end());
  }
  for (const Complex& s : distinct_sorted(cand, 1e-8)) {
    bool ok = (other == 0 ? free0 : free1);
    for (const auto& r : rel[static_cast<std::size_t>(other)]) ok = ok || vanishes(r, s);
    if (ok) mu.atoms.push_back(s);
  }
  mu.weights.assign(mu.atoms.size(), mu.atoms.empty() ? 0.0 : 1.0 / static_cast<double>(mu.atoms.size()));
  return mu;
}

Complex DensityGrid::cell_center(int i, int j) const {
  const double hx = window.width() / resolution, hy = window.height() / resolution;
  return {window.x0 + (i + 0.5) * hx, window.y0 + (j + 0.5) * hy};
}

DensityGrid density_from_potential(const std::vector<double>& g, const Window& window, int resolution) {
  const int N = resolution, M = N + 2;
  if (static_cast<int>(g.size()) != M * M) throw Error(ErrorKind::InvalidArgument, "potential grid has the wrong size");
  DensityGrid d;
  d.window = window;
  d.resolution = N;
  d.values.assign(static_cast<std::size_t>(N) * N, 0.0);
  const double hx = window.width() / N, hy = window.height() / N;
  auto at = [&](int i, int j) { return g[static_cast<std::size_t>(j + 1) * M + static_cast<std::size_t>(i + 1)]; };
  long masked = 0;
  double mass = 0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const double v = at(i, j), l = at(i - 1, j), r = at(i + 1, j), b = at(i, j - 1), t = at(i, j + 1);
      if (std::isnan(v) || std::isnan(l) || std::isnan(r) || std::isnan(b) || std::isnan(t)) {
        ++masked;
        continue;
      }
      const double lap = (l + r - 2 * v) / (hx * hx) + (b + t - 2 * v) / (hy * hy);
      const double cell = std::max(lap, 0.0) * hx * hy;
      d.values[static_cast<std::size_t>(j) * N + i] = cell;
      mass += cell;
    }
  d.unnormalized_mass = mass;
  d.mask_fraction = static_cast<double>(masked) / (static_cast<double>(N) * N);
  if (mass > 0)
    for (auto& v : d.values) v /= mass;
  return d;
}

DensityGrid bifurcation_density(const ParamLine& line, const Window& window, int resolution, int threads) {
  if (resolution < 2 || resolution > 2048) throw Error(ErrorKind::InvalidArgument, "resolution must be in 2..2048");
  const int N = resolution, M = N + 2;
  const double hx = window.width() / N, hy = window.height() / N;
  const double tol = 1e-2 * std::min(hx * hx, hy * hy);
  std::vector<double> g(static_cast<std::size_t>(M) * M);
  parallel_for(static_cast<std::size_t>(M), threads, [&](std::size_t row) {
    const int j = static_cast<int>(row) - 1;
    for (int i = -1; i <= N; ++i) {
      const Complex s(window.x0 + (i + 0.5) * hx, window.y0 + (j + 0.5) * hy);
      double v;
      try {
        v = green_arch(line.at(s), Complex(0.0), tol).value;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Undecided) throw;
        v = std::numeric_limits<double>::quiet_NaN();
      }
      g[row * M + static_cast<std::size_t>(i + 1)] = v;
    }
  });
  return density_from_potential(g, window, resolution);
}

namespace {

struct TestFunction {
  double cx, cy, sx, sy;
  double operator()(Complex z) const {
    const double dx = (z.real() - cx) / sx, dy = (z.imag() - cy) / sy;
    return std::exp(-0.5 * (dx * dx + dy * dy));
  }
};

std::vector<TestFunction> dictionary(const Window& w) {
  std::vector<TestFunction> fs;
  for (double scale : {1.0 / 8, 1.0 / 4})
    for (int shift = 0; shift < 2; ++shift)
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
          fs.push_back({w.x0 + w.width() * (i + 0.5 + 0.5 * shift) / 4, w.y0 + w.height() * (j + 0.5 + 0.5 * shift) / 4,
                        w.width() * scale, w.height() * scale});
  return fs;
}

double integrate(const TestFunction& f, const EmpiricalMeasure& mu) {
  double s = 0;
  for (std::size_t k = 0; k < mu.atoms.size(); ++k) s += mu.weights[k] * f(mu.atoms[k]);
  return s;
}

}  // namespace

double compare(const EmpiricalMeasure& mu, const DensityGrid& nu) {
  double worst = 0;
  for (const auto& f : dictionary(nu.window)) {
    double s = 0;
    for (int j = 0; j < nu.resolution; ++j)
      for (int i = 0; i < nu.resolution; ++i) {
        const double v = nu.values[static_cast<std::size_t>(j) * nu.resolution + i];
        if (v != 0) s += v * f(nu.cell_center(i, j));
      }
    worst = std::max(worst, std::abs(integrate(f, mu) - s));
  }
  return worst;
}

double compare(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Window& window) {
  double worst = 0;
  for (const auto& f : dictionary(window)) worst = std::max(worst, std::abs(integrate(f, mu) - integrate(f, nu)));
  return worst;
}

}  // namespace pcfdyn
