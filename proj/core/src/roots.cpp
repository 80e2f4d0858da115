#include "pcfdyn/roots.hpp"

#include "pcfdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcfdyn {

long double to_long_double(const Rational& q) {
  if (q == 0) return 0.0L;
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::ldexp(static_cast<long double>(mn) / static_cast<long double>(md), static_cast<int>(en - ed));
}

ComplexL to_complexl(const QOmega& q) {
  static const long double kInvSqrt3 = 1.0L / std::sqrt(3.0L);
  return {to_long_double(q.x()) + to_long_double(q.y()) * kInvSqrt3, 0.0L};
}

namespace {

long double root_radius(const std::vector<ComplexL>& c) {
  // Fujiwara bound.
  const std::size_t n = c.size() - 1;
  long double lead = std::abs(c[n]);
  long double r = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    long double v = std::abs(c[n - k]) / lead;
    if (k == n) v /= 2;
    r = std::max(r, std::pow(v, 1.0L / static_cast<long double>(k)));
  }
  return std::max(2 * r, 1e-3L);
}

RootSet run_aberth(std::vector<ComplexL> z, const std::function<ComplexL(ComplexL)>& ratio,
                   const AberthOptions& opt) {
  const std::size_t n = z.size();
  std::vector<bool> done(n, false);
  RootSet out;
  for (int it = 0; it < opt.max_iterations; ++it) {
    out.iterations = it + 1;
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      ComplexL N = ratio(z[k]);
      if (!std::isfinite(N.real()) || !std::isfinite(N.imag())) {
        // Landed on a pole of the ratio (a root of f'): nudge.
        z[k] *= ComplexL(1.0L + 1e-6L, 1e-6L);
        all = false;
        continue;
      }
      ComplexL s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      ComplexL w = N / (1.0L - N * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = N;
      z[k] -= w;
      if (std::abs(w) <= opt.tolerance * std::max(1.0L, std::abs(z[k])) || N == ComplexL(0))
        done[k] = true;
      else
        all = false;
    }
    if (all) {
      out.converged = true;
      break;
    }
  }
  out.roots.reserve(n);
  for (auto v : z) out.roots.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  return out;
}

std::vector<ComplexL> circle(std::size_t n, long double r) {
  std::vector<ComplexL> z(n);
  const long double two_pi = 6.283185307179586476925286766559L;
  for (std::size_t k = 0; k < n; ++k) {
    long double th = two_pi * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
    z[k] = std::polar(r, th);
  }
  return z;
}

}  // namespace

RootSet aberth(const std::vector<ComplexL>& coeffs, const AberthOptions& opt) {
  std::vector<ComplexL> c = coeffs;
  while (!c.empty() && c.back() == ComplexL(0)) c.pop_back();
  if (c.size() <= 1) return {{}, true, 0};
  std::vector<ComplexL> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long double>(i);
  std::vector<long double> absc(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) absc[i] = std::abs(c[i]);
  const long double noise = 4 * static_cast<long double>(c.size()) * std::numeric_limits<long double>::epsilon();
  auto ratio = [&](ComplexL x) {
    ComplexL p = 0, q = 0;
    long double bound = 0;
    const long double ax = std::abs(x);
    for (std::size_t i = c.size(); i-- > 0;) {
      p = p * x + c[i];
      bound = bound * ax + absc[i];
    }
    // Residual at the rounding level: x is a root of a nearby polynomial.
    if (std::abs(p) <= noise * bound) return ComplexL(0);
    for (std::size_t i = d.size(); i-- > 0;) q = q * x + d[i];
    return p / q;
  };
  return run_aberth(circle(c.size() - 1, root_radius(c)), ratio, opt);
}

RootSet aberth_ratio(int degree, const std::function<ComplexL(ComplexL)>& newton_ratio, long double radius,
                     const AberthOptions& opt) {
  if (degree <= 0) return {{}, true, 0};
  return run_aberth(circle(static_cast<std::size_t>(degree), radius), newton_ratio, opt);
}

namespace {

std::vector<Complex> roots_or_throw(const std::vector<ComplexL>& c, const AberthOptions& opt) {
  // Zero roots are split off exactly.
  std::size_t z0 = 0;
  while (z0 < c.size() && c[z0] == ComplexL(0)) ++z0;
  std::vector<ComplexL> rest(c.begin() + static_cast<long>(z0), c.end());
  RootSet rs = aberth(rest, opt);
  if (!rs.converged) throw Error(ErrorKind::RootFindingFailure, "Aberth iteration did not converge");
  std::vector<Complex> out(z0, Complex(0.0));
  out.insert(out.end(), rs.roots.begin(), rs.roots.end());
  return out;
}

}  // namespace

std::vector<Complex> complex_roots(const UniPoly<QOmega>& p, const AberthOptions& opt) {
  std::vector<ComplexL> c;
  for (const auto& v : p.coeffs()) c.push_back(to_complexl(v));
  return roots_or_throw(c, opt);
}

std::vector<Complex> complex_roots(const UniPoly<Complex>& p, const AberthOptions& opt) {
  std::vector<ComplexL> c;
  for (const auto& v : p.coeffs()) c.emplace_back(v.real(), v.imag());
  return roots_or_throw(c, opt);
}

namespace {

Rational rationalize(long double v, long max_den) {
  if (!std::isfinite(static_cast<double>(v))) return Rational(0);
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double x = v;
  for (int it = 0; it < 40; ++it) {
    long double a = std::floor(x);
    if (std::fabs(a) > 1e17L) break;
    Integer ai(static_cast<double>(a));
    Integer h2 = ai * h1 + h0;
    Integer k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double f = x - a;
    if (f < 1e-15L) break;
    x = 1.0L / f;
  }
  if (k1 == 0) return Rational(0);
  Rational r(h1, k1);
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<QOmega> exact_roots(const UniPoly<QOmega>& p0) {
  std::vector<QOmega> out;
  if (p0.degree() <= 0) return out;
  UniPoly<QOmega> p = squarefree_part(p0);
  // Zero root.
  if (is_zero(p.coeff(0))) {
    out.emplace_back(0);
    p = divide_exact(p, UniPoly<QOmega>::x());
  }
  if (p.degree() <= 0) return out;
  if (p.degree() == 1) {
    out.push_back(-p.coeff(0) / p.coeff(1));
    return out;
  }
  UniPoly<QOmega> pc = p.map([](const QOmega& q) { return q.conj(); });
  std::vector<Complex> r1 = complex_roots(p), r2 = complex_roots(pc);
  const long double s3 = std::sqrt(3.0L);
  for (const auto& u : r1) {
    if (std::abs(u.imag()) > 1e-7 * std::max(1.0, std::abs(u))) continue;
    for (const auto& v : r2) {
      if (std::abs(v.imag()) > 1e-7 * std::max(1.0, std::abs(v))) continue;
      long double xs = (static_cast<long double>(u.real()) + v.real()) / 2;
      long double ys = (static_cast<long double>(u.real()) - v.real()) * s3 / 2;
      for (long den : {100L, 10000L, 1000000L}) {
        QOmega cand(rationalize(xs, den), rationalize(ys, den));
        if (is_zero(p.eval(cand))) {
          if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
          break;
        }
      }
    }
  }
  return out;
}

std::vector<Cluster> cluster_points(const std::vector<Complex>& pts, double tol) {
  std::vector<Cluster> out;
  std::vector<int> counts;
  std::vector<Complex> sums;
  for (const auto& z : pts) {
    bool placed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (std::abs(out[i].center - z) <= tol * std::max(1.0, std::abs(z))) {
        sums[i] += z;
        ++counts[i];
        out[i].multiplicity = counts[i];
        out[i].center = sums[i] / static_cast<double>(counts[i]);
        placed = true;
        break;
      }
    }
    if (!placed) {
      out.push_back({z, 1});
      counts.push_back(1);
      sums.push_back(z);
    }
  }
  return out;
}

std::vector<Complex> distinct_sorted(const std::vector<Complex>& pts, double tol) {
  std::vector<Complex> out;
  for (const auto& c : cluster_points(pts, tol)) out.push_back(c.center);
  auto key = [](const Complex& z) {
    return std::pair<double, double>{std::round(z.real() * 1e8) / 1e8, std::round(z.imag() * 1e8) / 1e8};
  };
  std::sort(out.begin(), out.end(), [&](const Complex& x, const Complex& y) { return key(x) < key(y); });
  return out;
}

bool sets_match(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) return false;
  auto nearest = [](const Complex& z, const std::vector<Complex>& s) {
    std::size_t best = 0;
    double d = INFINITY;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double e = std::abs(z - s[i]);
      if (e < d) {
        d = e;
        best = i;
      }
    }
    return std::pair<std::size_t, double>{best, d};
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [j, d] = nearest(a[i], b);
    if (d > tol) return false;
    if (nearest(b[j], a).first != i) return false;
  }
  return true;
}

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : INFINITY;
  auto dir = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    double m = 0;
    for (const auto& p : x) {
      double d = INFINITY;
      for (const auto& q : y) d = std::min(d, std::abs(p - q));
      m = std::max(m, d);
    }
    return m;
  };
  return std::max(dir(a, b), dir(b, a));
}

}  // namespace pcfdyn
