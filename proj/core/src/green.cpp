#include "pcfdyn/green.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace pcfdyn {

namespace {

const double kHalfLog3 = 0.5 * std::log(3.0);

double escape_radius(const CubicParam& p) {
  return std::max(10.0, 4.0 * (1.0 + std::abs(p.c) + std::abs(p.a)));
}

}  // namespace

double escape_delta(const CubicParam& p, double w) {
  const double ac = std::abs(p.c), aa = std::abs(p.a);
  const double x = 1.5 * ac / w + 3.0 * (aa / w) * (aa / w) * (aa / w);
  if (!(x < 1.0)) return INFINITY;
  return -std::log1p(-x);
}

GreenBounds green_bounds(const CubicParam& p) {
  GreenBounds b;
  b.escape_radius = escape_radius(p);
  const double dR = escape_delta(p, b.escape_radius);
  b.theta = kHalfLog3 + dR / 2;

  const double M = std::max(std::abs(p.a), std::abs(p.c));
  const double logp = std::log(std::max(1.0, M));
  const double upper = std::log(std::max(b.escape_radius, M)) - kHalfLog3 + dR / 2 - logp;
  // One of P(0) = a^3, P(c) = a^3 - c^3/6 has modulus >= m3.
  const double m3 = std::max(std::pow(std::abs(p.a), 3), std::pow(std::abs(p.c), 3) / 12);
  double lower_G = 0;
  if (m3 >= b.escape_radius) lower_G = (std::log(m3) - kHalfLog3 - escape_delta(p, m3) / 2) / 3;
  b.growth_C = std::max({upper, logp - lower_G, 0.0});

  const double Rb = 2 * std::max({1.0, std::abs(p.c), std::abs(p.a)});
  b.rho = std::log(4 * Rb);
  b.tau = b.rho;
  return b;
}

GreenValue green_arch(const CubicParam& p, Complex z, double tol, const GreenOptions& opt) {
  if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const double R = escape_radius(p);
  const double bounded_cap = std::log(R) + escape_delta(p, R) / 2;
  double scale = 1;  // 3^-n
  for (int n = 0; n <= opt.max_iterations; ++n) {
    const double r = std::abs(z);
    if (r >= R) {
      const double err = scale * escape_delta(p, r) / 2;
      if (err <= tol || !std::isfinite(std::abs(eval_P(p, z)))) {
        return {scale * (std::log(r) - kHalfLog3), err, n};
      }
    } else if (scale * bounded_cap <= tol) {
      // g(z) = 3^-n g(P^n z) and g <= log R + delta(R)/2 on |w| <= R.
      return {0.0, scale * bounded_cap, n};
    }
    z = eval_P(p, z);
    scale /= 3;
  }
  throw Error(ErrorKind::Undecided, "Green function not certified within the iteration cap");
}

CriticalGreen g0g1G(const CubicParam& p, double tol, const GreenOptions& opt) {
  CriticalGreen r;
  r.g0 = green_arch(p, Complex(0.0), tol, opt);
  r.g1 = green_arch(p, p.c, tol, opt);
  r.G = r.g0.value >= r.g1.value ? r.g0 : r.g1;
  r.G.error_bound = std::max(r.g0.error_bound, r.g1.error_bound);
  r.G.iterations_used = std::max(r.g0.iterations_used, r.g1.iterations_used);
  return r;
}

namespace {

// log|x|_p in units of log p.
long abs_units(const Rational& x, unsigned long p) { return -static_cast<long>(valuation(x, p)); }

double log_abs(const Rational& x, unsigned long p) {
  return static_cast<double>(abs_units(x, p)) * std::log(static_cast<double>(p));
}

double critical_value(unsigned long p, const Rational& c, const Rational& a, const Rational& z0, int cap) {
  const double L3 = log_abs(Rational(3), p), L2 = log_abs(Rational(2), p);
  const double K3 = -L3;  // log|1/3|_p
  const bool c_zero = c == 0;
  const double Lc = c_zero ? -INFINITY : log_abs(c, p);
  const Rational a3 = a * a * a;
  const double La3 = a3 == 0 ? -INFINITY : log_abs(a3, p);
  // Invariant disk |w| <= r exists iff |a|^3 <= r = min(sqrt|3|, |2|/|c|).
  const double log_r = std::min(L3 / 2, c_zero ? INFINITY : L2 - Lc);
  const bool disk = La3 <= log_r + 1e-12;

  std::set<Rational, std::less<>> seen;
  Rational w = z0;
  double scale = 1;
  for (int n = 0; n <= cap; ++n) {
    if (w == 0) {
      if (disk) return 0.0;
    } else {
      const double Lw = log_abs(w, p);
      if (disk && Lw <= log_r + 1e-12) return 0.0;
      const double cub = 3 * Lw + K3;
      const bool esc = cub > 2 * Lw + Lc - L2 + 1e-12 && cub > La3 + 1e-12 && cub > Lw + 1e-12;
      if (esc) return scale * (Lw + K3 / 2);
    }
    if (!seen.insert(w).second) return 0.0;
    w = (w / 3 - c / 2) * w * w + a3;
    w.canonicalize();
    scale /= 3;
  }
  throw Error(ErrorKind::Undecided, "p-adic critical orbit not decided within the cap");
}

}  // namespace

PadicCriticalGreen green_padic_critical(unsigned long p, const Rational& c, const Rational& a, int cap) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be prime");
  PadicCriticalGreen r;
  r.g0 = critical_value(p, c, a, Rational(0), cap);
  r.g1 = critical_value(p, c, a, c, cap);
  return r;
}

GreenBounds green_bounds_finite(unsigned long p, const Rational& c, const Rational& a, const GreenOptions& opt) {
  GreenBounds b;
  const double L3 = log_abs(Rational(3), p), L2 = log_abs(Rational(2), p), K3 = -L3;
  const double Lc = c == 0 ? -INFINITY : log_abs(c, p);
  const double La = a == 0 ? -INFINITY : log_abs(a, p);
  // Beyond log R the cubic term dominates and g(w) = log|w| + K3/2 exactly.
  const double logR = std::max({L3 / 2, Lc + L3 - L2, La});
  b.escape_radius = std::exp(logR);
  b.theta = K3 / 2;
  b.rho = K3 / 2;
  b.tau = p == 3 ? opt.tau3 : 0.0;
  const double logM = std::max({0.0, Lc, La});
  const double upper = std::max(logR, logM) + K3 / 2 - logM;
  // max(|P(0)|, |P(c)|) >= max(|a|^3, |c^3/6|).
  const double m3 = std::max(3 * La, 3 * Lc - log_abs(Rational(6), p));
  const double lower_G = m3 > logR ? (m3 + K3 / 2) / 3 : 0.0;
  b.growth_C = std::max({upper, logM - lower_G, 0.0});
  return b;
}

double green_finite(unsigned long p, const Rational& c, const Rational& a, double* error_bound) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be prime");
  if (error_bound) *error_bound = 0;
  if (p >= 5) {
    long u = 0;
    if (c != 0) u = std::max(u, abs_units(c, p));
    if (a != 0) u = std::max(u, abs_units(a, p));
    return static_cast<double>(u) * std::log(static_cast<double>(p));
  }
  PadicCriticalGreen g = green_padic_critical(p, c, a);
  return std::max(g.g0, g.g1);
}

std::vector<unsigned long> height_support(const Rational& c, const Rational& a) {
  std::set<unsigned long> ps{2, 3};
  for (const Rational* x : {&c, &a}) {
    Integer d = x->get_den();
    for (unsigned long q = 2; d > 1; ++q) {
      if (q * q > d) {
        if (d.fits_ulong_p()) ps.insert(d.get_ui());
        else throw Error(ErrorKind::InvalidArgument, "denominator prime too large");
        break;
      }
      if (mpz_divisible_ui_p(d.get_mpz_t(), q)) {
        ps.insert(q);
        while (mpz_divisible_ui_p(d.get_mpz_t(), q)) d /= q;
      }
    }
  }
  return {ps.begin(), ps.end()};
}

double canonical_height(const Rational& c, const Rational& a, int s0, int s1, double tol, const GreenOptions& opt) {
  if (s0 <= 0 || s1 <= 0) throw Error(ErrorKind::InvalidArgument, "weights must be positive");
  const double smax = std::max(s0, s1);
  CriticalGreen arch = g0g1G(CubicParam{Complex(to_double(c)), Complex(to_double(a))}, tol / (2 * smax), opt);
  double h = std::max(s0 * arch.g0.value, s1 * arch.g1.value);
  for (unsigned long p : height_support(c, a)) {
    PadicCriticalGreen g = green_padic_critical(p, c, a);
    h += std::max(s0 * g.g0, s1 * g.g1);
  }
  return h;
}

}  // namespace pcfdyn
