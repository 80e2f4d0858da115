#pragma once

// Interval arithmetic with outward widening by one ulp after each operation.
// Under round-to-nearest this encloses the exact result.

#include "pcfdyn/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcfdyn {

struct Interval {
  double lo = 0, hi = 0;

  Interval() = default;
  Interval(double x) : lo(x), hi(x) {}  // NOLINT(google-explicit-constructor)
  Interval(double l, double h) : lo(l), hi(h) {}

  static Interval around(double x, double r) { return widen(x - r, x + r); }
  static Interval widen(double l, double h) {
    return {std::nextafter(l, -std::numeric_limits<double>::infinity()),
            std::nextafter(h, std::numeric_limits<double>::infinity())};
  }
  double mid() const { return 0.5 * (lo + hi); }
  double rad() const { return 0.5 * (hi - lo); }
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  bool strictly_inside(const Interval& o) const { return lo > o.lo && hi < o.hi; }

  friend Interval operator+(const Interval& x, const Interval& y) { return widen(x.lo + y.lo, x.hi + y.hi); }
  friend Interval operator-(const Interval& x, const Interval& y) { return widen(x.lo - y.hi, x.hi - y.lo); }
  Interval operator-() const { return {-hi, -lo}; }
  friend Interval operator*(const Interval& x, const Interval& y) {
    const double p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
};

struct CInterval {
  Interval re, im;

  CInterval() = default;
  CInterval(Interval r, Interval i) : re(r), im(i) {}
  CInterval(Complex z) : re(z.real()), im(z.imag()) {}  // NOLINT(google-explicit-constructor)

  static CInterval around(Complex z, double r) { return {Interval::around(z.real(), r), Interval::around(z.imag(), r)}; }
  Complex mid() const { return {re.mid(), im.mid()}; }
  bool strictly_inside(const CInterval& o) const { return re.strictly_inside(o.re) && im.strictly_inside(o.im); }

  friend CInterval operator+(const CInterval& x, const CInterval& y) { return {x.re + y.re, x.im + y.im}; }
  friend CInterval operator-(const CInterval& x, const CInterval& y) { return {x.re - y.re, x.im - y.im}; }
  friend CInterval operator*(const CInterval& x, const CInterval& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
};

/// Enclosure of an exact Q(omega) coefficient.
inline CInterval enclose(const QOmega& q) {
  const double v = q.to_complex().real();
  const double r = 4 * std::numeric_limits<double>::epsilon() * std::fabs(v) + std::numeric_limits<double>::denorm_min();
  return {Interval::around(v, r), Interval(0.0)};
}

inline CInterval eval_interval(const BiPoly& f, const CInterval& c, const CInterval& a) {
  const int dc = std::max(f.degree(Var::C), 0), da = std::max(f.degree(Var::A), 0);
  std::vector<CInterval> cp{Complex(1.0)}, ap{Complex(1.0)};
  for (int i = 1; i <= dc; ++i) cp.push_back(cp.back() * c);
  for (int i = 1; i <= da; ++i) ap.push_back(ap.back() * a);
  CInterval s(Complex(0.0));
  for (const auto& [k, v] : f.terms())
    s = s + enclose(v) * cp[static_cast<std::size_t>(k.first)] * ap[static_cast<std::size_t>(k.second)];
  return s;
}

}  // namespace pcfdyn
