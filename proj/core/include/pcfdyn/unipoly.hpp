#pragma once

#include "pcfdyn/error.hpp"
#include "pcfdyn/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace pcfdyn {

/// Dense univariate polynomial over a commutative ring R; coefficient i
/// multiplies x^i. Trailing zero coefficients are never stored.
template <class R>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(long n) {
    if (n != 0) c_.push_back(R(n));
  }
  explicit UniPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(R value) { return UniPoly(std::vector<R>{std::move(value)}); }
  static UniPoly monomial(R value, int degree) {
    std::vector<R> c(static_cast<std::size_t>(degree) + 1, R(0));
    c.back() = std::move(value);
    return UniPoly(std::move(c));
  }
  /// The variable x.
  static UniPoly x() { return monomial(R(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const R& lead() const { return c_.back(); }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(int i) const {
    if (i < 0 || i > degree()) return R(0);
    return c_[static_cast<std::size_t>(i)];
  }
  void set_coeff(int i, R value) {
    if (i > degree()) c_.resize(static_cast<std::size_t>(i) + 1, R(0));
    c_[static_cast<std::size_t>(i)] = std::move(value);
    trim();
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const R& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const R& s) { return a *= s; }
  friend UniPoly operator*(const R& s, UniPoly a) { return a *= s; }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> out(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (detail::coeff_is_zero(b.c_[j])) continue;
        out[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return UniPoly(std::move(out));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Horner evaluation in any algebra T that accepts R coefficients via conv.
  template <class T, class Conv>
  T eval(const T& x, Conv&& conv) const {
    T acc = conv(R(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + conv(*it);
    return acc;
  }
  R eval(const R& x) const {
    R acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<R> d(c_.size() - 1, R(0));
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * R(static_cast<long>(i));
    return UniPoly(std::move(d));
  }

  /// p(q(x)) by Horner in the polynomial ring.
  UniPoly compose(const UniPoly& q) const {
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * q;
      acc += UniPoly::constant(*it);
    }
    return acc;
  }

  template <class F>
  auto map(F&& f) const {
    using S = std::decay_t<decltype(f(std::declval<const R&>()))>;
    std::vector<S> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(f(v));
    return UniPoly<S>(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

template <class R>
bool is_zero(const UniPoly<R>& p) {
  return p.is_zero();
}

template <class R>
UniPoly<R> pow(const UniPoly<R>& p, unsigned e) {
  UniPoly<R> result = UniPoly<R>::constant(R(1));
  UniPoly<R> base = p;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

/// Pseudo-remainder: lc(d)^(deg p - deg d + 1) p = q d + r with deg r < deg d.
/// `multiplier_exponent` receives the exponent actually applied.
template <class R>
UniPoly<R> pseudo_remainder(UniPoly<R> p, const UniPoly<R>& d, int* multiplier_exponent = nullptr) {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "pseudo-remainder by zero polynomial");
  int e = 0;
  const int dd = d.degree();
  int expected = std::max(p.degree() - dd + 1, 0);
  const R& lc = d.lead();
  while (!p.is_zero() && p.degree() >= dd) {
    R lp = p.lead();
    int shift = p.degree() - dd;
    p *= lc;
    std::vector<R> sub(static_cast<std::size_t>(shift + dd) + 1, R(0));
    for (int i = 0; i <= dd; ++i) sub[static_cast<std::size_t>(i + shift)] = d.coeff(i) * lp;
    p -= UniPoly<R>(std::move(sub));
    ++e;
  }
  // Normalize to the classical exponent so results are comparable.
  for (; e < expected; ++e) p *= lc;
  if (multiplier_exponent) *multiplier_exponent = e;
  return p;
}

/// Quotient and remainder of p by d where lc(d) divides every needed
/// coefficient exactly (any d over a field; constant-lead d over BiPoly).
template <class R>
std::pair<UniPoly<R>, UniPoly<R>> divmod_exact_lead(UniPoly<R> p, const UniPoly<R>& d) {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  const int dd = d.degree();
  std::vector<R> q(static_cast<std::size_t>(std::max(p.degree() - dd + 1, 0)), R(0));
  while (!p.is_zero() && p.degree() >= dd) {
    int shift = p.degree() - dd;
    R t = exact_div(p.lead(), d.lead());
    std::vector<R> sub(static_cast<std::size_t>(shift + dd) + 1, R(0));
    for (int i = 0; i <= dd; ++i) sub[static_cast<std::size_t>(i + shift)] = d.coeff(i) * t;
    int before = p.degree();
    p -= UniPoly<R>(std::move(sub));
    q[static_cast<std::size_t>(shift)] = std::move(t);
    if (!p.is_zero() && p.degree() >= before)
      throw Error(ErrorKind::InvalidArgument, "inexact leading-term division");
  }
  return {UniPoly<R>(std::move(q)), std::move(p)};
}

/// Exact quotient p / d; throws when the remainder is nonzero.
template <class R>
UniPoly<R> divide_exact(const UniPoly<R>& p, const UniPoly<R>& d) {
  auto [q, r] = divmod_exact_lead(p, d);
  if (!r.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division is not exact");
  return q;
}

/// Monic gcd over a field.
template <class K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    auto r = divmod_exact_lead(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  K inv = exact_div(K(1), a.lead());
  return a * inv;
}

/// Square-free part over a field of characteristic zero (monic).
template <class K>
UniPoly<K> squarefree_part(const UniPoly<K>& p) {
  if (p.degree() <= 0) return p;
  UniPoly<K> g = gcd(p, p.derivative());
  UniPoly<K> q = divmod_exact_lead(p, g).first;
  return q * exact_div(K(1), q.lead());
}

}  // namespace pcfdyn
