#pragma once

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/error.hpp"
#include "pcfdyn/ring.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <cmath>
#include <optional>
#include <vector>

namespace pcfdyn {

/// Absolute precision of an exact (finite) series.
inline constexpr long kExactPrecision = LONG_MAX / 4;

template <class K>
std::optional<K> kth_root(const K& x, unsigned k);

template <>
inline std::optional<Rational> kth_root(const Rational& x, unsigned k) {
  return rational_root(x, k);
}
template <>
inline std::optional<QOmega> kth_root(const QOmega& x, unsigned k) {
  return qomega_root(x, k);
}
/// Principal branch.
template <>
inline std::optional<Complex> kth_root(const Complex& x, unsigned k) {
  if (x == 0.0) return Complex(0.0);
  return std::pow(x, 1.0 / static_cast<double>(k));
}

/// Laurent-Puiseux series sum_{e >= lo} coef[e - lo] t^(e / ram) known
/// modulo t^(prec / ram). Exponents and precision are integers in units of
/// 1/ram. The zero series with finite precision means O(t^(prec/ram)).
template <class K>
class PuiseuxSeries {
 public:
  PuiseuxSeries() = default;
  PuiseuxSeries(std::vector<K> coef, long lo, long prec = kExactPrecision, int ram = 1)
      : ram_(ram), lo_(lo), prec_(prec), c_(std::move(coef)) {
    if (ram_ < 1) throw Error(ErrorKind::InvalidArgument, "ramification must be positive");
    normalize();
  }

  static PuiseuxSeries constant(const K& k, long prec = kExactPrecision) { return PuiseuxSeries({k}, 0, prec); }
  /// k * t^(e/ram).
  static PuiseuxSeries monomial(const K& k, long e, long prec = kExactPrecision, int ram = 1) {
    return PuiseuxSeries({k}, e, prec, ram);
  }
  static PuiseuxSeries zero(long prec = kExactPrecision) { return PuiseuxSeries({}, 0, prec); }
  static PuiseuxSeries t(long prec = kExactPrecision) { return monomial(K(1), 1, prec); }

  int ram() const { return ram_; }
  long lo() const { return lo_; }
  long prec() const { return prec_; }
  bool exact() const { return prec_ >= kExactPrecision; }
  /// True when no nonzero coefficient is known (the exact zero or O(t^prec)).
  bool is_zero() const { return c_.empty(); }
  /// Valuation in units of 1/ram; prec() when no coefficient is known.
  long order() const { return c_.empty() ? prec_ : lo_; }
  const std::vector<K>& coeffs() const { return c_; }
  /// Coefficient of t^(e/ram) (zero when unknown or absent).
  K coeff(long e) const {
    if (e < lo_ || e >= lo_ + static_cast<long>(c_.size())) return K(0);
    return c_[static_cast<std::size_t>(e - lo_)];
  }
  K leading() const { return c_.empty() ? K(0) : c_.front(); }

  PuiseuxSeries truncated(long prec) const {
    PuiseuxSeries r = *this;
    r.prec_ = std::min(prec_, prec);
    r.normalize();
    return r;
  }

  /// Same series written with ramification r (a multiple of ram()).
  PuiseuxSeries with_ram(int r) const {
    if (r % ram_ != 0) throw Error(ErrorKind::InvalidArgument, "ramification must be a multiple");
    const long f = r / ram_;
    if (f == 1) return *this;
    std::vector<K> c(c_.empty() ? 0 : (c_.size() - 1) * static_cast<std::size_t>(f) + 1, K(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * static_cast<std::size_t>(f)] = c_[i];
    return PuiseuxSeries(std::move(c), lo_ * f, exact() ? kExactPrecision : prec_ * f, r);
  }

  /// Multiply by t^(e/ram).
  PuiseuxSeries shifted(long e) const {
    PuiseuxSeries r = *this;
    r.lo_ += e;
    if (!exact()) r.prec_ += e;
    return r;
  }

  PuiseuxSeries operator-() const {
    PuiseuxSeries r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  PuiseuxSeries& operator*=(const K& s) {
    for (auto& v : c_) v *= s;
    normalize();
    return *this;
  }
  friend PuiseuxSeries operator*(PuiseuxSeries a, const K& s) { return a *= s; }
  friend PuiseuxSeries operator*(const K& s, PuiseuxSeries a) { return a *= s; }

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, b, false); }
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, b, true); }
  PuiseuxSeries& operator+=(const PuiseuxSeries& o) { return *this = *this + o; }
  PuiseuxSeries& operator-=(const PuiseuxSeries& o) { return *this = *this - o; }

  friend PuiseuxSeries operator*(const PuiseuxSeries& a0, const PuiseuxSeries& b0) {
    auto [a, b] = common(a0, b0);
    const long oa = a.order(), ob = b.order();
    long prec = kExactPrecision;
    if (!a.exact()) prec = std::min(prec, sat_add(a.prec_, ob));
    if (!b.exact()) prec = std::min(prec, sat_add(b.prec_, oa));
    if (a.c_.empty() || b.c_.empty()) return PuiseuxSeries({}, 0, prec, a.ram_);
    const long lo = a.lo_ + b.lo_;
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    if (prec < kExactPrecision) n = static_cast<std::size_t>(std::clamp(prec - lo, 0L, static_cast<long>(n)));
    std::vector<K> c(n, K(0));
    for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return PuiseuxSeries(std::move(c), lo, prec, a.ram_);
  }
  PuiseuxSeries& operator*=(const PuiseuxSeries& o) { return *this = *this * o; }

  /// 1/s; the relative precision prec - lo is preserved.
  PuiseuxSeries inverse() const {
    if (c_.empty()) throw Error(ErrorKind::InvalidArgument, "inverse of a series with no known leading term");
    long rel = exact() ? -1 : prec_ - lo_;
    if (rel < 0) {
      // Exact input: a monomial inverts exactly, otherwise a default window is required.
      if (c_.size() == 1) return PuiseuxSeries({exact_div(K(1), c_[0])}, -lo_, kExactPrecision, ram_);
      throw Error(ErrorKind::InvalidArgument, "inverse of an exact non-monomial series needs a truncation");
    }
    std::vector<K> inv(static_cast<std::size_t>(rel), K(0));
    K l = exact_div(K(1), c_[0]);
    for (long n = 0; n < rel; ++n) {
      K acc = n == 0 ? K(1) : K(0);
      for (long j = 1; j <= n; ++j) acc -= coeff(lo_ + j) * inv[static_cast<std::size_t>(n - j)];
      inv[static_cast<std::size_t>(n)] = acc * l;
    }
    return PuiseuxSeries(std::move(inv), -lo_, -lo_ + rel, ram_);
  }

  friend PuiseuxSeries pow(const PuiseuxSeries& s, unsigned e) {
    PuiseuxSeries r = constant(K(1));
    r.ram_ = s.ram_;
    PuiseuxSeries b = s;
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

  /// Composition f(g) for power series f (ram 1, lo >= 0) and g with
  /// positive order. Precision follows from the arithmetic plus the
  /// truncation of f: O(t^pf) contributes O(g^pf).
  PuiseuxSeries compose(const PuiseuxSeries& g) const {
    if (ram_ != 1 || (!c_.empty() && lo_ < 0))
      throw Error(ErrorKind::InvalidArgument, "compose needs a power series on the left");
    if (g.order() <= 0) throw Error(ErrorKind::InvalidArgument, "compose needs an inner series of positive order");
    long top = exact() ? (c_.empty() ? -1 : lo_ + static_cast<long>(c_.size()) - 1) : prec_ - 1;
    PuiseuxSeries acc = zero();
    acc.ram_ = g.ram_;
    for (long j = top; j >= 0; --j) {
      acc = acc * g;
      acc = acc + constant(coeff(j)).with_ram(g.ram_);
    }
    if (!exact()) acc = acc.truncated(sat_mul(prec_, g.order()));
    return acc;
  }

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.ram_ == b.ram_ && a.lo_ == b.lo_ && a.prec_ == b.prec_ && a.c_ == b.c_;
  }

 private:
  static long sat_add(long x, long y) {
    if (x >= kExactPrecision || y >= kExactPrecision) return kExactPrecision;
    return x + y;
  }
  static long sat_mul(long x, long y) {
    if (x >= kExactPrecision) return kExactPrecision;
    if (x > 0 && y > kExactPrecision / x) return kExactPrecision;
    return x * y;
  }

  static std::pair<PuiseuxSeries, PuiseuxSeries> common(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.ram_ == b.ram_) return {a, b};
    int r = std::lcm(a.ram_, b.ram_);
    return {a.with_ram(r), b.with_ram(r)};
  }

  static PuiseuxSeries add(const PuiseuxSeries& a0, const PuiseuxSeries& b0, bool subtract) {
    auto [a, b] = common(a0, b0);
    long prec = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) return PuiseuxSeries({}, 0, prec, a.ram_);
    long lo = a.c_.empty() ? b.lo_ : b.c_.empty() ? a.lo_ : std::min(a.lo_, b.lo_);
    long hi = std::max(a.c_.empty() ? lo : a.lo_ + static_cast<long>(a.c_.size()),
                       b.c_.empty() ? lo : b.lo_ + static_cast<long>(b.c_.size()));
    hi = std::min(hi, prec);
    std::vector<K> c(static_cast<std::size_t>(std::max(hi - lo, 0L)), K(0));
    for (long e = lo; e < hi; ++e) {
      K v = a.coeff(e);
      if (subtract)
        v -= b.coeff(e);
      else
        v += b.coeff(e);
      c[static_cast<std::size_t>(e - lo)] = v;
    }
    return PuiseuxSeries(std::move(c), lo, prec, a.ram_);
  }

  void normalize() {
    // Drop coefficients at or beyond the precision, then zeros on both ends.
    if (!exact() && lo_ + static_cast<long>(c_.size()) > prec_)
      c_.resize(static_cast<std::size_t>(std::max(prec_ - lo_, 0L)));
    std::size_t first = 0;
    while (first < c_.size() && detail::coeff_is_zero(c_[first])) ++first;
    if (first == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    if (first > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
      lo_ += static_cast<long>(first);
    }
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  int ram_ = 1;
  long lo_ = 0;
  long prec_ = kExactPrecision;
  std::vector<K> c_;
};

template <class K>
bool is_zero(const PuiseuxSeries<K>& s) {
  return s.is_zero();
}

/// f(c(t), a(t)) for a bivariate polynomial f.
template <class K>
PuiseuxSeries<K> evaluate(const BiPolyT<K>& f, const PuiseuxSeries<K>& c, const PuiseuxSeries<K>& a) {
  int ram = std::lcm(c.ram(), a.ram());
  PuiseuxSeries<K> cc = c.with_ram(ram), aa = a.with_ram(ram);
  std::vector<PuiseuxSeries<K>> pc{PuiseuxSeries<K>::constant(K(1)).with_ram(ram)};
  std::vector<PuiseuxSeries<K>> pa{pc[0]};
  auto acc = PuiseuxSeries<K>::zero().with_ram(ram);
  for (const auto& [k, v] : f.terms()) {
    while (static_cast<int>(pc.size()) <= k.first) pc.push_back(pc.back() * cc);
    while (static_cast<int>(pa.size()) <= k.second) pa.push_back(pa.back() * aa);
    acc += pc[static_cast<std::size_t>(k.first)] * pa[static_cast<std::size_t>(k.second)] * v;
  }
  return acc;
}

// ---- Composition lemmas (power series in t, ramification 1) ----------

/// beta with beta(alpha(t)) = t. Coefficients follow the identification
/// b_n a_1^n + sum_{k<n} b_k [alpha^k]_n = 0.
template <class K>
PuiseuxSeries<K> series_inverse(const PuiseuxSeries<K>& alpha) {
  if (alpha.ram() != 1) throw Error(ErrorKind::InvalidArgument, "series_inverse needs ramification 1");
  if (alpha.is_zero() || alpha.order() > 1) throw Error(ErrorKind::ZeroLinearTerm, "alpha'(0) = 0");
  if (alpha.order() < 1) throw Error(ErrorKind::InvalidArgument, "series_inverse needs alpha(0) = 0");
  if (alpha.exact()) throw Error(ErrorKind::InvalidArgument, "series_inverse needs a truncation order");
  const long N = alpha.prec();
  const K a1 = alpha.coeff(1);
  const K inv_a1 = exact_div(K(1), a1);
  std::vector<PuiseuxSeries<K>> powers{alpha};  // alpha^k, k = 1..
  for (long k = 2; k < N; ++k) powers.push_back(powers.back() * alpha);
  std::vector<K> b(static_cast<std::size_t>(std::max(N, 1L)), K(0));
  K a1n = a1;
  for (long n = 1; n < N; ++n) {
    if (n == 1) {
      b[1] = inv_a1;
      continue;
    }
    a1n *= a1;
    K acc(0);
    for (long k = 1; k < n; ++k) acc += b[static_cast<std::size_t>(k)] * powers[static_cast<std::size_t>(k - 1)].coeff(n);
    b[static_cast<std::size_t>(n)] = -acc / a1n;
  }
  return PuiseuxSeries<K>(std::move(b), 0, N);
}

/// (1 + u)^(p/q) for a power series u with u(0) = 0, via the J.C.P. Miller
/// recurrence h_n = (1/n) sum_{j=1..n} ((r+1) j - n) f_j h_{n-j}.
template <class K>
PuiseuxSeries<K> unit_power(const PuiseuxSeries<K>& f, const Rational& r) {
  // f has f(0) = 1
  const long N = f.prec();
  if (N >= kExactPrecision) throw Error(ErrorKind::InvalidArgument, "unit_power needs a truncation order");
  std::vector<K> h(static_cast<std::size_t>(N), K(0));
  if (N > 0) h[0] = K(1);
  const K rk = FieldTraits<K>::from_rational(r);
  for (long n = 1; n < N; ++n) {
    K acc(0);
    for (long j = 1; j <= n; ++j) {
      K w = (rk + K(1)) * K(j) - K(n);
      acc += w * f.coeff(j) * h[static_cast<std::size_t>(n - j)];
    }
    h[static_cast<std::size_t>(n)] = acc * FieldTraits<K>::from_rational(Rational(1, n));
  }
  return PuiseuxSeries<K>(std::move(h), 0, N, f.ram());
}

/// beta with beta^k = alpha; the leading coefficient is the designated k-th
/// root (kth_root). Throws LeadingRootUnavailable when it does not exist in K.
template <class K>
PuiseuxSeries<K> series_kth_root(const PuiseuxSeries<K>& alpha, unsigned k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  if (alpha.is_zero()) return alpha;
  const long L = alpha.order();
  if (L % static_cast<long>(k) != 0) throw Error(ErrorKind::OrderMismatch, "order not divisible by k");
  auto root = kth_root(alpha.leading(), k);
  if (!root) throw Error(ErrorKind::LeadingRootUnavailable, "leading coefficient has no k-th root in the field");
  const K lead = alpha.leading();
  const long rel = alpha.exact() ? kExactPrecision : alpha.prec() - L;
  if (rel >= kExactPrecision) {
    if (alpha.coeffs().size() == 1) return PuiseuxSeries<K>::monomial(*root, L / static_cast<long>(k), kExactPrecision, alpha.ram());
    throw Error(ErrorKind::InvalidArgument, "series_kth_root needs a truncation order");
  }
  // alpha = lead t^L (1 + u)
  std::vector<K> u(static_cast<std::size_t>(rel), K(0));
  K inv = exact_div(K(1), lead);
  for (long i = 0; i < rel; ++i) u[static_cast<std::size_t>(i)] = alpha.coeff(L + i) * inv;
  PuiseuxSeries<K> unit(std::move(u), 0, rel, alpha.ram());
  auto h = unit_power(unit, Rational(1, static_cast<long>(k)));
  return (h * *root).shifted(L / static_cast<long>(k));
}

/// beta = t + O(t^2) with alpha(beta(t)) = t^k, after normalizing alpha by
/// its leading coefficient. Throws OrderMismatch if ord(alpha) != k.
template <class K>
PuiseuxSeries<K> series_right_root(const PuiseuxSeries<K>& alpha, unsigned k) {
  if (alpha.ram() != 1) throw Error(ErrorKind::InvalidArgument, "series_right_root needs ramification 1");
  if (alpha.is_zero() || alpha.order() != static_cast<long>(k))
    throw Error(ErrorKind::OrderMismatch, "ord(alpha) differs from k");
  if (alpha.exact()) throw Error(ErrorKind::InvalidArgument, "series_right_root needs a truncation order");
  // alpha(s) = s^k u(s), u(0) = 1: solve s * u(s)^(1/k) = t.
  const long rel = alpha.prec() - static_cast<long>(k);
  std::vector<K> u(static_cast<std::size_t>(rel), K(0));
  K inv = exact_div(K(1), alpha.leading());
  for (long i = 0; i < rel; ++i) u[static_cast<std::size_t>(i)] = alpha.coeff(static_cast<long>(k) + i) * inv;
  PuiseuxSeries<K> unit(std::move(u), 0, rel);
  auto gamma = unit_power(unit, Rational(1, static_cast<long>(k))).shifted(1);
  return series_inverse(gamma);
}

}  // namespace pcfdyn
