#pragma once

#include "pcfdyn/error.hpp"
#include "pcfdyn/ring.hpp"
#include "pcfdyn/unipoly.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace pcfdyn {

enum class Var { C, A };

inline Var other(Var v) { return v == Var::C ? Var::A : Var::C; }

/// Sparse polynomial in (c, a) over a field K. Keys are (deg_c, deg_a);
/// zero coefficients are never stored. Iteration order is (deg_c, deg_a)
/// ascending, which is also the canonical serialization order.
template <class K>
class BiPolyT {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, K>;

  BiPolyT() = default;
  BiPolyT(long n) { add_term(0, 0, K(n)); }  // NOLINT(google-explicit-constructor)
  BiPolyT(const K& k) { add_term(0, 0, k); }  // NOLINT(google-explicit-constructor)

  static BiPolyT monomial(const K& k, int dc, int da) {
    BiPolyT p;
    p.add_term(dc, da, k);
    return p;
  }
  static BiPolyT c() { return monomial(K(1), 1, 0); }
  static BiPolyT a() { return monomial(K(1), 0, 1); }
  static BiPolyT var(Var v) { return v == Var::C ? c() : a(); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0}); }
  std::size_t size() const { return t_.size(); }

  K coeff(int dc, int da) const {
    auto it = t_.find({dc, da});
    return it == t_.end() ? K(0) : it->second;
  }
  K constant_term() const { return coeff(0, 0); }

  void add_term(int dc, int da, const K& k) {
    if (detail::coeff_is_zero(k)) return;
    auto [it, inserted] = t_.try_emplace(Key{dc, da}, k);
    if (!inserted) {
      it->second += k;
      if (detail::coeff_is_zero(it->second)) t_.erase(it);
    }
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [k, v] : t_) d = std::max(d, k.first + k.second);
    return d;
  }
  int degree(Var v) const {
    int d = -1;
    for (const auto& [k, v2] : t_) d = std::max(d, v == Var::C ? k.first : k.second);
    return d;
  }
  /// Lowest exponent of v present (-1 for the zero polynomial).
  int low_degree(Var v) const {
    if (t_.empty()) return -1;
    int d = INT_MAX;
    for (const auto& [k, v2] : t_) d = std::min(d, v == Var::C ? k.first : k.second);
    return d;
  }

  /// Lex-leading term with c > a.
  std::pair<Key, K> leading_term() const { return *t_.rbegin(); }

  /// Sum of the terms of total degree exactly d.
  BiPolyT homogeneous_part(int d) const {
    BiPolyT r;
    for (const auto& [k, v] : t_)
      if (k.first + k.second == d) r.t_.emplace(k, v);
    return r;
  }
  BiPolyT top_form() const { return homogeneous_part(total_degree()); }

  BiPolyT& operator+=(const BiPolyT& o) {
    for (const auto& [k, v] : o.t_) add_term(k.first, k.second, v);
    return *this;
  }
  BiPolyT& operator-=(const BiPolyT& o) {
    for (const auto& [k, v] : o.t_) add_term(k.first, k.second, -v);
    return *this;
  }
  BiPolyT& operator*=(const K& s) {
    if (detail::coeff_is_zero(s)) {
      t_.clear();
      return *this;
    }
    for (auto& [k, v] : t_) v *= s;
    return *this;
  }
  friend BiPolyT operator+(BiPolyT x, const BiPolyT& y) { return x += y; }
  friend BiPolyT operator-(BiPolyT x, const BiPolyT& y) { return x -= y; }
  friend BiPolyT operator*(BiPolyT x, const K& s) { return x *= s; }
  friend BiPolyT operator*(const K& s, BiPolyT x) { return x *= s; }
  BiPolyT operator-() const {
    BiPolyT r = *this;
    for (auto& [k, v] : r.t_) v = -v;
    return r;
  }

  friend BiPolyT operator*(const BiPolyT& x, const BiPolyT& y) {
    BiPolyT r;
    if (x.is_zero() || y.is_zero()) return r;
    for (const auto& [kx, vx] : x.t_)
      for (const auto& [ky, vy] : y.t_) r.add_term(kx.first + ky.first, kx.second + ky.second, vx * vy);
    return r;
  }
  BiPolyT& operator*=(const BiPolyT& o) { return *this = *this * o; }

  friend bool operator==(const BiPolyT& x, const BiPolyT& y) { return x.t_ == y.t_; }
  friend bool operator!=(const BiPolyT& x, const BiPolyT& y) { return !(x == y); }

  /// Evaluation in any commutative algebra T; conv maps coefficients into T.
  template <class T, class Conv>
  T eval(const T& cv, const T& av, Conv&& conv) const {
    // Group by deg_c and use Horner in a within each group, then Horner in c.
    int dc = degree(Var::C);
    if (dc < 0) return conv(K(0));
    std::vector<std::vector<std::pair<int, const K*>>> rows(static_cast<std::size_t>(dc) + 1);
    for (const auto& [k, v] : t_) rows[static_cast<std::size_t>(k.first)].push_back({k.second, &v});
    T acc = conv(K(0));
    for (int i = dc; i >= 0; --i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      T inner = conv(K(0));
      int cur = row.empty() ? 0 : row.back().first;
      for (auto it = row.rbegin(); it != row.rend(); ++it) {
        while (cur > it->first) {
          inner = inner * av;
          --cur;
        }
        inner = inner + conv(*it->second);
      }
      for (; cur > 0; --cur) inner = inner * av;
      acc = acc * cv + inner;
    }
    return acc;
  }
  K eval(const K& cv, const K& av) const {
    return eval(cv, av, [](const K& k) { return k; });
  }
  Complex eval_complex(Complex cv, Complex av) const {
    return eval(cv, av, [](const K& k) { return FieldTraits<K>::to_complex(k); });
  }

  BiPolyT derivative(Var v) const {
    BiPolyT r;
    for (const auto& [k, val] : t_) {
      int e = v == Var::C ? k.first : k.second;
      if (e == 0) continue;
      K m = val * K(static_cast<long>(e));
      if (v == Var::C)
        r.add_term(k.first - 1, k.second, m);
      else
        r.add_term(k.first, k.second - 1, m);
    }
    return r;
  }

  /// Specialize one variable to a value, leaving a polynomial in the other.
  UniPoly<K> specialize(Var v, const K& value) const {
    std::vector<K> out(static_cast<std::size_t>(std::max(degree(other(v)), -1) + 1), K(0));
    for (const auto& [k, val] : t_) {
      int ev = v == Var::C ? k.first : k.second;
      int eo = v == Var::C ? k.second : k.first;
      out[static_cast<std::size_t>(eo)] += val * pow_k(value, ev);
    }
    return UniPoly<K>(std::move(out));
  }

  /// Substitute c = fc(s), a = fa(s) (univariate in s).
  UniPoly<K> along(const UniPoly<K>& fc, const UniPoly<K>& fa) const {
    UniPoly<K> acc;
    std::map<int, UniPoly<K>> pc, pa;
    auto power = [](std::map<int, UniPoly<K>>& cache, const UniPoly<K>& f, int e) -> const UniPoly<K>& {
      auto it = cache.find(e);
      if (it != cache.end()) return it->second;
      return cache.emplace(e, pow(f, static_cast<unsigned>(e))).first->second;
    };
    for (const auto& [k, val] : t_) acc += power(pc, fc, k.first) * power(pa, fa, k.second) * val;
    return acc;
  }

  /// View as a univariate polynomial in v whose coefficients are univariate
  /// in the other variable.
  UniPoly<UniPoly<K>> to_nested(Var v) const {
    int dv = degree(v);
    if (dv < 0) return {};
    std::vector<std::vector<K>> rows(static_cast<std::size_t>(dv) + 1);
    for (const auto& [k, val] : t_) {
      int ev = v == Var::C ? k.first : k.second;
      int eo = v == Var::C ? k.second : k.first;
      auto& row = rows[static_cast<std::size_t>(ev)];
      if (static_cast<int>(row.size()) <= eo) row.resize(static_cast<std::size_t>(eo) + 1, K(0));
      row[static_cast<std::size_t>(eo)] = val;
    }
    std::vector<UniPoly<K>> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.emplace_back(std::move(r));
    return UniPoly<UniPoly<K>>(std::move(out));
  }
  static BiPolyT from_nested(const UniPoly<UniPoly<K>>& p, Var v) {
    BiPolyT r;
    for (int i = 0; i <= p.degree(); ++i) {
      const auto& inner = p.coeffs()[static_cast<std::size_t>(i)];
      for (int j = 0; j <= inner.degree(); ++j) {
        const K& val = inner.coeffs()[static_cast<std::size_t>(j)];
        if (v == Var::C)
          r.add_term(i, j, val);
        else
          r.add_term(j, i, val);
      }
    }
    return r;
  }
  /// Univariate polynomial in the single variable `v` (other degree must be 0).
  static BiPolyT from_univariate(const UniPoly<K>& p, Var v) {
    BiPolyT r;
    for (int i = 0; i <= p.degree(); ++i) {
      if (v == Var::C)
        r.add_term(i, 0, p.coeffs()[static_cast<std::size_t>(i)]);
      else
        r.add_term(0, i, p.coeffs()[static_cast<std::size_t>(i)]);
    }
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using S = std::decay_t<decltype(f(std::declval<const K&>()))>;
    BiPolyT<S> r;
    for (const auto& [k, v] : t_) r.add_term(k.first, k.second, f(v));
    return r;
  }

  /// Multiply by c^i a^j.
  BiPolyT shifted(int i, int j) const {
    BiPolyT r;
    for (const auto& [k, v] : t_) r.t_.emplace(Key{k.first + i, k.second + j}, v);
    return r;
  }

 private:
  static K pow_k(const K& x, int e) {
    K r(1);
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  }

  Terms t_;
};

using BiPoly = BiPolyT<QOmega>;

template <class K>
bool is_zero(const BiPolyT<K>& p) {
  return p.is_zero();
}

template <class K>
BiPolyT<K> pow(const BiPolyT<K>& p, unsigned e) {
  BiPolyT<K> result(K(1));
  BiPolyT<K> base = p;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

/// Exact quotient by lex-leading-term division (c > a). Throws
/// InvalidArgument when d does not divide p.
template <class K>
BiPolyT<K> divide_exact(BiPolyT<K> p, const BiPolyT<K>& d) {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero bivariate polynomial");
  BiPolyT<K> q;
  const auto [dk, dv] = d.leading_term();
  while (!p.is_zero()) {
    auto [pk, pv] = p.leading_term();
    if (pk.first < dk.first || pk.second < dk.second)
      throw Error(ErrorKind::InvalidArgument, "bivariate division is not exact");
    auto t = BiPolyT<K>::monomial(pv / dv, pk.first - dk.first, pk.second - dk.second);
    q += t;
    p -= t * d;
  }
  return q;
}

template <class K>
BiPolyT<K> exact_div(const BiPolyT<K>& a, const BiPolyT<K>& b) {
  if (b.is_constant()) return a * exact_div(K(1), b.constant_term());
  return divide_exact(a, b);
}

template <class K>
UniPoly<K> exact_div(const UniPoly<K>& a, const UniPoly<K>& b) {
  return divide_exact(a, b);
}

/// Content in the outer variable: gcd of the inner coefficients.
template <class K>
UniPoly<K> content(const UniPoly<UniPoly<K>>& p) {
  UniPoly<K> g;
  for (const auto& co : p.coeffs()) {
    g = gcd(g, co);
    if (g.degree() == 0) break;
  }
  return g;
}

template <class K>
UniPoly<UniPoly<K>> primitive_part(const UniPoly<UniPoly<K>>& p) {
  if (p.is_zero()) return p;
  UniPoly<K> g = content(p);
  std::vector<UniPoly<K>> out;
  for (const auto& co : p.coeffs()) out.push_back(divide_exact(co, g));
  return UniPoly<UniPoly<K>>(std::move(out));
}

/// Normalize so the lex-leading coefficient is 1 (unit multiple).
template <class K>
BiPolyT<K> make_monic(const BiPolyT<K>& p) {
  if (p.is_zero()) return p;
  return p * exact_div(K(1), p.leading_term().second);
}

namespace detail {

// Specialization certificates (exact fields only). A common factor h of f
// and g with deg_w h > 0 survives substituting v = x whenever the leading
// coefficient of f in w does not vanish there, so a constant univariate
// gcd rules it out. The same argument applies to a repeated factor.
template <class K>
bool specialized_coprime(const BiPolyT<K>& f, const BiPolyT<K>& g, Var v) {
  const Var w = other(v);
  if (f.degree(w) <= 0 || g.degree(w) <= 0) return true;
  for (int t = 0; t < 8; ++t) {
    const K x = FieldTraits<K>::from_rational(make_rational(3 * t + 2, 7));
    UniPoly<K> fs = f.specialize(v, x), gs = g.specialize(v, x);
    if (fs.degree() != f.degree(w)) continue;
    return gcd(fs, gs).degree() == 0;
  }
  return false;
}

template <class K>
bool specialized_squarefree(const BiPolyT<K>& f, Var v) {
  const Var w = other(v);
  if (f.degree(w) <= 0) return true;
  for (int t = 0; t < 8; ++t) {
    const K x = FieldTraits<K>::from_rational(make_rational(3 * t + 2, 7));
    UniPoly<K> fs = f.specialize(v, x);
    if (fs.degree() != f.degree(w)) continue;
    return gcd(fs, fs.derivative()).degree() == 0;
  }
  return false;
}

}  // namespace detail

/// gcd over K[c, a], monic in the lex sense. Uses a primitive PRS in c over
/// K[a].
template <class K>
BiPolyT<K> gcd(const BiPolyT<K>& x, const BiPolyT<K>& y) {
  if (x.is_zero()) return make_monic(y);
  if (y.is_zero()) return make_monic(x);
  if constexpr (FieldTraits<K>::exact) {
    if (detail::specialized_coprime(x, y, Var::C) && detail::specialized_coprime(x, y, Var::A))
      return BiPolyT<K>(K(1));
  }
  auto f = x.to_nested(Var::C);
  auto g = y.to_nested(Var::C);
  UniPoly<K> cont = gcd(content(f), content(g));
  f = primitive_part(f);
  g = primitive_part(g);
  if (f.degree() < g.degree()) std::swap(f, g);
  while (!g.is_zero() && g.degree() > 0) {
    auto r = pseudo_remainder(f, g);
    f = std::move(g);
    g = primitive_part(r);
  }
  UniPoly<UniPoly<K>> h;
  if (g.is_zero())
    h = f;  // f is the primitive gcd
  else
    h = UniPoly<UniPoly<K>>::constant(UniPoly<K>::constant(K(1)));  // coprime primitive parts
  std::vector<UniPoly<K>> scaled;
  for (const auto& co : h.coeffs()) scaled.push_back(co * cont);
  return make_monic(BiPolyT<K>::from_nested(UniPoly<UniPoly<K>>(std::move(scaled)), Var::C));
}

/// Square-free part p / gcd(p, dp/dc, dp/da), monic.
template <class K>
BiPolyT<K> squarefree_part(const BiPolyT<K>& p) {
  if (p.is_zero() || p.is_constant()) return make_monic(p);
  if constexpr (FieldTraits<K>::exact) {
    if (detail::specialized_squarefree(p, Var::C) && detail::specialized_squarefree(p, Var::A)) return make_monic(p);
  }
  BiPolyT<K> g = gcd(p, gcd(p.derivative(Var::C), p.derivative(Var::A)));
  return make_monic(divide_exact(p, g));
}

/// True when p = u * q for a nonzero constant u.
template <class K>
bool is_associate(const BiPolyT<K>& p, const BiPolyT<K>& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return make_monic(p) == make_monic(q);
}

}  // namespace pcfdyn
