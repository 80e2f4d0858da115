#include "pcfdyn/puiseux.hpp"

#include "pcfdyn/roots.hpp"

#include <cmath>
#include <numeric>

namespace pcfdyn {

namespace {

template <class K>
double magnitude(const K& x) {
  return std::abs(FieldTraits<K>::to_complex(x));
}

template <class K>
bool negligible(const K& x, double scale) {
  if constexpr (FieldTraits<K>::exact)
    return is_zero(x);
  else
    return std::abs(x) <= 1e-9 * std::max(1.0, scale);
}

template <class K>
double max_magnitude(const BiPolyT<K>& h) {
  double m = 0;
  for (const auto& [k, v] : h.terms()) m = std::max(m, magnitude(v));
  return m;
}

// Complex inputs carry rounding noise; drop terms far below the largest one.
template <class K>
BiPolyT<K> cleaned(const BiPolyT<K>& h) {
  if constexpr (FieldTraits<K>::exact) {
    return h;
  } else {
    const double m = max_magnitude(h);
    BiPolyT<K> r;
    for (const auto& [k, v] : h.terms())
      if (std::abs(v) > 1e-11 * m) r.add_term(k.first, k.second, v);
    return r;
  }
}

template <class K>
std::vector<K> distinct_nonzero_roots(const UniPoly<K>& p);

template <>
std::vector<QOmega> distinct_nonzero_roots(const UniPoly<QOmega>& p) {
  UniPoly<QOmega> sq = squarefree_part(p);
  std::vector<QOmega> r = exact_roots(sq);
  if (static_cast<int>(r.size()) != sq.degree())
    throw Error(ErrorKind::ExtensionRequired, "characteristic polynomial has roots outside Q(omega)");
  std::vector<QOmega> out;
  for (auto& x : r)
    if (!x.is_zero()) out.push_back(x);
  return out;
}

template <>
std::vector<Complex> distinct_nonzero_roots(const UniPoly<Complex>& p) {
  std::vector<Complex> out;
  for (const auto& cl : cluster_points(complex_roots(p), 1e-6))
    if (std::abs(cl.center) > 1e-9) out.push_back(cl.center);
  return out;
}

template <class K>
struct Sol {
  int q;
  PuiseuxSeries<K> w;  // in t, with s = t^q
};

template <class K>
PuiseuxSeries<K> implicit_series(const BiPolyT<K>& H, long N) {
  const BiPolyT<K> Hw = H.derivative(Var::A);
  const auto s = PuiseuxSeries<K>::t();
  auto W = PuiseuxSeries<K>::zero(N);
  int rounds = 4;
  for (long n = 1; n < N; n *= 2) ++rounds;
  for (int it = 0; it < rounds; ++it) {
    auto E = evaluate(H, s, W).truncated(N);
    auto D = evaluate(Hw, s, W).truncated(N);
    W = (W - E * D.inverse()).truncated(N);
  }
  return W;
}

long binom(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class K>
std::vector<Sol<K>> solve(BiPolyT<K> H, long N, int depth) {
  if (depth > 40) throw Error(ErrorKind::RootFindingFailure, "Newton-Puiseux recursion too deep");
  std::vector<Sol<K>> out;
  H = cleaned(H);
  if (H.is_zero()) return out;
  const double scale = max_magnitude(H);

  const int lw = H.low_degree(Var::A);
  if (lw > 0) {
    out.push_back({1, PuiseuxSeries<K>::zero()});
    BiPolyT<K> r;
    for (const auto& [k, v] : H.terms()) r.add_term(k.first, k.second - lw, v);
    H = r;
  }
  if (!negligible(H.coeff(0, 0), scale)) return out;
  if (!detail::coeff_is_zero(H.coeff(0, 0))) H -= BiPolyT<K>(H.coeff(0, 0));
  if (!negligible(H.coeff(0, 1), scale)) {
    out.push_back({1, implicit_series(H, N)});
    return out;
  }

  // Lower Newton polygon over points (j = deg_w, i = deg_s).
  std::vector<std::pair<int, int>> pts;
  for (const auto& [k, v] : H.terms()) pts.push_back({k.second, k.first});
  int i0 = INT_MAX;
  for (auto [j, i] : pts)
    if (j == 0) i0 = std::min(i0, i);
  if (i0 == INT_MAX) return out;
  std::pair<int, int> cur{0, i0};
  while (cur.second > 0) {
    bool found = false;
    std::pair<int, int> nxt{};
    double best = 0;
    for (auto [j, i] : pts) {
      if (j <= cur.first) continue;
      double sl = static_cast<double>(i - cur.second) / (j - cur.first);
      if (!found || sl < best - 1e-12 || (std::abs(sl - best) <= 1e-12 && j > nxt.first)) {
        found = true;
        best = sl;
        nxt = {j, i};
      }
    }
    if (!found || nxt.second >= cur.second) break;
    const int dj = nxt.first - cur.first, di = cur.second - nxt.second;
    const int g = std::gcd(dj, di);
    const int q = dj / g, p = di / g;
    const long M = static_cast<long>(q) * cur.second + static_cast<long>(p) * cur.first;
    std::vector<K> phi(static_cast<std::size_t>(dj / q) + 1, K(0));
    for (const auto& [k, v] : H.terms()) {
      const int j = k.second, i = k.first;
      if (static_cast<long>(q) * i + static_cast<long>(p) * j == M && j >= cur.first && j <= nxt.first)
        phi[static_cast<std::size_t>((j - cur.first) / q)] += v;
    }
    for (const K& zeta : distinct_nonzero_roots(UniPoly<K>(phi))) {
      auto gamma = kth_root(zeta, static_cast<unsigned>(q));
      if (!gamma) throw Error(ErrorKind::ExtensionRequired, "ramified branch needs a root outside Q(omega)");
      BiPolyT<K> H1;
      for (const auto& [k, v] : H.terms()) {
        const int j = k.second, i = k.first;
        const long e = static_cast<long>(q) * i + static_cast<long>(p) * j - M;
        std::vector<K> gpow{K(1)};
        for (int m = 1; m <= j; ++m) gpow.push_back(gpow.back() * *gamma);
        for (int m = 0; m <= j; ++m)
          H1.add_term(static_cast<int>(e), m, v * K(binom(j, m)) * gpow[static_cast<std::size_t>(j - m)]);
      }
      for (auto& sub : solve(H1, N, depth + 1)) {
        auto w = (sub.w + PuiseuxSeries<K>::constant(*gamma)).shifted(static_cast<long>(p) * sub.q);
        out.push_back({q * sub.q, w});
      }
    }
    cur = nxt;
  }
  return out;
}

enum class Chart { C, A };

// Local equation at infinity: chart C uses s = 1/c, y = a/c; chart A uses
// s = 1/a, x = c/a. Returns H(s, w) with y = rho + w (resp. x = w).
template <class K>
BiPolyT<K> local_equation(const BiPolyT<K>& F, Chart chart, const K& rho) {
  const int d = F.total_degree();
  BiPolyT<K> G;
  for (const auto& [k, v] : F.terms()) {
    const int se = d - k.first - k.second;
    if (chart == Chart::C)
      G.add_term(se, k.second, v);
    else
      G.add_term(se, k.first, v);
  }
  if (detail::coeff_is_zero(rho)) return G;
  BiPolyT<K> H;
  for (const auto& [k, v] : G.terms()) {
    const int j = k.second;
    std::vector<K> rp{K(1)};
    for (int m = 1; m <= j; ++m) rp.push_back(rp.back() * rho);
    for (int m = 0; m <= j; ++m) H.add_term(k.first, m, v * K(binom(j, m)) * rp[static_cast<std::size_t>(j - m)]);
  }
  return H;
}

template <class K>
std::vector<Branch<K>> branches_in(const BiPolyT<K>& F, Chart chart, const K& rho, long N) {
  std::vector<Branch<K>> out;
  for (auto& sol : solve(local_equation(F, chart, rho), N, 0)) {
    const int e = sol.q;
    auto y = sol.w + PuiseuxSeries<K>::constant(rho);
    Branch<K> br;
    br.ramification = e;
    auto inv = PuiseuxSeries<K>::monomial(K(1), -e);
    if (chart == Chart::C) {
      br.c = inv;
      br.a = y.shifted(-e);
    } else {
      br.a = inv;
      br.c = y.shifted(-e);
    }
    out.push_back(std::move(br));
  }
  return out;
}

template <class K>
PuiseuxSeries<Complex> to_complex_series(const PuiseuxSeries<K>& s) {
  std::vector<Complex> c;
  for (const auto& v : s.coeffs()) c.push_back(FieldTraits<K>::to_complex(v));
  return PuiseuxSeries<Complex>(std::move(c), s.lo(), s.prec(), s.ram());
}

UniPoly<QOmega> top_form_dehomogenized(const BiPoly& F) {
  const BiPoly top = F.top_form();
  const int d = F.total_degree();
  std::vector<QOmega> c(static_cast<std::size_t>(d) + 1, QOmega(0));
  for (const auto& [k, v] : top.terms()) c[static_cast<std::size_t>(k.second)] = v;
  return UniPoly<QOmega>(std::move(c));
}

}  // namespace

std::vector<InfinityCenter> centers_at_infinity(const BiPoly& curve) {
  std::vector<InfinityCenter> out;
  if (curve.total_degree() <= 0) return out;
  UniPoly<QOmega> f = top_form_dehomogenized(curve);
  for (const auto& rho : distinct_sorted(complex_roots(f), 1e-8)) out.push_back({Complex(1.0), rho});
  if (f.degree() < curve.total_degree()) out.push_back({Complex(0.0), Complex(1.0)});
  return out;
}

NewtonPuiseuxResult newton_puiseux(const BiPoly& curve, const InfinityCenter& center, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
  if (curve.total_degree() < 1) throw Error(ErrorKind::InvalidArgument, "curve must be nonconstant");
  NewtonPuiseuxResult res;
  const long N = order + 2;
  const double cn = std::abs(center.c_star), an = std::abs(center.a_star);
  const Chart chart = cn > 1e-12 * std::max(cn + an, 1e-300) ? Chart::C : Chart::A;
  const auto Fc = curve.map([](const QOmega& q) { return q.to_complex(); });

  if (chart == Chart::A) {
    if (!is_zero(curve.top_form().coeff(0, curve.total_degree()))) return res;  // [0:1:0] is not on the closure of the curve
    try {
      res.exact_branches = branches_in(curve, Chart::A, QOmega(0), N);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ExtensionRequired) throw;
      res.exact = false;
      res.branches = branches_in(Fc, Chart::A, Complex(0.0), N);
      return res;
    }
  } else {
    const Complex rho_num = center.a_star / center.c_star;
    UniPoly<QOmega> f = top_form_dehomogenized(curve);
    std::optional<QOmega> rho;
    for (const auto& r : exact_roots(f))
      if (std::abs(r.to_complex() - rho_num) < 1e-6 * std::max(1.0, std::abs(rho_num))) rho = r;
    if (rho) {
      try {
        res.exact_branches = branches_in(curve, Chart::C, *rho, N);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ExtensionRequired) throw;
        rho.reset();
      }
    }
    if (!rho) {
      res.exact = false;
      res.exact_branches.clear();
      Complex best = rho_num;
      double dist = INFINITY;
      for (const auto& r : complex_roots(f)) {
        if (std::abs(r - rho_num) < dist) {
          dist = std::abs(r - rho_num);
          best = r;
        }
      }
      if (dist > 1e-6 * std::max(1.0, std::abs(rho_num)))
        throw Error(ErrorKind::InvalidArgument, "center is not on the closure of the curve");
      res.branches = branches_in(Fc, Chart::C, best, N);
      return res;
    }
  }
  for (const auto& b : res.exact_branches)
    res.branches.push_back({to_complex_series(b.c), to_complex_series(b.a), b.ramification});
  return res;
}

template <class K>
long branch_residual_order(const BiPolyT<K>& curve, const Branch<K>& br, double tol) {
  auto v = evaluate(curve, br.c, br.a).shifted(static_cast<long>(br.ramification) * curve.total_degree());
  const double scale = std::max(1.0, max_magnitude(curve));
  for (long e = v.lo(); e < v.lo() + static_cast<long>(v.coeffs().size()); ++e) {
    K x = v.coeff(e);
    if (FieldTraits<K>::exact ? !is_zero(x) : magnitude(x) > tol * scale) return e;
  }
  return v.prec();
}

template long branch_residual_order(const BiPolyT<QOmega>&, const Branch<QOmega>&, double);
template long branch_residual_order(const BiPolyT<Complex>&, const Branch<Complex>&, double);

}  // namespace pcfdyn
