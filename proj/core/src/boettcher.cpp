#include "pcfdyn/boettcher.hpp"

#include <cmath>

namespace pcfdyn {

namespace {

template <class R>
struct Consts;

template <>
struct Consts<BiPoly> {
  static BiPoly q(long n, long d) { return BiPoly(QOmega(make_rational(n, d))); }
  static BiPoly omega() { return BiPoly(QOmega::omega()); }
};

template <>
struct Consts<Complex> {
  static Complex q(long n, long d) { return {static_cast<double>(n) / static_cast<double>(d), 0.0}; }
  static Complex omega() { return {1.0 / std::sqrt(3.0), 0.0}; }
};

template <class R>
std::vector<R> mul_trunc(const std::vector<R>& x, const std::vector<R>& y, std::size_t N) {
  std::vector<R> r(N, R(0L));
  for (std::size_t i = 0; i < x.size() && i < N; ++i)
    for (std::size_t j = 0; j < y.size() && i + j < N; ++j) r[i + j] += x[i] * y[j];
  return r;
}

// Coefficients in u = 1/z of u^3 phi(P(z)) and Phi(u)^3 with Phi = u phi(1/u),
// truncated to u^(N-1). Entries of phi_series beyond the known a_k are zero.
template <class R>
struct Sides {
  std::vector<R> lhs, rhs;
};

template <class R>
Sides<R> both_sides(const R& c, const R& a, const std::vector<R>& Phi, std::size_t N) {
  using C = Consts<R>;
  const R w = C::omega();
  const R a3 = a * a * a;
  std::vector<R> S(N, R(0L));
  S[0] = R(1L);
  for (std::size_t m = 1; m < N; ++m) {
    S[m] = C::q(3, 2) * c * S[m - 1];
    if (m >= 3) S[m] -= C::q(3, 1) * a3 * S[m - 3];
  }
  Sides<R> s;
  s.lhs.assign(N, R(0L));
  s.lhs[0] = w * C::q(1, 3);
  if (N > 1) s.lhs[1] = -(w * c * C::q(1, 2));
  if (N > 3) s.lhs[3] = w * (a3 - c * C::q(1, 2));
  std::vector<R> Sj(1, R(1L));
  R three_j(1L);
  for (std::size_t j = 1; 3 * j + 3 < N && j + 1 < Phi.size(); ++j) {
    Sj = mul_trunc(Sj, S, N);
    three_j = three_j * C::q(3, 1);
    const R coef = Phi[j + 1] * three_j;
    for (std::size_t m = 0; 3 * j + 3 + m < N; ++m) s.lhs[3 * j + 3 + m] += coef * Sj[m];
  }
  std::vector<R> P(Phi.begin(), Phi.begin() + static_cast<long>(std::min(Phi.size(), N)));
  s.rhs = mul_trunc(mul_trunc(P, P, N), P, N);
  return s;
}

template <class R>
std::vector<R> recursion(const R& c, const R& a, int K) {
  using C = Consts<R>;
  const R w = C::omega();
  std::vector<R> Phi{w, -(w * c * C::q(1, 2))};
  std::vector<R> out;
  for (int k = 1; k <= K; ++k) {
    const std::size_t n = static_cast<std::size_t>(k) + 1;
    Phi.push_back(R(0L));
    // Since 3 omega^2 = 1, a_k enters the u^(k+1) coefficient of Phi^3 with
    // coefficient one.
    Sides<R> s = both_sides(c, a, Phi, n + 1);
    R ak = s.lhs[n] - s.rhs[n];
    Phi[n] = ak;
    out.push_back(ak);
  }
  return out;
}

}  // namespace

BoettcherExpansion bottcher_coeffs(int K) {
  if (K < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
  BoettcherExpansion e;
  e.order = K;
  e.coeffs = recursion(BiPoly::c(), BiPoly::a(), K);
  return e;
}

std::vector<Complex> bottcher_coeffs_numeric(const CubicParam& p, int K) {
  if (K < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
  return recursion(p.c, p.a, K);
}

FunctionalEquationReport verify_functional_equation(const BoettcherExpansion& e) {
  const int K = e.order;
  const BiPoly w(QOmega::omega());
  std::vector<BiPoly> Phi{w, -(w * BiPoly::c() * BiPoly(QOmega(Rational(1, 2))))};
  for (const auto& ak : e.coeffs) Phi.push_back(ak);
  const std::size_t N = static_cast<std::size_t>(K) + 2;
  Sides<BiPoly> s = both_sides(BiPoly::c(), BiPoly::a(), Phi, N);
  FunctionalEquationReport r;
  r.order = K;
  r.lowest_exponent = -(K - 2);
  for (std::size_t m = 0; m < N; ++m) {
    if (!(s.lhs[m] - s.rhs[m]).is_zero()) {
      r.pass = false;
      r.first_failing_exponent = 3 - static_cast<int>(m);  // u^m is z^(3-m)
      break;
    }
  }
  return r;
}

FunctionalEquationReport verify_functional_equation(int K) { return verify_functional_equation(bottcher_coeffs(K)); }

CoefficientBoundsReport coefficient_bounds_report(const BoettcherExpansion& e) {
  CoefficientBoundsReport rep;
  for (int k = 1; k <= e.order; ++k) {
    CoefficientBoundRow row;
    row.k = k;
    row.degree = e.a(k).total_degree();
    for (const auto& [key, g] : e.a(k).terms()) {
      for (const Rational* x : {&g.x(), &g.y()}) {
        if (*x == 0) continue;
        row.max_neg_v2 = std::max(row.max_neg_v2, -valuation(*x, 2));
        Integer d = x->get_den();
        while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
        while (mpz_divisible_ui_p(d.get_mpz_t(), 3)) d /= 3;
        if (d != 1) row.denominators_ok = false;
      }
      row.max_neg_twice_v3 = std::max(row.max_neg_twice_v3, -twice_valuation3(g));
    }
    row.two_adic_ok = row.max_neg_v2 <= k + 1;
    row.three_adic_ok = row.max_neg_twice_v3 <= k;
    rep.pass = rep.pass && row.two_adic_ok && row.three_adic_ok && row.denominators_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

double boettcher_radius(const CubicParam& p) { return 2 * std::max({1.0, std::abs(p.c), std::abs(p.a)}); }

}  // namespace

bool bottcher_domain_ok(const CubicParam& p, Complex z, double tol) {
  const double Rb = boettcher_radius(p);
  if (!(std::abs(z) > 4 * Rb)) return false;
  const double G = g0g1G(p, tol).G.value;
  return std::log(std::abs(z)) > green_bounds(p).rho + G;
}

BoettcherValue bottcher_eval(const CubicParam& p, Complex z, int K) {
  if (!bottcher_domain_ok(p, z)) throw Error(ErrorKind::OutOfDomain, "z is outside the Boettcher domain guard");
  const std::vector<Complex> ak = bottcher_coeffs_numeric(p, K);
  const double Rb = boettcher_radius(p);
  const Complex w(1.0 / std::sqrt(3.0), 0.0);
  Complex inv = 1.0 / z, zk = inv, sum = w * (z - p.c / 2.0);
  double M = 0;
  for (int k = 1; k <= K; ++k) {
    sum += ak[static_cast<std::size_t>(k - 1)] * zk;
    zk *= inv;
    M = std::max(M, std::abs(ak[static_cast<std::size_t>(k - 1)]) / std::pow(Rb, k + 1));
  }
  const double q = Rb / std::abs(z);
  BoettcherValue v;
  v.value = sum;
  v.order = K;
  v.tail_bound = M * Rb * std::pow(q, K + 1) / (1 - q);
  return v;
}

Complex bottcher_numeric(const CubicParam& p, Complex z) {
  const Complex w(1.0 / std::sqrt(3.0), 0.0);
  std::vector<Complex> orbit{z};
  while (std::abs(orbit.back()) < 1e8) {
    if (orbit.size() > 200) throw Error(ErrorKind::OutOfDomain, "orbit does not escape");
    orbit.push_back(eval_P(p, orbit.back()));
  }
  const Complex wn = orbit.back();
  const Complex a1 = -w / 4.0 * p.c * p.c;
  Complex psi = w * (wn - p.c / 2.0) + a1 / wn;
  const Complex rot(-0.5, std::sqrt(3.0) / 2);
  for (std::size_t j = orbit.size() - 1; j-- > 0;) {
    const Complex guide = w * (orbit[j] - p.c / 2.0);
    Complex r = std::pow(psi, 1.0 / 3.0), best = r;
    for (int i = 0; i < 2; ++i) {
      r *= rot;
      if (std::abs(r - guide) < std::abs(best - guide)) best = r;
    }
    psi = best;
  }
  return psi;
}

}  // namespace pcfdyn
