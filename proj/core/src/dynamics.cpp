#include "pcfdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace pcfdyn {

Complex eval_Pn_bounded(const CubicParam& p, Complex z, int n, double bound) {
  for (int i = 0; i < n; ++i) {
    z = eval_P(p, z);
    if (!(std::abs(z) <= bound)) throw Error(ErrorKind::Overflow, "orbit left the bounding disk");
  }
  return z;
}

int mobius(int n) {
  int r = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

long dynatomic_degree(int m, int d) {
  long s = 0;
  for (int k = 1; k <= m; ++k) {
    if (m % k) continue;
    long dk = 1;
    for (int i = 0; i < k; ++i) dk *= d;
    s += mobius(m / k) * dk;
  }
  return s;
}

namespace {

using CL = ComplexL;

struct OrbitData {
  std::vector<CL> z;   // z_0 .. z_m
  std::vector<CL> dz;  // (P^j)'(z_0), j = 0..m
};

OrbitData orbit(const CubicParamT<CL>& p, CL z0, int m) {
  OrbitData o;
  o.z.push_back(z0);
  o.dz.push_back(1);
  for (int j = 0; j < m; ++j) {
    o.dz.push_back(o.dz.back() * eval_dP(p, o.z.back()));
    o.z.push_back(eval_P(p, o.z.back()));
  }
  return o;
}

// Newton ratio f/f' of the dynatomic polynomial, from its logarithmic
// derivative sum_k mu(m/k) ((P^k)' - 1) / (P^k - z).
CL dynatomic_ratio(const CubicParamT<CL>& p, int m, CL z) {
  OrbitData o = orbit(p, z, m);
  CL s = 0;
  for (int k = 1; k <= m; ++k) {
    if (m % k) continue;
    int mu = mobius(m / k);
    if (!mu) continue;
    CL f = o.z[static_cast<std::size_t>(k)] - z;
    if (f == CL(0)) return 0;
    s += static_cast<long double>(mu) * (o.dz[static_cast<std::size_t>(k)] - CL(1)) / f;
  }
  return CL(1) / s;
}

long double magnitude_scale(const CubicParamT<CL>& p) {
  return 1 + std::abs(p.c) + std::abs(p.a);
}

}  // namespace

std::vector<Cycle> find_cycles(const CubicParam& p0, int m, const CycleOptions& opt) {
  if (m < 1 || m > opt.max_period) throw Error(ErrorKind::DegreeCapExceeded, "period outside the configured bound");
  const CubicParamT<CL> p{CL(p0.c.real(), p0.c.imag()), CL(p0.a.real(), p0.a.imag())};
  const int deg = static_cast<int>(dynatomic_degree(m));
  const long double scale = magnitude_scale(p);
  AberthOptions ao;
  ao.tolerance = 1e-16L;
  RootSet rs = aberth_ratio(deg, [&](CL z) { return dynatomic_ratio(p, m, z); }, 1.5L * scale, ao);
  if (!rs.converged) throw Error(ErrorKind::RootFindingFailure, "dynatomic root iteration did not converge");

  // Local refinement on P^m(z) - z and the exact-period test.
  struct Pt {
    CL z;
    bool ok;
  };
  std::vector<Pt> pts;
  for (const auto& r : rs.roots) {
    CL z(r.real(), r.imag());
    for (int it = 0; it < 8; ++it) {
      OrbitData o = orbit(p, z, m);
      CL d = o.dz.back() - CL(1);
      if (d == CL(0)) break;
      CL step = (o.z.back() - z) / d;
      z -= step;
      if (std::abs(step) < 1e-19L * std::max(1.0L, std::abs(z))) break;
    }
    OrbitData o = orbit(p, z, m);
    const long double res = std::abs(o.z.back() - z);
    // Near-multiple roots cannot reach the absolute target; scale by the
    // conditioning of the fixed-point equation.
    const long double cond = std::max(1.0L, std::abs(z)) * std::max(1.0L, std::abs(o.dz.back()));
    bool ok = res < static_cast<long double>(opt.residual) * cond;
    for (int k = 1; k < m && ok; ++k)
      if (m % k == 0 && std::abs(o.z[static_cast<std::size_t>(k)] - z) < 1e-8L * std::max(1.0L, std::abs(z)))
        ok = false;
    pts.push_back({z, ok});
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& x, const Pt& y) {
    auto kx = std::pair{std::round(static_cast<double>(x.z.real()) * 1e8), std::round(static_cast<double>(x.z.imag()) * 1e8)};
    auto ky = std::pair{std::round(static_cast<double>(y.z.real()) * 1e8), std::round(static_cast<double>(y.z.imag()) * 1e8)};
    return kx < ky;
  });

  std::vector<Cycle> out;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i] || !pts[i].ok) continue;
    used[i] = true;
    Cycle cy;
    cy.period = m;
    CL z = pts[i].z, mult = 1;
    for (int j = 0; j < m; ++j) {
      cy.points.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
      mult *= eval_dP(p, z);
      if (j + 1 < m) {
        z = eval_P(p, z);
        // Claim the matching root so the cycle is listed once.
        std::size_t best = pts.size();
        long double bd = 1e-6L * std::max(1.0L, std::abs(z));
        for (std::size_t k = 0; k < pts.size(); ++k) {
          if (used[k]) continue;
          long double d = std::abs(pts[k].z - z);
          if (d < bd) {
            bd = d;
            best = k;
          }
        }
        if (best < pts.size()) {
          used[best] = true;
          z = pts[best].z;
        }
      }
    }
    cy.multiplier = Complex(static_cast<double>(mult.real()), static_cast<double>(mult.imag()));
    out.push_back(std::move(cy));
  }
  return out;
}

}  // namespace pcfdyn
