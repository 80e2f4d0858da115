#pragma once

#include "pcfdyn/dynamics.hpp"

#include <vector>

namespace pcfdyn {

/// Per-parameter constants at one place.
///
/// Archimedean: beyond escape_radius R = max(10, 4(1+|c|+|a|)),
/// |g(w) - log|w| + log(3)/2| <= delta(w)/2 with
/// delta(w) = -log(1 - 3|c|/(2|w|) - 3|a|^3/|w|^3), so theta = log(3)/2 +
/// delta(R)/2 bounds |g - log+|z|| there. growth_C bounds |G - log+ max(|a|,|c|)|.
struct GreenBounds {
  double escape_radius = 0;
  double theta = 0;
  double rho = 0;
  double tau = 0;
  double growth_C = 0;
};

struct GreenValue {
  double value = 0;
  double error_bound = 0;
  int iterations_used = 0;
};

struct GreenOptions {
  int max_iterations = 300;
  /// Domain offset at places of residual characteristic 3 (not optimal).
  double tau3 = 0.5493061443340549;  // log(3)/2
};

GreenBounds green_bounds(const CubicParam& p);
/// delta(w) above; infinite when |w| is too small for the estimate.
double escape_delta(const CubicParam& p, double abs_w);

/// g_{c,a}(z) to within tol. Throws Undecided when neither escape nor
/// smallness is certified within the cap.
GreenValue green_arch(const CubicParam& p, Complex z, double tol, const GreenOptions& opt = {});

struct CriticalGreen {
  GreenValue g0, g1, G;
};

CriticalGreen g0g1G(const CubicParam& p, double tol, const GreenOptions& opt = {});

/// Bounds at the finite place p for rational parameters.
GreenBounds green_bounds_finite(unsigned long p, const Rational& c, const Rational& a, const GreenOptions& opt = {});

struct PadicCriticalGreen {
  double g0 = 0;
  double g1 = 0;
  /// Exact values, so the bound is zero when decided.
  double error_bound = 0;
};

/// g_{0,p}, g_{1,p} by exact orbit iteration: escape is certified once the
/// cubic term strictly dominates, boundedness by an invariant disk or a
/// repeated orbit point. Throws Undecided after `cap` steps.
PadicCriticalGreen green_padic_critical(unsigned long p, const Rational& c, const Rational& a, int cap = 10);

/// G_p = max(g_{0,p}, g_{1,p}); closed form max(0, -v(c), -v(a)) log p for
/// p >= 5.
double green_finite(unsigned long p, const Rational& c, const Rational& a, double* error_bound = nullptr);

/// Sum over places of max(s0 g_{0,v}, s1 g_{1,v}).
double canonical_height(const Rational& c, const Rational& a, int s0, int s1, double tol, const GreenOptions& opt = {});

/// Primes at which a rational parameter can have a nonzero local term.
std::vector<unsigned long> height_support(const Rational& c, const Rational& a);

}  // namespace pcfdyn
