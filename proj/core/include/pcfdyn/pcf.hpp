#pragma once

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/dynamics.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pcfdyn {

struct OrbitRelation {
  int critical_index = 0;
  int n = 0;  // preperiod
  int k = 1;  // period
  BiPoly poly;  // P^(n+k)(c_i) - P^n(c_i)
};

inline constexpr long kDefaultRelationCap = 81;

/// Throws DegreeCapExceeded when 3^(n+k) > cap.
OrbitRelation orbit_relation(int i, int n, int k, long cap = kDefaultRelationCap);

/// P^n(c_i) as an exact polynomial in (c, a).
BiPoly critical_orbit_point(int i, int n);

struct PcfPoint {
  Complex c, a;
  /// Half-width of the certified box (zero for exact points).
  double radius = 0;
  std::optional<ExactParam> exact;
  std::array<int, 4> witness{};  // n0, k0, n1, k1
  bool certified = false;
};

struct PcfSolveResult {
  bool curve_detected = false;
  BiPoly component;  // shared component when curve_detected
  std::vector<PcfPoint> points;
};

/// Common zeros of two orbit relations, by Res_a, root isolation in c,
/// back-substitution, Newton polishing and certification.
PcfSolveResult pcf_solve(const OrbitRelation& rel0, const OrbitRelation& rel1);

/// Common zeros of two coprime polynomials (made squarefree first). Throws
/// InvalidArgument when they share a component.
std::vector<PcfPoint> solve_system(const BiPoly& f, const BiPoly& g);

/// Exact check that both critical orbits revisit a point within orbit_cap
/// steps. Returns false on an escape certificate; throws Undecided
/// otherwise.
bool certify_pcf(const ExactParam& p, int orbit_cap = 64);

/// Krawczyk test: the box of half-width r around (c, a) contains exactly
/// one common zero of f and g.
bool certify_box(const BiPoly& f, const BiPoly& g, Complex c, Complex a, double r);

struct PcfEnumeration {
  std::vector<PcfPoint> points;
  double max_abs_c = 0, max_abs_a = 0;
  /// Relation pairs that share a curve component.
  std::vector<std::array<int, 4>> curve_pairs;
  std::vector<std::string> errors;
};

/// All relation pairs with 3^(n+k) <= maxdeg for each critical point,
/// deduplicated and sorted by rounded coordinates.
PcfEnumeration pcf_enumerate(long maxdeg, int threads = 1);

/// Sort by rounded coordinates and merge points closer than tol.
std::vector<PcfPoint> dedupe_points(std::vector<PcfPoint> pts, double tol = 1e-8);

}  // namespace pcfdyn
