#pragma once

#include "pcfdyn/dynamics.hpp"
#include "pcfdyn/unipoly.hpp"

#include <string>
#include <vector>

namespace pcfdyn {

/// A parameterized line s -> (c(s), a(s)), each of degree <= 2.
struct ParamLine {
  std::string name;
  UniPoly<QOmega> c, a;

  static ParamLine c_zero();  // (0, s)
  static ParamLine a_zero();  // (s, 0)
  CubicParam at(Complex s) const;
};

struct Window {
  double x0 = -1.6, x1 = 1.6, y0 = -1.6, y1 = 1.6;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

struct EmpiricalMeasure {
  std::vector<Complex> atoms;
  std::vector<double> weights;  // uniform 1/N from pcf_on_line
};

/// Parameters on the line where every critical point satisfies some
/// relation P^(n+k)(c_i) = P^n(c_i) with n + k <= max_orbit.
EmpiricalMeasure pcf_on_line(const ParamLine& line, int max_orbit);

struct DensityGrid {
  Window window;
  int resolution = 0;
  /// Row-major, values[j * resolution + i] for cell (i, j); sums to 1.
  std::vector<double> values;
  /// Sum of the clipped Laplacian times the cell area before normalizing.
  double unnormalized_mass = 0;
  /// Fraction of cells masked because the Green function was undecided.
  double mask_fraction = 0;

  Complex cell_center(int i, int j) const;
};

/// 5-point Laplacian of g_0 along the line, clipped at 0 and normalized.
DensityGrid bifurcation_density(const ParamLine& line, const Window& window, int resolution, int threads = 1);

/// The same from precomputed potential values on the (resolution + 2)^2
/// nodes that include a one-cell border; NaN marks an undecided node.
DensityGrid density_from_potential(const std::vector<double>& g, const Window& window, int resolution);

inline constexpr const char* kDictionaryVersion = "dict-v1";

/// Max over the 64 Gaussian test functions of |int f dmu - int f dnu|.
/// Centers on a 4x4 grid and its half-cell shift, widths W/8 and W/4.
double compare(const EmpiricalMeasure& mu, const DensityGrid& nu);
double compare(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Window& window);

}  // namespace pcfdyn
