#pragma once

#include <optional>

namespace kerrspec::horizon {

/// Black-hole parameters in geometric units (G = c = 1): mass m, spin per
/// unit mass a, charge e. All three are lengths.
struct PhysicalParams {
  double m = 1.0;
  double a = 0.0;
  double e = 0.0;
};

/// Smarr's horizon parameters: scale eta^2 (length^2) and distortion beta^2.
struct SmarrShape {
  double eta2 = 1.0;
  double beta2 = 0.0;
};

/// Relative tolerance on m^2 - a^2 - e^2 below which a hole counts as extremal.
inline constexpr double kExtremalTolerance = 1e-12;

struct Validated {
  PhysicalParams params;
  bool extremal = false;
};

Validated validate(const PhysicalParams& params);
double r_plus(const PhysicalParams& params);
SmarrShape smarr_from_physical(const PhysicalParams& params);
PhysicalParams physical_from_smarr(const SmarrShape& shape, double charge);

/// Throws InvalidArgument unless eta2 > 0 and 0 <= beta2 <= 1/2.
void check_shape(const SmarrShape& shape);

/// Horizon profile f(x) = (1 - x^2) / (1 - beta^2 (1 - x^2)); the metric is
/// eta^2 (dx^2 / f + f dphi^2).
class MetricProfile {
 public:
  explicit MetricProfile(SmarrShape shape);

  const SmarrShape& shape() const noexcept { return shape_; }
  /// f(x); exactly 0 at x = +-1.
  double operator()(double x) const;
  /// f'(x), analytic.
  double derivative(double x) const;
  /// Coefficients (g_xx, g_phiphi) of the scaled metric at x in (-1, 1).
  double g_xx(double x) const { return shape_.eta2 / (*this)(x); }
  double g_phiphi(double x) const { return shape_.eta2 * (*this)(x); }

 private:
  SmarrShape shape_;
};

MetricProfile profile(const SmarrShape& shape);
double gauss_curvature(const SmarrShape& shape, double x);
double area(const SmarrShape& shape);

}  // namespace kerrspec::horizon
