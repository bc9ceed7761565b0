#include "kerrspec/horizon.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kerrspec/errors.hpp"

namespace kerrspec::horizon {

namespace {

double checked_x(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw Error(ErrorCode::DomainError, "x = " + std::to_string(x) + " outside [-1, 1]");
  }
  return x;
}

}  // namespace

Validated validate(const PhysicalParams& params) {
  const auto [m, a, e] = params;
  if (!std::isfinite(m) || m <= 0.0) throw Error(ErrorCode::NonPositiveMass, "mass must be positive");
  if (!std::isfinite(a) || a < 0.0) throw Error(ErrorCode::InvalidArgument, "spin a must be >= 0");
  if (!std::isfinite(e) || e < 0.0) throw Error(ErrorCode::InvalidArgument, "charge e must be >= 0");

  const double disc = m * m - a * a - e * e;
  const double tol = kExtremalTolerance * m * m;
  if (disc < -tol) {
    throw Error(ErrorCode::HorizonAbsent, "no horizon: m^2 < a^2 + e^2");
  }
  return {params, std::abs(disc) <= tol};
}

double r_plus(const PhysicalParams& params) {
  const auto v = validate(params);
  const auto [m, a, e] = params;
  const double disc = v.extremal ? 0.0 : m * m - a * a - e * e;
  return m + std::sqrt(disc);
}

SmarrShape smarr_from_physical(const PhysicalParams& params) {
  const double r = r_plus(params);
  const double a2 = params.a * params.a;
  const double eta2 = r * r + a2;
  return {eta2, a2 / eta2};
}

void check_shape(const SmarrShape& shape) {
  if (!std::isfinite(shape.eta2) || shape.eta2 <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "eta^2 must be positive");
  }
  if (!(shape.beta2 >= 0.0 && shape.beta2 <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "beta^2 must lie in [0, 1/2]");
  }
}

PhysicalParams physical_from_smarr(const SmarrShape& shape, double charge) {
  check_shape(shape);
  if (!std::isfinite(charge) || charge < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "charge e must be >= 0");
  }
  const double a2 = shape.eta2 * shape.beta2;
  const double r2 = shape.eta2 * (1.0 - shape.beta2);
  const double e2 = charge * charge;
  // r_+ must be the outer root of r^2 - 2mr + a^2 + e^2.
  if (a2 + e2 > r2 * (1.0 + kExtremalTolerance)) {
    throw Error(ErrorCode::ChargeTooLarge, "a^2 + e^2 exceeds r_+^2; no outer horizon at this radius");
  }
  const double r = std::sqrt(r2);
  return {(r2 + a2 + e2) / (2.0 * r), std::sqrt(a2), charge};
}

MetricProfile::MetricProfile(SmarrShape shape) : shape_(shape) { check_shape(shape_); }

double MetricProfile::operator()(double x) const {
  if (std::abs(checked_x(x)) == 1.0) return 0.0;
  const double u = (1.0 - x) * (1.0 + x);
  return u / (1.0 - shape_.beta2 * u);
}

double MetricProfile::derivative(double x) const {
  const double u = (1.0 - checked_x(x)) * (1.0 + x);
  const double denom = 1.0 - shape_.beta2 * u;
  return -2.0 * x / (denom * denom);
}

MetricProfile profile(const SmarrShape& shape) { return MetricProfile(shape); }

double gauss_curvature(const SmarrShape& shape, double x) {
  check_shape(shape);
  checked_x(x);
  const double b2 = shape.beta2;
  const double denom = 1.0 - b2 * (1.0 - x) * (1.0 + x);
  return (1.0 - b2 * (1.0 + 3.0 * x * x)) / (denom * denom * denom) / shape.eta2;
}

double area(const SmarrShape& shape) {
  check_shape(shape);
  return 4.0 * std::numbers::pi * shape.eta2;
}

}  // namespace kerrspec::horizon
