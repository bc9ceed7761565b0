#pragma once
// Test-only reference computations. Nothing here calls into the library's
// quadrature, eigensolver or Legendre code.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below s.
inline int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double s) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - s - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = 1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

// index-th smallest eigenvalue (0-based) by bisection on the Sturm count.
inline double tridiagonal_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off,
                                     int index) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < diag.size() ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(diag, off, mid) > index) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Cell-centred second-order finite-volume discretization of
// -(f u')' + k^2 u / f on (-1, 1) with vanishing flux at the ends (f(+-1) = 0),
// divided by eta2. Returns the index-th eigenvalue (index 0 is the zero mode
// when k = 0).
inline double fd_eigenvalue(double eta2, double beta2, int k, int cells, int index) {
  auto f = [&](double x) {
    const double u = (1.0 - x) * (1.0 + x);
    return u / (1.0 - beta2 * u);
  };
  const double h = 2.0 / cells;
  std::vector<double> diag(static_cast<std::size_t>(cells));
  std::vector<double> off(static_cast<std::size_t>(cells - 1));
  for (int i = 0; i < cells; ++i) {
    const double xc = -1.0 + (i + 0.5) * h;
    const double fl = i == 0 ? 0.0 : f(-1.0 + i * h);
    const double fr = i == cells - 1 ? 0.0 : f(-1.0 + (i + 1) * h);
    diag[static_cast<std::size_t>(i)] = ((fl + fr) / (h * h) + k * k / f(xc)) / eta2;
    if (i + 1 < cells) off[static_cast<std::size_t>(i)] = -fr / (h * h) / eta2;
  }
  return tridiagonal_eigenvalue(diag, off, index);
}

// Composite Simpson rule, n even.
inline double simpson(const std::function<double(double)>& g, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

// Eigenvalues of a symmetric 2x2 matrix, ascending.
inline std::array<double, 2> eig2(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  return {mean - r, mean + r};
}

// Eigenvalues of a symmetric 3x3 matrix by the trigonometric cubic solution.
inline std::array<double, 3> eig3(const std::array<std::array<double, 3>, 3>& A) {
  const double p1 = A[0][1] * A[0][1] + A[0][2] * A[0][2] + A[1][2] * A[1][2];
  const double q = (A[0][0] + A[1][1] + A[2][2]) / 3.0;
  const double p2 = (A[0][0] - q) * (A[0][0] - q) + (A[1][1] - q) * (A[1][1] - q) +
                    (A[2][2] - q) * (A[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return {q, q, q};
  std::array<std::array<double, 3>, 3> B{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B[i][j] = (A[i][j] - (i == j ? q : 0.0)) / p;
  const double detB = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) -
                      B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
                      B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
  const double r = std::clamp(detB / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::array<double, 3> out{e1, e2, e3};
  std::sort(out.begin(), out.end());
  return out;
}

// Closed-form Legendre polynomials used as an orthonormality cross-check.
inline double legendre_explicit(int l, double x) {
  switch (l) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return 0.5 * (3 * x * x - 1);
    case 3: return 0.5 * (5 * x * x * x - 3 * x);
    default: return std::nan("");
  }
}

}  // namespace oracle

namespace oracle {

// Extrapolated finite-volume eigenvalue. The k = +-1 channel converges at
// O(h) (u ~ sqrt(1 - x^2) at the ends), so it gets an extra Richardson level.
inline double fd_eigenvalue_extrapolated(double eta2, double beta2, int k, int cells, int index) {
  const double a = fd_eigenvalue(eta2, beta2, k, cells, index);
  const double b = fd_eigenvalue(eta2, beta2, k, 2 * cells, index);
  if (std::abs(k) != 1) return (4.0 * b - a) / 3.0;
  const double c = fd_eigenvalue(eta2, beta2, k, 4 * cells, index);
  const double r1 = 2.0 * b - a;
  const double r2 = 2.0 * c - b;
  return (4.0 * r2 - r1) / 3.0;
}

}  // namespace oracle
