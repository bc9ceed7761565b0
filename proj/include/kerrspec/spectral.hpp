#pragma once

#include <span>
#include <vector>

#include "kerrspec/horizon.hpp"
#include "kerrspec/numerics.hpp"

namespace kerrspec::spectral {

using horizon::SmarrShape;

/// Ascending positive eigenvalues of the equivariant operator
/// L_k = -(f u')' + k^2 u / f on the horizon metric (1/length^2).
/// For k = 0 the zero mode is not part of the list.
struct ModeSpectrum {
  int k = 0;
  std::vector<double> eigenvalues;
  int basis_size = 0;
  SmarrShape shape;
};

/// Estimate of the Green's-operator trace sum_j 1 / lambda_j (length^2).
struct TraceEstimate {
  int k = 0;
  double value = 0.0;
  double partial_sum = 0.0;
  double tail_correction = 0.0;
  int modes_used = 0;
};

inline constexpr int kMinBasisSize = 8;
inline constexpr double kConvergenceTolerance = 1e-8;
inline constexpr double kTailResidualBound = 1e-3;
inline constexpr int kMinTailWindow = 8;

/// First basis degree for channel k: |k| for k != 0, 1 for k = 0.
int first_degree(int k) noexcept;

/// Galerkin stiffness matrix of L_k in the orthonormal associated Legendre
/// basis of size N, already divided by eta^2. Quadrature order 2N + 16.
numerics::SymMatrix assemble(int k, const SmarrShape& shape, int basis_size);

/// J lowest eigenvalues; verified by recomputing at 2N, which must move each
/// of them by less than `tolerance` (relative).
ModeSpectrum eigenvalues(int k, const SmarrShape& shape, int count, int basis_size,
                         double tolerance = kConvergenceTolerance);

/// Default basis size for J requested modes.
inline int default_basis_size(int count) noexcept { return 2 * count + 16; }

/// Default tail window: J/3 clamped to [8, 12].
int default_tail_window(int count) noexcept;

/// Partial sum plus a tail modelled by a least-squares quadratic in j fitted
/// to the last `tail_window` eigenvalues.
TraceEstimate trace_numeric(const ModeSpectrum& spectrum, int tail_window);

/// eta^2 * 1/2 * int_{-1}^{1} (1 - x^2) / f(x) dx by 64-point quadrature.
double s1_trace_integral(const SmarrShape& shape);

/// Spectra for several channels, solved concurrently. Output order matches ks.
std::vector<ModeSpectrum> eigenvalues_many(std::span<const int> ks, const SmarrShape& shape,
                                           int count, int basis_size);

}  // namespace kerrspec::spectral
