#pragma once

#include <map>
#include <string>
#include <vector>

#include "kerrspec/horizon.hpp"
#include "kerrspec/spectral.hpp"

namespace kerrspec::inverse {

using horizon::MetricProfile;
using horizon::PhysicalParams;
using horizon::SmarrShape;

/// Green's-operator traces: gamma_0 plus gamma_k for some nonzero k.
struct TraceSet {
  double gamma0 = 0.0;
  std::map<int, double> equivariant;

  double gamma(int k) const;
  bool has(int k) const { return equivariant.contains(k); }
};

/// Throws InvalidTraces unless gamma0 and all gamma_k are positive, at least
/// one k != 0 is present, and k * gamma_k agrees across channels within
/// `tolerance` (relative).
void check_traces(const TraceSet& traces, double tolerance);

/// Clamp window for beta^2 just outside [0, 1/2].
inline constexpr double kClampTolerance = 1e-9;

struct RecoveredShape {
  SmarrShape shape;
  bool clamped_beta2 = false;
};

/// gamma_0 = eta^2 (1 - 2 beta^2 / 3), gamma_k = eta^2 / k for k = 1..k_max.
TraceSet traces_closed_form(const SmarrShape& shape, int k_max);

/// eta^2 = k gamma_k, beta^2 = 3/2 (1 - gamma_0 / eta^2).
RecoveredShape shape_from_traces(const TraceSet& traces, int k);

/// Horizon profile rebuilt from (gamma_0, gamma_1).
MetricProfile reconstruct_metric(const TraceSet& traces);

struct ChannelResidual {
  int k = 0;
  double deviation = 0.0;  // |k gamma_k - eta^2| / eta^2
};

struct ReconstructionReport {
  SmarrShape shape;
  PhysicalParams physical;
  double r_plus = 0.0;
  double area = 0.0;
  int channel = 1;
  bool clamped_beta2 = false;
  bool clamped_spin = false;
  /// Charge was supplied as input, so m is not fixed by the spectrum alone.
  bool mass_depends_on_charge = false;
  /// |m - m'| / m where m' comes from physical_from_smarr(shape, e).
  double mass_crosscheck = 0.0;
  std::vector<ChannelResidual> residuals;
};

ReconstructionReport physical_from_traces(const TraceSet& traces, double charge, int channel = 1);

struct RoundTrip {
  PhysicalParams input;
  TraceSet traces;
  /// Per-channel estimates; empty on the closed-form path.
  std::vector<spectral::TraceEstimate> estimates;
  ReconstructionReport report;
  /// max relative deviation over m and a (a compared absolutely when a = 0)
  double max_deviation = 0.0;
};

/// Forward map then inversion. The numeric path solves L_0 and L_1 with
/// `count` modes (basis_size <= 0 selects 2J + 16) and estimates traces.
RoundTrip roundtrip(const PhysicalParams& params, bool numeric, int count = 60,
                    int basis_size = 0);

}  // namespace kerrspec::inverse
