#include "kerrspec/inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kerrspec/errors.hpp"
#include "kerrspec/spectral.hpp"

namespace kerrspec::inverse {

double TraceSet::gamma(int k) const {
  if (k == 0) return gamma0;
  auto it = equivariant.find(k);
  if (it == equivariant.end()) it = equivariant.find(-k);
  if (it == equivariant.end()) {
    throw Error(ErrorCode::InvalidTraces, "no trace for channel k=" + std::to_string(k));
  }
  return it->second;
}

void check_traces(const TraceSet& traces, double tolerance) {
  if (!(traces.gamma0 > 0.0)) throw Error(ErrorCode::InvalidTraces, "gamma_0 must be positive");
  if (traces.equivariant.empty()) {
    throw Error(ErrorCode::InvalidTraces, "at least one trace with k != 0 is required");
  }
  double reference = 0.0;
  for (const auto& [k, g] : traces.equivariant) {
    if (k == 0) throw Error(ErrorCode::InvalidTraces, "equivariant traces need k != 0");
    if (!(g > 0.0)) {
      throw Error(ErrorCode::InvalidTraces, "gamma_" + std::to_string(k) + " must be positive");
    }
    const double scaled = std::abs(k) * g;
    if (reference == 0.0) {
      reference = scaled;
    } else if (std::abs(scaled - reference) > tolerance * reference) {
      throw Error(ErrorCode::InvalidTraces,
                  "k * gamma_k disagrees across channels at k=" + std::to_string(k));
    }
  }
}

TraceSet traces_closed_form(const SmarrShape& shape, int k_max) {
  horizon::check_shape(shape);
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 1");
  TraceSet out;
  out.gamma0 = shape.eta2 * (1.0 - 2.0 * shape.beta2 / 3.0);
  for (int k = 1; k <= k_max; ++k) out.equivariant[k] = shape.eta2 / k;
  return out;
}

RecoveredShape shape_from_traces(const TraceSet& traces, int k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "channel must be nonzero");
  const double gk = traces.gamma(k);
  if (!(gk > 0.0)) throw Error(ErrorCode::ZeroTrace, "gamma_" + std::to_string(k) + " <= 0");
  if (!(traces.gamma0 > 0.0)) throw Error(ErrorCode::ZeroTrace, "gamma_0 <= 0");

  RecoveredShape out;
  out.shape.eta2 = std::abs(k) * gk;
  double beta2 = 1.5 * (1.0 - traces.gamma0 / out.shape.eta2);
  if (beta2 < -kClampTolerance || beta2 > 0.5 + kClampTolerance || !std::isfinite(beta2)) {
    throw Error(ErrorCode::InvalidTraces,
                "recovered beta^2 = " + std::to_string(beta2) +
                    " is outside [0, 1/2]; no Kerr-Newman horizon has these traces");
  }
  if (beta2 < 0.0) {
    beta2 = 0.0;
    out.clamped_beta2 = true;
  } else if (beta2 > 0.5) {
    beta2 = 0.5;
    out.clamped_beta2 = true;
  }
  out.shape.beta2 = beta2;
  return out;
}

MetricProfile reconstruct_metric(const TraceSet& traces) {
  return MetricProfile(shape_from_traces(traces, 1).shape);
}

ReconstructionReport physical_from_traces(const TraceSet& traces, double charge, int channel) {
  if (!std::isfinite(charge) || charge < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "charge e must be >= 0");
  }
  const auto recovered = shape_from_traces(traces, channel);
  const double eta2 = recovered.shape.eta2;
  const double g0 = traces.gamma0;

  ReconstructionReport report;
  report.shape = recovered.shape;
  report.channel = std::abs(channel);
  report.clamped_beta2 = recovered.clamped_beta2;

  double a2 = 1.5 * (eta2 - g0);
  double r2 = (3.0 * g0 - eta2) / 2.0;
  if (recovered.clamped_beta2) {
    // Keep a^2 and r_+^2 consistent with the clamped shape.
    a2 = eta2 * recovered.shape.beta2;
    r2 = eta2 * (1.0 - recovered.shape.beta2);
  }
  if (a2 < 0.0) {
    if (a2 < -kClampTolerance * eta2) throw Error(ErrorCode::InvalidTraces, "a^2 < 0");
    a2 = 0.0;
    report.clamped_spin = true;
  }
  if (!(r2 > 0.0)) throw Error(ErrorCode::InvalidTraces, "r_+^2 <= 0; 3 gamma_0 must exceed gamma_1");

  const double e2 = charge * charge;
  if (a2 + e2 > r2 * (1.0 + horizon::kExtremalTolerance)) {
    throw Error(ErrorCode::ChargeTooLarge,
                "charge too large for these traces: a^2 + e^2 > r_+^2 = " + std::to_string(r2));
  }
  // 6 gamma_0 - 2 gamma_1 = 4 r_+^2
  const double m = (eta2 + e2) / std::sqrt(4.0 * r2);

  report.physical = {m, std::sqrt(a2), charge};
  report.r_plus = std::sqrt(r2);
  report.area = 4.0 * std::numbers::pi * eta2;
  report.mass_depends_on_charge = charge > 0.0;

  const auto via_smarr = horizon::physical_from_smarr(recovered.shape, charge);
  report.mass_crosscheck = std::abs(via_smarr.m - m) / m;

  for (const auto& [k, g] : traces.equivariant) {
    report.residuals.push_back({k, std::abs(std::abs(k) * g - eta2) / eta2});
  }
  return report;
}

RoundTrip roundtrip(const PhysicalParams& params, bool numeric, int count, int basis_size) {
  horizon::validate(params);
  const auto shape = horizon::smarr_from_physical(params);

  RoundTrip out;
  out.input = params;
  if (!numeric) {
    out.traces = traces_closed_form(shape, 1);
  } else {
    const int n = basis_size > 0 ? basis_size : spectral::default_basis_size(count);
    const std::array<int, 2> ks{0, 1};
    const auto spectra = spectral::eigenvalues_many(ks, shape, count, n);
    const int window = spectral::default_tail_window(count);
    for (const auto& s : spectra) {
      const auto est = spectral::trace_numeric(s, window);
      out.estimates.push_back(est);
      if (s.k == 0) {
        out.traces.gamma0 = est.value;
      } else {
        out.traces.equivariant[s.k] = est.value;
      }
    }
  }
  out.report = physical_from_traces(out.traces, params.e);

  const auto& rec = out.report.physical;
  const double dm = std::abs(rec.m - params.m) / params.m;
  const double da = params.a > 0.0 ? std::abs(rec.a - params.a) / params.a
                                   : std::abs(rec.a - params.a) / params.m;
  out.max_deviation = std::max(dm, da);
  return out;
}

}  // namespace kerrspec::inverse
