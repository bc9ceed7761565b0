#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kerrspec/errors.hpp"
#include "kerrspec/inverse.hpp"
#include "kerrspec/spectral.hpp"

namespace kerrspec::cli {

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kInvalidPhysical = 2,
  kNumerical = 3,
  kInvalidTraces = 4,
  kToleranceBreach = 5,
};

int exit_code_for(ErrorCode code) noexcept;

/// Runs one command line (without argv[0]). Reports go to `out` unless
/// --out is given; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

// Spectrum CSV: '#' comment lines (eta2/beta2, basis_size), a `k,j,lambda`
// header row, then one row per eigenvalue.
std::string write_spectrum_csv(std::span<const spectral::ModeSpectrum> spectra);

struct SpectrumFile {
  horizon::SmarrShape shape;
  int basis_size = 0;
  std::vector<spectral::ModeSpectrum> spectra;  // ascending k
};
SpectrumFile read_spectrum_csv(std::istream& in);

// Traces CSV: '#' comment lines, a `k,gamma,partial_sum,tail_correction,
// modes_used` header row, then one row per channel (k = 0 is gamma_0).
std::string write_traces_csv(const horizon::SmarrShape& shape,
                             std::span<const spectral::TraceEstimate> estimates);
inverse::TraceSet read_traces_csv(std::istream& in);

}  // namespace kerrspec::cli
