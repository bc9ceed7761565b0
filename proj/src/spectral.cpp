#include "kerrspec/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "kerrspec/errors.hpp"

namespace kerrspec::spectral {

namespace {

using numerics::SymMatrix;

struct QuadraticFit {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double center = 0.0;
  double scale = 1.0;

  double operator()(double j) const {
    const double t = (j - center) / scale;
    return (c2 * t + c1) * t + c0;
  }
};

// Least squares fit of lambda_j ~ q(j) on a centred, scaled abscissa; the
// 3x3 normal equations are solved by Gaussian elimination with pivoting.
QuadraticFit fit_quadratic(std::span<const double> values, int first_index) {
  const auto w = static_cast<int>(values.size());
  QuadraticFit fit;
  fit.center = first_index + 0.5 * (w - 1);
  fit.scale = 0.5 * (w - 1);

  std::array<std::array<double, 4>, 3> sys{};
  for (int i = 0; i < w; ++i) {
    const double t = (first_index + i - fit.center) / fit.scale;
    const std::array<double, 3> basis{t * t, t, 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) sys[r][c] += basis[r] * basis[c];
      sys[r][3] += basis[r] * values[static_cast<std::size_t>(i)];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(sys[r][col]) > std::abs(sys[pivot][col])) pivot = r;
    }
    std::swap(sys[col], sys[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = sys[r][col] / sys[col][col];
      for (int c = col; c < 4; ++c) sys[r][c] -= f * sys[col][c];
    }
  }
  std::array<double, 3> coef{};
  for (int r = 2; r >= 0; --r) {
    double s = sys[r][3];
    for (int c = r + 1; c < 3; ++c) s -= sys[r][c] * coef[c];
    coef[r] = s / sys[r][r];
  }
  fit.c2 = coef[0];
  fit.c1 = coef[1];
  fit.c0 = coef[2];
  return fit;
}

std::vector<double> lowest(const SymMatrix& matrix, int count) {
  auto values = numerics::sym_eigenvalues(matrix);
  values.resize(static_cast<std::size_t>(count));
  return values;
}

}  // namespace

int first_degree(int k) noexcept { return k == 0 ? 1 : std::abs(k); }

int default_tail_window(int count) noexcept { return std::clamp(count / 3, kMinTailWindow, 12); }

SymMatrix assemble(int k, const SmarrShape& shape, int basis_size) {
  if (basis_size < kMinBasisSize) {
    throw Error(ErrorCode::InvalidArgument,
                "basis size must be >= " + std::to_string(kMinBasisSize));
  }
  horizon::check_shape(shape);

  const auto n = static_cast<std::size_t>(basis_size);
  const int m = std::abs(k);
  const int first = first_degree(k);
  const int l_max = first + basis_size - 1;
  const auto offset = static_cast<std::size_t>(first - m);
  const double k2 = static_cast<double>(m) * m;
  const auto rule = numerics::gauss_legendre(2 * basis_size + 16);

  std::vector<double> acc(n * n, 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = rule.nodes[q];
    const double w = rule.weights[q];
    const double u = (1.0 - x) * (1.0 + x);
    const double damp = 1.0 - shape.beta2 * u;
    const double f = u / damp;
    const auto col = numerics::assoc_legendre_column(l_max, k, x);
    const double* v = col.value.data() + offset;
    const double* d = col.derivative.data() + offset;
    const double wf = w * f;
    const double wk = m == 0 ? 0.0 : w * k2 / f;
    for (std::size_t i = 0; i < n; ++i) {
      const double di = wf * d[i];
      const double vi = wk * v[i];
      double* row = acc.data() + i * n;
      for (std::size_t j = 0; j <= i; ++j) row[j] += di * d[j] + vi * v[j];
    }
  }

  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, acc[i * n + j] / shape.eta2);
  }
  return out;
}

ModeSpectrum eigenvalues(int k, const SmarrShape& shape, int count, int basis_size,
                         double tolerance) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "mode count must be >= 1");
  if (basis_size < 2 * count + 8) {
    throw Error(ErrorCode::InvalidArgument,
                "basis size " + std::to_string(basis_size) + " below 2J + 8 = " +
                    std::to_string(2 * count + 8));
  }
  ModeSpectrum spectrum{k, lowest(assemble(k, shape, basis_size), count), basis_size, shape};
  const auto check = lowest(assemble(k, shape, 2 * basis_size), count);
  for (std::size_t j = 0; j < check.size(); ++j) {
    const double ref = spectrum.eigenvalues[j];
    if (!(std::abs(check[j] - ref) <= tolerance * std::abs(ref))) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "eigenvalue " + std::to_string(j + 1) + " of L_" + std::to_string(k) +
                      " not converged under basis doubling");
    }
  }
  return spectrum;
}

std::vector<ModeSpectrum> eigenvalues_many(std::span<const int> ks, const SmarrShape& shape,
                                           int count, int basis_size) {
  std::vector<std::future<ModeSpectrum>> jobs;
  jobs.reserve(ks.size());
  for (int k : ks) {
    jobs.push_back(std::async(std::launch::async,
                              [=] { return eigenvalues(k, shape, count, basis_size); }));
  }
  std::vector<ModeSpectrum> out;
  out.reserve(ks.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

TraceEstimate trace_numeric(const ModeSpectrum& spectrum, int tail_window) {
  const auto& lambda = spectrum.eigenvalues;
  const int count = static_cast<int>(lambda.size());
  if (tail_window < kMinTailWindow) {
    throw Error(ErrorCode::InvalidArgument, "tail window must be >= 8");
  }
  if (count < 3 * tail_window) {
    throw Error(ErrorCode::InvalidArgument, "need at least 3W modes for the tail model");
  }
  for (double v : lambda) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveEigenvalue, "eigenvalues must be positive");
  }

  // Smallest terms first.
  double partial = 0.0;
  for (auto it = lambda.rbegin(); it != lambda.rend(); ++it) partial += 1.0 / *it;

  const int first = count - tail_window + 1;  // 1-based mode index
  const auto window = std::span(lambda).subspan(static_cast<std::size_t>(first - 1));
  const auto fit = fit_quadratic(window, first);
  double worst = 0.0;
  for (int i = 0; i < tail_window; ++i) {
    const double v = window[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::abs(fit(first + i) - v) / v);
  }
  if (!(worst < kTailResidualBound) || !(fit.c2 > 0.0)) {
    throw Error(ErrorCode::TailModelRejected,
                "quadratic tail fit residual " + std::to_string(worst) + " exceeds 1e-3");
  }

  // Neumaier-compensated running sum of 1/q(j), j > J.
  const double cutoff = 1e-14 * partial;
  double tail = 0.0;
  double comp = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (long long j = count + 1;; ++j) {
    const double q = fit(static_cast<double>(j));
    if (!(q > 0.0)) throw Error(ErrorCode::TailModelRejected, "tail model is not positive");
    const double term = 1.0 / q;
    if (term < cutoff) break;
    if (term > previous) throw Error(ErrorCode::TailModelRejected, "tail model is not increasing");
    previous = term;
    const double t = tail + term;
    comp += std::abs(tail) >= term ? (tail - t) + term : (term - t) + tail;
    tail = t;
  }
  tail += comp;
  if (!(tail < partial)) {
    throw Error(ErrorCode::TailModelRejected, "tail correction is not subdominant");
  }
  return {spectrum.k, partial + tail, partial, tail, count};
}

double s1_trace_integral(const SmarrShape& shape) {
  const auto f = horizon::profile(shape);
  static const auto rule = numerics::gauss_legendre(64);
  const double integral = rule.integrate([&](double x) { return (1.0 - x) * (1.0 + x) / f(x); });
  return shape.eta2 * 0.5 * integral;
}

}  // namespace kerrspec::spectral
