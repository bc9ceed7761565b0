#include <cmath>
#include <functional>

#include "doctest.h"
#include "kerrspec/errors.hpp"
#include "kerrspec/spectral.hpp"
#include "oracles.hpp"

using namespace kerrspec;
using namespace kerrspec::spectral;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

ModeSpectrum synthetic(int k, std::function<double(int)> lambda, int count) {
  ModeSpectrum s{k, {}, 0, {1.0, 0.0}};
  for (int j = 1; j <= count; ++j) s.eigenvalues.push_back(lambda(j));
  return s;
}

}  // namespace

TEST_CASE("assemble is diagonal on the round sphere") {
  for (int k : {0, 1, -1, 2, 5}) {
    for (double eta2 : {1.0, 4.0}) {
      const auto a = assemble(k, {eta2, 0.0}, 10);
      const int first = first_degree(k);
      for (std::size_t i = 0; i < 10; ++i) {
        const double l = first + static_cast<double>(i);
        CHECK(std::abs(a(i, i) - l * (l + 1) / eta2) < 1e-12 * l * (l + 1));
        for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(a(i, j)) < 1e-12);
      }
    }
  }
}

TEST_CASE("assemble lowest eigenvalue agrees with a finite-volume discretization") {
  const auto a = assemble(0, {1.0, 0.1}, 40);
  const double galerkin = numerics::sym_eigenvalues(a).front();
  const double fd = oracle::fd_eigenvalue(1.0, 0.1, 0, 2000, 1);
  CHECK(rel(galerkin, fd) < 1e-6);
}

TEST_CASE("assemble rejects bad input") {
  CHECK(code_of([] { assemble(0, {1.0, 0.1}, 7); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { assemble(0, {1.0, 0.51}, 10); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { assemble(0, {1.0, -0.01}, 10); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("eigenvalues on spheres") {
  const auto s0 = eigenvalues(0, {1.0, 0.0}, 5, 18);
  const double want0[] = {2, 6, 12, 20, 30};
  for (int j = 0; j < 5; ++j) CHECK(rel(s0.eigenvalues[j], want0[j]) < 1e-12);
  CHECK(s0.k == 0);
  CHECK(s0.basis_size == 18);

  const auto s1 = eigenvalues(0, {4.0, 0.0}, 3, 14);
  const double want1[] = {0.5, 1.5, 3.0};
  for (int j = 0; j < 3; ++j) CHECK(rel(s1.eigenvalues[j], want1[j]) < 1e-12);

  const auto s2 = eigenvalues(2, {1.0, 0.0}, 3, 14);
  const double want2[] = {6, 12, 20};
  for (int j = 0; j < 3; ++j) CHECK(rel(s2.eigenvalues[j], want2[j]) < 1e-12);
}

TEST_CASE("eigenvalues preconditions and convergence failure") {
  CHECK(code_of([] { eigenvalues(0, {1.0, 0.2}, 10, 27); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { eigenvalues(0, {1.0, 0.2}, 0, 27); }) == ErrorCode::InvalidArgument);
  // An unattainable tolerance forces the doubling check to fail.
  CHECK(code_of([] { eigenvalues(1, {1.0, 0.5}, 10, 28, 0.0); }) == ErrorCode::ConvergenceFailure);
}

TEST_CASE("eigenvalues are positive and strictly increasing") {
  for (int k : {0, 1, 3}) {
    for (double b2 : {0.0, 0.25, 0.5}) {
      const auto s = eigenvalues(k, {2.0, b2}, 30, default_basis_size(30));
      CHECK(s.eigenvalues.front() > 0.0);
      for (std::size_t j = 1; j < s.eigenvalues.size(); ++j) CHECK(s.eigenvalues[j] > s.eigenvalues[j - 1]);
    }
  }
}

TEST_CASE("finite-volume cross-check away from the sphere") {
  for (int k : {0, 1, 2}) {
    for (double b2 : {0.25, 0.5}) {
      const auto s = eigenvalues(k, {2.0, b2}, 5, 26);
      for (int j : {0, 2}) {
        const double fd = oracle::fd_eigenvalue_extrapolated(2.0, b2, k, 1000, k == 0 ? j + 1 : j);
        CAPTURE(k);
        CAPTURE(b2);
        CAPTURE(j);
        CHECK(rel(s.eigenvalues[static_cast<std::size_t>(j)], fd) < 1e-5);
      }
    }
  }
}

TEST_CASE("first eigenvalue is nondecreasing in |k| for k != 0") {
  for (double b2 : {0.0, 0.25, 0.5}) {
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double l1 = eigenvalues(k, {1.0, b2}, 4, 16).eigenvalues.front();
      CHECK(l1 >= prev * (1.0 - 1e-12));
      prev = l1;
    }
  }
  // k = 0 is not comparable: its space excludes constants, and on a
  // distorted horizon the k = 1 ground state drops below it.
  const double l0 = eigenvalues(0, {1.0, 0.25}, 4, 16).eigenvalues.front();
  const double l1 = eigenvalues(1, {1.0, 0.25}, 4, 16).eigenvalues.front();
  CHECK(l1 < l0);
  CHECK(std::abs(l1 - oracle::fd_eigenvalue_extrapolated(1.0, 0.25, 1, 1000, 0)) < 1e-5 * l1);
  CHECK(std::abs(l0 - oracle::fd_eigenvalue_extrapolated(1.0, 0.25, 0, 1000, 1)) < 1e-5 * l0);
}

TEST_CASE("spectra of k and -k coincide") {
  for (int k : {1, 2, 4}) {
    const auto p = eigenvalues(k, {1.3, 0.37}, 12, 40);
    const auto n = eigenvalues(-k, {1.3, 0.37}, 12, 40);
    CHECK(p.eigenvalues == n.eigenvalues);
  }
}

TEST_CASE("homothety scales eigenvalues by 1/c") {
  for (double c : {0.5, 3.0, 90.0}) {
    for (int k : {0, 2}) {
      const auto base = eigenvalues(k, {1.0, 0.3}, 20, 56);
      const auto scaled = eigenvalues(k, {c, 0.3}, 20, 56);
      for (std::size_t j = 0; j < 20; ++j) CHECK(rel(scaled.eigenvalues[j], base.eigenvalues[j] / c) < 1e-12);
    }
  }
}

TEST_CASE("multiplicity on the round sphere") {
  // l(l+1) lies in Spec L_k exactly when |k| <= l.
  std::vector<std::vector<double>> spectra;
  for (int k = 0; k <= 6; ++k) spectra.push_back(eigenvalues(k, {1.0, 0.0}, 8, 24).eigenvalues);
  for (int l = 1; l <= 6; ++l) {
    const double target = l * (l + 1.0);
    for (int k = 0; k <= 6; ++k) {
      bool found = false;
      for (double v : spectra[static_cast<std::size_t>(k)]) found = found || std::abs(v - target) < 1e-9;
      CHECK(found == (k <= l));
    }
  }
}

TEST_CASE("trace_numeric on the round sphere") {
  const auto t0 = trace_numeric(eigenvalues(0, {1.0, 0.0}, 60, 136), 12);
  CHECK(std::abs(t0.value - 1.0) < 1e-5);
  CHECK(t0.modes_used == 60);
  CHECK(t0.value == t0.partial_sum + t0.tail_correction);
  CHECK(t0.tail_correction >= 0.0);
  CHECK(t0.tail_correction < t0.partial_sum);

  const auto t1 = trace_numeric(eigenvalues(1, {1.0, 0.0}, 60, 136), 12);
  CHECK(std::abs(t1.value - 1.0) < 1e-5);
  CHECK(t1.k == 1);
}

TEST_CASE("trace_numeric for k = 0 matches 1 - 2 beta^2 / 3") {
  const auto t = trace_numeric(eigenvalues(0, {1.0, 0.3}, 60, 136), 12);
  CHECK(std::abs(t.value - 0.8) < 1e-4);
}

TEST_CASE("equivariant traces equal eta^2 / |k|") {
  for (double b2 : {0.0, 0.1, 0.3, 0.5}) {
    for (int k : {1, 2, 3}) {
      const auto t = trace_numeric(eigenvalues(k, {2.0, b2}, 60, 136), 12);
      CAPTURE(b2);
      CAPTURE(k);
      CHECK(rel(t.value, 2.0 / k) < 1e-4);
    }
  }
}

TEST_CASE("trace_numeric on synthetic spectra") {
  // Exact quadratic spectrum: telescoping sum 1/(j(j+1)) = 1.
  const auto exact = trace_numeric(synthetic(0, [](int j) { return j * (j + 1.0); }, 36), 12);
  CHECK(std::abs(exact.value - 1.0) < 1e-6);

  CHECK(code_of([] { trace_numeric(synthetic(0, [](int j) { return std::exp(0.3 * j); }, 36), 12); }) ==
        ErrorCode::TailModelRejected);
  CHECK(code_of([] { trace_numeric(synthetic(0, [](int j) { return j - 3.0; }, 36), 12); }) ==
        ErrorCode::NonPositiveEigenvalue);
  CHECK(code_of([] { trace_numeric(synthetic(0, [](int j) { return j * 1.0 * j; }, 30), 12); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { trace_numeric(synthetic(0, [](int j) { return j * 1.0 * j; }, 30), 7); }) ==
        ErrorCode::InvalidArgument);
  // A linear spectrum fits (c2 = 0) but its tail diverges.
  CHECK(code_of([] { trace_numeric(synthetic(0, [](int j) { return 1.0 * j; }, 36), 12); }) ==
        ErrorCode::TailModelRejected);
}

TEST_CASE("default_tail_window") {
  CHECK(default_tail_window(24) == 8);
  CHECK(default_tail_window(30) == 10);
  CHECK(default_tail_window(60) == 12);
  CHECK(default_tail_window(400) == 12);
}

TEST_CASE("s1_trace_integral") {
  CHECK(rel(s1_trace_integral({1.0, 0.0}), 1.0) < 1e-15);
  CHECK(rel(s1_trace_integral({2.0, 0.5}), 4.0 / 3.0) < 1e-13);
  CHECK(rel(s1_trace_integral({90.0, 0.1}), 84.0) < 1e-13);
  // Independent route: Simpson on the original integrand.
  for (double b2 : {0.05, 0.2, 0.45}) {
    const double simpson = 0.5 * oracle::simpson(
        [b2](double x) {
          const double u = 1 - x * x;
          return u == 0.0 ? 1 - b2 * u : u / (u / (1 - b2 * u));
        },
        -1.0, 1.0, 2000);
    CHECK(rel(s1_trace_integral({1.0, b2}), simpson) < 1e-12);
  }
}

TEST_CASE("eigenvalues_many preserves channel order") {
  const std::vector<int> ks{2, 0, 1};
  const auto many = eigenvalues_many(ks, {1.0, 0.2}, 6, 20);
  REQUIRE(many.size() == 3);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(many[i].k == ks[i]);
    CHECK(many[i].eigenvalues == eigenvalues(ks[i], {1.0, 0.2}, 6, 20).eigenvalues);
  }
}
