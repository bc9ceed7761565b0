#include "kerrspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "kerrspec/errors.hpp"

namespace kerrspec::numerics {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int l = 2; l <= n; ++l) {
    const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Householder reduction of a (row-major, n x n, overwritten) to tridiagonal
// form. On exit d holds the diagonal, e the subdiagonal in e[1..n-1], and a
// the accumulated orthogonal transform when want_vectors.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e, bool want_vectors) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (want_vectors) at(j, i) = at(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = at(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }
  if (want_vectors) d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (want_vectors) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += at(i, k) * at(k, j);
          for (std::size_t k = 0; k < i; ++k) at(k, j) -= g * at(k, i);
        }
      }
      d[i] = at(i, i);
      at(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) at(j, i) = at(i, j) = 0.0;
    } else {
      d[i] = at(i, i);
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e). Columns of z are rotated
// along when want_vectors.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                 std::size_t n, bool want_vectors) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_iterations = 60;
  const int ni = static_cast<int>(n);
  for (int i = 1; i < ni; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < ni; ++l) {
    int iterations = 0;
    int m = l;
    do {
      for (m = l; m < ni - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iterations++ == max_iterations)
          throw Error(ErrorCode::ConvergenceFailure, "QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
          if (want_vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              f = z[k * n + i + 1];
              z[k * n + i + 1] = s * z[k * n + i] + c * f;
              z[k * n + i] = c * z[k * n + i] - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

EigenSystem solve(const SymMatrix& matrix, bool want_vectors) {
  const std::size_t n = matrix.dimension();
  const auto src = matrix.row_major();
  std::vector<double> a(src.begin(), src.end());
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  if (n == 1) {
    d[0] = a[0];
    a[0] = 1.0;
  } else {
    tridiagonalize(a, n, d, e, want_vectors);
    ql_implicit(d, e, a, n, want_vectors);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  EigenSystem out;
  out.values.reserve(n);
  for (std::size_t j : order) out.values.push_back(d[j]);
  if (want_vectors) {
    out.vectors.reserve(n);
    for (std::size_t j : order) {
      std::vector<double> v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = a[k * n + j];
      out.vectors.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  // Positive roots only; the rule is mirrored afterwards.
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, dpn] = legendre_with_derivative(order, x);
      dp = dpn;
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
    }
    dp = legendre_with_derivative(order, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    const double dp = legendre_with_derivative(order, 0.0).second;
    rule.nodes[half] = 0.0;
    rule.weights[half] = 2.0 / (dp * dp);
  }
  return rule;
}

SymMatrix::SymMatrix(std::size_t dimension) : n_(dimension), data_(dimension * dimension, 0.0) {
  if (dimension == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
}

double SymMatrix::norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

std::vector<double> sym_eigenvalues(const SymMatrix& matrix) {
  return solve(matrix, false).values;
}

EigenSystem sym_eigensystem(const SymMatrix& matrix) { return solve(matrix, true); }

double assoc_legendre_normalized(int l, int k, double x) {
  const int m = std::abs(k);
  if (l < m) {
    throw Error(ErrorCode::InvalidArgument,
                "degree l=" + std::to_string(l) + " below order |k|=" + std::to_string(m));
  }
  if (!(std::abs(x) <= 1.0)) throw Error(ErrorCode::DomainError, "x outside [-1, 1]");

  double seed = std::sqrt((2.0 * m + 1.0) / 2.0);
  for (int i = 1; i <= m; ++i) seed *= std::sqrt((2.0 * i - 1.0) / (2.0 * i));
  if (m > 0) seed *= std::pow((1.0 - x) * (1.0 + x), 0.5 * m);
  if (l == m) return seed;

  double prev = seed;
  double prev_factor = std::sqrt(2.0 * m + 3.0);
  double cur = x * prev_factor * prev;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double factor = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - m * m));
    const double next = factor * (x * cur - prev / prev_factor);
    prev = cur;
    cur = next;
    prev_factor = factor;
  }
  return cur;
}

LegendreColumn assoc_legendre_column(int l_max, int k, double x) {
  const int m = std::abs(k);
  if (l_max < m) throw Error(ErrorCode::InvalidArgument, "l_max below order |k|");
  if (!(std::abs(x) < 1.0)) throw Error(ErrorCode::DomainError, "x must lie in (-1, 1)");

  const auto count = static_cast<std::size_t>(l_max - m + 1);
  LegendreColumn col;
  col.value.resize(count);
  col.derivative.resize(count);

  const double one_minus_x2 = (1.0 - x) * (1.0 + x);
  double seed = std::sqrt((2.0 * m + 1.0) / 2.0);
  for (int i = 1; i <= m; ++i) seed *= std::sqrt((2.0 * i - 1.0) / (2.0 * i));
  if (m > 0) seed *= std::pow(one_minus_x2, 0.5 * m);
  col.value[0] = seed;
  col.derivative[0] = m > 0 ? -m * x * seed / one_minus_x2 : 0.0;

  // P_l = a_l (x P_{l-1} - P_{l-2} / a_{l-1}), differentiated term by term.
  double prev_factor = 1.0;
  for (std::size_t idx = 1; idx < count; ++idx) {
    const double l = m + static_cast<double>(idx);
    const double factor = std::sqrt((4.0 * l * l - 1.0) / (l * l - static_cast<double>(m) * m));
    const double p1 = col.value[idx - 1];
    const double d1 = col.derivative[idx - 1];
    const double p2 = idx >= 2 ? col.value[idx - 2] : 0.0;
    const double d2 = idx >= 2 ? col.derivative[idx - 2] : 0.0;
    col.value[idx] = factor * (x * p1 - p2 / prev_factor);
    col.derivative[idx] = factor * (p1 + x * d1 - d2 / prev_factor);
    prev_factor = factor;
  }
  return col;
}

}  // namespace kerrspec::numerics
