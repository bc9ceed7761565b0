#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kerrspec::numerics {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending and mirrored exactly
/// about zero.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  template <class F>
  double integrate(F&& fn) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * fn(nodes[i]);
    return sum;
  }
};

QuadratureRule gauss_legendre(int order);

/// Dense symmetric matrix. The setter writes both triangles, so symmetry
/// holds by construction.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dimension);

  std::size_t dimension() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }
  /// Frobenius norm.
  double norm() const noexcept;
  std::span<const double> row_major() const noexcept { return data_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct EigenSystem {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[j] pairs with values[j]
};

/// All eigenvalues, ascending (Householder tridiagonalization + implicit QL).
std::vector<double> sym_eigenvalues(const SymMatrix& matrix);

/// Same algorithm with accumulated eigenvectors.
EigenSystem sym_eigensystem(const SymMatrix& matrix);

/// L2([-1,1])-orthonormal associated Legendre function, no Condon-Shortley
/// phase. Depends on k only through |k|.
double assoc_legendre_normalized(int l, int k, double x);

/// Values and x-derivatives of the orthonormal associated Legendre functions
/// for l = |k| .. l_max at one point |x| < 1. Index 0 corresponds to l = |k|.
struct LegendreColumn {
  std::vector<double> value;
  std::vector<double> derivative;
};
LegendreColumn assoc_legendre_column(int l_max, int k, double x);

}  // namespace kerrspec::numerics
