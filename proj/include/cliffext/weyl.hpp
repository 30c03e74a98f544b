#pragma once

#include <complex>
#include <vector>

#include "cliffext/double_space.hpp"

namespace cliffext {

/// Dense complex matrix, row-major.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> a;

  std::complex<double>& operator()(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
  DenseMatrix operator*(const DenseMatrix& o) const;
  DenseMatrix scaled(std::complex<double> z) const;
  /// max |this - o| over entries.
  double max_deviation(const DenseMatrix& o) const;
  static DenseMatrix identity(std::size_t n);
  DenseMatrix adjoint() const;
};

/// W_u = X_a Z_chi on C[A]: W_u |b> = chi(b) |a + b>. ResourceError for |A| > 16.
DenseMatrix weyl_matrix(const DoubleSpace& space, Rank u);

std::complex<double> root_of_unity(const Phase& p);

struct WeylReport {
  std::string group;
  std::uint64_t pairs = 0;
  double worst_product = 0;      // W_u W_v vs beta(u, v) W_{u+v}
  double worst_commutation = 0;  // W_u W_v vs omega(u, v) W_v W_u
  double worst_unitarity = 0;
  bool ok(double tol = 1e-12) const { return worst_product < tol && worst_commutation < tol && worst_unitarity < tol; }
};

WeylReport check_weyl_relations(const DoubleSpace& space);

}  // namespace cliffext
