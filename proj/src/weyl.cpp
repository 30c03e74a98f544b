#include "cliffext/weyl.hpp"

#include <cmath>
#include <numbers>

#include "cliffext/errors.hpp"

namespace cliffext {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m{n, std::vector<std::complex<double>>(n * n)};
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
  DenseMatrix r{dim, std::vector<std::complex<double>>(dim * dim)};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const auto x = (*this)(i, k);
      if (x == 0.0) continue;
      for (std::size_t j = 0; j < dim; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

DenseMatrix DenseMatrix::scaled(std::complex<double> z) const {
  DenseMatrix r = *this;
  for (auto& x : r.a) x *= z;
  return r;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix r{dim, std::vector<std::complex<double>>(dim * dim)};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

double DenseMatrix::max_deviation(const DenseMatrix& o) const {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
  return m;
}

std::complex<double> root_of_unity(const Phase& p) {
  const double th = 2 * std::numbers::pi * static_cast<double>(p.num()) / static_cast<double>(p.den());
  return {std::cos(th), std::sin(th)};
}

DenseMatrix weyl_matrix(const DoubleSpace& space, Rank u) {
  const FinAbGroup& a = space.base();
  if (a.size() > 16) throw ResourceError("Weyl matrices are built only for |A| <= 16");
  const auto n = static_cast<std::size_t>(a.size());
  const std::size_t m = space.half();
  auto el = enumerate_elements(a);
  auto cu = space.coord_vector(u);
  GroupElem shift(a, std::vector<std::int64_t>(cu.begin(), cu.begin() + static_cast<std::ptrdiff_t>(m)));
  GroupElem chi(a, std::vector<std::int64_t>(cu.begin() + static_cast<std::ptrdiff_t>(m), cu.end()));
  DenseMatrix w{n, std::vector<std::complex<double>>(n * n)};
  for (std::size_t b = 0; b < n; ++b) {
    const GroupElem target = shift + el[b];
    std::size_t row = 0;
    for (std::size_t i = 0; i < m; ++i) row = row * static_cast<std::size_t>(a.order(i)) + static_cast<std::size_t>(target[i]);
    w(row, b) = root_of_unity(pairing(chi, el[b]));
  }
  return w;
}

WeylReport check_weyl_relations(const DoubleSpace& space) {
  WeylReport rep;
  rep.group = space.base().spec();
  const std::size_t vs = space.size();
  std::vector<DenseMatrix> w(vs);
  for (Rank u = 0; u < vs; ++u) w[u] = weyl_matrix(space, u);
  const auto id = DenseMatrix::identity(w[0].dim);
  for (Rank u = 0; u < vs; ++u) rep.worst_unitarity = std::max(rep.worst_unitarity, (w[u] * w[u].adjoint()).max_deviation(id));
  for (Rank u = 0; u < vs; ++u)
    for (Rank v = 0; v < vs; ++v) {
      ++rep.pairs;
      const auto uv = w[u] * w[v];
      rep.worst_product = std::max(rep.worst_product, uv.max_deviation(w[space.add(u, v)].scaled(root_of_unity(space.beta(u, v)))));
      rep.worst_commutation = std::max(rep.worst_commutation, uv.max_deviation((w[v] * w[u]).scaled(root_of_unity(space.omega(u, v)))));
    }
  return rep;
}

}  // namespace cliffext
