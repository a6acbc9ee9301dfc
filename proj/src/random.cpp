#include "renyi/random.hpp"

#include <cmath>

namespace renyi::random {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

CMatrix unitary(int n, Rng& rng) { return isometry(n, n, rng); }

CMatrix isometry(int rows, int cols, Rng& rng) {
  const CMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  // Fix column phases so the distribution does not depend on QR conventions.
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

HermitianOperator psd(int n, Rng& rng, int rank) {
  if (rank <= 0 || rank > n) rank = n;
  const CMatrix g = ginibre(n, rank, rng);
  return HermitianOperator(CMatrix(g * g.adjoint()), 1e-10);
}

HermitianOperator density(int n, Rng& rng, int rank) {
  const HermitianOperator p = psd(n, rng, rank);
  return p * (1.0 / trace(p));
}

HermitianOperator hermitian(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  return HermitianOperator(CMatrix(0.5 * (g + g.adjoint())));
}

HermitianOperator diagonal_density(int n, Rng& rng) {
  std::uniform_real_distribution<double> ud(0.05, 1.0);
  RVector d(n);
  for (int i = 0; i < n; ++i) d(i) = ud(rng);
  d /= d.sum();
  return HermitianOperator::diagonal(d);
}

QChannel channel(int dim_in, int dim_out, int num_kraus, Rng& rng) {
  // Stinespring isometry C^{dim_in} -> C^{dim_out} (x) C^{num_kraus}, sliced.
  const CMatrix v = isometry(dim_out * num_kraus, dim_in, rng);
  std::vector<CMatrix> kraus;
  for (int k = 0; k < num_kraus; ++k) {
    CMatrix kk(dim_out, dim_in);
    for (int o = 0; o < dim_out; ++o) kk.row(o) = v.row(o * num_kraus + k);
    kraus.push_back(kk);
  }
  return QChannel::from_kraus(std::move(kraus), dim_in, dim_out);
}

QChannel cp_map(int dim_in, int dim_out, int num_kraus, Rng& rng) {
  std::vector<CMatrix> kraus;
  for (int k = 0; k < num_kraus; ++k)
    kraus.push_back(ginibre(dim_out, dim_in, rng) / std::sqrt(static_cast<double>(dim_in * num_kraus)));
  return QChannel::from_kraus(std::move(kraus), dim_in, dim_out);
}

}  // namespace renyi::random
