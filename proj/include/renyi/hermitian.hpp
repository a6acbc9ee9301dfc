#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "renyi/error.hpp"

namespace renyi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Relative eigenvalue threshold shared by every support / generalized-inverse
/// decision in the library.
inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kDefaultHermTol = 1e-12;

/// Dense complex Hermitian matrix. The stored matrix is exactly Hermitian:
/// the constructor replaces H by (H + H^dagger)/2 after checking that the
/// anti-Hermitian part is within tolerance.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const CMatrix& m, double herm_tol = kDefaultHermTol);

  static HermitianOperator zero(Eigen::Index n);
  static HermitianOperator identity(Eigen::Index n);
  static HermitianOperator diagonal(const RVector& d);
  /// Rank-one projector |v><v| (v is not normalized).
  static HermitianOperator outer(const CVector& v);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }
  double herm_tol() const { return herm_tol_; }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  HermitianOperator& operator+=(const HermitianOperator& o);

  /// M H M^dagger for an arbitrary (possibly rectangular) M.
  HermitianOperator congruence(const CMatrix& m) const;

 private:
  CMatrix m_;
  double herm_tol_ = kDefaultHermTol;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

struct SpectralDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns paired with eigenvalues
};

SpectralDecomposition eig(const HermitianOperator& h);

/// Applies a real function to the spectrum: U diag(f(lambda)) U^dagger.
HermitianOperator apply_spectral(const HermitianOperator& h, const std::function<double(double)>& f);

/// U diag(lambda_i^p) U^dagger with eigenvalues at or below rank_tol * lambda_max
/// treated as exact zeros and 0^p := 0 for every p (inverse on the support).
HermitianOperator matrix_power(const HermitianOperator& h, double p,
                               double rank_tol = kDefaultRankTol);

double op_norm(const HermitianOperator& h);
double trace(const HermitianOperator& h);
double min_eigenvalue(const HermitianOperator& h);
double max_eigenvalue(const HermitianOperator& h);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

/// Orthogonal projector onto span{v_i : lambda_i > rank_tol * lambda_max}.
HermitianOperator support_projector(const HermitianOperator& h,
                                    double rank_tol = kDefaultRankTol);
/// Isometry (columns) spanning the same subspace as support_projector.
CMatrix support_basis(const HermitianOperator& h, double rank_tol = kDefaultRankTol);

/// supp(a) contained in supp(b), i.e. a << b.
bool subset_check(const HermitianOperator& a, const HermitianOperator& b,
                  double rank_tol = kDefaultRankTol);

/// Throws NotPSD when the smallest eigenvalue is below -slack * (1 + ||h||).
void require_psd(const HermitianOperator& h, double slack, const char* what);

namespace linalg {

/// Dense complex Kronecker product.
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Hermitian eigen-solve of an exactly Hermitian matrix; ascending eigenvalues.
SpectralDecomposition eigh(const CMatrix& m);

}  // namespace linalg

}  // namespace renyi
