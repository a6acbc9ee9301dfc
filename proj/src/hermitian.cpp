#include "renyi/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace renyi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SizeBudget: return "SizeBudget";
    case ErrorKind::NotDyadic: return "NotDyadic";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

// Operator norm of the anti-Hermitian part. The Frobenius norm bounds it from
// above, so the eigen-solve only runs for matrices that fail the cheap test.
double antihermitian_norm(const CMatrix& m, double threshold) {
  const CMatrix skew = m - m.adjoint();
  const double fro = skew.norm();
  if (fro <= threshold) return fro;
  const CMatrix h = Complex(0.0, 1.0) * skew;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

HermitianOperator::HermitianOperator(const CMatrix& m, double herm_tol) : herm_tol_(herm_tol) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  if (!m.allFinite()) throw Error(ErrorKind::NonHermitian, "matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double limit = 100.0 * herm_tol * scale;
  if (m.size() > 0) {
    const double res = antihermitian_norm(m, limit);
    if (res > limit) {
      std::ostringstream os;
      os << "||H - H^dagger|| = " << res << " exceeds " << limit;
      throw Error(ErrorKind::NonHermitian, os.str());
    }
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(Eigen::Index n) {
  return HermitianOperator(CMatrix::Zero(n, n));
}

HermitianOperator HermitianOperator::identity(Eigen::Index n) {
  return HermitianOperator(CMatrix::Identity(n, n));
}

HermitianOperator HermitianOperator::diagonal(const RVector& d) {
  return HermitianOperator(CMatrix(d.cast<Complex>().asDiagonal()));
}

HermitianOperator HermitianOperator::outer(const CVector& v) {
  return HermitianOperator(CMatrix(v * v.adjoint()));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw Error(ErrorKind::DimensionMismatch, "operator sum");
  return HermitianOperator(CMatrix(m_ + o.m_));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw Error(ErrorKind::DimensionMismatch, "operator difference");
  return HermitianOperator(CMatrix(m_ - o.m_));
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(CMatrix(m_ * s));
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  *this = *this + o;
  return *this;
}

HermitianOperator HermitianOperator::congruence(const CMatrix& m) const {
  if (m.cols() != dim()) throw Error(ErrorKind::DimensionMismatch, "congruence");
  return HermitianOperator(CMatrix(m * m_ * m.adjoint()), 1e-10);
}

namespace linalg {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SpectralDecomposition eigh(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::NonHermitian, "eigen-decomposition did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace linalg

SpectralDecomposition eig(const HermitianOperator& h) { return linalg::eigh(h.matrix()); }

HermitianOperator apply_spectral(const HermitianOperator& h,
                                 const std::function<double(double)>& f) {
  const auto sd = eig(h);
  RVector fl(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) fl(i) = f(sd.eigenvalues(i));
  return HermitianOperator(
      CMatrix(sd.eigenvectors * fl.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint()),
      1e-10);
}

HermitianOperator matrix_power(const HermitianOperator& h, double p, double rank_tol) {
  const auto sd = eig(h);
  if (sd.eigenvalues.size() == 0) return h;
  const double norm = sd.eigenvalues.cwiseAbs().maxCoeff();
  const double eps = 1e-10 * norm;
  if (sd.eigenvalues(0) < -100.0 * eps) {
    std::ostringstream os;
    os << "min eigenvalue " << sd.eigenvalues(0) << " for matrix_power";
    throw Error(ErrorKind::NotPSD, os.str());
  }
  const double cut = rank_tol * norm;
  RVector fl(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) {
    const double l = sd.eigenvalues(i);
    fl(i) = (l <= cut || l <= 0.0) ? 0.0 : std::pow(l, p);
  }
  return HermitianOperator(
      CMatrix(sd.eigenvectors * fl.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint()),
      1e-10);
}

double op_norm(const HermitianOperator& h) {
  if (h.dim() == 0) return 0.0;
  return eig(h).eigenvalues.cwiseAbs().maxCoeff();
}

double trace(const HermitianOperator& h) { return h.matrix().trace().real(); }

double min_eigenvalue(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(linalg::kron(a.matrix(), b.matrix()));
}

CMatrix support_basis(const HermitianOperator& h, double rank_tol) {
  const auto sd = eig(h);
  const Eigen::Index n = sd.eigenvalues.size();
  if (n == 0) return CMatrix(0, 0);
  const double cut = rank_tol * sd.eigenvalues.cwiseAbs().maxCoeff();
  Eigen::Index first = n;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sd.eigenvalues(i) > cut && sd.eigenvalues(i) > 0.0) {
      first = i;
      break;
    }
  }
  return sd.eigenvectors.rightCols(n - first);
}

HermitianOperator support_projector(const HermitianOperator& h, double rank_tol) {
  const CMatrix v = support_basis(h, rank_tol);
  return HermitianOperator(CMatrix(v * v.adjoint()));
}

bool subset_check(const HermitianOperator& a, const HermitianOperator& b, double rank_tol) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "subset_check");
  const double na = op_norm(a);
  if (na == 0.0) return true;
  const CMatrix pb = support_projector(b, rank_tol).matrix();
  const CMatrix q = CMatrix::Identity(a.dim(), a.dim()) - pb;
  const HermitianOperator leak(CMatrix(q * a.matrix() * q), 1e-8);
  return op_norm(leak) <= rank_tol * na;
}

void require_psd(const HermitianOperator& h, double slack, const char* what) {
  if (h.dim() == 0) return;
  const auto sd = eig(h);
  const double scale = 1.0 + sd.eigenvalues.cwiseAbs().maxCoeff();
  if (sd.eigenvalues(0) < -slack * scale) {
    std::ostringstream os;
    os << what << ": min eigenvalue " << sd.eigenvalues(0);
    throw Error(ErrorKind::NotPSD, os.str());
  }
}

}  // namespace renyi
