#include "renyi/meanrep.hpp"

#include <cmath>
#include <sstream>

namespace renyi {

DyadicWeight::DyadicWeight(std::uint64_t numerator, int level) {
  if (level < 0 || level > 62) throw Error(ErrorKind::NotDyadic, "dyadic level out of range");
  if (numerator > (std::uint64_t{1} << level)) {
    std::ostringstream os;
    os << numerator << "/2^" << level << " exceeds 1";
    throw Error(ErrorKind::NotDyadic, os.str());
  }
  while (level > 0 && numerator % 2 == 0) {
    numerator /= 2;
    --level;
  }
  numerator_ = numerator;
  level_ = level;
}

DyadicWeight DyadicWeight::from_double(double beta, int max_level) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorKind::NotDyadic, "weight outside [0,1]");
  const double scaled = std::ldexp(beta, max_level);
  if (scaled != std::floor(scaled)) {
    std::ostringstream os;
    os << beta << " is not a dyadic rational with level <= " << max_level;
    throw Error(ErrorKind::NotDyadic, os.str());
  }
  return DyadicWeight(static_cast<std::uint64_t>(scaled), max_level);
}

double DyadicWeight::value() const {
  return std::ldexp(static_cast<double>(numerator_), -level_);
}

HermitianOperator mean_eval(const HermitianOperator& a, const HermitianOperator& b, double beta,
                            double rank_tol) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "mean_eval");
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorKind::OutOfRange, "mean weight outside [0,1]");
  const auto sd = eig(a);
  const Eigen::Index n = a.dim();
  if (n == 0) return a;
  const double amax = sd.eigenvalues.cwiseAbs().maxCoeff();
  if (amax == 0.0) {
    if (op_norm(b) > 0.0) throw Error(ErrorKind::SupportViolation, "A = 0 but B != 0");
    return a;
  }
  const double cut = rank_tol * amax;
  if (sd.eigenvalues(0) < -1e-8 * amax) throw Error(ErrorKind::NotPSD, "mean_eval: A not PSD");
  const bool singular = sd.eigenvalues(0) <= cut;
  if (singular && !subset_check(b, a, rank_tol))
    throw Error(ErrorKind::SupportViolation, "B is not supported in supp(A)");
  if (beta == 0.0) return a;
  if (beta == 1.0) return b;

  RVector half(n), inv_half(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = sd.eigenvalues(i);
    half(i) = l > cut ? std::sqrt(l) : 0.0;
    inv_half(i) = l > cut ? 1.0 / std::sqrt(l) : 0.0;
  }
  const CMatrix& u = sd.eigenvectors;
  const CMatrix a_half = u * half.cast<Complex>().asDiagonal() * u.adjoint();
  const CMatrix a_inv_half = u * inv_half.cast<Complex>().asDiagonal() * u.adjoint();
  CMatrix inner = a_inv_half * b.matrix() * a_inv_half;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const auto si = linalg::eigh(inner);
  RVector pw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = std::max(0.0, si.eigenvalues(i));
    pw(i) = l > 0.0 ? std::pow(l, beta) : 0.0;
  }
  const CMatrix inner_pow = si.eigenvectors * pw.cast<Complex>().asDiagonal() * si.eigenvectors.adjoint();
  return HermitianOperator(CMatrix(a_half * inner_pow * a_half), 1e-8);
}

HermitianOperator mean_eval_regularized(const HermitianOperator& a, const HermitianOperator& b,
                                        double beta, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::OutOfRange, "regularization eps must be positive");
  return mean_eval(a + HermitianOperator::identity(a.dim()) * eps, b, beta);
}

std::pair<DyadicWeight, DyadicWeight> dyadic_approx(double beta, int level) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorKind::OutOfRange, "beta outside [0,1]");
  if (level < 1 || level > 62) throw Error(ErrorKind::OutOfRange, "dyadic level out of range");
  const double scaled = std::ldexp(beta, level);
  const auto lo = static_cast<std::uint64_t>(std::floor(scaled));
  const auto hi = static_cast<std::uint64_t>(std::ceil(scaled));
  return {DyadicWeight(lo, level), DyadicWeight(hi, level)};
}

MeanConstraintBlock build_mean_constraint(sdp::Model& model, const sdp::AffineHerm& a,
                                          const sdp::AffineHerm& b, const sdp::AffineHerm& t,
                                          DyadicWeight beta, const std::string& tag) {
  const int n = a.dim();
  if (b.dim() != n || t.dim() != n)
    throw Error(ErrorKind::DimensionMismatch, "mean constraint operands must share dimension");
  MeanConstraintBlock out;
  out.beta = beta;
  out.level = beta.level();
  auto add = [&](const std::string& name, const sdp::AffineHerm& e) {
    out.block_ids.push_back(model.add_psd(name, e));
    out.block_dims.push_back(e.dim());
  };
  if (beta.numerator() == 0) {
    add(tag + ":A-T", a - t);
    return out;
  }
  if (beta.level() == 0) {  // beta == 1
    add(tag + ":B-T", b - t);
    return out;
  }
  const int levels = beta.level();
  std::vector<int> digits(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k)
    digits[static_cast<std::size_t>(k)] = static_cast<int>((beta.numerator() >> (levels - 1 - k)) & 1U);

  // G_1 .. G_l; G_{l+1} = A.
  std::vector<sdp::AffineHerm> g;
  for (int k = 0; k < levels; ++k) {
    g.push_back(model.add_hermitian(n));
    out.auxiliaries.push_back(g.back());
  }
  add(tag + ":slack", g[0] - t);
  for (int k = 0; k < levels; ++k) {
    const sdp::AffineHerm& next = (k + 1 < levels) ? g[static_cast<std::size_t>(k) + 1] : a;
    std::ostringstream name;
    name << tag << ":digit" << k + 1;
    if (digits[static_cast<std::size_t>(k)] == 1) {
      add(name.str(), sdp::block2(next, g[static_cast<std::size_t>(k)], b));
    } else {
      add(name.str(), sdp::block2(a, g[static_cast<std::size_t>(k)], next));
    }
  }
  return out;
}

}  // namespace renyi
