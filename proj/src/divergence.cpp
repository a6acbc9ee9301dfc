#include "renyi/divergence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace renyi {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::OutOfRange, "alpha must be a finite number > 1");
}

double log2_over(double q, double alpha) { return std::log2(q) / (alpha - 1.0); }

// sigma^{-1/2} rho sigma^{-1/2} with the inverse taken on supp(sigma).
HermitianOperator relative_operator(const HermitianOperator& rho, const HermitianOperator& sigma,
                                    double rank_tol) {
  const auto s = matrix_power(sigma, -0.5, rank_tol);
  return rho.congruence(s.matrix());
}

}  // namespace

SolveSummary summarize(const sdp::ConicSolution& sol, const sdp::Model& model) {
  SolveSummary s;
  s.status = sol.status;
  s.iterations = sol.iterations;
  s.primal_obj = sol.primal_obj;
  s.dual_obj = sol.dual_obj;
  s.primal_res = sol.primal_res;
  s.dual_res = sol.dual_res;
  s.gap = sol.gap;
  s.num_blocks = model.num_blocks();
  s.num_vars = model.num_vars();
  return s;
}

double infinite() { return std::numeric_limits<double>::infinity(); }

double d_classical(const RVector& p, const RVector& q, double alpha) {
  require_alpha(alpha);
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "d_classical");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < 0.0 || q(i) < 0.0) throw Error(ErrorKind::OutOfRange, "negative probability");
    if (p(i) == 0.0) continue;
    if (q(i) == 0.0) return infinite();
    sum += std::pow(p(i), alpha) * std::pow(q(i), 1.0 - alpha);
  }
  return log2_over(sum, alpha);
}

double d_binary(double p, double q, double alpha) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw Error(ErrorKind::OutOfRange, "binary divergence arguments must lie in [0,1]");
  RVector a(2), b(2);
  a << p, 1.0 - p;
  b << q, 1.0 - q;
  return d_classical(a, b, alpha);
}

double d_sandwiched(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                    double rank_tol) {
  require_alpha(alpha);
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "d_sandwiched");
  if (!subset_check(rho, sigma, rank_tol)) return infinite();
  const auto s = matrix_power(sigma, (1.0 - alpha) / (2.0 * alpha), rank_tol);
  const auto lam = eig(rho.congruence(s.matrix())).eigenvalues;
  double q = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 0.0) q += std::pow(lam(i), alpha);
  return log2_over(q, alpha);
}

double d_geometric(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                   double rank_tol) {
  require_alpha(alpha);
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "d_geometric");
  if (!subset_check(rho, sigma, rank_tol)) return infinite();
  const auto x = relative_operator(rho, sigma, rank_tol);
  const auto sd = eig(x);
  RVector p(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p(i) = sd.eigenvalues(i) > 0.0 ? std::pow(sd.eigenvalues(i), alpha) : 0.0;
  // tr(sigma^{1/2} X^alpha sigma^{1/2}) = tr(sigma X^alpha)
  const CMatrix xa = sd.eigenvectors * p.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
  const double q = (sigma.matrix() * xa).trace().real();
  return log2_over(q, alpha);
}

double d_max(const HermitianOperator& rho, const HermitianOperator& sigma, double rank_tol) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "d_max");
  if (!subset_check(rho, sigma, rank_tol)) return infinite();
  return std::log2(max_eigenvalue(relative_operator(rho, sigma, rank_tol)));
}

double d_pinched(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                 double spec_tol) {
  // The pinched rho commutes with sigma, where the sandwiched formula is the
  // classical divergence of the joint eigenvalues.
  return d_sandwiched(pinch(rho, sigma, spec_tol), sigma, alpha);
}

ProgramFrame make_frame(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                        bool whitened) {
  const auto sd = eig(sigma);
  const Eigen::Index n = sd.eigenvalues.size();
  RVector isq(n), sq(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = std::max(sd.eigenvalues(i), std::numeric_limits<double>::min());
    isq(i) = 1.0 / std::sqrt(l);
    sq(i) = std::sqrt(l);
  }
  const CMatrix& u = sd.eigenvectors;
  const CMatrix w_inv = u * isq.cast<Complex>().asDiagonal() * u.adjoint();
  const CMatrix half = u * sq.cast<Complex>().asDiagonal() * u.adjoint();
  const CMatrix x = w_inv * rho.matrix() * w_inv;
  const auto xd = eig(HermitianOperator(CMatrix(0.5 * (x + x.adjoint())), 1e-6));
  const double c = std::max(xd.eigenvalues.maxCoeff(), std::numeric_limits<double>::min());
  RVector lam(n), pw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lam(i) = std::max(xd.eigenvalues(i), 0.0) / c;
    pw(i) = std::pow(lam(i), alpha);
  }
  // (X/c)^alpha is feasible for (X/c, I) since I #_{1/alpha} Y^alpha = Y.
  const CMatrix fw = xd.eigenvectors * pw.cast<Complex>().asDiagonal() * xd.eigenvectors.adjoint();

  ProgramFrame f;
  f.whitened = whitened;
  if (whitened) {
    f.left = CMatrix::Identity(n, n);
    f.rhs = xd.eigenvectors * lam.cast<Complex>().asDiagonal() * xd.eigenvectors.adjoint();
    f.half = half;
    f.scale = std::pow(c, alpha);
    f.feasible = fw;
    return f;
  }
  // Q(c' rho || s sigma) = c'^alpha s^{1-alpha} Q(rho || sigma); solve at unit norms.
  const double cr = std::max(op_norm(rho), std::numeric_limits<double>::min());
  const double s = op_norm(sigma);
  f.left = sigma.matrix() / s;
  f.rhs = rho.matrix() / cr;
  f.half = CMatrix::Identity(n, n);
  f.scale = std::pow(cr, alpha) * std::pow(s, 1.0 - alpha);
  // The whitened feasible point mapped to these units.
  f.feasible = half * fw * half * (std::pow(c * s / cr, alpha) / s);
  return f;
}

std::pair<BracketSolve, HermitianOperator> solve_state_program(const HermitianOperator& rho,
                                                               const HermitianOperator& sigma,
                                                               DyadicWeight beta,
                                                               const sdp::SolverOptions& opts,
                                                               bool whitened) {
  if (beta.numerator() == 0) throw Error(ErrorKind::OutOfRange, "beta must be positive");
  const int n = static_cast<int>(rho.dim());
  const double a_eff = 1.0 / beta.value();
  const ProgramFrame f = make_frame(rho, sigma, a_eff, whitened);
  // tr A = scale tr(half^2 At); normalized by its value at the feasible point so
  // the objective is O(1) and the relative gap means what it says.
  const CMatrix weight = f.half * f.half;
  const double q0 = std::max((weight * f.feasible).trace().real(), std::numeric_limits<double>::min());

  sdp::Model model;
  const auto a = model.add_hermitian(n);
  // The last binary digit of beta is 1, so the tower already forces A >= 0.
  build_mean_constraint(model, sdp::AffineHerm::constant(f.left), a,
                        sdp::AffineHerm::constant(f.rhs), beta, "mean");
  model.minimize_inner(a, weight / q0);
  const auto sol = sdp::solve(model.program(), opts);
  BracketSolve out;
  out.beta = beta;
  out.alpha_eff = a_eff;
  out.solver = summarize(sol, model);
  if (sol.status != sdp::Status::Optimal) {
    std::ostringstream os;
    os << "state program at beta=" << beta.numerator() << "/2^" << beta.level()
       << " ended with status " << sdp::to_string(sol.status) << " after " << sol.iterations
       << " iterations (primal_res " << sol.primal_res << ", dual_res " << sol.dual_res << ", gap "
       << sol.gap << ")";
    throw Error(ErrorKind::SolverFailure, os.str());
  }
  const CMatrix at = a.value(sol.dual);
  const HermitianOperator wit(CMatrix(f.half * (0.5 * (at + at.adjoint())) * f.half * f.scale),
                              1e-6);
  out.value_Q = trace(wit);
  out.value_D = log2_over(out.value_Q, a_eff);
  return {out, wit};
}

namespace {

// Whitened coordinates first; the direct frame is the fallback when the
// solver stalls there.
std::pair<BracketSolve, HermitianOperator> solve_state_either(const HermitianOperator& rho,
                                                              const HermitianOperator& sigma,
                                                              DyadicWeight beta,
                                                              const sdp::SolverOptions& opts) {
  try {
    return solve_state_program(rho, sigma, beta, opts, true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SolverFailure) throw;
    return solve_state_program(rho, sigma, beta, opts, false);
  }
}

}  // namespace

DivergenceResult d_sharp_state(const HermitianOperator& rho, const HermitianOperator& sigma,
                               double alpha, const SharpOptions& opts) {
  require_alpha(alpha);
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "d_sharp_state");
  if (opts.bits < 1 || opts.bits > kMaxDyadicLevel)
    throw Error(ErrorKind::OutOfRange, "dyadic level out of range");
  DivergenceResult res;
  res.alpha = alpha;
  auto [lo, hi] = dyadic_approx(1.0 / alpha, opts.bits);
  if (lo.numerator() == 0) lo = hi;
  res.beta_lo = lo;
  res.beta_hi = hi;
  if (!subset_check(rho, sigma, opts.rank_tol)) {
    res.value_D = res.D_lo = res.D_hi = infinite();
    res.value_Q = infinite();
    res.alpha_eff = 1.0 / hi.value();
    return res;
  }
  const CMatrix v = support_basis(sigma, opts.rank_tol);
  res.support_rank = static_cast<int>(v.cols());
  const HermitianOperator r(CMatrix(v.adjoint() * rho.matrix() * v), 1e-9);
  const HermitianOperator s(CMatrix(v.adjoint() * sigma.matrix() * v), 1e-9);

  auto [top, wit] = solve_state_either(r, s, hi, opts.solver);
  res.value_Q = top.value_Q;
  res.value_D = res.D_hi = top.value_D;
  res.alpha_eff = top.alpha_eff;
  res.solver = top.solver;
  if (lo == hi || !opts.both_brackets) {
    res.D_lo = res.D_hi;
  } else {
    res.D_lo = solve_state_either(r, s, lo, opts.solver).first.value_D;
  }

  const auto m = mean_eval(s, wit, hi.value(), opts.rank_tol);
  res.witness_violation = std::max(0.0, -min_eigenvalue(m - r)) / std::max(1.0, op_norm(r));
  res.witness_violation = std::max(res.witness_violation, -min_eigenvalue(wit) / std::max(1.0, op_norm(wit)));
  res.witness_ok = res.witness_violation <= 1e-6;
  res.witness_A = HermitianOperator(CMatrix(v * wit.matrix() * v.adjoint()), 1e-6);
  return res;
}

DivergenceBounds d_sharp_bounds(const HermitianOperator& rho, const HermitianOperator& sigma,
                                double alpha) {
  require_alpha(alpha);
  DivergenceBounds b;
  b.lower = d_sandwiched(rho, sigma, alpha);
  b.upper_geometric = d_geometric(rho, sigma, alpha);
  b.upper_trivial = d_max(rho, sigma) + std::log2(trace(rho)) / (alpha - 1.0);
  b.spec_correction = alpha / (alpha - 1.0) * std::log2(static_cast<double>(spec_count(sigma)));
  b.upper_pinched = d_pinched(rho, sigma, alpha) + b.spec_correction;
  b.upper = std::min({b.upper_geometric, b.upper_trivial, b.upper_pinched});
  return b;
}

}  // namespace renyi
