#include "renyi/channel_div.hpp"
#include "renyi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace renyi {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::OutOfRange, "alpha must be a finite number > 1");
}

sdp::AffineHerm trace_out_output(const sdp::AffineHerm& e, int dim_in, int dim_out) {
  return e.partial_trace({dim_in, dim_out}, {true, false});
}

// rho (x) I_Y for an affine operator on X.
sdp::AffineHerm tensor_identity(const sdp::AffineHerm& e, int dim_out) {
  const int dx = e.dim();
  sdp::AffineHerm out(dx * dim_out);
  for (int k = 0; k < dim_out; ++k) {
    CMatrix v = CMatrix::Zero(dx * dim_out, dx);
    for (int x = 0; x < dx; ++x) v(x * dim_out + k, x) = 1.0;
    out = out + e.congruence(v);
  }
  return out;
}

// 1 - tr(e) as a 1x1 affine operator.
sdp::AffineHerm one_minus_trace(const sdp::AffineHerm& e) {
  sdp::AffineHerm out(1);
  out.constant_part()(0, 0) = 1.0;
  for (int k = 0; k < e.dim(); ++k)
    for (const auto& t : e.terms(k, k)) out.terms(0, 0).push_back({t.var, -t.coeff});
  return out;
}

void throw_unless_optimal(const sdp::ConicSolution& sol, const std::string& what) {
  if (sol.status == sdp::Status::Optimal) return;
  std::ostringstream os;
  os << what << " ended with status " << sdp::to_string(sol.status) << " after " << sol.iterations
     << " iterations (primal_res " << sol.primal_res << ", dual_res " << sol.dual_res << ", gap "
     << sol.gap << ")";
  throw Error(ErrorKind::SolverFailure, os.str());
}

struct ChannelSolve {
  BracketSolve bracket;
  HermitianOperator witness;  // reduced coordinates, unscaled
  double t = 0.0;
};

// inf ||tr_Y(V A V^dagger)||_inf s.t. jn <= jm #_beta A, with jn, jm already
// compressed by the isometry v onto supp(J^M).
ChannelSolve solve_channel_program(const HermitianOperator& jn, const HermitianOperator& jm,
                                   const CMatrix& v, int dim_in, int dim_out, DyadicWeight beta,
                                   const sdp::SolverOptions& opts, bool whitened) {
  if (beta.numerator() == 0) throw Error(ErrorKind::OutOfRange, "beta must be positive");
  const double a_eff = 1.0 / beta.value();
  const ProgramFrame f = make_frame(jn, jm, a_eff, whitened);
  // t is normalized by its value t0 at the frame's feasible point.
  const CMatrix u = v * f.half;
  const HermitianOperator fe(CMatrix(u * f.feasible * u.adjoint()), 1e-6);
  const double t0 = std::max(max_eigenvalue(partial_trace(fe, {dim_in, dim_out}, {true, false})),
                             std::numeric_limits<double>::min());

  sdp::Model model;
  const int n = static_cast<int>(jn.dim());
  const auto a = model.add_hermitian(n);
  build_mean_constraint(model, sdp::AffineHerm::constant(f.left), a,
                        sdp::AffineHerm::constant(f.rhs), beta, "mean");
  const int t = model.add_scalar();
  model.add_psd("epigraph", sdp::scalar_identity(t, dim_in) -
                                trace_out_output(a.congruence(CMatrix(u / std::sqrt(t0))), dim_in,
                                                 dim_out));
  model.minimize(t, 1.0);
  const auto sol = sdp::solve(model.program(), opts);
  std::ostringstream what;
  what << "channel program at beta=" << beta.numerator() << "/2^" << beta.level();
  throw_unless_optimal(sol, what.str());

  const CMatrix at = a.value(sol.dual);
  ChannelSolve out;
  out.witness = HermitianOperator(
      CMatrix(f.half * (0.5 * (at + at.adjoint())) * f.half * f.scale), 1e-6);
  const HermitianOperator full(CMatrix(v * out.witness.matrix() * v.adjoint()), 1e-6);
  out.t = max_eigenvalue(partial_trace(full, {dim_in, dim_out}, {true, false}));
  out.bracket.beta = beta;
  out.bracket.alpha_eff = a_eff;
  out.bracket.value_Q = out.t;
  out.bracket.value_D = std::log2(out.t) / (a_eff - 1.0);
  out.bracket.solver = summarize(sol, model);
  return out;
}

// Whitened first, direct frame as the fallback.
ChannelSolve solve_channel_either(const HermitianOperator& jn, const HermitianOperator& jm,
                                  const CMatrix& v, int dim_in, int dim_out, DyadicWeight beta,
                                  const sdp::SolverOptions& opts) {
  try {
    return solve_channel_program(jn, jm, v, dim_in, dim_out, beta, opts, true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SolverFailure) throw;
    return solve_channel_program(jn, jm, v, dim_in, dim_out, beta, opts, false);
  }
}

}  // namespace

ChannelDivResult d_sharp_channel(const QChannel& n, const QChannel& m, double alpha,
                                 const SharpOptions& opts) {
  require_alpha(alpha);
  if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out())
    throw Error(ErrorKind::DimensionMismatch, "channels must share input and output dimensions");
  if (opts.bits < 1 || opts.bits > kMaxDyadicLevel)
    throw Error(ErrorKind::OutOfRange, "dyadic level out of range");
  ChannelDivResult res;
  res.alpha = alpha;
  auto [lo, hi] = dyadic_approx(1.0 / alpha, opts.bits);
  if (lo.numerator() == 0) lo = hi;
  res.beta_lo = lo;
  res.beta_hi = hi;
  res.alpha_eff = 1.0 / hi.value();
  if (!subset_check(n.choi(), m.choi(), opts.rank_tol)) {
    res.value_D = res.D_lo = res.D_hi = res.value_Q = res.epigraph_t = infinite();
    return res;
  }
  const CMatrix v = support_basis(m.choi(), opts.rank_tol);
  res.support_rank = static_cast<int>(v.cols());
  const HermitianOperator jn(CMatrix(v.adjoint() * n.choi().matrix() * v), 1e-9);
  const HermitianOperator jm(CMatrix(v.adjoint() * m.choi().matrix() * v), 1e-9);
  const int dx = n.dim_in(), dy = n.dim_out();

  const auto top = solve_channel_either(jn, jm, v, dx, dy, hi, opts.solver);
  res.value_Q = res.epigraph_t = top.t;
  res.value_D = res.D_hi = top.bracket.value_D;
  res.solver = top.bracket.solver;
  res.D_lo = (lo == hi || !opts.both_brackets)
                 ? res.D_hi
                 : solve_channel_either(jn, jm, v, dx, dy, lo, opts.solver).bracket.value_D;

  const auto mean = mean_eval(jm, top.witness, hi.value(), opts.rank_tol);
  double viol = std::max(0.0, -min_eigenvalue(mean - jn)) / std::max(1.0, op_norm(jn));
  viol = std::max(viol, -min_eigenvalue(top.witness) / std::max(1.0, op_norm(top.witness)));
  res.witness_violation = viol;
  res.witness_ok = viol <= 1e-6;
  res.witness_A = HermitianOperator(CMatrix(v * top.witness.matrix() * v.adjoint()), 1e-6);
  return res;
}

HierarchyBound hierarchy_bound(const QChannel& n, const QChannel& m, double alpha, int order,
                               const SharpOptions& opts, int max_choi_dim) {
  require_alpha(alpha);
  if (order < 1) throw Error(ErrorKind::OutOfRange, "tensor-power order must be >= 1");
  HierarchyBound hb;
  hb.m = order;
  hb.d = n.dim_in() * n.dim_out();
  const double dd = static_cast<double>(hb.d);
  hb.correction = alpha / (alpha - 1.0) * (dd * dd + dd) * std::log2(order + dd) / order;
  const QChannel nm = order == 1 ? n : tensor_power(n, order, max_choi_dim);
  const QChannel mm = order == 1 ? m : tensor_power(m, order, max_choi_dim);
  hb.detail = d_sharp_channel(nm, mm, alpha, opts);
  hb.detail.m = order;
  hb.upper = hb.detail.value_D / order;
  hb.lower = hb.upper - hb.correction;
  return hb;
}

double diamond_norm(const HermitianOperator& j, int dim_in, int dim_out,
                    const sdp::SolverOptions& opts) {
  if (j.dim() != dim_in * dim_out) throw Error(ErrorKind::DimensionMismatch, "diamond_norm");
  // max Re <J, X>  s.t.  [[rho0 (x) I, X], [X^dagger, rho1 (x) I]] >= 0,
  // tr rho0 <= 1, tr rho1 <= 1 (the trace bounds are tight at the optimum).
  sdp::Model model;
  const auto rho0 = model.add_hermitian(dim_in);
  const auto rho1 = model.add_hermitian(dim_in);
  const int dim = dim_in * dim_out;
  const auto x = model.add_hermitian(dim) + model.add_hermitian(dim) * Complex(0.0, 1.0);
  model.add_psd("diamond", sdp::block2(tensor_identity(rho0, dim_out), x,
                                       tensor_identity(rho1, dim_out)));
  model.add_psd("tr0", one_minus_trace(rho0));
  model.add_psd("tr1", one_minus_trace(rho1));
  model.minimize_inner(x, j.matrix(), -1.0);
  // The optimum is typically degenerate (rank-deficient on both sides) and
  // interior-point progress stalls just above 1e-8; 1e-7 is ample here.
  sdp::SolverOptions o = opts;
  o.tol = std::max(o.tol, 1e-7);
  const auto sol = sdp::solve(model.program(), o);
  throw_unless_optimal(sol, "diamond-norm program");
  return -model.objective_value(sol.dual);
}

CapacityBound capacity_bound(const QChannel& n, double alpha, const SharpOptions& opts,
                             bool verify_minimizer) {
  require_alpha(alpha);
  const int dx = n.dim_in(), dy = n.dim_out(), dim = dx * dy;
  const Dims dims{dx, dy};
  const auto [lo, hi] = dyadic_approx(1.0 / alpha, opts.bits);
  (void)lo;
  CapacityBound out;
  out.alpha = alpha;
  out.beta = hi;
  out.alpha_eff = 1.0 / hi.value();

  sdp::Model model;
  const auto jm = model.add_hermitian(dim);
  const auto a = model.add_hermitian(dim);
  // Both jm and a sit on the diagonal of the last tower block, so they are PSD.
  build_mean_constraint(model, jm, a, sdp::AffineHerm::constant(n.choi().matrix()), hi, "mean");
  const int t = model.add_scalar();
  model.add_psd("epigraph", sdp::scalar_identity(t, dx) - trace_out_output(a, dx, dy));

  const auto jt = jm.partial_transpose(dims, {false, true});
  const auto y0 = model.add_hermitian(dim);
  const auto y1 = model.add_hermitian(dim);
  model.add_psd("diamond", sdp::block2(y0, jt * Complex(-1.0), y1));
  const int s0 = model.add_scalar();
  const int s1 = model.add_scalar();
  model.add_psd("diamond:s0", sdp::scalar_identity(s0, dx) - trace_out_output(y0, dx, dy));
  model.add_psd("diamond:s1", sdp::scalar_identity(s1, dx) - trace_out_output(y1, dx, dy));
  sdp::AffineHerm budget(1);
  budget.constant_part()(0, 0) = 2.0;
  budget.terms(0, 0) = {{s0, -1.0}, {s1, -1.0}};
  model.add_psd("diamond:budget", budget);
  model.minimize(t, 1.0);

  // The diamond block has the same degenerate optimum as diamond_norm.
  sdp::SolverOptions so = opts.solver;
  so.tol = std::max(so.tol, 1e-7);
  const auto sol = sdp::solve(model.program(), so);
  throw_unless_optimal(sol, "capacity program");
  out.solver = summarize(sol, model);
  out.value_Q = sol.dual(t);
  out.value = std::log2(out.value_Q) / (out.alpha_eff - 1.0);
  out.minimizer_choi = HermitianOperator(jm.value(sol.dual), 1e-6);
  if (verify_minimizer)
    out.minimizer_diamond =
        diamond_norm(partial_transpose(out.minimizer_choi, dims, {false, true}), dx, dy, opts.solver);
  return out;
}

std::vector<CapacityRow> capacity_curve(const std::vector<double>& gammas,
                                        const std::vector<double>& alphas,
                                        const SharpOptions& opts,
                                        const std::function<QChannel(double)>& family, int jobs) {
  const std::function<QChannel(double)> make = family ? family : amplitude_damping;
  const int ng = static_cast<int>(gammas.size()), na = static_cast<int>(alphas.size());
  struct Cell {
    bool ok = false;
    double value = 0.0;
    std::string message;
  };
  std::vector<Cell> cells(static_cast<std::size_t>(ng * na));
  parallel_for(ng * na, jobs, [&](int idx) {
    Cell& cell = cells[static_cast<std::size_t>(idx)];
    try {
      const auto cb = capacity_bound(make(gammas[idx / na]), alphas[idx % na], opts, false);
      cell.value = cb.value;
      cell.ok = true;
    } catch (const Error& e) {
      cell.message = e.what();
    }
  });
  std::vector<CapacityRow> rows;
  for (int g = 0; g < ng; ++g) {
    CapacityRow row;
    row.gamma = gammas[g];
    row.value = infinite();
    for (int k = 0; k < na; ++k) {
      const Cell& cell = cells[static_cast<std::size_t>(g * na + k)];
      if (!cell.ok) {
        ++row.failed_cells;
        if (row.message.empty()) row.message = cell.message;
        continue;
      }
      if (!row.ok || cell.value < row.value) {
        row.value = cell.value;
        row.best_alpha = alphas[k];
      }
      row.ok = true;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExponentRow> strong_converse_curve(const QChannel& n, const QChannel& m,
                                               const std::vector<double>& r_values,
                                               const std::vector<double>& alphas, int order,
                                               const SharpOptions& opts) {
  std::vector<double> upper;
  for (double a : alphas) upper.push_back(hierarchy_bound(n, m, a, order, opts).upper);
  std::vector<ExponentRow> rows;
  for (double r : r_values) {
    ExponentRow row;
    row.r = r;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      const double a = alphas[k];
      const double e = (a - 1.0) / a * (r - upper[k]);
      if (e > row.exponent) {
        row.exponent = e;
        row.best_alpha = a;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

RateBound two_way_rate_bound(const QChannel& n, const std::vector<double>& alphas, double epsilon,
                             int uses, const SharpOptions& opts) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw Error(ErrorKind::OutOfRange, "epsilon must lie in [0,1)");
  if (uses < 1) throw Error(ErrorKind::OutOfRange, "number of channel uses must be >= 1");
  if (alphas.empty()) throw Error(ErrorKind::OutOfRange, "empty alpha grid");
  RateBound best;
  best.value = infinite();
  for (double a : alphas) {
    const double v = capacity_bound(n, a, opts, false).value -
                     a / (uses * (a - 1.0)) * std::log2(1.0 - epsilon);
    if (v < best.value) {
      best.value = v;
      best.best_alpha = a;
    }
  }
  return best;
}

}  // namespace renyi
