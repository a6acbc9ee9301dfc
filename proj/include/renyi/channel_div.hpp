#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "renyi/divergence.hpp"

namespace renyi {

struct ChannelDivResult {
  double value_D = 0.0;
  double value_Q = 0.0;
  double alpha = 0.0;
  double alpha_eff = 0.0;
  /// Tensor-power order of the channels the program was built for.
  int m = 1;
  DyadicWeight beta_lo;
  DyadicWeight beta_hi;
  double D_lo = 0.0;
  double D_hi = 0.0;
  /// ||tr_Y A||_inf at the optimum.
  double epigraph_t = 0.0;
  std::optional<HermitianOperator> witness_A;
  double witness_violation = 0.0;
  bool witness_ok = false;
  SolveSummary solver;
  int support_rank = 0;
};

/// D#_alpha(N || M) for CP maps with matching dimensions. value_D = +inf when
/// J^N is not supported in supp(J^M).
ChannelDivResult d_sharp_channel(const QChannel& n, const QChannel& m, double alpha,
                                 const SharpOptions& opts = {});

struct HierarchyBound {
  int m = 1;
  double upper = 0.0;
  double lower = 0.0;
  double correction = 0.0;
  /// dim_X * dim_Y of the single-copy channel.
  int d = 0;
  ChannelDivResult detail;
};

/// (1/m) D#_alpha(N^m || M^m) and the same minus (1/m)(alpha/(alpha-1))(d^2+d) log2(m+d).
HierarchyBound hierarchy_bound(const QChannel& n, const QChannel& m, double alpha, int order,
                               const SharpOptions& opts = {},
                               int max_choi_dim = kDefaultMaxChoiDim);

/// Diamond norm of the Hermitian-preserving map with Choi matrix j on X (x) Y.
double diamond_norm(const HermitianOperator& j, int dim_in, int dim_out,
                    const sdp::SolverOptions& opts = {});

struct CapacityBound {
  double value = 0.0;
  double value_Q = 0.0;
  double alpha = 0.0;
  double alpha_eff = 0.0;
  DyadicWeight beta;
  /// Choi matrix of the optimal M in V_Theta.
  HermitianOperator minimizer_choi;
  /// ||Theta o M||_diamond of the minimizer, recomputed by diamond_norm.
  double minimizer_diamond = 0.0;
  SolveSummary solver;
};

/// min over M in V_Theta of D#_alpha(N || M), solved as one joint program.
/// V_Theta is the set of CP maps M with ||Theta_Y o M||_diamond <= 1 where
/// Theta is the transpose.
CapacityBound capacity_bound(const QChannel& n, double alpha, const SharpOptions& opts = {},
                             bool verify_minimizer = true);

struct CapacityRow {
  double gamma = 0.0;
  double best_alpha = 0.0;
  double value = 0.0;
  /// Cells that failed are skipped in the minimum; ok is false if all failed.
  bool ok = false;
  int failed_cells = 0;
  std::string message;
};

/// Per-gamma minimum over the alpha grid of capacity_bound(family(gamma), alpha).
/// Defaults to the amplitude-damping family. jobs > 1 solves cells in parallel.
std::vector<CapacityRow> capacity_curve(const std::vector<double>& gammas,
                                        const std::vector<double>& alphas,
                                        const SharpOptions& opts = {},
                                        const std::function<QChannel(double)>& family = {},
                                        int jobs = 1);

struct ExponentRow {
  double r = 0.0;
  double exponent = 0.0;
  double best_alpha = 0.0;
};

/// Lower bound on the strong-converse exponent for discriminating N from M:
/// max over the alpha grid of (alpha-1)/alpha (r - U_alpha), clamped at 0,
/// with U_alpha the hierarchy upper member at order m.
std::vector<ExponentRow> strong_converse_curve(const QChannel& n, const QChannel& m,
                                               const std::vector<double>& r_values,
                                               const std::vector<double>& alphas, int order,
                                               const SharpOptions& opts = {});

struct RateBound {
  double value = 0.0;
  double best_alpha = 0.0;
};

/// min over alpha of capacity_bound(N, alpha) - alpha / (n (alpha - 1)) log2(1 - epsilon).
RateBound two_way_rate_bound(const QChannel& n, const std::vector<double>& alphas,
                             double epsilon, int uses, const SharpOptions& opts = {});

}  // namespace renyi
