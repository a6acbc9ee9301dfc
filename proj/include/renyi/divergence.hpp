#pragma once

#include <optional>

#include "renyi/meanrep.hpp"
#include "renyi/sdp.hpp"

namespace renyi {

/// Solver diagnostics carried by every program-backed result.
struct SolveSummary {
  sdp::Status status = sdp::Status::NumericalFailure;
  int iterations = 0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap = 0.0;
  int num_blocks = 0;
  int num_vars = 0;
};

SolveSummary summarize(const sdp::ConicSolution& sol, const sdp::Model& model);

struct SharpOptions {
  /// Dyadic level used to bracket beta = 1/alpha.
  int bits = kDefaultDyadicLevel;
  /// Solve the lower bracket as well as the upper one.
  bool both_brackets = true;
  double rank_tol = kDefaultRankTol;
  sdp::SolverOptions solver;
};

/// One solved dyadic weight.
struct BracketSolve {
  DyadicWeight beta;
  /// 1 / beta: the order at which the program is exact.
  double alpha_eff = 0.0;
  double value_Q = 0.0;
  double value_D = 0.0;
  SolveSummary solver;
};

struct DivergenceResult {
  double value_D = 0.0;
  double value_Q = 0.0;
  double alpha = 0.0;
  /// Order the headline value is exact for (1 / beta_hi).
  double alpha_eff = 0.0;
  DyadicWeight beta_lo;
  DyadicWeight beta_hi;
  double D_lo = 0.0;
  double D_hi = 0.0;
  std::optional<HermitianOperator> witness_A;
  /// Largest violation found when re-checking the witness outside the solver.
  double witness_violation = 0.0;
  bool witness_ok = false;
  SolveSummary solver;
  /// Rank of supp(sigma) the program was restricted to.
  int support_rank = 0;
};

/// +inf, the value of every divergence under a support violation.
double infinite();

/// Classical Renyi divergence (base 2) of nonnegative vectors, alpha > 1.
double d_classical(const RVector& p, const RVector& q, double alpha);
/// Binary Renyi divergence between Bernoulli(p) and Bernoulli(q).
double d_binary(double p, double q, double alpha);
double d_sandwiched(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                    double rank_tol = kDefaultRankTol);
double d_geometric(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                   double rank_tol = kDefaultRankTol);
double d_max(const HermitianOperator& rho, const HermitianOperator& sigma,
             double rank_tol = kDefaultRankTol);
/// Classical divergence after pinching rho by the eigenspaces of sigma; a
/// lower bound on the measured divergence.
double d_pinched(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                 double spec_tol = kDefaultSpecTol);

/// Coordinates for the mean-constraint programs. The solved variable At maps
/// back as A = scale * half At half; the constraint is rhs <= left #_beta At.
/// feasible is a point satisfying it at weight 1/alpha, used to normalize
/// objectives. Whitened frames use left = I, half = sigma^{1/2}; direct frames
/// use left = sigma/||sigma||, half = I.
struct ProgramFrame {
  bool whitened = true;
  CMatrix left;
  CMatrix rhs;
  CMatrix half;
  double scale = 1.0;
  CMatrix feasible;
};
ProgramFrame make_frame(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                        bool whitened);

/// Q for one dyadic weight: inf tr(A) s.t. rho <= sigma #_beta A, A >= 0.
/// rho, sigma are assumed already restricted so that sigma is invertible.
/// Returns the solve and the optimal A.
std::pair<BracketSolve, HermitianOperator> solve_state_program(const HermitianOperator& rho,
                                                               const HermitianOperator& sigma,
                                                               DyadicWeight beta,
                                                               const sdp::SolverOptions& opts,
                                                               bool whitened = true);

/// D#_alpha(rho || sigma). Returns value_D = +inf when rho is not supported
/// in supp(sigma). Throws SolverFailure when a solve does not reach Optimal.
DivergenceResult d_sharp_state(const HermitianOperator& rho, const HermitianOperator& sigma,
                               double alpha, const SharpOptions& opts = {});

struct DivergenceBounds {
  double lower = 0.0;            // sandwiched
  double upper = 0.0;            // min of the three below
  double upper_geometric = 0.0;
  double upper_trivial = 0.0;    // D_max + log2(tr rho) / (alpha - 1)
  double upper_pinched = 0.0;    // d_pinched + spec_correction
  /// (alpha / (alpha - 1)) log2 |spec(sigma)|
  double spec_correction = 0.0;
};

DivergenceBounds d_sharp_bounds(const HermitianOperator& rho, const HermitianOperator& sigma,
                                double alpha);

}  // namespace renyi
