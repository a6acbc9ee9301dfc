#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "renyi/hermitian.hpp"

namespace renyi::sdp {

/// One coefficient of a Hermitian data matrix. Only entries with row <= col
/// are stored; the (col,row) entry is the complex conjugate.
struct HermEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  Complex value;
};

struct BlockSpec {
  std::string name;
  int dim = 0;
};

/// sum_blocks Re tr(coeffs_b X_b) == rhs
struct Equality {
  std::vector<HermEntry> coeffs;
  double rhs = 0.0;
};

/// Standard-form problem over a product of Hermitian PSD cones:
///
///   minimize   <C, X>
///   subject to <A_i, X> = b_i,  X_b >= 0 for every block.
///
/// Its conic dual is  maximize b^T y  s.t.  C - sum_i y_i A_i >= 0, which is
/// the linear-matrix-inequality form the modelling layer writes into.
struct ConicProgram {
  std::vector<BlockSpec> blocks;
  std::vector<Equality> equalities;
  std::vector<HermEntry> objective;

  int add_block(std::string name, int dim);
  /// Throws DimensionMismatch for entries outside the declared blocks.
  void validate() const;
  int total_dim() const;
  /// Plain-text dump, one pairing per line (see README for the format).
  void dump(std::ostream& os) const;
};

enum class Status { Optimal, Infeasible, Unbounded, MaxIter, NumericalFailure };

std::string_view to_string(Status s);

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 200;
  /// Upper bound on the total realified block dimension.
  int size_budget = 1200;
  bool verbose = false;
};

struct ConicSolution {
  Status status = Status::NumericalFailure;
  std::vector<CMatrix> primal_blocks;  // X
  RVector dual;                        // y
  std::vector<CMatrix> dual_slack;     // Z = C - sum y_i A_i
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double primal_res = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual_res = 0.0;    // ||C - Z - A^T y|| / (1 + ||C||)
  double gap = 0.0;         // |pobj - dobj| / (1 + |pobj|)
  int iterations = 0;
  int dropped_rows = 0;
};

ConicSolution solve(const ConicProgram& program, const SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Real symmetric kernel

/// Entry of a real symmetric data matrix; stored for row <= col only.
struct RealEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct RealProgram {
  std::vector<int> dims;
  std::vector<std::vector<RealEntry>> constraints;
  RVector rhs;
  std::vector<Eigen::MatrixXd> objective;  // dense C per block
};

struct RealSolution {
  Status status = Status::NumericalFailure;
  std::vector<Eigen::MatrixXd> x;
  RVector y;
  std::vector<Eigen::MatrixXd> z;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

/// H = P + iQ  ->  [[P, -Q], [Q, P]]
Eigen::MatrixXd realify(const CMatrix& h);
/// Inverse of realify on matrices of that structure (averages the copies).
CMatrix derealify(const Eigen::MatrixXd& r);
/// Maps every Hermitian block of size n to a real symmetric block of size 2n;
/// data is scaled by 1/2 so that pairings, and hence optimal values, agree.
RealProgram realify(const ConicProgram& program);

RealSolution solve_real(const RealProgram& program, const SolverOptions& opts = {});

}  // namespace renyi::sdp
