#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "renyi/hermitian.hpp"
#include "renyi/lmi.hpp"

namespace renyi {

/// numerator / 2^level in lowest terms.
class DyadicWeight {
 public:
  DyadicWeight() = default;
  /// Reduces to lowest terms; throws NotDyadic unless 0 <= numerator <= 2^level.
  DyadicWeight(std::uint64_t numerator, int level);
  /// Exact conversion of a double that is a dyadic rational with level <= max_level.
  static DyadicWeight from_double(double beta, int max_level = 30);

  std::uint64_t numerator() const { return numerator_; }
  int level() const { return level_; }
  double value() const;

  friend bool operator==(const DyadicWeight&, const DyadicWeight&) = default;

 private:
  std::uint64_t numerator_ = 0;
  int level_ = 0;
};

inline constexpr int kDefaultDyadicLevel = 8;
inline constexpr int kMaxDyadicLevel = 14;

/// A #_beta B = A^{1/2} (A^{-1/2} B A^{-1/2})^beta A^{1/2} with inverses on
/// supp(A). Throws SupportViolation when A is singular and B is not
/// supported inside supp(A).
HermitianOperator mean_eval(const HermitianOperator& a, const HermitianOperator& b, double beta,
                            double rank_tol = kDefaultRankTol);

/// mean_eval(A + eps I, B, beta).
HermitianOperator mean_eval_regularized(const HermitianOperator& a, const HermitianOperator& b,
                                        double beta, double eps);

/// (floor(beta 2^l) / 2^l, ceil(beta 2^l) / 2^l), each in lowest terms.
std::pair<DyadicWeight, DyadicWeight> dyadic_approx(double beta, int level);

/// Blocks and auxiliary operators emitted for  T <= A #_beta B.
struct MeanConstraintBlock {
  DyadicWeight beta;
  int level = 0;
  std::vector<int> block_ids;
  std::vector<int> block_dims;
  std::vector<sdp::AffineHerm> auxiliaries;
};

/// Adds the semidefinite representation of T <= A #_beta B to the model.
///
/// With beta = 0.b_1 b_2 ... b_l in binary, G_1 is a slack with T <= G_1 and
/// each digit (most significant first) adds one 2n x 2n block
///   b_k = 1:  [[G_{k+1}, G_k], [G_k, B]] >= 0
///   b_k = 0:  [[A, G_k], [G_k, G_{k+1}]] >= 0
/// with G_{l+1} = A. Every G_k is a Hermitian auxiliary; the representation is
/// exact because G <= X # Y iff [[X, G'], [G', Y]] >= 0 for some G' >= G.
MeanConstraintBlock build_mean_constraint(sdp::Model& model, const sdp::AffineHerm& a,
                                          const sdp::AffineHerm& b, const sdp::AffineHerm& t,
                                          DyadicWeight beta, const std::string& tag = "mean");

}  // namespace renyi
