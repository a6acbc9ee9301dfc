#pragma once

#include <optional>
#include <vector>

#include "renyi/hermitian.hpp"

namespace renyi {

using Dims = std::vector<int>;

/// Eigenvalue clustering tolerance (relative to the largest |eigenvalue|)
/// used by pinching and spectrum counting.
inline constexpr double kDefaultSpecTol = 1e-9;
/// Largest Choi dimension tensor_power will build without an override.
inline constexpr int kDefaultMaxChoiDim = 256;

/// Positive semidefinite operator with a subsystem decomposition. The trace
/// is not required to be one.
class QState {
 public:
  QState() = default;
  explicit QState(HermitianOperator op, Dims dims = {});

  const HermitianOperator& op() const { return op_; }
  double trace_value() const { return trace_value_; }
  const Dims& dims() const { return dims_; }

 private:
  HermitianOperator op_;
  double trace_value_ = 0.0;
  Dims dims_;
};

/// Completely positive map from L(C^dim_in) to L(C^dim_out), held as its
/// unnormalized Choi matrix on X (x) Y (reference first) and optionally as a
/// Kraus list.
class QChannel {
 public:
  static QChannel from_kraus(std::vector<CMatrix> kraus, int dim_in, int dim_out);
  /// Validates complete positivity of the supplied Choi matrix.
  static QChannel from_choi(HermitianOperator choi, int dim_in, int dim_out);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::optional<std::vector<CMatrix>>& kraus() const { return kraus_; }
  const HermitianOperator& choi() const { return choi_; }

  bool is_trace_preserving(double tol = 1e-9) const;
  /// N(W) for W on the input space.
  CMatrix apply(const CMatrix& w) const;
  /// (I_R (x) N)(rho) for rho on R (x) X, R first.
  CMatrix apply_with_reference(const CMatrix& rho, int dim_r) const;

 private:
  QChannel(int dim_in, int dim_out, std::optional<std::vector<CMatrix>> kraus,
           HermitianOperator choi)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), choi_(std::move(choi)) {}

  int dim_in_ = 0;
  int dim_out_ = 0;
  std::optional<std::vector<CMatrix>> kraus_;
  HermitianOperator choi_;
};

/// Unnormalized maximally entangled operator sum_{x,x'} |x><x'| (x) |x><x'|.
HermitianOperator max_entangled(int d);

HermitianOperator choi_from_kraus(const std::vector<CMatrix>& kraus, int dim_in, int dim_out);

/// Traces out every subsystem whose keep flag is false.
HermitianOperator partial_trace(const HermitianOperator& h, const Dims& dims,
                                const std::vector<bool>& keep);
/// Transposes every subsystem whose flag is true.
HermitianOperator partial_transpose(const HermitianOperator& h, const Dims& dims,
                                    const std::vector<bool>& transpose);
/// Reorders subsystems: output subsystem k is input subsystem perm[k].
CMatrix permute_subsystems(const CMatrix& m, const Dims& dims, const std::vector<int>& perm);

/// Spectral projectors of sigma, eigenvalues grouped with relative tolerance.
std::vector<CMatrix> eigenspace_projectors(const HermitianOperator& sigma,
                                           double spec_tol = kDefaultSpecTol);
HermitianOperator pinch(const HermitianOperator& w, const HermitianOperator& sigma,
                        double spec_tol = kDefaultSpecTol);
int spec_count(const HermitianOperator& sigma, double spec_tol = kDefaultSpecTol);

QChannel amplitude_damping(double gamma);
/// W -> (1-p) W + p tr(W) I/d on a d-dimensional system.
QChannel depolarizing(double p, int d = 2);
QChannel identity_channel(int d);
/// W -> tr(W) sigma.
QChannel replacer_channel(const HermitianOperator& sigma, int dim_in);

/// m-fold tensor power with Choi ordered (X_1..X_m) (x) (Y_1..Y_m).
QChannel tensor_power(const QChannel& ch, int m, int max_choi_dim = kDefaultMaxChoiDim);
/// Tensor product of two channels; Choi ordered (X_1 X_2) (x) (Y_1 Y_2).
QChannel tensor_product(const QChannel& a, const QChannel& b);

/// omega^{1/2} J omega^{1/2} with omega acting on the X factor of X (x) Y.
HermitianOperator sandwich_choi(const HermitianOperator& omega_x, const HermitianOperator& j_xy);

}  // namespace renyi
