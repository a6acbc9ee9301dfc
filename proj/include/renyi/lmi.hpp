#pragma once

#include <string>
#include <vector>

#include "renyi/quantum.hpp"
#include "renyi/sdp.hpp"

namespace renyi::sdp {

struct LinTerm {
  int var = 0;
  Complex coeff;
};

/// Square matrix whose entries are affine functions of the model's real
/// scalar variables: E = E_0 + sum_v y_v E_v.
class AffineHerm {
 public:
  AffineHerm() = default;
  explicit AffineHerm(int n);
  static AffineHerm constant(const CMatrix& m);

  int dim() const { return n_; }
  const std::vector<LinTerm>& terms(int r, int c) const { return terms_[idx(r, c)]; }
  std::vector<LinTerm>& terms(int r, int c) { return terms_[idx(r, c)]; }
  const CMatrix& constant_part() const { return const_; }
  CMatrix& constant_part() { return const_; }

  AffineHerm operator+(const AffineHerm& o) const;
  AffineHerm operator-(const AffineHerm& o) const;
  AffineHerm operator*(Complex s) const;
  AffineHerm adjoint() const;

  AffineHerm partial_trace(const Dims& dims, const std::vector<bool>& keep) const;
  AffineHerm partial_transpose(const Dims& dims, const std::vector<bool>& mask) const;
  /// V E V^dagger for a (possibly rectangular) constant V.
  AffineHerm congruence(const CMatrix& v) const;

  CMatrix value(const RVector& y) const;

 private:
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * n_ + c; }

  int n_ = 0;
  std::vector<std::vector<LinTerm>> terms_;
  CMatrix const_;
};

/// [[a, b], [b^dagger, c]]
AffineHerm block2(const AffineHerm& a, const AffineHerm& b, const AffineHerm& c);
/// s * I_n for scalar variable s.
AffineHerm scalar_identity(int var, int n);

/// Linear-matrix-inequality model: real scalar variables y, constraints
/// E(y) >= 0, objective minimize c^T y. Lowered to ConicProgram as the dual
/// (LMI) side of the standard form.
class Model {
 public:
  int add_scalar();
  /// Hermitian n x n variable parametrised by n^2 real scalars.
  AffineHerm add_hermitian(int n);
  /// Records E >= 0; returns the block index in the lowered program.
  int add_psd(std::string name, const AffineHerm& e);
  void minimize(int var, double coeff);
  /// Minimize the real part of tr(E).
  void minimize_trace(const AffineHerm& e, double coeff = 1.0);
  /// Minimize coeff * Re <W, E> = coeff * Re sum_ij conj(W_ij) E_ij.
  void minimize_inner(const AffineHerm& e, const CMatrix& w, double coeff = 1.0);

  int num_vars() const { return num_vars_; }
  int num_blocks() const { return static_cast<int>(constraints_.size()); }
  const std::string& block_name(int b) const { return names_[b]; }

  ConicProgram program() const;
  /// c^T y for the LMI variables carried in sol.dual.
  double objective_value(const RVector& y) const;

 private:
  int num_vars_ = 0;
  std::vector<std::string> names_;
  std::vector<AffineHerm> constraints_;
  std::vector<double> cost_;
};

}  // namespace renyi::sdp
