#include "renyi/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace renyi {

namespace {

long product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>());
}

void check_dims(const HermitianOperator& h, const Dims& dims, std::size_t mask_size,
                const char* what) {
  if (dims.empty() || product(dims) != h.dim() || mask_size != dims.size()) {
    std::ostringstream os;
    os << what << ": subsystem dims do not match operator dimension " << h.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

// Mixed-radix digits of a flat index, most significant subsystem first.
void unflatten(long idx, const Dims& dims, std::vector<int>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = static_cast<int>(idx % dims[k]);
    idx /= dims[k];
  }
}

long flatten(const std::vector<int>& digits, const Dims& dims) {
  long idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

}  // namespace

QState::QState(HermitianOperator op, Dims dims) : op_(std::move(op)), dims_(std::move(dims)) {
  if (dims_.empty()) dims_ = {static_cast<int>(op_.dim())};
  if (product(dims_) != op_.dim())
    throw Error(ErrorKind::DimensionMismatch, "state dims do not multiply to operator dimension");
  require_psd(op_, 1e-10, "state");
  trace_value_ = trace(op_);
}

HermitianOperator max_entangled(int d) {
  CMatrix phi = CMatrix::Zero(d * d, d * d);
  for (int x = 0; x < d; ++x)
    for (int xp = 0; xp < d; ++xp) phi(x * d + x, xp * d + xp) = 1.0;
  return HermitianOperator(phi);
}

HermitianOperator choi_from_kraus(const std::vector<CMatrix>& kraus, int dim_in, int dim_out) {
  CMatrix j = CMatrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const auto& k : kraus) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      std::ostringstream os;
      os << "Kraus operator is " << k.rows() << "x" << k.cols() << ", expected " << dim_out << "x"
         << dim_in;
      throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    // (I (x) K)|Phi> has block x equal to the x-th column of K.
    CVector v(dim_in * dim_out);
    for (int x = 0; x < dim_in; ++x) v.segment(x * dim_out, dim_out) = k.col(x);
    j += v * v.adjoint();
  }
  return HermitianOperator(j, 1e-10);
}

QChannel QChannel::from_kraus(std::vector<CMatrix> kraus, int dim_in, int dim_out) {
  if (dim_in <= 0 || dim_out <= 0)
    throw Error(ErrorKind::DimensionMismatch, "channel dimensions must be positive");
  HermitianOperator choi = choi_from_kraus(kraus, dim_in, dim_out);
  return QChannel(dim_in, dim_out, std::move(kraus), std::move(choi));
}

QChannel QChannel::from_choi(HermitianOperator choi, int dim_in, int dim_out) {
  if (dim_in <= 0 || dim_out <= 0 || choi.dim() != dim_in * dim_out)
    throw Error(ErrorKind::DimensionMismatch, "Choi dimension must equal dim_in * dim_out");
  require_psd(choi, 1e-9, "Choi matrix (complete positivity)");
  return QChannel(dim_in, dim_out, std::nullopt, std::move(choi));
}

bool QChannel::is_trace_preserving(double tol) const {
  const auto marg = partial_trace(choi_, {dim_in_, dim_out_}, {true, false});
  return (marg.matrix() - CMatrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff() <= tol;
}

CMatrix QChannel::apply(const CMatrix& w) const {
  return apply_with_reference(w, 1);
}

CMatrix QChannel::apply_with_reference(const CMatrix& rho, int dim_r) const {
  if (rho.rows() != dim_r * dim_in_ || rho.cols() != rho.rows())
    throw Error(ErrorKind::DimensionMismatch, "channel input dimension");
  const int dx = dim_in_;
  const int dy = dim_out_;
  CMatrix out = CMatrix::Zero(dim_r * dy, dim_r * dy);
  const CMatrix& j = choi_.matrix();
  // (I_R (x) N)(rho) = sum_{x,x'} rho^{(x,x')} (x) N(|x><x'|), N(|x><x'|) = J[(x,.),(x',.)].
  for (int x = 0; x < dx; ++x) {
    for (int xp = 0; xp < dx; ++xp) {
      CMatrix rblock(dim_r, dim_r);
      for (int r = 0; r < dim_r; ++r)
        for (int rp = 0; rp < dim_r; ++rp) rblock(r, rp) = rho(r * dx + x, rp * dx + xp);
      if (rblock.cwiseAbs().maxCoeff() == 0.0) continue;
      out += linalg::kron(rblock, j.block(x * dy, xp * dy, dy, dy));
    }
  }
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& h, const Dims& dims,
                                const std::vector<bool>& keep) {
  check_dims(h, dims, keep.size(), "partial_trace");
  Dims kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kept_dims.push_back(dims[k]);
  const long out_dim = product(kept_dims);
  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  const long n = h.dim();
  std::vector<int> di(dims.size()), dj(dims.size()), ki(kept_dims.size()), kj(kept_dims.size());
  for (long i = 0; i < n; ++i) {
    unflatten(i, dims, di);
    for (long j = 0; j < n; ++j) {
      unflatten(j, dims, dj);
      bool diag = true;
      std::size_t c = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          ki[c] = di[k];
          kj[c] = dj[k];
          ++c;
        } else if (di[k] != dj[k]) {
          diag = false;
          break;
        }
      }
      if (!diag) continue;
      out(flatten(ki, kept_dims), flatten(kj, kept_dims)) += h(i, j);
    }
  }
  return HermitianOperator(out, 1e-10);
}

HermitianOperator partial_transpose(const HermitianOperator& h, const Dims& dims,
                                    const std::vector<bool>& transpose) {
  check_dims(h, dims, transpose.size(), "partial_transpose");
  const long n = h.dim();
  CMatrix out(n, n);
  std::vector<int> di(dims.size()), dj(dims.size());
  for (long i = 0; i < n; ++i) {
    unflatten(i, dims, di);
    for (long j = 0; j < n; ++j) {
      unflatten(j, dims, dj);
      std::vector<int> a = di, b = dj;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (transpose[k]) std::swap(a[k], b[k]);
      out(flatten(a, dims), flatten(b, dims)) = h(i, j);
    }
  }
  return HermitianOperator(out);
}

CMatrix permute_subsystems(const CMatrix& m, const Dims& dims, const std::vector<int>& perm) {
  if (perm.size() != dims.size() || product(dims) != m.rows())
    throw Error(ErrorKind::DimensionMismatch, "permute_subsystems");
  Dims out_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out_dims[k] = dims[perm[k]];
  const long n = m.rows();
  std::vector<long> map(n);
  std::vector<int> d(dims.size()), o(dims.size());
  for (long i = 0; i < n; ++i) {
    unflatten(i, dims, d);
    for (std::size_t k = 0; k < perm.size(); ++k) o[k] = d[perm[k]];
    map[i] = flatten(o, out_dims);
  }
  CMatrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(map[i], map[j]) = m(i, j);
  return out;
}

std::vector<CMatrix> eigenspace_projectors(const HermitianOperator& sigma, double spec_tol) {
  const auto sd = eig(sigma);
  const Eigen::Index n = sd.eigenvalues.size();
  std::vector<CMatrix> out;
  if (n == 0) return out;
  const double scale = std::max(sd.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || sd.eigenvalues(i) - sd.eigenvalues(start) > spec_tol * scale) {
      const CMatrix v = sd.eigenvectors.middleCols(start, i - start);
      out.push_back(v * v.adjoint());
      start = i;
    }
  }
  return out;
}

HermitianOperator pinch(const HermitianOperator& w, const HermitianOperator& sigma,
                        double spec_tol) {
  if (w.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "pinch");
  CMatrix out = CMatrix::Zero(w.dim(), w.dim());
  for (const auto& p : eigenspace_projectors(sigma, spec_tol)) out += p * w.matrix() * p;
  return HermitianOperator(out, 1e-10);
}

int spec_count(const HermitianOperator& sigma, double spec_tol) {
  return static_cast<int>(eigenspace_projectors(sigma, spec_tol).size());
}

QChannel amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw Error(ErrorKind::OutOfRange, "amplitude damping gamma must lie in [0,1]");
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return QChannel::from_kraus({k0, k1}, 2, 2);
}

QChannel depolarizing(double p, int d) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "depolarizing p must lie in [0,1]");
  if (d <= 0) throw Error(ErrorKind::DimensionMismatch, "depolarizing dimension");
  std::vector<CMatrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * CMatrix::Identity(d, d));
  // p * tr(W) I/d realised by the d^2 unit Kraus maps sqrt(p/d)|i><j|.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix k = CMatrix::Zero(d, d);
      k(i, j) = std::sqrt(p / d);
      kraus.push_back(k);
    }
  return QChannel::from_kraus(std::move(kraus), d, d);
}

QChannel identity_channel(int d) {
  return QChannel::from_kraus({CMatrix::Identity(d, d)}, d, d);
}

QChannel replacer_channel(const HermitianOperator& sigma, int dim_in) {
  const auto id = HermitianOperator::identity(dim_in);
  return QChannel::from_choi(kron(id, sigma), dim_in, static_cast<int>(sigma.dim()));
}

QChannel tensor_product(const QChannel& a, const QChannel& b) {
  const int din = a.dim_in() * b.dim_in();
  const int dout = a.dim_out() * b.dim_out();
  const CMatrix j = linalg::kron(a.choi().matrix(), b.choi().matrix());
  // X1 Y1 X2 Y2 -> X1 X2 Y1 Y2
  const CMatrix regrouped =
      permute_subsystems(j, {a.dim_in(), a.dim_out(), b.dim_in(), b.dim_out()}, {0, 2, 1, 3});
  if (a.kraus() && b.kraus()) {
    std::vector<CMatrix> kraus;
    for (const auto& ka : *a.kraus())
      for (const auto& kb : *b.kraus()) kraus.push_back(linalg::kron(ka, kb));
    return QChannel::from_kraus(std::move(kraus), din, dout);
  }
  return QChannel::from_choi(HermitianOperator(regrouped, 1e-10), din, dout);
}

QChannel tensor_power(const QChannel& ch, int m, int max_choi_dim) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "tensor power order must be >= 1");
  const double choi_dim = std::pow(static_cast<double>(ch.dim_in() * ch.dim_out()), m);
  if (choi_dim > max_choi_dim) {
    std::ostringstream os;
    os << "tensor power Choi dimension " << choi_dim << " exceeds budget " << max_choi_dim;
    throw Error(ErrorKind::SizeBudget, os.str());
  }
  // Build the Choi directly from the m-fold Kronecker product; Kraus lists grow
  // as k^m and are only carried along while small.
  CMatrix j = ch.choi().matrix();
  Dims dims = {ch.dim_in(), ch.dim_out()};
  for (int k = 1; k < m; ++k) {
    j = linalg::kron(j, ch.choi().matrix());
    dims.push_back(ch.dim_in());
    dims.push_back(ch.dim_out());
  }
  std::vector<int> perm;
  for (int k = 0; k < m; ++k) perm.push_back(2 * k);
  for (int k = 0; k < m; ++k) perm.push_back(2 * k + 1);
  const CMatrix regrouped = permute_subsystems(j, dims, perm);
  const int din = static_cast<int>(std::lround(std::pow(ch.dim_in(), m)));
  const int dout = static_cast<int>(std::lround(std::pow(ch.dim_out(), m)));
  return QChannel::from_choi(HermitianOperator(regrouped, 1e-10), din, dout);
}

HermitianOperator sandwich_choi(const HermitianOperator& omega_x, const HermitianOperator& j_xy) {
  const auto dx = omega_x.dim();
  if (dx == 0 || j_xy.dim() % dx != 0)
    throw Error(ErrorKind::DimensionMismatch, "sandwich_choi");
  const auto dy = j_xy.dim() / dx;
  const CMatrix root = matrix_power(omega_x, 0.5).matrix();
  const CMatrix s = linalg::kron(root, CMatrix::Identity(dy, dy));
  return HermitianOperator(CMatrix(s * j_xy.matrix() * s), 1e-10);
}

}  // namespace renyi
