#include "renyi/lmi.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace renyi::sdp {

namespace {

void append(std::vector<LinTerm>& dst, const std::vector<LinTerm>& src, Complex scale) {
  for (const auto& t : src) dst.push_back({t.var, t.coeff * scale});
}

void compact(std::vector<LinTerm>& terms) {
  if (terms.size() < 2) return;
  std::sort(terms.begin(), terms.end(), [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms.size(); ++r) {
    if (w > 0 && terms[w - 1].var == terms[r].var) {
      terms[w - 1].coeff += terms[r].coeff;
    } else {
      terms[w++] = terms[r];
    }
  }
  terms.resize(w);
  terms.erase(std::remove_if(terms.begin(), terms.end(),
                             [](const LinTerm& t) { return std::abs(t.coeff) == 0.0; }),
              terms.end());
}

int product(const Dims& dims) { return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>()); }

void unflatten(int idx, const Dims& dims, std::vector<int>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = idx % dims[k];
    idx /= dims[k];
  }
}

int flatten(const std::vector<int>& digits, const Dims& dims) {
  int idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

}  // namespace

AffineHerm::AffineHerm(int n)
    : n_(n), terms_(static_cast<std::size_t>(n) * n), const_(CMatrix::Zero(n, n)) {}

AffineHerm AffineHerm::constant(const CMatrix& m) {
  AffineHerm out(static_cast<int>(m.rows()));
  out.const_ = m;
  return out;
}

AffineHerm AffineHerm::operator+(const AffineHerm& o) const {
  if (o.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "affine sum");
  AffineHerm out = *this;
  out.const_ += o.const_;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    append(out.terms_[k], o.terms_[k], 1.0);
    compact(out.terms_[k]);
  }
  return out;
}

AffineHerm AffineHerm::operator-(const AffineHerm& o) const { return *this + o * Complex(-1.0); }

AffineHerm AffineHerm::operator*(Complex s) const {
  AffineHerm out(n_);
  out.const_ = const_ * s;
  for (std::size_t k = 0; k < terms_.size(); ++k) append(out.terms_[k], terms_[k], s);
  return out;
}

AffineHerm AffineHerm::adjoint() const {
  AffineHerm out(n_);
  out.const_ = const_.adjoint();
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      for (const auto& t : terms(r, c)) out.terms(c, r).push_back({t.var, std::conj(t.coeff)});
  return out;
}

AffineHerm AffineHerm::partial_trace(const Dims& dims, const std::vector<bool>& keep) const {
  if (product(dims) != n_ || keep.size() != dims.size())
    throw Error(ErrorKind::DimensionMismatch, "affine partial trace");
  Dims kept;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kept.push_back(dims[k]);
  AffineHerm out(product(kept));
  std::vector<int> di(dims.size()), dj(dims.size()), ki(kept.size()), kj(kept.size());
  for (int i = 0; i < n_; ++i) {
    unflatten(i, dims, di);
    for (int j = 0; j < n_; ++j) {
      unflatten(j, dims, dj);
      bool diag = true;
      std::size_t c = 0;
      for (std::size_t k = 0; k < dims.size() && diag; ++k) {
        if (keep[k]) {
          ki[c] = di[k];
          kj[c] = dj[k];
          ++c;
        } else if (di[k] != dj[k]) {
          diag = false;
        }
      }
      if (!diag) continue;
      const int oi = flatten(ki, kept), oj = flatten(kj, kept);
      out.const_(oi, oj) += const_(i, j);
      append(out.terms(oi, oj), terms(i, j), 1.0);
    }
  }
  for (auto& t : out.terms_) compact(t);
  return out;
}

AffineHerm AffineHerm::partial_transpose(const Dims& dims, const std::vector<bool>& mask) const {
  if (product(dims) != n_ || mask.size() != dims.size())
    throw Error(ErrorKind::DimensionMismatch, "affine partial transpose");
  AffineHerm out(n_);
  std::vector<int> di(dims.size()), dj(dims.size());
  for (int i = 0; i < n_; ++i) {
    unflatten(i, dims, di);
    for (int j = 0; j < n_; ++j) {
      unflatten(j, dims, dj);
      std::vector<int> a = di, b = dj;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (mask[k]) std::swap(a[k], b[k]);
      const int oi = flatten(a, dims), oj = flatten(b, dims);
      out.const_(oi, oj) = const_(i, j);
      out.terms(oi, oj) = terms(i, j);
    }
  }
  return out;
}

AffineHerm AffineHerm::congruence(const CMatrix& v) const {
  if (v.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "affine congruence");
  const int m = static_cast<int>(v.rows());
  AffineHerm out(m);
  out.const_ = v * const_ * v.adjoint();
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      auto& dst = out.terms(p, q);
      for (int k = 0; k < n_; ++k) {
        if (v(p, k) == 0.0) continue;
        for (int l = 0; l < n_; ++l) {
          const Complex f = v(p, k) * std::conj(v(q, l));
          if (f == 0.0) continue;
          append(dst, terms(k, l), f);
        }
      }
      compact(dst);
    }
  }
  return out;
}

CMatrix AffineHerm::value(const RVector& y) const {
  CMatrix out = const_;
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      for (const auto& t : terms(r, c)) out(r, c) += t.coeff * y(t.var);
  return out;
}

AffineHerm block2(const AffineHerm& a, const AffineHerm& b, const AffineHerm& c) {
  const int n = a.dim(), m = c.dim();
  if (b.dim() != n || m != n) throw Error(ErrorKind::DimensionMismatch, "block2 requires equal sizes");
  AffineHerm out(2 * n);
  const AffineHerm bh = b.adjoint();
  auto place = [&](const AffineHerm& src, int r0, int c0) {
    out.constant_part().block(r0, c0, n, n) = src.constant_part();
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc) out.terms(r0 + r, c0 + cc) = src.terms(r, cc);
  };
  place(a, 0, 0);
  place(b, 0, n);
  place(bh, n, 0);
  place(c, n, n);
  return out;
}

AffineHerm scalar_identity(int var, int n) {
  AffineHerm out(n);
  for (int k = 0; k < n; ++k) out.terms(k, k).push_back({var, 1.0});
  return out;
}

int Model::add_scalar() {
  cost_.push_back(0.0);
  return num_vars_++;
}

AffineHerm Model::add_hermitian(int n) {
  AffineHerm out(n);
  for (int k = 0; k < n; ++k) out.terms(k, k).push_back({add_scalar(), 1.0});
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const int re = add_scalar();
      const int im = add_scalar();
      out.terms(k, l) = {{re, 1.0}, {im, Complex(0.0, 1.0)}};
      out.terms(l, k) = {{re, 1.0}, {im, Complex(0.0, -1.0)}};
    }
  }
  return out;
}

int Model::add_psd(std::string name, const AffineHerm& e) {
  names_.push_back(std::move(name));
  constraints_.push_back(e);
  return static_cast<int>(constraints_.size()) - 1;
}

void Model::minimize(int var, double coeff) { cost_.at(static_cast<std::size_t>(var)) += coeff; }

void Model::minimize_trace(const AffineHerm& e, double coeff) {
  for (int k = 0; k < e.dim(); ++k)
    for (const auto& t : e.terms(k, k)) cost_[static_cast<std::size_t>(t.var)] += coeff * t.coeff.real();
}

void Model::minimize_inner(const AffineHerm& e, const CMatrix& w, double coeff) {
  if (w.rows() != e.dim() || w.cols() != e.dim())
    throw Error(ErrorKind::DimensionMismatch, "minimize_inner");
  for (int r = 0; r < e.dim(); ++r)
    for (int c = 0; c < e.dim(); ++c)
      for (const auto& t : e.terms(r, c))
        cost_[static_cast<std::size_t>(t.var)] += coeff * (std::conj(w(r, c)) * t.coeff).real();
}

ConicProgram Model::program() const {
  // E(y) = E_0 + sum y_v E_v >= 0  is  C - sum y_v A_v >= 0  with C = E_0, A_v = -E_v,
  // and minimize c^T y  is  maximize b^T y with b = -c.
  ConicProgram prog;
  prog.equalities.resize(static_cast<std::size_t>(num_vars_));
  for (int v = 0; v < num_vars_; ++v) prog.equalities[v].rhs = -cost_[v];
  for (std::size_t b = 0; b < constraints_.size(); ++b) {
    const auto& e = constraints_[b];
    const int blk = prog.add_block(names_[b], e.dim());
    for (int r = 0; r < e.dim(); ++r) {
      for (int c = r; c < e.dim(); ++c) {
        const Complex k0 = r == c ? Complex(e.constant_part()(r, c).real(), 0.0)
                                  : 0.5 * (e.constant_part()(r, c) + std::conj(e.constant_part()(c, r)));
        if (k0 != 0.0) prog.objective.push_back({blk, r, c, k0});
        std::vector<LinTerm> ts = e.terms(r, c);
        if (r != c) {
          // Average with the conjugate of the mirrored entry so that slightly
          // non-Hermitian expressions lower to their Hermitian part.
          for (auto& t : ts) t.coeff *= 0.5;
          for (const auto& t : e.terms(c, r)) ts.push_back({t.var, 0.5 * std::conj(t.coeff)});
        }
        compact(ts);
        for (const auto& t : ts) {
          Complex val = -t.coeff;
          if (r == c) val = Complex(val.real(), 0.0);
          prog.equalities[static_cast<std::size_t>(t.var)].coeffs.push_back({blk, r, c, val});
        }
      }
    }
  }
  return prog;
}

double Model::objective_value(const RVector& y) const {
  double s = 0.0;
  for (int v = 0; v < num_vars_; ++v) s += cost_[v] * y(v);
  return s;
}

}  // namespace renyi::sdp
