#include "renyi/sdp.hpp"


#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <ostream>
#include <sstream>

namespace renyi::sdp {

using Eigen::MatrixXd;
using Blocks = std::vector<MatrixXd>;

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
    case Status::MaxIter: return "MaxIter";
    case Status::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

int ConicProgram::add_block(std::string name, int dim) {
  blocks.push_back({std::move(name), dim});
  return static_cast<int>(blocks.size()) - 1;
}

int ConicProgram::total_dim() const {
  int n = 0;
  for (const auto& b : blocks) n += b.dim;
  return n;
}

void ConicProgram::validate() const {
  auto check = [&](const HermEntry& e, const char* where) {
    if (e.block < 0 || e.block >= static_cast<int>(blocks.size()))
      throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": undeclared block");
    const int n = blocks[e.block].dim;
    if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n || e.row > e.col)
      throw Error(ErrorKind::DimensionMismatch,
                  std::string(where) + ": entry outside upper triangle of block " +
                      blocks[e.block].name);
    if (e.row == e.col && std::abs(e.value.imag()) > 1e-14 * (1.0 + std::abs(e.value)))
      throw Error(ErrorKind::NonHermitian, std::string(where) + ": complex diagonal entry");
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
      throw Error(ErrorKind::NonHermitian, std::string(where) + ": non-finite coefficient");
  };
  for (const auto& b : blocks)
    if (b.dim <= 0) throw Error(ErrorKind::DimensionMismatch, "block " + b.name + " has dim <= 0");
  for (const auto& eq : equalities) {
    for (const auto& e : eq.coeffs) check(e, "equality");
    if (!std::isfinite(eq.rhs)) throw Error(ErrorKind::Parse, "non-finite right-hand side");
  }
  for (const auto& e : objective) check(e, "objective");
}

void ConicProgram::dump(std::ostream& os) const {
  os << std::setprecision(17);
  os << "# blocks " << blocks.size() << " equalities " << equalities.size() << "\n";
  for (std::size_t b = 0; b < blocks.size(); ++b)
    os << "block " << b << " " << blocks[b].dim << " " << blocks[b].name << "\n";
  for (const auto& e : objective)
    os << "obj " << e.block << " " << e.row << " " << e.col << " " << e.value.real() << " "
       << e.value.imag() << "\n";
  for (std::size_t i = 0; i < equalities.size(); ++i) {
    os << "rhs " << i << " " << equalities[i].rhs << "\n";
    for (const auto& e : equalities[i].coeffs)
      os << "eq " << i << " " << e.block << " " << e.row << " " << e.col << " " << e.value.real()
         << " " << e.value.imag() << "\n";
  }
}

// ---------------------------------------------------------------------------
// realification

MatrixXd realify(const CMatrix& h) {
  const auto n = h.rows();
  MatrixXd r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = h.real();
  r.bottomRightCorner(n, n) = h.real();
  r.topRightCorner(n, n) = -h.imag();
  r.bottomLeftCorner(n, n) = h.imag();
  return r;
}

CMatrix derealify(const MatrixXd& r) {
  const auto n = r.rows() / 2;
  const MatrixXd p = 0.5 * (r.topLeftCorner(n, n) + r.bottomRightCorner(n, n));
  const MatrixXd q = 0.5 * (r.bottomLeftCorner(n, n) - r.topRightCorner(n, n));
  CMatrix h(n, n);
  h.real() = p;
  h.imag() = q;
  return h;
}

namespace {

void push_realified(const HermEntry& e, int n, double scale, std::vector<RealEntry>& out) {
  const double p = scale * e.value.real();
  const double q = scale * e.value.imag();
  const int r = e.row, c = e.col;
  if (p != 0.0) {
    out.push_back({e.block, r, c, p});
    out.push_back({e.block, r + n, c + n, p});
  }
  if (q != 0.0 && r != c) {
    // [[P,-Q],[Q,P]]: upper-triangle positions of -Q_rc and Q_cr = -q.
    out.push_back({e.block, r, c + n, -q});
    out.push_back({e.block, c, r + n, q});
  }
}

}  // namespace

RealProgram realify(const ConicProgram& program) {
  program.validate();
  RealProgram rp;
  for (const auto& b : program.blocks) {
    rp.dims.push_back(2 * b.dim);
    rp.objective.push_back(MatrixXd::Zero(2 * b.dim, 2 * b.dim));
  }
  for (const auto& e : program.objective) {
    const int n = program.blocks[e.block].dim;
    std::vector<RealEntry> tmp;
    push_realified(e, n, 0.5, tmp);
    for (const auto& t : tmp) {
      rp.objective[t.block](t.row, t.col) += t.value;
      if (t.row != t.col) rp.objective[t.block](t.col, t.row) += t.value;
    }
  }
  rp.rhs.resize(static_cast<Eigen::Index>(program.equalities.size()));
  for (std::size_t i = 0; i < program.equalities.size(); ++i) {
    std::vector<RealEntry> row;
    for (const auto& e : program.equalities[i].coeffs)
      push_realified(e, program.blocks[e.block].dim, 0.5, row);
    rp.constraints.push_back(std::move(row));
    rp.rhs(static_cast<Eigen::Index>(i)) = program.equalities[i].rhs;
  }
  return rp;
}

// ---------------------------------------------------------------------------
// interior-point kernel

namespace {

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

double fro(const Blocks& a) { return std::sqrt(inner(a, a)); }

Blocks zeros(const std::vector<int>& dims) {
  Blocks out;
  for (int d : dims) out.push_back(MatrixXd::Zero(d, d));
  return out;
}

Blocks identity(const std::vector<int>& dims, const std::vector<double>& scale) {
  Blocks out;
  for (std::size_t k = 0; k < dims.size(); ++k)
    out.push_back(scale[k] * MatrixXd::Identity(dims[k], dims[k]));
  return out;
}

void symmetrize(MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

// Largest alpha with I + alpha*p PSD (infinity if unbounded).
double scaled_step(MatrixXd& p) {
  symmetrize(p);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(p, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

struct Scaling {
  MatrixXd g;      // W = G G^T
  MatrixXd g_inv;  // G^{-1}
  MatrixXd w;
  RVector d;       // scaled point G^T Z G = G^{-1} X G^{-T} = diag(d)
};

class Kernel {
 public:
  // obj_unit is 1 in the caller's units, so the gap test matches the reported gap.
  Kernel(std::vector<int> dims, std::vector<std::vector<RealEntry>> rows, RVector b, Blocks c,
         double obj_unit)
      : dims_(std::move(dims)), rows_(std::move(rows)), b_(std::move(b)), c_(std::move(c)),
        obj_unit_(obj_unit) {
    build_incidence();
  }

  RealSolution run(const SolverOptions& opts);

  RVector apply_a(const Blocks& x) const {
    RVector out = RVector::Zero(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      double s = 0.0;
      for (const auto& e : rows_[i])
        s += e.value * x[e.block](e.row, e.col) * (e.row == e.col ? 1.0 : 2.0);
      out(static_cast<Eigen::Index>(i)) = s;
    }
    return out;
  }

  Blocks apply_at(const RVector& y) const {
    Blocks out = zeros(dims_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double yi = y(static_cast<Eigen::Index>(i));
      if (yi == 0.0) continue;
      for (const auto& e : rows_[i]) {
        out[e.block](e.row, e.col) += yi * e.value;
        if (e.row != e.col) out[e.block](e.col, e.row) += yi * e.value;
      }
    }
    return out;
  }

 private:
  struct Incidence {
    std::vector<int> var;
    std::vector<int> start;  // CSR offsets into r/c/w
    std::vector<int> r, c;
    std::vector<double> w;   // halved on the diagonal
  };

  void build_incidence() {
    inc_.assign(dims_.size(), {});
    std::vector<std::vector<std::vector<const RealEntry*>>> per(dims_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (const auto& e : rows_[i]) {
        auto& lists = per[e.block];
        if (lists.size() <= i) lists.resize(rows_.size());
        lists[i].push_back(&e);
      }
    }
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      auto& inc = inc_[b];
      inc.start.push_back(0);
      for (std::size_t i = 0; i < per[b].size(); ++i) {
        if (per[b][i].empty()) continue;
        inc.var.push_back(static_cast<int>(i));
        for (const RealEntry* e : per[b][i]) {
          inc.r.push_back(e->row);
          inc.c.push_back(e->col);
          inc.w.push_back(e->row == e->col ? 0.5 * e->value : e->value);
        }
        inc.start.push_back(static_cast<int>(inc.r.size()));
      }
    }
  }

  // M_ij = sum_b tr(A_i W_b A_j W_b)
  MatrixXd schur(const std::vector<Scaling>& sc) const {
    const auto m = static_cast<Eigen::Index>(rows_.size());
    MatrixXd out = MatrixXd::Zero(m, m);
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      const auto& inc = inc_[b];
      const MatrixXd& w = sc[b].w;
      const std::size_t nv = inc.var.size();
      for (std::size_t a = 0; a < nv; ++a) {
        const int ia = inc.var[a];
        for (std::size_t bb = a; bb < nv; ++bb) {
          const int ib = inc.var[bb];
          double s = 0.0;
          for (int e = inc.start[a]; e < inc.start[a + 1]; ++e) {
            const int r = inc.r[e], c = inc.c[e];
            const double we = inc.w[e];
            for (int f = inc.start[bb]; f < inc.start[bb + 1]; ++f) {
              const int p = inc.r[f], q = inc.c[f];
              s += we * inc.w[f] * (w(c, p) * w(q, r) + w(c, q) * w(p, r));
            }
          }
          out(ia, ib) += 2.0 * s;
        }
      }
    }
    return out.selfadjointView<Eigen::Upper>();
  }

 private:
  std::vector<int> dims_;
  std::vector<std::vector<RealEntry>> rows_;
  RVector b_;
  Blocks c_;
  double obj_unit_ = 1.0;
  std::vector<Incidence> inc_;
};

// NT scaling from Cholesky factors X = Lx Lx^T, Z = Lz Lz^T and the SVD
// Lz^T Lx = U S V^T: G = Lx V S^{-1/2}, G^{-1} = S^{-1/2} U^T Lz^T. Working
// with singular values of the factor product avoids squaring the condition
// number near the boundary.
bool nt_scaling(const MatrixXd& x, const MatrixXd& z, Scaling& out) {
  Eigen::LLT<MatrixXd> lx(x), lz(z);
  if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
  const MatrixXd Lx = lx.matrixL();
  const MatrixXd Lz = lz.matrixL();
  const MatrixXd prod = Lz.transpose() * Lx;
  MatrixXd u, v;
  RVector sv;
  if (prod.rows() <= 64) {
    Eigen::JacobiSVD<MatrixXd> svd(prod, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    v = svd.matrixV();
    sv = svd.singularValues();
  } else {
    Eigen::BDCSVD<MatrixXd> svd(prod, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    v = svd.matrixV();
    sv = svd.singularValues();
  }
  if (!(sv.minCoeff() > 0.0)) return false;
  const RVector isq = sv.array().rsqrt();
  out.g = Lx * v * isq.asDiagonal();
  out.g_inv = isq.asDiagonal() * u.transpose() * Lz.transpose();
  out.w = out.g * out.g.transpose();
  symmetrize(out.w);
  out.d = sv;
  return true;
}

RealSolution Kernel::run(const SolverOptions& opts) {
  const std::size_t nb = dims_.size();
  const auto m = static_cast<Eigen::Index>(rows_.size());
  int n_total = 0;
  for (int d : dims_) n_total += d;

  // Infeasible starting point.
  std::vector<double> xi(nb), eta(nb);
  std::vector<double> row_norm_blk(nb, 0.0);
  std::vector<double> max_a(nb, 0.0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::vector<double> nrm(nb, 0.0);
    for (const auto& e : rows_[i]) nrm[e.block] += e.value * e.value * (e.row == e.col ? 1.0 : 2.0);
    for (std::size_t k = 0; k < nb; ++k) {
      if (nrm[k] == 0.0) continue;
      const double f = std::sqrt(nrm[k]);
      max_a[k] = std::max(max_a[k], f);
      row_norm_blk[k] = std::max(row_norm_blk[k], (1.0 + std::abs(b_(static_cast<Eigen::Index>(i)))) / (1.0 + f));
    }
  }
  for (std::size_t k = 0; k < nb; ++k) {
    const double nk = dims_[k];
    xi[k] = std::max({10.0, std::sqrt(nk), nk * row_norm_blk[k]});
    eta[k] = std::max({10.0, std::sqrt(nk), max_a[k], c_[k].norm()});
  }
  Blocks x = identity(dims_, xi);
  Blocks z = identity(dims_, eta);
  RVector y = RVector::Zero(m);

  const double norm_b = b_.norm();
  const double norm_c = fro(c_);

  RealSolution best;
  double best_merit = std::numeric_limits<double>::infinity();
  auto record = [&](Status st, int it, double relp, double reld, double gap, double pobj,
                    double dobj) {
    best.status = st;
    best.x = x;
    best.y = y;
    best.z = z;
    best.primal_obj = pobj;
    best.dual_obj = dobj;
    best.primal_res = relp;
    best.dual_res = reld;
    best.gap = gap;
    best.iterations = it;
  };

  std::vector<Scaling> sc(nb);
  int stall = 0;
  // Set after a short step: the next corrector drops the second-order term
  // and centres harder, which recovers from iterates close to the boundary.
  bool recenter = false;
  for (int it = 0; it <= opts.max_iter; ++it) {
    const RVector rp = b_ - apply_a(x);
    Blocks at_y = apply_at(y);
    Blocks rd(nb);
    for (std::size_t k = 0; k < nb; ++k) rd[k] = c_[k] - z[k] - at_y[k];
    const double pobj = inner(c_, x);
    const double dobj = b_.dot(y);
    const double relp = rp.norm() / (1.0 + norm_b);
    const double reld = fro(rd) / (1.0 + norm_c);
    const double gap = std::abs(pobj - dobj) / (obj_unit_ + std::abs(pobj));
    const double mu = inner(x, z) / n_total;
    const double merit = std::max({relp, reld, gap});

    if (opts.verbose)
      std::cerr << "it " << it << " pobj " << pobj << " dobj " << dobj << " relp " << relp
                << " reld " << reld << " gap " << gap << " mu " << mu << "\n";

    if (merit < best_merit) {
      if (merit < 0.5 * best_merit) stall = 0;
      best_merit = merit;
      record(Status::MaxIter, it, relp, reld, gap, pobj, dobj);
    } else {
      ++stall;
    }
    if (relp <= opts.tol && reld <= opts.tol && gap <= opts.tol) {
      record(Status::Optimal, it, relp, reld, gap, pobj, dobj);
      return best;
    }
    // Farkas-type certificates on the current iterate.
    if (dobj > 0.0 && relp > opts.tol) {
      Blocks aty_z(nb);
      for (std::size_t k = 0; k < nb; ++k) aty_z[k] = at_y[k] + z[k];
      if (fro(aty_z) / dobj < opts.tol) {
        record(Status::Infeasible, it, relp, reld, gap, pobj, dobj);
        return best;
      }
    }
    if (pobj < 0.0 && reld > opts.tol) {
      if ((b_ - rp).norm() / -pobj < opts.tol) {
        record(Status::Unbounded, it, relp, reld, gap, pobj, dobj);
        return best;
      }
    }
    if (it == opts.max_iter) break;
    if (stall >= 15) {
      best.status = Status::NumericalFailure;
      return best;
    }

    for (std::size_t k = 0; k < nb; ++k) {
      if (!nt_scaling(x[k], z[k], sc[k])) {
        best.status = Status::NumericalFailure;
        return best;
      }
    }
    MatrixXd schur_m = schur(sc);
    Eigen::LLT<MatrixXd> chol(schur_m);
    if (chol.info() != Eigen::Success) {
      const double reg = 1e-10 * std::max(1.0, schur_m.diagonal().cwiseAbs().maxCoeff());
      schur_m.diagonal().array() += reg;
      chol.compute(schur_m);
      if (chol.info() != Eigen::Success) {
        best.status = Status::NumericalFailure;
        return best;
      }
    }

    // Solves  A(dX) = rp,  A^T dy + dZ = rd,  dX + W dZ W = rc.
    auto direction = [&](const Blocks& rc, Blocks& dx, RVector& dy, Blocks& dz) {
      Blocks tmp(nb);
      for (std::size_t k = 0; k < nb; ++k) tmp[k] = rc[k] - sc[k].w * rd[k] * sc[k].w;
      const RVector rhs = rp - apply_a(tmp);
      dy = chol.solve(rhs);
      // Iterative refinement against the assembled system while it helps.
      double res_norm = (rhs - schur_m * dy).norm();
      for (int pass = 0; pass < 4 && res_norm > 1e-15 * (1.0 + rhs.norm()); ++pass) {
        const RVector cand = dy + chol.solve(rhs - schur_m * dy);
        const double cand_norm = (rhs - schur_m * cand).norm();
        if (cand_norm >= 0.5 * res_norm) {
          if (cand_norm < res_norm) dy = cand;
          break;
        }
        dy = cand;
        res_norm = cand_norm;
      }
      const Blocks at_dy = apply_at(dy);
      dz.resize(nb);
      dx.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        dz[k] = rd[k] - at_dy[k];
        symmetrize(dz[k]);
        dx[k] = rc[k] - sc[k].w * dz[k] * sc[k].w;
        symmetrize(dx[k]);
      }
      // Primal-feasibility refinement in the W metric, which keeps
      // dX + W dZ W = rc intact.
      for (int pass = 0; pass < 2; ++pass) {
        const RVector res = rp - apply_a(dx);
        if (res.norm() <= 1e-14 * (1.0 + rp.norm())) break;
        const RVector u = chol.solve(res);
        const Blocks at_u = apply_at(u);
        dy += u;
        for (std::size_t k = 0; k < nb; ++k) {
          dz[k] -= at_u[k];
          dx[k] += sc[k].w * at_u[k] * sc[k].w;
          symmetrize(dz[k]);
          symmetrize(dx[k]);
        }
      }
    };

    // Step lengths measured in the NT-scaled space, where both iterates are
    // diag(d); this stays well defined after x or z lose numerical rank.
    auto steps = [&](const Blocks& dx, const Blocks& dz, double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < nb; ++k) {
        const Scaling& s = sc[k];
        const RVector isd = s.d.array().rsqrt();
        MatrixXd px = isd.asDiagonal() * (s.g_inv * dx[k] * s.g_inv.transpose()) * isd.asDiagonal();
        MatrixXd pz = isd.asDiagonal() * (s.g.transpose() * dz[k] * s.g) * isd.asDiagonal();
        ap = std::min(ap, scaled_step(px));
        ad = std::min(ad, scaled_step(pz));
      }
    };

    // Predictor.
    Blocks rc(nb);
    for (std::size_t k = 0; k < nb; ++k) rc[k] = -x[k];
    Blocks dx_a, dz_a;
    RVector dy_a;
    direction(rc, dx_a, dy_a, dz_a);
    double ap = 0.0, ad = 0.0;
    steps(dx_a, dz_a, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k)
      mu_aff += ((x[k] + ap * dx_a[k]).array() * (z[k] + ad * dz_a[k]).array()).sum();
    mu_aff /= n_total;
    const double ratio = std::max(0.0, mu_aff / mu);
    const double expo = std::min(ap, ad) > 0.3 ? 3.0 : 2.0;
    const double sigma = recenter ? std::max(0.5, std::min(1.0, std::pow(ratio, expo)))
                                  : std::min(1.0, std::pow(ratio, expo));

    // Corrector with the second-order term in the NT-scaled space.
    for (std::size_t k = 0; k < nb; ++k) {
      const Scaling& s = sc[k];
      const MatrixXd dxs = s.g_inv * dx_a[k] * s.g_inv.transpose();
      const MatrixXd dzs = s.g.transpose() * dz_a[k] * s.g;
      MatrixXd r = recenter ? MatrixXd(MatrixXd::Zero(dxs.rows(), dxs.cols()))
                            : MatrixXd(-(dxs * dzs + dzs * dxs));
      r.diagonal().array() += 2.0 * sigma * mu - 2.0 * s.d.array().square();
      const auto n = r.rows();
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) r(i, j) /= (s.d(i) + s.d(j));
      rc[k] = s.g * r * s.g.transpose();
      symmetrize(rc[k]);
    }
    Blocks dx, dz;
    RVector dy;
    direction(rc, dx, dy, dz);
    steps(dx, dz, ap, ad);
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    if (opts.verbose) std::cerr << "   sigma " << sigma << " ap " << ap << " ad " << ad << "\n";
    recenter = std::min(ap, ad) < 0.1;
    if (ap < 1e-12 && ad < 1e-12) {
      best.status = Status::NumericalFailure;
      return best;
    }
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] += ap * dx[k];
      z[k] += ad * dz[k];
      symmetrize(x[k]);
      symmetrize(z[k]);
    }
    y += ad * dy;
  }
  if (best.status != Status::Optimal) best.status = Status::MaxIter;
  return best;
}

}  // namespace

RealSolution solve_real(const RealProgram& program, const SolverOptions& opts) {
  const std::size_t nb = program.dims.size();
  int total = 0;
  for (int d : program.dims) total += d;
  if (total > opts.size_budget) {
    std::ostringstream os;
    os << "realified dimension " << total << " exceeds size budget " << opts.size_budget;
    throw Error(ErrorKind::SizeBudget, os.str());
  }
  const auto m_all = static_cast<Eigen::Index>(program.constraints.size());

  // Presolve: drop all-zero rows; a zero row with nonzero rhs is infeasible.
  std::vector<int> keep;
  bool trivially_infeasible = false;
  for (Eigen::Index i = 0; i < m_all; ++i) {
    bool nonzero = false;
    for (const auto& e : program.constraints[i]) nonzero = nonzero || e.value != 0.0;
    if (nonzero) {
      keep.push_back(static_cast<int>(i));
    } else if (std::abs(program.rhs(i)) > 0.0) {
      trivially_infeasible = true;
    }
  }

  // Row normalisation followed by global scaling of b and C.
  std::vector<std::vector<RealEntry>> rows;
  RVector b(static_cast<Eigen::Index>(keep.size()));
  RVector row_scale(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    auto row = program.constraints[keep[k]];
    double nrm = 0.0;
    for (const auto& e : row) nrm += e.value * e.value * (e.row == e.col ? 1.0 : 2.0);
    nrm = std::sqrt(nrm);
    for (auto& e : row) e.value /= nrm;
    rows.push_back(std::move(row));
    b(static_cast<Eigen::Index>(k)) = program.rhs(keep[k]) / nrm;
    row_scale(static_cast<Eigen::Index>(k)) = nrm;
  }
  const double bs = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
  double cmax = 0.0;
  for (const auto& c : program.objective) cmax = std::max(cmax, c.size() ? c.cwiseAbs().maxCoeff() : 0.0);
  const double cs = std::max(1.0, cmax);
  Blocks c;
  for (const auto& cb : program.objective) c.push_back(cb / cs);

  RealSolution sol;
  if (trivially_infeasible) {
    sol.status = Status::Infeasible;
    sol.x = zeros(program.dims);
    sol.z = zeros(program.dims);
    sol.y = RVector::Zero(m_all);
    return sol;
  }
  Kernel kernel(program.dims, rows, b / bs, c, 1.0 / (bs * cs));
  RealSolution scaled = kernel.run(opts);

  sol.status = scaled.status;
  sol.iterations = scaled.iterations;
  for (std::size_t k = 0; k < nb; ++k) {
    sol.x.push_back(bs * scaled.x[k]);
    sol.z.push_back(cs * scaled.z[k]);
  }
  sol.y = RVector::Zero(m_all);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    sol.y(keep[k]) = cs * scaled.y(kk) / row_scale(kk);
  }

  // Residuals on the original data.
  RVector ax = RVector::Zero(m_all);
  for (Eigen::Index i = 0; i < m_all; ++i)
    for (const auto& e : program.constraints[i])
      ax(i) += e.value * sol.x[e.block](e.row, e.col) * (e.row == e.col ? 1.0 : 2.0);
  Blocks rd = program.objective;
  for (Eigen::Index i = 0; i < m_all; ++i)
    for (const auto& e : program.constraints[i]) {
      rd[e.block](e.row, e.col) -= sol.y(i) * e.value;
      if (e.row != e.col) rd[e.block](e.col, e.row) -= sol.y(i) * e.value;
    }
  for (std::size_t k = 0; k < nb; ++k) rd[k] -= sol.z[k];
  sol.primal_obj = inner(program.objective, sol.x);
  sol.dual_obj = program.rhs.dot(sol.y);
  sol.primal_res = (program.rhs - ax).norm() / (1.0 + program.rhs.norm());
  sol.dual_res = fro(rd) / (1.0 + fro(program.objective));
  sol.gap = std::abs(sol.primal_obj - sol.dual_obj) / (1.0 + std::abs(sol.primal_obj));
  return sol;
}

ConicSolution solve(const ConicProgram& program, const SolverOptions& opts) {
  const RealProgram rp = realify(program);
  const RealSolution rs = solve_real(rp, opts);
  ConicSolution out;
  out.status = rs.status;
  out.iterations = rs.iterations;
  out.dual = rs.y;
  out.primal_obj = rs.primal_obj;
  out.dual_obj = rs.dual_obj;
  out.primal_res = rs.primal_res;
  out.dual_res = rs.dual_res;
  out.gap = rs.gap;
  for (std::size_t k = 0; k < program.blocks.size(); ++k) {
    out.primal_blocks.push_back(derealify(rs.x[k]));
    // Z_real = realify(Z)/2
    out.dual_slack.push_back(2.0 * derealify(rs.z[k]));
  }
  for (std::size_t i = 0; i < program.equalities.size(); ++i) {
    bool nonzero = false;
    for (const auto& e : program.equalities[i].coeffs) nonzero = nonzero || std::abs(e.value) != 0.0;
    if (!nonzero) ++out.dropped_rows;
  }
  return out;
}

}  // namespace renyi::sdp
