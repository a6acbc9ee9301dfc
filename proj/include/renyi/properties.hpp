#pragma once

// Randomized property checks shared by the unit tests, the selftest command
// and the acceptance binary.
// Each check returns the worst violation over its instances; a check passes
// when worst <= tol.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "renyi/channel_div.hpp"
#include "renyi/random.hpp"

namespace renyi::props {

struct Check {
  std::string name;
  int instances = 0;
  double worst = 0.0;
  double tol = 0.0;
  bool pass() const { return worst <= tol; }
};

// Counts re-verified witnesses across every D# solve made by the checks.
struct WitnessTally {
  int solves = 0;
  int failed = 0;
  void add(bool ok) {
    ++solves;
    if (!ok) ++failed;
  }
};

inline HermitianOperator mixed_density(int n, random::Rng& rng, int rank = 0) {
  return random::density(n, rng, rank);
}

// Random CPTP map mixed with the completely depolarizing channel, so J^M stays
// well conditioned; near-singular J^M at large alpha puts Q beyond double range.
inline QChannel reference_channel(int dx, int dy, random::Rng& rng) {
  const auto m = random::channel(dx, dy, dx * dy, rng);
  const int n = dx * dy;
  const CMatrix j = 0.9 * m.choi().matrix() + (0.1 / dy) * CMatrix::Identity(n, n);
  return QChannel::from_choi(HermitianOperator(j), dx, dy);
}

inline HermitianOperator direct_sum(const HermitianOperator& a, const HermitianOperator& b) {
  const auto n = a.dim(), m = b.dim();
  CMatrix out = CMatrix::Zero(n + m, n + m);
  out.topLeftCorner(n, n) = a.matrix();
  out.bottomRightCorner(m, m) = b.matrix();
  return HermitianOperator(out);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); }

inline DivergenceResult sharp(const HermitianOperator& r, const HermitianOperator& s, double a,
                              WitnessTally& w) {
  SharpOptions o;
  o.both_brackets = false;
  auto res = d_sharp_state(r, s, a, o);
  if (std::isfinite(res.value_D)) w.add(res.witness_ok);
  return res;
}

inline ChannelDivResult sharp(const QChannel& n, const QChannel& m, double a, WitnessTally& w) {
  SharpOptions o;
  o.both_brackets = false;
  auto res = d_sharp_channel(n, m, a, o);
  if (std::isfinite(res.value_D)) w.add(res.witness_ok);
  return res;
}

inline double pick_alpha(random::Rng& rng) {
  static const double grid[] = {1.25, 1.5, 2.0, 3.0};
  return grid[std::uniform_int_distribution<int>(0, 3)(rng)];
}

// D~ <= D# <= D^ at the order actually solved.
inline Check ordering(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  Check c{"ordering D~ <= D# <= D^", count, 0.0, 2e-3};
  for (int i = 0; i < count; ++i) {
    const int n = 2 + i % 2;
    const auto r = mixed_density(n, rng, i % 3 == 0 ? 1 : 0);
    const auto s = mixed_density(n, rng);
    const auto res = sharp(r, s, pick_alpha(rng), w);
    const double ae = res.alpha_eff;
    c.worst = std::max({c.worst, d_sandwiched(r, s, ae) - res.value_D,
                        res.value_D - d_geometric(r, s, ae)});
  }
  return c;
}

inline Check data_processing(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  Check c{"data processing under CPTP maps", count, 0.0, 2e-3};
  for (int i = 0; i < count; ++i) {
    const int n = 2 + i % 2;
    const auto r = mixed_density(n, rng);
    const auto s = mixed_density(n, rng);
    const auto phi = random::channel(n, 2, 2, rng);
    const double a = pick_alpha(rng);
    const HermitianOperator pr(phi.apply(r.matrix()), 1e-9);
    const HermitianOperator ps(phi.apply(s.matrix()), 1e-9);
    c.worst = std::max(c.worst, sharp(pr, ps, a, w).value_D - sharp(r, s, a, w).value_D);
  }
  return c;
}

inline Check state_subadditivity(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  Check c{"tensor subadditivity (states)", count, 0.0, 2e-3};
  for (int i = 0; i < count; ++i) {
    const auto r1 = mixed_density(2, rng), s1 = mixed_density(2, rng);
    const auto r2 = mixed_density(2, rng), s2 = mixed_density(2, rng);
    const double a = pick_alpha(rng);
    const double joint = sharp(kron(r1, r2), kron(s1, s2), a, w).value_D;
    c.worst = std::max(c.worst, joint - sharp(r1, s1, a, w).value_D - sharp(r2, s2, a, w).value_D);
  }
  return c;
}

inline Check channel_subadditivity(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  Check c{"tensor subadditivity (channels)", count, 0.0, 2e-3};
  for (int i = 0; i < count; ++i) {
    const auto n1 = random::channel(2, 2, 2, rng), m1 = reference_channel(2, 2, rng);
    const auto n2 = random::channel(2, 2, 2, rng), m2 = reference_channel(2, 2, rng);
    // Exact dyadic orders keep the 16-dimensional towers short.
    const double a = i % 2 ? 2.0 : 4.0;
    const double joint = sharp(tensor_product(n1, n2), tensor_product(m1, m2), a, w).value_D;
    c.worst = std::max(c.worst, joint - sharp(n1, m1, a, w).value_D - sharp(n2, m2, a, w).value_D);
  }
  return c;
}

// D#(N(rho) || M(sigma)) <= D#(N || M) + D#(rho || sigma) with a qubit reference.
inline Check chain_rule(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  Check c{"chain rule", count, 0.0, 2e-3};
  for (int i = 0; i < count; ++i) {
    const auto n = random::channel(2, 2, 2, rng), m = reference_channel(2, 2, rng);
    const auto r = mixed_density(4, rng), s = mixed_density(4, rng);
    const double a = i % 2 ? 2.0 : 1.5;
    const HermitianOperator on(n.apply_with_reference(r.matrix(), 2), 1e-9);
    const HermitianOperator om(m.apply_with_reference(s.matrix(), 2), 1e-9);
    const double lhs = sharp(on, om, a, w).value_D;
    c.worst = std::max(c.worst, lhs - sharp(n, m, a, w).value_D - sharp(r, s, a, w).value_D);
  }
  return c;
}

inline Check isometric_invariance(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  Check c{"isometric invariance of Q#", count, 0.0, 1e-4};
  for (int i = 0; i < count; ++i) {
    const int n = 2 + i % 2;
    const auto r = mixed_density(n, rng), s = mixed_density(n, rng);
    const CMatrix v = random::isometry(n + 1, n, rng);
    const double a = pick_alpha(rng);
    const double q = sharp(r, s, a, w).value_Q;
    const double qv = sharp(r.congruence(v), s.congruence(v), a, w).value_Q;
    c.worst = std::max(c.worst, rel(qv, q));
  }
  return c;
}

inline Check homogeneity(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  std::uniform_real_distribution<double> lam(0.2, 5.0);
  Check c{"positive homogeneity of Q#", count, 0.0, 1e-4};
  for (int i = 0; i < count; ++i) {
    const auto r = mixed_density(2 + i % 2, rng), s = mixed_density(2 + i % 2, rng);
    const double a = pick_alpha(rng), l = lam(rng);
    const double q = sharp(r, s, a, w).value_Q;
    c.worst = std::max(c.worst, rel(sharp(r * l, s * l, a, w).value_Q, l * q));
  }
  return c;
}

inline Check block_additivity(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  std::uniform_real_distribution<double> wt(0.2, 1.0);
  Check c{"block additivity of Q#", count, 0.0, 1e-4};
  for (int i = 0; i < count; ++i) {
    const auto r1 = random::psd(2, rng) * wt(rng), s1 = random::psd(2, rng) * wt(rng);
    const auto r2 = random::psd(2, rng) * wt(rng), s2 = random::psd(2, rng) * wt(rng);
    const double a = pick_alpha(rng);
    const double q = sharp(direct_sum(r1, r2), direct_sum(s1, s2), a, w).value_Q;
    c.worst = std::max(c.worst, rel(q, sharp(r1, s1, a, w).value_Q + sharp(r2, s2, a, w).value_Q));
  }
  return c;
}

// Q#(sum_x p(x)|x><x| (x) rho_x || sum_x p(x)|x><x| (x) sigma_x) = sum_x p(x) Q#(rho_x || sigma_x).
inline Check cq_direct_sum(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  Check c{"cq direct sum", count, 0.0, 1e-4};
  for (int i = 0; i < count; ++i) {
    const double p = u(rng);
    const auto r0 = mixed_density(2, rng), s0 = mixed_density(2, rng);
    const auto r1 = mixed_density(2, rng), s1 = mixed_density(2, rng);
    const double a = pick_alpha(rng);
    const double q = sharp(direct_sum(r0 * p, r1 * (1 - p)), direct_sum(s0 * p, s1 * (1 - p)), a, w).value_Q;
    const double expect = p * sharp(r0, s0, a, w).value_Q + (1 - p) * sharp(r1, s1, a, w).value_Q;
    c.worst = std::max(c.worst, rel(q, expect));
  }
  return c;
}

// At alpha = 64: D~ <= D# <= D_max + log2(tr rho)/(alpha - 1).
inline Check large_alpha_envelope(int count, std::uint64_t seed, WitnessTally& w) {
  random::Rng rng(seed);
  Check c{"alpha=64 envelope", count, 0.0, 2e-3};
  for (int i = 0; i < count; ++i) {
    const auto r = mixed_density(2, rng), s = mixed_density(2, rng);
    const double d = sharp(r, s, 64.0, w).value_D;
    const double upper = d_max(r, s) + std::log2(trace(r)) / 63.0;
    c.worst = std::max({c.worst, d_sandwiched(r, s, 64.0) - d, d - upper});
  }
  return c;
}

// Transformer, tensor, homogeneity, joint concavity and CP monotonicity of #_beta.
inline Check mean_identities(int count, std::uint64_t seed) {
  random::Rng rng(seed);
  std::uniform_real_distribution<double> bw(0.05, 0.95);
  Check c{"mean identities", count, 0.0, 1e-8};
  auto dist = [](const HermitianOperator& x, const HermitianOperator& y) {
    return (x.matrix() - y.matrix()).norm() / (1.0 + x.matrix().norm());
  };
  for (int i = 0; i < count; ++i) {
    const double beta = bw(rng);
    const auto a = random::psd(3, rng), b = random::psd(3, rng);
    const auto m = mean_eval(a, b, beta);
    const CMatrix g = random::ginibre(3, 3, rng);
    c.worst = std::max(c.worst, dist(mean_eval(a.congruence(g), b.congruence(g), beta), m.congruence(g)));
    const auto a2 = random::psd(2, rng), b2 = random::psd(2, rng);
    c.worst = std::max(c.worst, dist(mean_eval(kron(a, a2), kron(b, b2), beta),
                                     kron(m, mean_eval(a2, b2, beta))));
    c.worst = std::max(c.worst, dist(mean_eval(a * 0.7, b * 2.5, beta),
                                     m * (std::pow(0.7, 1 - beta) * std::pow(2.5, beta))));
    const auto cc = random::psd(3, rng), dd = random::psd(3, rng);
    const auto mid = mean_eval((a + cc) * 0.5, (b + dd) * 0.5, beta);
    c.worst = std::max(c.worst, -min_eigenvalue(mid - (m + mean_eval(cc, dd, beta)) * 0.5));
    const auto phi = random::cp_map(3, 2, 2, rng);
    auto ap = [&](const HermitianOperator& x) { return HermitianOperator(phi.apply(x.matrix()), 1e-9); };
    c.worst = std::max(c.worst, -min_eigenvalue(mean_eval(ap(a), ap(b), beta) - ap(m)));
  }
  return c;
}

// rho <= |spec(sigma)| P_sigma(rho), including degenerate sigma.
inline Check pinching_inequality(int count, std::uint64_t seed) {
  random::Rng rng(seed);
  Check c{"pinching inequality", count, 0.0, 1e-9};
  for (int i = 0; i < count; ++i) {
    const int n = 2 + i % 3;
    const auto r = mixed_density(n, rng);
    HermitianOperator s = mixed_density(n, rng);
    if (i % 2) {
      // Two-level spectrum in a random basis.
      RVector d = RVector::Constant(n, 1.0);
      d(0) = 2.0;
      s = HermitianOperator::diagonal(d).congruence(random::unitary(n, rng));
    }
    const double k = spec_count(s);
    c.worst = std::max(c.worst, -min_eigenvalue(pinch(r, s) * k - r));
  }
  return c;
}

}  // namespace renyi::props
