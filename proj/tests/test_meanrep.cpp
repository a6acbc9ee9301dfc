#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyi/meanrep.hpp"
#include "renyi/random.hpp"
#include "renyi/sdp.hpp"

using namespace renyi;

namespace {

double dist(const HermitianOperator& a, const HermitianOperator& b) {
  return (a.matrix() - b.matrix()).norm();
}

// max tr(T) s.t. T <= A #_beta B, solved through the dyadic tower.
struct TowerResult {
  double value;
  HermitianOperator t;
};

TowerResult solve_tower(const HermitianOperator& a, const HermitianOperator& b, DyadicWeight w) {
  sdp::Model model;
  const auto t = model.add_hermitian(static_cast<int>(a.dim()));
  build_mean_constraint(model, sdp::AffineHerm::constant(a.matrix()),
                        sdp::AffineHerm::constant(b.matrix()), t, w);
  model.minimize_trace(t, -1.0);
  const auto sol = sdp::solve(model.program());
  REQUIRE(sol.status == sdp::Status::Optimal);
  return {-model.objective_value(sol.dual), HermitianOperator(t.value(sol.dual), 1e-6)};
}

}  // namespace

TEST_CASE("dyadic weights reduce to lowest terms") {
  const DyadicWeight w(4, 3);
  CHECK(w.numerator() == 1);
  CHECK(w.level() == 1);
  CHECK(w.value() == 0.5);
  CHECK(DyadicWeight(0, 5) == DyadicWeight(0, 0));
  CHECK(DyadicWeight(8, 3) == DyadicWeight(1, 0));
  CHECK_THROWS_AS(DyadicWeight(9, 3), Error);
  CHECK(DyadicWeight::from_double(0.375) == DyadicWeight(3, 3));
  CHECK_THROWS_AS(DyadicWeight::from_double(1.0 / 3.0), Error);
}

TEST_CASE("dyadic_approx brackets the weight") {
  const auto [lo, hi] = dyadic_approx(2.0 / 3.0, 8);
  CHECK(lo == DyadicWeight(170, 8));
  CHECK(hi == DyadicWeight(171, 8));
  CHECK(lo.value() <= 2.0 / 3.0);
  CHECK(hi.value() >= 2.0 / 3.0);
  const auto [l2, h2] = dyadic_approx(0.25, 8);
  CHECK(l2 == h2);
  CHECK(l2 == DyadicWeight(1, 2));
  CHECK_THROWS_AS(dyadic_approx(1.5, 4), Error);
}

TEST_CASE("mean with identity is a matrix power") {
  random::Rng rng(1);
  const auto b = random::psd(4, rng);
  for (double beta : {0.0, 0.3, 0.5, 1.0}) {
    const auto m = mean_eval(HermitianOperator::identity(4), b, beta);
    CHECK(dist(m, matrix_power(b, beta)) < 1e-10);
  }
}

TEST_CASE("commuting arguments give entrywise weighted geometric means") {
  RVector a(3), b(3), expect(3);
  a << 0.2, 1.5, 3.0;
  b << 2.0, 0.1, 3.0;
  const double beta = 0.3;
  for (int i = 0; i < 3; ++i) expect(i) = std::pow(a(i), 1 - beta) * std::pow(b(i), beta);
  const auto m = mean_eval(HermitianOperator::diagonal(a), HermitianOperator::diagonal(b), beta);
  CHECK(dist(m, HermitianOperator::diagonal(expect)) < 1e-12);
}

TEST_CASE("mean identities") {
  random::Rng rng(2);
  const auto a = random::psd(3, rng);
  const auto b = random::psd(3, rng);
  // A #_s (A #_t B) = A #_{st} B
  const auto nested = mean_eval(a, mean_eval(a, b, 0.6), 0.5);
  CHECK(dist(nested, mean_eval(a, b, 0.3)) < 1e-9);
  // A #_t B = B #_{1-t} A
  CHECK(dist(mean_eval(a, b, 0.35), mean_eval(b, a, 0.65)) < 1e-9);
  // Symmetric mean: (A # B) A^{-1} (A # B) = B
  const auto g = mean_eval(a, b, 0.5);
  const CMatrix back = g.matrix() * a.matrix().inverse() * g.matrix();
  CHECK((back - b.matrix()).norm() < 1e-9);
}

TEST_CASE("support handling") {
  RVector d(2);
  d << 1.0, 0.0;
  const auto a = HermitianOperator::diagonal(d);
  RVector e(2);
  e << 4.0, 0.0;
  const auto ok = mean_eval(a, HermitianOperator::diagonal(e), 0.5);
  CHECK(std::abs(ok(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(ok(1, 1)) < 1e-12);
  CHECK_THROWS_AS(mean_eval(a, HermitianOperator::identity(2), 0.5), Error);
  try {
    mean_eval(a, HermitianOperator::identity(2), 0.5);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::SupportViolation);
  }
}

TEST_CASE("regularized mean") {
  const auto zero = HermitianOperator::zero(2);
  const auto id = HermitianOperator::identity(2);
  const auto m = mean_eval_regularized(zero, id, 0.5, 1e-4);
  CHECK(dist(m, id * 1e-2) < 1e-12);
  // Monotone in eps.
  random::Rng rng(3);
  const auto a = random::psd(3, rng, 1);
  const auto b = random::psd(3, rng);
  const auto m1 = mean_eval_regularized(a, b, 0.5, 1e-6);
  const auto m2 = mean_eval_regularized(a, b, 0.5, 1e-3);
  CHECK(min_eigenvalue(m2 - m1) >= -1e-10);
  CHECK_THROWS_AS(mean_eval_regularized(a, b, 0.5, 0.0), Error);
}

TEST_CASE("mean properties on random inputs") {
  random::Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const double beta = 0.1 + 0.08 * trial;
    const auto a = random::psd(3, rng);
    const auto b = random::psd(3, rng);
    const auto m = mean_eval(a, b, beta);

    // Transformer equality for invertible M.
    const CMatrix mm = random::ginibre(3, 3, rng);
    const auto lhs = mean_eval(a.congruence(mm), b.congruence(mm), beta);
    CHECK(dist(lhs, m.congruence(mm)) < 1e-8 * (1 + op_norm(lhs)));

    // Tensor multiplicativity.
    const auto a2 = random::psd(2, rng);
    const auto b2 = random::psd(2, rng);
    const auto tensor = mean_eval(kron(a, a2), kron(b, b2), beta);
    CHECK(dist(tensor, kron(m, mean_eval(a2, b2, beta))) < 1e-8 * (1 + op_norm(tensor)));

    // Homogeneity.
    const double s = 0.7, t = 2.5;
    const auto scaled = mean_eval(a * s, b * t, beta);
    CHECK(dist(scaled, m * (std::pow(s, 1 - beta) * std::pow(t, beta))) < 1e-8 * (1 + op_norm(m)));

    // Joint concavity.
    const auto c = random::psd(3, rng);
    const auto d = random::psd(3, rng);
    const auto mid = mean_eval((a + c) * 0.5, (b + d) * 0.5, beta);
    const auto avg = (m + mean_eval(c, d, beta)) * 0.5;
    CHECK(min_eigenvalue(mid - avg) >= -1e-8);

    // Monotonicity under a positive map: Phi(A # B) <= Phi(A) # Phi(B).
    const auto phi = random::cp_map(3, 2, 2, rng);
    auto apply = [&](const HermitianOperator& x) { return HermitianOperator(phi.apply(x.matrix()), 1e-9); };
    const auto pm = mean_eval(apply(a), apply(b), beta);
    CHECK(min_eigenvalue(pm - apply(m)) >= -1e-8);
  }
}

TEST_CASE("tower is exact for beta = 1/2 and 1/4") {
  RVector a(3), b(3);
  a << 0.3, 1.2, 2.0;
  b << 1.0, 0.4, 0.05;
  const auto ha = HermitianOperator::diagonal(a);
  const auto hb = HermitianOperator::diagonal(b);
  double half = 0.0, quarter = 0.0;
  for (int i = 0; i < 3; ++i) {
    half += std::sqrt(a(i) * b(i));
    quarter += std::pow(a(i), 0.75) * std::pow(b(i), 0.25);
  }
  const auto r_half = solve_tower(ha, hb, DyadicWeight(1, 1));
  CHECK(std::abs(r_half.value - half) < 1e-6);
  const auto r_quarter = solve_tower(ha, hb, DyadicWeight(1, 2));
  CHECK(std::abs(r_quarter.value - quarter) < 1e-6);
}

TEST_CASE("tower recovers the mean on random complex inputs") {
  random::Rng rng(6);
  for (const auto& w : {DyadicWeight(3, 3), DyadicWeight(5, 4), DyadicWeight(0, 0), DyadicWeight(1, 0)}) {
    const auto a = random::psd(3, rng);
    const auto b = random::psd(3, rng);
    const auto m = mean_eval(a, b, w.value());
    const auto r = solve_tower(a, b, w);
    CHECK(std::abs(r.value - trace(m)) < 1e-6 * (1 + trace(m)));
    // max tr T over T <= M is attained only at T = M.
    CHECK(dist(r.t, m) < 1e-4 * (1 + op_norm(m)));
  }
}

TEST_CASE("tower block count matches the number of digits") {
  sdp::Model model;
  const auto a = sdp::AffineHerm::constant(CMatrix::Identity(2, 2));
  const auto t = model.add_hermitian(2);
  const auto blk = build_mean_constraint(model, a, a, t, DyadicWeight(5, 4), "m");
  CHECK(blk.level == 4);
  CHECK(blk.block_ids.size() == 5);
  CHECK(blk.auxiliaries.size() == 4);
  CHECK(model.block_name(blk.block_ids[1]) == "m:digit1");
  CHECK_THROWS_AS(build_mean_constraint(model, a, sdp::AffineHerm::constant(CMatrix::Identity(3, 3)), t,
                                        DyadicWeight(1, 1)),
                  Error);
}
