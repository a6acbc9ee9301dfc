#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyi/hermitian.hpp"
#include "renyi/random.hpp"

using namespace renyi;

namespace {

HermitianOperator diag(std::initializer_list<double> v) {
  RVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return HermitianOperator::diagonal(d);
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("construction symmetrizes and rejects non-Hermitian input") {
  CMatrix m(2, 2);
  m << 1.0, Complex(0.0, 1e-14), Complex(0.0, 0.0), 2.0;
  const HermitianOperator h(m);
  CHECK(max_abs(h.matrix() - h.matrix().adjoint()) == 0.0);
  m(0, 1) = 1.0;
  try {
    HermitianOperator bad(m);
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
  }
  CHECK_THROWS_AS(HermitianOperator(CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("eig examples") {
  const auto sd = eig(diag({1, 2}));
  CHECK(sd.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sd.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(max_abs(sd.eigenvectors.cwiseAbs().cast<Complex>() - CMatrix::Identity(2, 2)) < 1e-14);

  CMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const auto sx = eig(HermitianOperator(x));
  CHECK(sx.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(1.0));

  random::Rng rng(1);
  const auto h = random::hermitian(6, rng);
  const auto s = eig(h);
  for (int i = 0; i + 1 < 6; ++i) CHECK(s.eigenvalues(i) <= s.eigenvalues(i + 1));
  const CMatrix rec = s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
  CHECK(max_abs(rec - h.matrix()) <= 1e-10 * (1 + op_norm(h)));
  CHECK(max_abs(s.eigenvectors.adjoint() * s.eigenvectors - CMatrix::Identity(6, 6)) < 1e-10);
}

TEST_CASE("matrix_power examples") {
  CHECK(max_abs(matrix_power(diag({4, 9}), 0.5).matrix() - diag({2, 3}).matrix()) < 1e-14);
  CHECK(max_abs(matrix_power(diag({2, 0}), -1.0).matrix() - diag({0.5, 0}).matrix()) < 1e-14);
  CHECK(max_abs(matrix_power(diag({2, 0}), 0.0).matrix() - diag({1, 0}).matrix()) < 1e-14);

  random::Rng rng(2);
  const auto p = random::psd(4, rng);
  const auto r = matrix_power(p, 1.0 / 3.0);
  const CMatrix cube = r.matrix() * r.matrix() * r.matrix();
  CHECK(max_abs(cube - p.matrix()) < 1e-9 * (1 + op_norm(p)));

  CHECK_THROWS_AS(matrix_power(diag({1, -1}), 0.5), Error);
}

TEST_CASE("matrix_power composes on the support") {
  random::Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = random::psd(4, rng, 2 + trial % 3);
    for (auto [p, q] : {std::pair{0.5, 2.0}, std::pair{-1.0, 0.5}, std::pair{1.5, -0.7}}) {
      const auto lhs = matrix_power(matrix_power(h, p), q);
      const auto rhs = matrix_power(h, p * q);
      CHECK(max_abs(lhs.matrix() - rhs.matrix()) < 1e-9 * (1 + op_norm(rhs)));
    }
  }
}

TEST_CASE("norms, traces, kron") {
  CHECK(op_norm(diag({-3, 2})) == doctest::Approx(3.0));
  CHECK(max_abs(kron(diag({1, 2}), diag({3, 4})).matrix() - diag({3, 4, 6, 8}).matrix()) < 1e-15);
  random::Rng rng(4);
  const auto a = random::hermitian(2, rng), b = random::hermitian(3, rng), c = random::hermitian(2, rng);
  CHECK(max_abs(kron(kron(a, b), c).matrix() - kron(a, kron(b, c)).matrix()) < 1e-12);
  CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) < 1e-10);
}

TEST_CASE("support projector and subset check") {
  CHECK(max_abs(support_projector(diag({1, 1e-14, 0})).matrix() - diag({1, 0, 0}).matrix()) < 1e-14);
  CHECK(subset_check(diag({1, 0}), diag({2, 3})));
  CHECK_FALSE(subset_check(diag({0, 1}), diag({1, 0})));
  CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK_FALSE(subset_check(HermitianOperator::outer(plus), diag({1, 0})));
  random::Rng rng(5);
  for (int r = 1; r <= 4; ++r) {
    const auto a = random::psd(4, rng, r);
    CHECK(subset_check(a, a));
    CHECK(support_basis(a).cols() == r);
  }
}
