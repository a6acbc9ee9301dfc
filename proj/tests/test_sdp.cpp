#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "renyi/lmi.hpp"
#include "renyi/random.hpp"
#include "renyi/sdp.hpp"

using namespace renyi;
using namespace renyi::sdp;

namespace {

double min_eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Certificate check independent of the solver's own bookkeeping.
void verify_kkt(const ConicProgram& prog, const ConicSolution& sol, double tol) {
  for (const auto& x : sol.primal_blocks) CHECK(min_eig(x) >= -10 * tol);
  for (const auto& z : sol.dual_slack) CHECK(min_eig(z) >= -10 * tol * (1 + z.norm()));
  for (const auto& eq : prog.equalities) {
    double lhs = 0.0;
    for (const auto& e : eq.coeffs) {
      const Complex x = sol.primal_blocks[e.block](e.row, e.col);
      lhs += e.row == e.col ? (e.value * x).real() : 2.0 * (e.value * std::conj(x)).real();
    }
    CHECK(std::abs(lhs - eq.rhs) <= 10 * tol * (1 + std::abs(eq.rhs)));
  }
  CHECK(sol.dual_obj <= sol.primal_obj + 10 * tol * (1 + std::abs(sol.primal_obj)));
}

}  // namespace

TEST_CASE("diagonal SDP reduces to an LP") {
  // min tr(X) s.t. X_00 = 1, X_11 = 2
  ConicProgram prog;
  prog.add_block("X", 2);
  prog.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  prog.equalities.push_back({{{0, 0, 0, 1.0}}, 1.0});
  prog.equalities.push_back({{{0, 1, 1, 1.0}}, 2.0});
  const auto sol = solve(prog);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.primal_obj == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(std::abs(sol.primal_blocks[0](0, 0) - 1.0) < 1e-6);
  CHECK(std::abs(sol.primal_blocks[0](1, 1) - 2.0) < 1e-6);
  CHECK(std::abs(sol.primal_blocks[0](0, 1)) < 1e-6);
  verify_kkt(prog, sol, 1e-8);
}

TEST_CASE("epigraph of the largest eigenvalue") {
  random::Rng rng(11);
  for (int n : {2, 3, 5}) {
    const auto c = random::hermitian(n, rng);
    Model model;
    const int t = model.add_scalar();
    model.add_psd("tI-C", scalar_identity(t, n) - AffineHerm::constant(c.matrix()));
    model.minimize(t, 1.0);
    const auto prog = model.program();
    const auto sol = solve(prog);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(model.objective_value(sol.dual) == doctest::Approx(max_eigenvalue(c)).epsilon(1e-7));
    verify_kkt(prog, sol, 1e-8);
  }
}

TEST_CASE("trace of a PSD matrix cannot be negative") {
  ConicProgram prog;
  prog.add_block("X", 2);
  prog.equalities.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, -1.0});
  const auto sol = solve(prog);
  CHECK(sol.status == Status::Infeasible);
}

TEST_CASE("unbounded primal is reported") {
  // min -X_00 s.t. X_11 = 1
  ConicProgram prog;
  prog.add_block("X", 2);
  prog.objective = {{0, 0, 0, -1.0}};
  prog.equalities.push_back({{{0, 1, 1, 1.0}}, 1.0});
  const auto sol = solve(prog);
  CHECK(sol.status == Status::Unbounded);
}

TEST_CASE("zero rows are dropped in presolve") {
  ConicProgram prog;
  prog.add_block("X", 1);
  prog.objective = {{0, 0, 0, 1.0}};
  prog.equalities.push_back({{{0, 0, 0, 1.0}}, 2.0});
  prog.equalities.push_back({{}, 0.0});
  const auto sol = solve(prog);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.dropped_rows == 1);
  CHECK(sol.primal_obj == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("realify embeds Pauli Y with doubled spectrum") {
  CMatrix y(2, 2);
  y << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  const Eigen::MatrixXd r = realify(y);
  CHECK((r - r.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));
  CHECK((derealify(r) - y).norm() < 1e-15);
}

TEST_CASE("realified real program duplicates blocks") {
  ConicProgram prog;
  prog.add_block("X", 2);
  prog.objective = {{0, 0, 1, 0.5}};
  prog.equalities.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, 1.0});
  const auto rp = realify(prog);
  REQUIRE(rp.dims == std::vector<int>{4});
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
  expect(0, 1) = expect(1, 0) = expect(2, 3) = expect(3, 2) = 0.25;
  CHECK((rp.objective[0] - expect).norm() < 1e-15);
  // min Re X_01 over density matrices = -1/2
  const auto sol = solve(prog);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.primal_obj == doctest::Approx(-0.5).epsilon(1e-7));
}

TEST_CASE("complex SDP matches the minimum-eigenvalue oracle") {
  // min Re tr(C X) s.t. tr X = 1 has value lambda_min(C) for complex Hermitian C.
  random::Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 3;
    const auto c = random::hermitian(n, rng);
    ConicProgram prog;
    prog.add_block("X", n);
    Equality tr;
    for (int i = 0; i < n; ++i) {
      tr.coeffs.push_back({0, i, i, 1.0});
      for (int j = i; j < n; ++j) prog.objective.push_back({0, i, j, c(i, j)});
    }
    tr.rhs = 1.0;
    prog.equalities.push_back(tr);
    const auto sol = solve(prog);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(std::abs(sol.primal_obj - min_eigenvalue(c)) < 1e-7);
    verify_kkt(prog, sol, 1e-8);
  }
}

TEST_CASE("size budget rejects oversized programs") {
  ConicProgram prog;
  prog.add_block("big", 700);
  SolverOptions opts;
  CHECK_THROWS_AS(solve(prog, opts), Error);
}

TEST_CASE("dump writes one pairing per line") {
  ConicProgram prog;
  prog.add_block("X", 2);
  prog.objective = {{0, 0, 1, Complex(1.0, -2.0)}};
  prog.equalities.push_back({{{0, 0, 0, 1.0}}, 3.0});
  std::ostringstream os;
  prog.dump(os);
  const std::string s = os.str();
  CHECK(s.find("block 0 2 X") != std::string::npos);
  CHECK(s.find("obj 0 0 1 1 -2") != std::string::npos);
  CHECK(s.find("rhs 0 3") != std::string::npos);
  CHECK(s.find("eq 0 0 0 0 1 0") != std::string::npos);
}

TEST_CASE("validate rejects entries outside declared blocks") {
  ConicProgram prog;
  prog.add_block("X", 2);
  prog.objective = {{1, 0, 0, 1.0}};
  CHECK_THROWS_AS(prog.validate(), Error);
  prog.objective = {{0, 1, 0, 1.0}};
  CHECK_THROWS_AS(prog.validate(), Error);
}
