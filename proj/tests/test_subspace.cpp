#include <catch2/catch_amalgamated.hpp>

#include "gridmtd/cases.hpp"
#include "gridmtd/chi2.hpp"
#include "gridmtd/powerflow.hpp"
#include "gridmtd/random.hpp"
#include "gridmtd/subspace.hpp"

using namespace gridmtd;

TEST_CASE("principal angles match an external reference pair") {
  // Reference computed with scipy.linalg.subspace_angles and frozen.
  MatrixXd A(4, 2), B(4, 2);
  A << 1, 0, 0, 1, 1, 1, 2, -1;
  B << 1, 0.1, 0.2, 1, 0.9, 1.2, 1.8, -0.7;
  const auto pair = JacobianPair::from_jacobians(A, B);
  const auto dec = principal_decomposition(pair);
  REQUIRE(dec.angles.size() == 2);
  CHECK(dec.angles[0] == Catch::Approx(0.02201836061399134).epsilon(1e-9));
  CHECK(dec.angles[1] == Catch::Approx(0.0855763211674646).epsilon(1e-9));
}

TEST_CASE("identical subspaces give zero angles and full intersection") {
  const auto g = builtin_case("case6ww");
  const auto st = solve_powerflow(g, MtdStrategy::none(g.n_branch()));
  const VectorXd Rf = VectorXd::Constant(g.n_branch(), 1e-4);
  const auto pair =
      make_jacobian_pair(g, MtdStrategy::none(g.n_branch()), st, Rf);
  const auto dec = principal_decomposition(pair);
  for (double th : dec.angles) CHECK(th == Catch::Approx(0.0).margin(1e-7));
  CHECK(composite_rank(pair) == g.n_state());  // spans coincide
}

TEST_CASE("branch-flow jacobian equals the active-flow rows of the full model") {
  const auto g = builtin_case("case14");
  auto s = MtdStrategy::none(g.n_branch());
  for (int k = 0; k < g.n_branch(); ++k)
    s.delta_x[k] = 0.1 * g.branches[k].x * ((k % 3) - 1);
  const auto st = solve_powerflow(g, s);
  const MatrixXd Jb = branch_flow_jacobian(g, s, st);
  const MatrixXd Jfull = measurement_jacobian(st, g, s);
  // from-side P-flow rows start after the 2*n_bus injection rows; theta
  // columns are the first n_state columns.
  const int off = 2 * g.n_bus();
  const MatrixXd ref =
      Jfull.block(off, 0, g.n_branch(), g.n_state());
  CHECK((Jb - ref).norm() < 1e-12 * std::max(1.0, ref.norm()));
}

TEST_CASE("projectors are idempotent, symmetric, complementary") {
  const auto g = builtin_case("case6ww");
  const auto st = solve_powerflow(g, MtdStrategy::none(g.n_branch()));
  const VectorXd Rf = VectorXd::Constant(g.n_branch(), 1e-4);
  auto s = MtdStrategy::none(g.n_branch());
  for (int k = 0; k < g.n_branch(); ++k)
    s.delta_x[k] = 0.15 * g.branches[k].x * ((k % 2) ? 1 : -1);
  const auto pair = make_jacobian_pair(g, s, st, Rf);

  const int m = pair.m();
  CHECK((pair.P_N_post * pair.P_N_post - pair.P_N_post).norm() < 1e-10);
  CHECK((pair.P_N_post - pair.P_N_post.transpose()).norm() < 1e-12);
  CHECK((pair.S_N_post + pair.P_N_post - MatrixXd::Identity(m, m)).norm() <
        1e-10);
  // residual projector annihilates the post image
  CHECK((pair.S_N_post * pair.J_N_post).norm() < 1e-8);
}

TEST_CASE("weakest point satisfies the spectral characterization") {
  const auto g = builtin_case("case6ww");
  const auto st = solve_powerflow(g, MtdStrategy::none(g.n_branch()));
  const VectorXd Rf = VectorXd::Constant(g.n_branch(), 1e-4);
  auto rng = make_rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  for (int trial = 0; trial < 10; ++trial) {
    auto s = MtdStrategy::none(g.n_branch());
    for (int k = 0; k < g.n_branch(); ++k)
      s.delta_x[k] = 0.2 * g.branches[k].x * u(rng);
    const auto pair = make_jacobian_pair(g, s, st, Rf);
    const auto det = make_detector(0.05, g.n_branch() - g.n_state());
    const double a_norm = 10.0 * std::sqrt(double(g.n_branch()));
    const auto rep = weakest_point(pair, a_norm, det);

    CHECK(rep.u_weak.norm() == Catch::Approx(1.0).epsilon(1e-10));
    // u_weak lies in the pre-MTD column space
    CHECK((pair.P_N * rep.u_weak - rep.u_weak).norm() < 1e-8);
    // noncentrality at the weakest point equals |a|^2 sin^2(theta_weak)
    const double lam = noncentrality(pair, a_norm * rep.u_weak);
    const double lam_theory =
        a_norm * a_norm * std::pow(std::sin(rep.theta_weak), 2);
    CHECK(lam == Catch::Approx(lam_theory).epsilon(1e-6).margin(1e-8));
    CHECK(rep.f_min == Catch::Approx(detection_prob(lam, det)).epsilon(1e-6));

    // no sampled direction in Col(J_N) does better
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 200; ++i) {
      VectorXd w(g.n_state());
      for (int j = 0; j < w.size(); ++j) w[j] = gauss(rng);
      VectorXd dir = pair.J_N * w;
      dir *= a_norm / dir.norm();
      CHECK(noncentrality(pair, dir) >= lam - 1e-6 * std::max(1.0, lam));
    }
  }
}

TEST_CASE("intersection dimension equals the rank deficiency") {
  const auto g = builtin_case("case14");
  const auto st = solve_powerflow(g, MtdStrategy::none(g.n_branch()));
  const VectorXd Rf = VectorXd::Constant(g.n_branch(), 1e-4);
  auto rng = make_rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.2);
  auto s = MtdStrategy::none(g.n_branch());
  for (int k = 0; k < g.n_branch(); ++k)
    s.delta_x[k] = u(rng) * g.branches[k].x;
  const auto pair = make_jacobian_pair(g, s, st, Rf);
  const int r = composite_rank(pair);
  CHECK(r == 20);  // m = 20 < 2n = 26 caps the composite rank
  const auto det = make_detector(0.05, g.n_branch() - g.n_state());
  const auto rep = weakest_point(pair, 10.0, det);
  CHECK(rep.k == 2 * g.n_state() - r);
  CHECK(rep.k == 6);
  // the first k principal angles vanish
  const auto dec = principal_decomposition(pair);
  for (int i = 0; i < rep.k; ++i)
    CHECK(dec.angles[i] == Catch::Approx(0.0).margin(1e-6));
  CHECK(dec.angles[rep.k] > 1e-4);
}

TEST_CASE("normalization rejects invalid covariance input") {
  MatrixXd J = MatrixXd::Random(6, 3);
  CHECK_THROWS_AS(normalize(J, VectorXd::Constant(5, 1e-4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(normalize(J, VectorXd::Zero(6)), std::invalid_argument);
}
