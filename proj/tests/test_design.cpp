#include <catch2/catch_amalgamated.hpp>

#include "gridmtd/cases.hpp"
#include "gridmtd/chi2.hpp"
#include "gridmtd/design.hpp"
#include "gridmtd/powerflow.hpp"

using namespace gridmtd;

namespace {

struct Fixture {
  GridCase g;
  StateVector st;
  VectorXd Rf;
  explicit Fixture(const std::string& name, double tau = 0.2)
      : g(builtin_case(name, tau)),
        st(solve_powerflow(g, MtdStrategy::none(g.n_branch()))),
        Rf(VectorXd::Constant(g.n_branch(), 1e-4)) {}
};

}  // namespace

TEST_CASE("robust complete design on case6ww") {
  Fixture f("case6ww");
  OptimizerConfig oc;
  const auto res = robust_complete(f.g, f.st, f.Rf, oc);

  CHECK_NOTHROW(f.g.validate_strategy(res.strategy));
  CHECK(res.complete);
  CHECK(res.k == 0);
  CHECK(res.objective_value <= 1.0);
  CHECK(res.objective_value >= 0.0);
  // achieved theta_1 is the arccos of the reported spectral norm
  const auto pair = make_jacobian_pair(f.g, res.strategy, f.st, f.Rf);
  const auto dec = principal_decomposition(pair);
  CHECK(dec.angles[0] == Catch::Approx(std::acos(res.objective_value))
                             .margin(1e-6));
  // composite rank reaches 2n (complete configuration realized)
  CHECK(composite_rank(pair) == 2 * f.g.n_state());
  // clearly better than no MTD at all
  CHECK(res.theta_weak > 0.05);
}

TEST_CASE("robust complete dominates max-rank at the worst case") {
  Fixture f("case6ww");
  OptimizerConfig oc;
  const auto robust = robust_complete(f.g, f.st, f.Rf, oc);
  const auto det = make_detector(0.05, f.g.n_branch() - f.g.n_state());
  const double a_norm = 10.0 * std::sqrt(double(f.g.n_branch()));
  const auto rob_pair = make_jacobian_pair(f.g, robust.strategy, f.st, f.Rf);
  const double f_rob = weakest_point(rob_pair, a_norm, det).f_min;

  double f_mr_sum = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto mr = max_rank_baseline(f.g, 0.05, 0.2, 1000 + s);
    const auto pair = make_jacobian_pair(f.g, mr, f.st, f.Rf);
    f_mr_sum += weakest_point(pair, a_norm, det).f_min;
  }
  CHECK(f_rob > f_mr_sum / seeds);
}

TEST_CASE("single-state norms: baseline and exclusions") {
  Fixture f("case14");
  // no perturbation -> every cycle-bus column stays fully inside
  const auto base = single_state_norms(
      f.g, f.st, MtdStrategy::none(f.g.n_branch()), f.Rf);
  REQUIRE(base.size() == 12);  // 13 cycle buses minus the reference bus
  for (const auto& [bus, v] : base) {
    CHECK(bus != 7);  // bus 8 is degree-one, never constrained
    CHECK(v == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("robust incomplete design on case14") {
  Fixture f("case14");
  OptimizerConfig oc;
  const auto res = robust_incomplete(f.g, f.st, f.Rf, oc);

  CHECK_NOTHROW(f.g.validate_strategy(res.strategy));
  CHECK(res.k == 6);
  CHECK_FALSE(res.complete);
  CHECK(res.objective_value == Catch::Approx(std::cos(res.theta_weak)));
  CHECK(res.theta_weak > 0.0);
  CHECK(res.iterations >= 1);

  // Frobenius norm bounds the spectral norm from above at the optimum
  const auto pair = make_jacobian_pair(f.g, res.strategy, f.st, f.Rf);
  Eigen::JacobiSVD<MatrixXd> svd(pair.P_N * pair.P_N_post);
  const double spectral = svd.singularValues()[0];
  const double frob = (pair.P_N * pair.P_N_post).norm();
  CHECK(frob >= spectral - 1e-12);

  // Principle 2 pushes the single-state norms strictly below 1
  const auto norms = single_state_norms(f.g, f.st, res.strategy, f.Rf);
  for (const auto& [bus, v] : norms) CHECK(v < 1.0 - 1e-6);
}

TEST_CASE("single-state constraint direction is configurable") {
  Fixture f("case14", 0.5);
  OptimizerConfig upper;
  upper.single_state = SingleStateConstraint::UpperBound;
  OptimizerConfig none;
  none.single_state = SingleStateConstraint::None;

  const auto res_u = robust_incomplete(f.g, f.st, f.Rf, upper);
  const auto res_n = robust_incomplete(f.g, f.st, f.Rf, none);

  double worst_u = 0.0, worst_n = 0.0;
  for (const auto& [bus, v] : single_state_norms(f.g, f.st, res_u.strategy, f.Rf))
    worst_u = std::max(worst_u, v);
  for (const auto& [bus, v] : single_state_norms(f.g, f.st, res_n.strategy, f.Rf))
    worst_n = std::max(worst_n, v);
  // with the constraint active, the most exposed bus is better protected
  CHECK(worst_u < worst_n);
}

TEST_CASE("max-mtd upper-bounds the robust design on its own attack") {
  Fixture f("case6ww");
  OptimizerConfig oc;
  const auto robust = robust_complete(f.g, f.st, f.Rf, oc);
  const auto pair = make_jacobian_pair(f.g, robust.strategy, f.st, f.Rf);
  const auto det = make_detector(0.05, f.g.n_branch() - f.g.n_state());
  const double a_norm = 10.0 * std::sqrt(double(f.g.n_branch()));
  const auto rep = weakest_point(pair, a_norm, det);
  const VectorXd a_N = a_norm * rep.u_weak;
  const double lam_robust = noncentrality(pair, a_N);

  const auto best = max_mtd(f.g, f.st, a_N, f.Rf, oc);
  const auto best_pair = make_jacobian_pair(f.g, best.strategy, f.st, f.Rf);
  CHECK(noncentrality(best_pair, a_N) >= lam_robust - 1e-6);
}

TEST_CASE("max-rank baseline respects the mu band and is deterministic") {
  Fixture f("case14");
  const auto s1 = max_rank_baseline(f.g, 0.05, 0.2, 9);
  const auto s2 = max_rank_baseline(f.g, 0.05, 0.2, 9);
  const auto s3 = max_rank_baseline(f.g, 0.05, 0.2, 10);
  CHECK((s1.delta_x - s2.delta_x).norm() == 0.0);
  CHECK((s1.delta_x - s3.delta_x).norm() > 0.0);
  for (int k = 0; k < f.g.n_branch(); ++k) {
    const double ax = std::abs(s1.delta_x[k]);
    CHECK(ax >= 0.05 * f.g.branches[k].x - 1e-15);
    CHECK(ax <= 0.2 * f.g.branches[k].x + 1e-15);
  }
  CHECK_THROWS_AS(max_rank_baseline(f.g, 0.0, 0.2, 1), std::invalid_argument);
  CHECK_THROWS_AS(max_rank_baseline(f.g, 0.3, 0.2, 1), std::invalid_argument);
}

TEST_CASE("designs are deterministic under a fixed seed") {
  Fixture f("case6ww");
  OptimizerConfig oc;
  oc.multistart_count = 4;
  const auto a = robust_complete(f.g, f.st, f.Rf, oc);
  const auto b = robust_complete(f.g, f.st, f.Rf, oc);
  CHECK((a.strategy.delta_x - b.strategy.delta_x).norm() == 0.0);
  CHECK(a.objective_value == b.objective_value);
}
