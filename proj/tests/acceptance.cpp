// Acceptance suite: one numbered criterion per invocation (argv[1] in
// 1..10), each printing PASS/FAIL with the measured quantities. With no
// argument, all criteria run in order.

#include "gridmtd/gridmtd.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace gridmtd;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

GridCase ring_toy(int nb, std::uint64_t seed) {
  // ring of nb buses plus one chord: smallest families of cyclic grids
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> xs(0.08, 0.3), rs(0.005, 0.03);
  nlohmann::json doc;
  doc["name"] = "ring" + std::to_string(nb);
  doc["ref_bus"] = 1;
  doc["ref_vm"] = 1.0;
  for (int b = 1; b <= nb; ++b)
    doc["buses"].push_back({{"id", b},
                            {"p", b == 1 ? 0.0 : -0.1},
                            {"q", b == 1 ? 0.0 : -0.05}});
  auto add = [&](int u, int v) {
    doc["branches"].push_back(
        {{"from", u}, {"to", v}, {"r", rs(rng)}, {"x", xs(rng)}});
  };
  for (int b = 1; b <= nb; ++b) add(b, b % nb + 1);
  add(1, nb / 2 + 1);
  return load_case(doc.dump());
}

MtdStrategy random_feasible(const GridCase& g, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto s = MtdStrategy::none(g.n_branch());
  for (int k : g.dfacts_branches())
    s.delta_x[k] = u(rng) * g.branches[k].tau * g.branches[k].x;
  return s;
}

struct Setup {
  GridCase g;
  StateVector st;
  VectorXd Rf;
  explicit Setup(GridCase grid)
      : g(std::move(grid)),
        st(solve_powerflow(g, MtdStrategy::none(g.n_branch()))),
        Rf(VectorXd::Constant(g.n_branch(), 1e-4)) {}
};

// ---------------------------------------------------------------- c1
// Spectral oracle: over random (grid, strategy) pairs, no unit direction
// in Col(J_N) beats sin(theta_1), and sigma_min(S' U) equals sin(theta_1).
bool spectral_oracle_on(const Setup& s, std::uint64_t seed, Check& c,
                        int n_dirs) {
  const auto pair = make_jacobian_pair(s.g, random_feasible(s.g, seed), s.st,
                                       s.Rf);
  const auto dec = principal_decomposition(pair);
  const double sin_t1 = std::sin(dec.angles[0]);

  const MatrixXd U = detail::orthonormal_basis(pair.J_N);
  Eigen::JacobiSVD<MatrixXd> svd(pair.S_N_post * U);
  const double smin = svd.singularValues().minCoeff();
  c.require(std::abs(smin - sin_t1) < 1e-6,
            "sigma_min(S'U)=" + std::to_string(smin) + " vs sin(theta1)=" +
                std::to_string(sin_t1));

  auto rng = make_rng(seed, 1);
  std::normal_distribution<double> gauss;
  double worst = 2.0;
  for (int i = 0; i < n_dirs; ++i) {
    VectorXd w(U.cols());
    for (int j = 0; j < w.size(); ++j) w[j] = gauss(rng);
    VectorXd dir = U * w;
    dir.normalize();
    worst = std::min(worst, (pair.S_N_post * dir).norm());
  }
  c.require(worst >= sin_t1 - 1e-6,
            "sampled direction below sin(theta1): " + std::to_string(worst));
  return c.ok;
}

bool criterion1() {
  Check c;
  int idx = 0;
  std::vector<Setup> grids;
  for (int nb : {4, 5, 6, 8}) grids.emplace_back(ring_toy(nb, 900 + nb));
  grids.emplace_back(builtin_case("case6ww"));
  grids.emplace_back(builtin_case("case14"));
  for (int t = 0; t < 50; ++t) {
    const auto& s = grids[t % grids.size()];
    spectral_oracle_on(s, 1000 + t, c, 10000);
    ++idx;
  }
  std::printf("  checked %d (grid, strategy) pairs x 1e4 directions\n", idx);
  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

// ---------------------------------------------------------------- c2
// Intersection exactness: adding any component inside U1 leaves the
// noncentrality unchanged.
bool criterion2() {
  Check c;
  Setup s(builtin_case("case14"));
  const auto pair = make_jacobian_pair(s.g, random_feasible(s.g, 77), s.st,
                                       s.Rf);
  const auto det = make_detector(0.05, s.g.n_branch() - s.g.n_state());
  const auto rep = weakest_point(pair, 10.0, det);
  c.require(rep.k == 6, "k != 6");

  const auto dec = principal_decomposition(pair);
  const MatrixXd U23 =
      dec.U.rightCols(dec.U.cols() - rep.k);  // detectable directions
  auto rng = make_rng(4);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    VectorXd c1(rep.k), c23(U23.cols());
    for (int i = 0; i < c1.size(); ++i) c1[i] = gauss(rng);
    for (int i = 0; i < c23.size(); ++i) c23[i] = gauss(rng);
    const VectorXd mixed = rep.U1 * c1 + U23 * c23;
    const VectorXd pure = U23 * c23;
    worst = std::max(worst, std::abs(noncentrality(pair, mixed) -
                                     noncentrality(pair, pure)));
  }
  std::printf("  max |lambda(U1 c1 + U23 c23) - lambda(U23 c23)| = %.3e\n",
              worst);
  c.require(worst < 1e-10, "exactness gap above 1e-10");
  return c.ok;
}

// ---------------------------------------------------------------- c3
bool criterion3() {
  Check c;
  // simplified path: gamma = ||W^T e||^2 with W a basis of Ker(J'^T)
  Setup s(builtin_case("case6ww"));
  const auto pair = make_jacobian_pair(s.g, random_feasible(s.g, 5), s.st,
                                       s.Rf);
  const auto det_s = make_detector(0.05, s.g.n_branch() - s.g.n_state());
  {
    int hits = 0;
    const int trials = 10000;
    const VectorXd zero = VectorXd::Zero(s.g.n_branch());
    std::normal_distribution<double> gauss;
    for (int t = 0; t < trials; ++t) {
      auto rng = make_rng(600, t);
      VectorXd e(s.g.n_branch());
      for (int i = 0; i < e.size(); ++i) e[i] = gauss(rng);
      if ((pair.S_N_post * e).squaredNorm() > det_s.threshold) ++hits;
    }
    const double fpr = double(hits) / trials;
    std::printf("  simplified FPR = %.4f (target 0.05 +- 0.01)\n", fpr);
    c.require(std::abs(fpr - 0.05) <= 0.01, "simplified FPR out of band");
  }
  // full-AC path
  {
    const auto none = MtdStrategy::none(s.g.n_branch());
    const VectorXd R = isotropic_variance(s.g, 0.01);
    const auto det = make_detector(0.05, residual_dof(s.g));
    int hits = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      const auto meas = simulate_measurements(s.st, s.g, none, R,
                                              mix_seed(601, t));
      const auto est = wls_estimate(meas, s.g, none);
      if (residual_norm(meas, est, s.g, none) > det.threshold) ++hits;
    }
    const double fpr = double(hits) / trials;
    std::printf("  full-AC FPR    = %.4f (target 0.05 +- 0.01)\n", fpr);
    c.require(std::abs(fpr - 0.05) <= 0.01, "full-AC FPR out of band");
  }
  // f(lambda) against Monte-Carlo at fixed noncentralities
  {
    const int dof = s.g.n_branch() - s.g.n_state();
    const auto det = make_detector(0.05, dof);
    for (double lam : {1.0, 5.0, 10.0, 25.0}) {
      // gamma ~ ||w sqrt(lam)/||w|| * w_hat + e_proj||^2 in dof dims
      std::normal_distribution<double> gauss;
      int hits = 0;
      const int trials = 200000;
      for (int t = 0; t < trials; ++t) {
        auto rng = make_rng(620, static_cast<std::uint64_t>(lam * 10), t);
        double q = 0.0;
        for (int i = 0; i < dof; ++i) {
          double v = gauss(rng) + (i == 0 ? std::sqrt(lam) : 0.0);
          q += v * v;
        }
        if (q > det.threshold) ++hits;
      }
      const double mc = double(hits) / trials;
      const double th = detection_prob(lam, det);
      std::printf("  lambda=%4.1f  f=%.4f  mc=%.4f\n", lam, th, mc);
      c.require(std::abs(mc - th) <= 0.01, "f(lambda) vs MC above 1%");
    }
  }
  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

// ---------------------------------------------------------------- c4
bool criterion4() {
  Check c;
  Setup s(builtin_case("case6ww"));  // default tau = 0.2
  OptimizerConfig oc;
  const auto res = robust_complete(s.g, s.st, s.Rf, oc);
  const auto pair = make_jacobian_pair(s.g, res.strategy, s.st, s.Rf);
  const auto det = make_detector(0.05, s.g.n_branch() - s.g.n_state());
  const double m = s.g.n_branch();
  for (double rho : {5.0, 10.0, 15.0, 20.0}) {
    const double a_norm = rho * std::sqrt(m);
    const auto rep = weakest_point(pair, a_norm, det);
    const VectorXd a_N = a_norm * rep.u_weak;
    const double theory =
        detection_prob(a_norm * a_norm *
                           std::pow(std::sin(rep.theta_weak), 2),
                       det);
    const double mc = simplified_detection_rate(
        pair, a_N, det, 20000, mix_seed(640, static_cast<std::uint64_t>(rho)));
    std::printf("  rho=%4.1f  theory=%.4f  mc=%.4f\n", rho, theory, mc);
    c.require(std::abs(mc - theory) <= 0.02, "worst-case ADP off by > 2%");
  }
  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

// ---------------------------------------------------------------- c5
bool criterion5() {
  Check c;
  CampaignConfig cfg;  // desk scale: 10 loads x 50 attacks x 5 baselines
  cfg.retain_residuals = false;
  for (const std::string name : {"case6ww", "case14"}) {
    const auto g = builtin_case(name);
    const auto rep = run_campaign(g, cfg);
    const std::string robust_label = "robust";
    const auto& rob = rep.stats.at(robust_label);
    const auto& mr = rep.stats.at("max_rank");
    for (int b = 0; b < kBucketCount; ++b) {
      if (rob[b].trials == 0 || mr[b].trials == 0) continue;
      std::printf("  %s %-8s robust %.3f (%ld)  max-rank %.3f (%ld)\n",
                  name.c_str(), bucket_label(b).c_str(), rob[b].adp(),
                  rob[b].trials,
                  mr[b].adp(), mr[b].trials);
      c.require(rob[b].adp() >= mr[b].adp(),
                name + " bucket " + bucket_label(b) + ": robust below max-rank");
    }
    if (name == "case6ww") {
      const double adp = rob[2].adp();  // [10,15)
      std::printf("  case6ww [10,15) robust ADP = %.3f (target 0.673 +- 0.12)\n",
                  adp);
      c.require(std::abs(adp - 0.673) <= 0.12, "[10,15) ADP out of band");
    }
  }
  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

// ---------------------------------------------------------------- c6
bool criterion6() {
  Check c;
  // All-branch D-FACTS; tau = 0.5 (the upper end reported for D-FACTS
  // hardware) is needed for the >85% single-state floor on this grid.
  Setup s(builtin_case("case14", 0.5));
  OptimizerConfig oc;
  oc.single_state = SingleStateConstraint::UpperBound;  // Principle 2 on
  const auto res = robust_incomplete(s.g, s.st, s.Rf, oc);
  std::printf("  k = %d (expected 6)\n", res.k);
  c.require(res.k == 6, "k != 6");

  const auto pair = make_jacobian_pair(s.g, res.strategy, s.st, s.Rf);
  const auto det = make_detector(0.05, s.g.n_branch() - s.g.n_state());
  const double rho = 10.0, m = s.g.n_branch();
  const auto cyc = cycle_buses(s.g);
  for (int col = 0; col < s.g.n_state(); ++col) {
    const int bus = col < s.g.ref_bus ? col : col + 1;
    VectorXd a_N = pair.J_N.col(col).normalized() * rho * std::sqrt(m);
    const double adp = simplified_detection_rate(
        pair, a_N, det, 4000, mix_seed(650, static_cast<std::uint64_t>(col)));
    const bool on_cycle =
        std::find(cyc.begin(), cyc.end(), bus) != cyc.end();
    std::printf("  bus %-2d %-9s ADP = %.3f\n", bus + 1,
                on_cycle ? "(cycle)" : "(excluded)", adp);
    if (!on_cycle)
      c.require(std::abs(adp - 0.05) <= 0.02,
                "excluded bus ADP far from alpha");
    else
      c.require(adp > 0.85, "cycle bus " + std::to_string(bus + 1) +
                                " ADP <= 0.85");
  }
  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

// ---------------------------------------------------------------- c7
bool criterion7() {
  Check c;
  const auto g = builtin_case("case14");
  const auto pl = dfacts_placement(g);
  std::printf("  branches: %zu, complement acyclic: %d\n",
              pl.dfacts_branches.size(), int(pl.complement_acyclic));
  c.require(pl.dfacts_branches.size() <= 8, "more than 8 branches");
  c.require(pl.complement_acyclic, "complement has cycles");
  std::vector<bool> cov(g.n_bus(), false);
  for (int k : pl.dfacts_branches) {
    cov[g.branches[k].from_bus] = true;
    cov[g.branches[k].to_bus] = true;
  }
  for (int b : cycle_buses(g))
    c.require(cov[b], "cycle bus " + std::to_string(b + 1) + " uncovered");

  const auto gp = g.with_placement(pl.dfacts_branches);
  Setup s(gp);
  const auto pair =
      make_jacobian_pair(gp, random_feasible(gp, 3), s.st, s.Rf);
  const int k = 2 * gp.n_state() - composite_rank(pair);
  std::printf("  achieved k = %d (expected 6)\n", k);
  c.require(k == 6, "k != 6 on placement");
  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

// ---------------------------------------------------------------- c8
bool criterion8() {
  Check c;
  Setup s14(builtin_case("case14"));
  int rmax = 0;
  for (int t = 0; t < 100; ++t) {
    const auto pair =
        make_jacobian_pair(s14.g, random_feasible(s14.g, 800 + t), s14.st,
                           s14.Rf);
    rmax = std::max(rmax, composite_rank(pair));
  }
  std::printf("  case14 max composite rank over 100 draws = %d (cap 20)\n",
              rmax);
  c.require(rmax <= 20, "composite rank above the branch cap");

  Setup s6(builtin_case("case6ww"));
  OptimizerConfig oc;
  const auto res = robust_complete(s6.g, s6.st, s6.Rf, oc);
  const auto pair = make_jacobian_pair(s6.g, res.strategy, s6.st, s6.Rf);
  const int r = composite_rank(pair);
  std::printf("  case6ww robust composite rank = %d (need 10)\n", r);
  c.require(r == 10, "robust design not complete");
  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

// ---------------------------------------------------------------- c9
bool criterion9() {
  Check c;
  const auto g = builtin_case("case14");
  const auto none = MtdStrategy::none(g.n_branch());
  auto rng = make_rng(90);
  std::uniform_real_distribution<double> dv(0.94, 1.06), dth(-0.15, 0.15);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    StateVector st;
    st.v.resize(g.n_bus());
    st.theta.resize(g.n_bus());
    for (int b = 0; b < g.n_bus(); ++b) {
      st.v[b] = dv(rng);
      st.theta[b] = b == g.ref_bus ? 0.0 : dth(rng);
    }
    const MatrixXd J = branch_flow_jacobian(g, none, st);
    auto flows = [&](const StateVector& sv) {
      const VectorXd full = measurement_function(sv, g, none);
      return VectorXd(full.segment(2 * g.n_bus(), g.n_branch()));
    };
    const double h = 1e-6;
    int col = 0;
    for (int b = 0; b < g.n_bus(); ++b) {
      if (b == g.ref_bus) continue;
      StateVector lo = st, hi = st;
      lo.theta[b] -= h;
      hi.theta[b] += h;
      const VectorXd fd = (flows(hi) - flows(lo)) / (2 * h);
      worst = std::max(worst,
                       (J.col(col) - fd).norm() / std::max(1.0, fd.norm()));
      ++col;
    }
  }
  std::printf("  worst relative Jacobian error = %.3e (bound 1e-6)\n", worst);
  c.require(worst < 1e-6, "analytic vs finite-difference mismatch");
  return c.ok;
}

// ---------------------------------------------------------------- c10
// Property suite on case57 (campaign statistics at full scale are out of
// compute budget for this grid).
bool criterion10() {
  Check c;
  Setup s(builtin_case("case57"));

  // spectral oracle (criterion-1 style, reduced direction count)
  for (int t = 0; t < 3; ++t)
    spectral_oracle_on(s, 570 + t, c, 2000);
  std::printf("  spectral oracle: %s\n", c.ok ? "ok" : "violated");

  // intersection exactness (criterion-2 style)
  const auto pair = make_jacobian_pair(s.g, random_feasible(s.g, 57), s.st,
                                       s.Rf);
  const auto det = make_detector(0.05, s.g.n_branch() - s.g.n_state());
  const auto rep = weakest_point(pair, 10.0, det);
  const auto dec = principal_decomposition(pair);
  const MatrixXd U23 = dec.U.rightCols(dec.U.cols() - rep.k);
  auto rng = make_rng(14);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    VectorXd c1(rep.k), c23(U23.cols());
    for (int i = 0; i < c1.size(); ++i) c1[i] = gauss(rng);
    for (int i = 0; i < c23.size(); ++i) c23[i] = gauss(rng);
    worst = std::max(worst,
                     std::abs(noncentrality(pair, rep.U1 * c1 + U23 * c23) -
                              noncentrality(pair, U23 * c23)));
  }
  std::printf("  exactness gap = %.3e (k = %d)\n", worst, rep.k);
  c.require(worst < 1e-9, "intersection exactness above 1e-9");

  // calibration (criterion-3 style, full AC, reduced trials)
  {
    const auto none = MtdStrategy::none(s.g.n_branch());
    const VectorXd R = isotropic_variance(s.g, 0.01);
    const auto d = make_detector(0.05, residual_dof(s.g));
    int hits = 0;
    const int trials = 1500;
    for (int t = 0; t < trials; ++t) {
      const auto meas =
          simulate_measurements(s.st, s.g, none, R, mix_seed(571, t));
      const auto est = wls_estimate(meas, s.g, none);
      if (residual_norm(meas, est, s.g, none) > d.threshold) ++hits;
    }
    const double fpr = double(hits) / trials;
    std::printf("  full-AC FPR = %.4f\n", fpr);
    c.require(std::abs(fpr - 0.05) <= 0.02, "case57 FPR out of band");
  }

  // rank cap (criterion-8 style)
  int rmax = 0;
  for (int t = 0; t < 20; ++t)
    rmax = std::max(rmax,
                    composite_rank(make_jacobian_pair(
                        s.g, random_feasible(s.g, 572 + t), s.st, s.Rf)));
  std::printf("  max composite rank = %d (cap %d)\n", rmax, s.g.n_branch());
  c.require(rmax <= s.g.n_branch(), "rank above branch cap");

  // jacobian check (criterion-9 style, base state)
  const auto none = MtdStrategy::none(s.g.n_branch());
  const MatrixXd J = branch_flow_jacobian(s.g, none, s.st);
  auto flows = [&](const StateVector& sv) {
    const VectorXd full = measurement_function(sv, s.g, none);
    return VectorXd(full.segment(2 * s.g.n_bus(), s.g.n_branch()));
  };
  double jerr = 0.0;
  int col = 0;
  for (int b = 0; b < s.g.n_bus(); ++b) {
    if (b == s.g.ref_bus) continue;
    StateVector lo = s.st, hi = s.st;
    lo.theta[b] -= 1e-6;
    hi.theta[b] += 1e-6;
    const VectorXd fd = (flows(hi) - flows(lo)) / 2e-6;
    jerr = std::max(jerr, (J.col(col) - fd).norm() / std::max(1.0, fd.norm()));
    ++col;
  }
  std::printf("  jacobian error = %.3e\n", jerr);
  c.require(jerr < 1e-6, "case57 jacobian mismatch");

  if (!c.ok) std::printf("  %s\n", c.detail.c_str());
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<bool()>>> suite = {
      {"spectral weakest-point oracle", criterion1},
      {"intersection exactness", criterion2},
      {"detector calibration", criterion3},
      {"worst-case theory match (case6ww)", criterion4},
      {"campaign trend at desk scale", criterion5},
      {"case14 single-state structure", criterion6},
      {"case14 placement", criterion7},
      {"composite rank bounds", criterion8},
      {"analytic jacobian vs finite differences", criterion9},
      {"case57 property suite", criterion10},
  };

  int lo = 1, hi = static_cast<int>(suite.size());
  if (argc > 1) {
    lo = hi = std::atoi(argv[1]);
    if (lo < 1 || lo > static_cast<int>(suite.size())) {
      std::fprintf(stderr, "usage: %s [1..%zu]\n", argv[0], suite.size());
      return 2;
    }
  }

  bool all_ok = true;
  for (int i = lo; i <= hi; ++i) {
    const auto& [name, fn] = suite[i - 1];
    std::printf("criterion %d: %s\n", i, name.c_str());
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      std::printf("  exception: %s\n", e.what());
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    std::printf("criterion %d: %s (%.1f s)\n", i, ok ? "PASS" : "FAIL", secs);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
