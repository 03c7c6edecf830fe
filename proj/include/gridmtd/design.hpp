#pragma once

#include <Eigen/Dense>

#include "gridmtd/grid.hpp"
#include "gridmtd/optimize.hpp"
#include "gridmtd/subspace.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace gridmtd {

/// Direction of the single-state constraint on ||P_N^i P_N_post||.
/// The stated rationale (keep (I - P')J_N(:,i) away from zero, value 1
/// marks the undetectable case) implies an upper bound; the literal
/// inequality in the source formulation reads the other way. Both are
/// selectable; UpperBound is the default.
enum class SingleStateConstraint { None, UpperBound, LowerBound };

struct OptimizerConfig {
  int multistart_count = 12;
  int max_iterations = 20;       // outer iterations of the incomplete loop
  double tol = 1e-6;             // subspace-distance convergence tolerance
  double penalty_weight = 10.0;  // exact-penalty weight on Eq-style constraint
  std::uint64_t seed = 1;
  double gamma = 0.99;                       // uniform single-state threshold
  std::vector<double> gamma_per_bus;         // optional per-bus override
  SingleStateConstraint single_state = SingleStateConstraint::UpperBound;
  PatternSearchOptions search;
};

struct DesignResult {
  MtdStrategy strategy;
  double objective_value = 1.0;  // spectral-norm objective in [0, 1]
  double theta_weak = 0.0;       // achieved theta_{k+1} (theta_1 if complete)
  int k = 0;
  int iterations = 0;
  bool converged = false;
  bool complete = false;  // rank([J_N, J_N']) == 2n at the optimum
};

namespace detail {

struct DesignSpace {
  const GridCase* grid;
  const StateVector* state;
  VectorXd R_flow;
  MatrixXd J_N;      // pre-MTD, fixed
  std::vector<int> free_branches;
  VectorXd lb, ub;   // bounds over the free coordinates

  MtdStrategy expand(const VectorXd& x) const {
    MtdStrategy s = MtdStrategy::none(grid->n_branch());
    for (size_t i = 0; i < free_branches.size(); ++i)
      s.delta_x[free_branches[i]] = x[static_cast<int>(i)];
    return s;
  }

  MatrixXd post_jacobian_normalized(const VectorXd& x) const {
    return normalize(branch_flow_jacobian(*grid, expand(x), *state), R_flow);
  }

  JacobianPair pair(const VectorXd& x) const {
    return JacobianPair::from_jacobians(
        J_N, post_jacobian_normalized(x));
  }
};

inline DesignSpace make_design_space(const GridCase& grid,
                                     const StateVector& state,
                                     const VectorXd& R_flow) {
  DesignSpace ds;
  ds.grid = &grid;
  ds.state = &state;
  ds.R_flow = R_flow;
  ds.J_N =
      normalize(branch_flow_jacobian(grid, MtdStrategy::none(grid.n_branch()),
                                     state),
                R_flow);
  ds.free_branches = grid.dfacts_branches();
  const int d = static_cast<int>(ds.free_branches.size());
  ds.lb.resize(d);
  ds.ub.resize(d);
  for (int i = 0; i < d; ++i) {
    const Branch& br = grid.branches[ds.free_branches[i]];
    ds.ub[i] = br.tau * br.x;
    ds.lb[i] = -ds.ub[i];
  }
  return ds;
}

// Thin orthonormal basis of Col(J), reused for projector-free products.
inline MatrixXd basis(const MatrixXd& J) { return orthonormal_basis(J); }

}  // namespace detail

/// Per-bus ||P_N^i P_N_post|| for cycle buses: the cosine of the angle
/// between the i-th Jacobian column and the post-MTD subspace. A value
/// of 1 means single-state attacks on that bus stay invisible.
inline std::vector<std::pair<int, double>> single_state_norms(
    const GridCase& grid, const StateVector& state, const MtdStrategy& strategy,
    const VectorXd& R_flow) {
  const auto pair = make_jacobian_pair(grid, strategy, state, R_flow);
  std::vector<std::pair<int, double>> out;
  std::vector<int> col_of_bus(grid.n_bus(), -1);
  for (int b = 0, cidx = 0; b < grid.n_bus(); ++b)
    if (b != grid.ref_bus) col_of_bus[b] = cidx++;
  for (int bus : cycle_buses(grid)) {
    if (bus == grid.ref_bus) continue;
    const VectorXd ji = pair.J_N.col(col_of_bus[bus]).normalized();
    out.push_back({bus, (pair.P_N_post * ji).norm()});
  }
  return out;
}

namespace detail {

inline double single_state_penalty(const DesignSpace& ds, const MatrixXd& Vpost,
                                   const OptimizerConfig& cfg,
                                   const std::vector<int>& cycle_cols,
                                   const std::vector<double>& gammas) {
  if (cfg.single_state == SingleStateConstraint::None) return 0.0;
  double pen = 0.0;
  for (size_t i = 0; i < cycle_cols.size(); ++i) {
    const VectorXd ji = ds.J_N.col(cycle_cols[i]).normalized();
    const double v = (Vpost.transpose() * ji).norm();
    if (cfg.single_state == SingleStateConstraint::UpperBound)
      pen += std::max(0.0, v - gammas[i]);
    else
      pen += std::max(0.0, gammas[i] - v);
  }
  return cfg.penalty_weight * pen;
}

struct ConstraintContext {
  std::vector<int> cycle_cols;  // J_N column index per constrained bus
  std::vector<double> gammas;
};

inline ConstraintContext make_constraints(const GridCase& grid,
                                          const OptimizerConfig& cfg) {
  ConstraintContext ctx;
  std::vector<int> col_of_bus(grid.n_bus(), -1);
  for (int b = 0, cidx = 0; b < grid.n_bus(); ++b)
    if (b != grid.ref_bus) col_of_bus[b] = cidx++;
  for (int bus : cycle_buses(grid)) {
    if (bus == grid.ref_bus) continue;
    ctx.cycle_cols.push_back(col_of_bus[bus]);
    ctx.gammas.push_back(cfg.gamma_per_bus.empty()
                             ? cfg.gamma
                             : cfg.gamma_per_bus.at(static_cast<size_t>(bus)));
  }
  return ctx;
}

inline DesignResult finish(const DesignSpace& ds, const VectorXd& x,
                           double objective, int iterations, bool converged) {
  DesignResult res;
  res.strategy = ds.expand(x);
  res.objective_value = objective;
  const auto pair = ds.pair(x);
  const auto dec = principal_decomposition(pair);
  res.k = 2 * pair.n() - composite_rank(pair);
  res.complete = (res.k == 0);
  res.theta_weak = dec.angles[std::min<int>(res.k, pair.n() - 1)];
  res.iterations = iterations;
  res.converged = converged;
  return res;
}

}  // namespace detail

/// Robust MTD for complete configurations: minimize the spectral norm
/// ||P_N P_N'||, i.e. maximize the minimal principal angle theta_1.
inline DesignResult robust_complete(const GridCase& grid,
                                    const StateVector& state,
                                    const VectorXd& R_flow,
                                    const OptimizerConfig& cfg = {}) {
  const auto ds = detail::make_design_space(grid, state, R_flow);
  const MatrixXd U = detail::basis(ds.J_N);
  Objective f = [&](const VectorXd& x) {
    const MatrixXd V = detail::basis(ds.post_jacobian_normalized(x));
    Eigen::JacobiSVD<MatrixXd> svd(U.transpose() * V);
    return svd.singularValues()[0];
  };
  const auto starts =
      default_starts(ds.lb, ds.ub, cfg.multistart_count, cfg.seed);
  const auto local = multistart_pattern_search(f, ds.lb, ds.ub, starts,
                                               cfg.search);
  return detail::finish(ds, local.x, local.value, 1, local.converged);
}

/// Performance upper bound on a known attack: maximize ||S_N' a_N||^2.
inline DesignResult max_mtd(const GridCase& grid, const StateVector& state,
                            const VectorXd& a_N, const VectorXd& R_flow,
                            const OptimizerConfig& cfg = {}) {
  const auto ds = detail::make_design_space(grid, state, R_flow);
  Objective f = [&](const VectorXd& x) {
    const MatrixXd V = detail::basis(ds.post_jacobian_normalized(x));
    // ||S' a||^2 = ||a||^2 - ||V^T a||^2; minimize the negative
    return (V.transpose() * a_N).squaredNorm() - a_N.squaredNorm();
  };
  const auto starts =
      default_starts(ds.lb, ds.ub, cfg.multistart_count, cfg.seed);
  const auto local = multistart_pattern_search(f, ds.lb, ds.ub, starts,
                                               cfg.search);
  auto res = detail::finish(ds, local.x, -local.value, 1, local.converged);
  return res;
}

/// Robust MTD for incomplete configurations: Frobenius warm start, then
/// iterate spectral minimization with the located intersection frozen.
inline DesignResult robust_incomplete(const GridCase& grid,
                                      const StateVector& state,
                                      const VectorXd& R_flow,
                                      const OptimizerConfig& cfg = {}) {
  const auto ds = detail::make_design_space(grid, state, R_flow);
  const auto ctx = detail::make_constraints(grid, cfg);
  const MatrixXd U = detail::basis(ds.J_N);

  // warm start: min ||P_N P_N'||_F + penalty
  Objective warm = [&](const VectorXd& x) {
    const MatrixXd V = detail::basis(ds.post_jacobian_normalized(x));
    const double fro = (U.transpose() * V).norm();
    return fro + detail::single_state_penalty(ds, V, cfg, ctx.cycle_cols,
                                              ctx.gammas);
  };
  const auto starts =
      default_starts(ds.lb, ds.ub, cfg.multistart_count, cfg.seed);
  auto cur =
      multistart_pattern_search(warm, ds.lb, ds.ub, starts, cfg.search);

  DetectorSpec dummy{0.05, 1, chi2_threshold(0.05, 1)};
  auto locate_U1 = [&](const VectorXd& x) {
    return weakest_point(ds.pair(x), 1.0, dummy).U1;
  };

  // Penalized cosine of the weakest nonzero angle; the quantity the
  // refinement ultimately drives down.
  auto score = [&](const VectorXd& x) {
    const MatrixXd V = detail::basis(ds.post_jacobian_normalized(x));
    return std::cos(weakest_point(ds.pair(x), 1.0, dummy).theta_weak) +
           detail::single_state_penalty(ds, V, cfg, ctx.cycle_cols,
                                        ctx.gammas);
  };

  // The non-smooth spectral refinement can stall in a basin where the
  // composite rank drops. Full-magnitude random-sign perturbations reach
  // maximal rank almost surely, so offer them as alternative starts and
  // keep whichever scores best.
  {
    double cur_score = score(cur.x);
    auto rng = make_rng(cfg.seed, 0xd4a3);
    std::uniform_real_distribution<double> mag(0.25, 1.0);
    std::bernoulli_distribution flip(0.5);
    for (int s = 0; s < std::max(cfg.multistart_count, 8); ++s) {
      VectorXd x(ds.lb.size());
      for (int i = 0; i < x.size(); ++i)
        x[i] = mag(rng) * (flip(rng) ? ds.ub[i] : ds.lb[i]);
      const double sc = score(x);
      if (sc < cur_score) {
        cur_score = sc;
        cur.x = x;
      }
    }
  }
  const VectorXd refine_start = cur.x;

  MatrixXd U1 = locate_U1(cur.x);
  VectorXd best_x = cur.x;
  double best_obj = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    Objective step = [&](const VectorXd& x) {
      const MatrixXd V = detail::basis(ds.post_jacobian_normalized(x));
      // || P P' - U1 U1^T ||: deflate the frozen intersection
      const MatrixXd M =
          U * (U.transpose() * V) * V.transpose() - U1 * U1.transpose();
      Eigen::JacobiSVD<MatrixXd> svd(M);
      return svd.singularValues()[0] +
             detail::single_state_penalty(ds, V, cfg, ctx.cycle_cols,
                                          ctx.gammas);
    };
    const auto local = pattern_search(step, ds.lb, ds.ub, cur.x, cfg.search);
    if (local.value < best_obj) {
      best_obj = local.value;
      best_x = local.x;
    }
    const MatrixXd U1_next = locate_U1(local.x);
    // basis-independent convergence: spectral distance of the projectors
    const MatrixXd dP =
        U1_next * U1_next.transpose() - U1 * U1.transpose();
    Eigen::JacobiSVD<MatrixXd> svd(dP);
    cur.x = local.x;
    U1 = U1_next;
    if (svd.singularValues().size() == 0 ||
        svd.singularValues()[0] <= cfg.tol) {
      converged = true;
      ++iter;
      break;
    }
  }
  VectorXd chosen = converged ? cur.x : best_x;
  // never hand back something worse than the refinement start
  if (score(chosen) > score(refine_start)) chosen = refine_start;
  auto res = detail::finish(ds, chosen, 0.0, iter, converged);
  res.objective_value = std::cos(res.theta_weak);
  return res;
}

/// Max-rank baseline: every D-FACTS branch perturbed by a uniform random
/// magnitude in [mu_min x, mu_max x] with random sign.
inline MtdStrategy max_rank_baseline(const GridCase& grid, double mu_min,
                                     double mu_max, std::uint64_t seed) {
  if (!(mu_min > 0.0 && mu_min <= mu_max))
    throw std::invalid_argument("need 0 < mu_min <= mu_max");
  MtdStrategy s = MtdStrategy::none(grid.n_branch());
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> mag(mu_min, mu_max);
  std::bernoulli_distribution flip(0.5);
  for (int k : grid.dfacts_branches()) {
    const double a = mag(rng) * grid.branches[k].x;
    s.delta_x[k] = flip(rng) ? a : -a;
  }
  return s;
}

}  // namespace gridmtd
