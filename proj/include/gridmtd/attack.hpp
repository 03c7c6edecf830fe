#pragma once

#include <Eigen/Dense>

#include "gridmtd/grid.hpp"
#include "gridmtd/powerflow.hpp"
#include "gridmtd/random.hpp"
#include "gridmtd/subspace.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridmtd {

enum class AttackKind { WorstCase, SingleState, Random, AcRandom };

inline const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::WorstCase: return "worst_case";
    case AttackKind::SingleState: return "single_state";
    case AttackKind::Random: return "random";
    case AttackKind::AcRandom: return "ac_random";
  }
  return "?";
}

/// One crafted attack: state bias c, measurement bias a, and the
/// noise-relative strength rho = ||a|| / sqrt(sum sigma_i^2).
struct AttackScenario {
  AttackKind kind = AttackKind::Random;
  VectorXd c;  // state-attack vector (rad)
  VectorXd a;  // measurement-attack vector (p.u.)
  double rho = 0.0;
  std::optional<int> target_bus;
};

inline double attack_strength(const VectorXd& a, const VectorXd& R) {
  return a.norm() / std::sqrt(R.sum());
}

/// Strength buckets used in campaign reports: [5,7), [7,10), [10,15),
/// [15,20), [20,25), [25,inf). Returns -1 below the first bucket.
inline int strength_bucket(double rho) {
  static constexpr double edges[] = {5, 7, 10, 15, 20, 25};
  int b = -1;
  for (double e : edges)
    if (rho >= e) ++b;
  return b;
}

inline constexpr int kBucketCount = 6;

inline std::string bucket_label(int b) {
  static const char* labels[] = {"[5,7)",   "[7,10)",  "[10,15)",
                                 "[15,20)", "[20,25)", "[25,inf)"};
  return (b >= 0 && b < kBucketCount) ? labels[b] : "<5";
}

namespace detail {

// Rescales (c, a) so that the scenario hits the requested strength.
inline void rescale_to_rho(AttackScenario& s, double rho, const VectorXd& R) {
  const double cur = attack_strength(s.a, R);
  if (cur <= 0.0) throw std::runtime_error("null attack direction");
  const double scale = rho / cur;
  s.a *= scale;
  s.c *= scale;
  s.rho = rho;
}

}  // namespace detail

/// Random simplified-model attack: q-sparse Gaussian state bias mapped
/// through the pre-MTD flow Jacobian, rescaled to strength rho.
/// J is the unnormalized m x n flow Jacobian; R_flow its noise variances.
inline AttackScenario gen_random_attack(const MatrixXd& J,
                                        const VectorXd& R_flow, double rho,
                                        int q, std::uint64_t seed) {
  const int n = static_cast<int>(J.cols());
  if (q < 1 || q > n) throw std::invalid_argument("q out of range");
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss;
  AttackScenario s;
  s.kind = AttackKind::Random;
  for (int attempt = 0; attempt < 64; ++attempt) {
    // uniform q-subset via partial Fisher-Yates
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < q; ++i) {
      std::uniform_int_distribution<int> pick(i, n - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    s.c = VectorXd::Zero(n);
    for (int i = 0; i < q; ++i) s.c[idx[i]] = gauss(rng);
    s.a = J * s.c;
    if (s.a.norm() > 1e-12) {
      detail::rescale_to_rho(s, rho, R_flow);
      return s;
    }
  }
  throw std::runtime_error("random attack kept collapsing to J c = 0");
}

/// Worst-case attack on the weakest point u_{k+1} of a decomposition.
/// The report lives in normalized space; a = R^{1/2} a_N.
inline AttackScenario gen_worst_case(const WeakestPointReport& rep,
                                     const JacobianPair& pair,
                                     const VectorXd& R_flow, double rho) {
  AttackScenario s;
  s.kind = AttackKind::WorstCase;
  const VectorXd a_unit = R_flow.cwiseSqrt().asDiagonal() * rep.u_weak;
  s.a = a_unit;
  // recover c from a_N = J_N c by least squares
  s.c = pair.J_N.colPivHouseholderQr().solve(rep.u_weak);
  if (rho == 0.0) {
    s.a.setZero();
    s.c.setZero();
    s.rho = 0.0;
    return s;
  }
  detail::rescale_to_rho(s, rho, R_flow);
  return s;
}

/// Single-state attack: bias one non-reference phase angle.
/// `state_col` is the Jacobian column of the target bus.
inline AttackScenario gen_single_state(const MatrixXd& J,
                                       const VectorXd& R_flow, int state_col,
                                       int target_bus, double rho) {
  AttackScenario s;
  s.kind = AttackKind::SingleState;
  s.target_bus = target_bus;
  s.c = VectorXd::Zero(J.cols());
  s.c[state_col] = 1.0;
  s.a = J.col(state_col);
  if (s.a.norm() <= 1e-12)
    throw std::runtime_error("target bus column is zero");
  detail::rescale_to_rho(s, rho, R_flow);
  return s;
}

struct AcAttackOptions {
  double c_max = 0.05;  // per-angle uniform box half-width (rad)
  int max_resamples = 200;
};

/// Full-AC attack built with the attacker's pre-MTD model around the
/// post-MTD state: a = h(state + c) - h(state), bucketed by strength and
/// resampled until it clears the lowest bucket.
inline AttackScenario gen_ac_attack(const GridCase& grid,
                                    const StateVector& state,
                                    const VectorXd& R, std::uint64_t seed,
                                    const AcAttackOptions& opt = {}) {
  const MtdStrategy pre = MtdStrategy::none(grid.n_branch());
  const VectorXd h0 = measurement_function(state, grid, pre);
  const int n = grid.n_state();
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> box(-opt.c_max, opt.c_max);
  std::uniform_int_distribution<int> qdist(1, n);
  for (int attempt = 0; attempt < opt.max_resamples; ++attempt) {
    const int q = qdist(rng);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < q; ++i) {
      std::uniform_int_distribution<int> pick(i, n - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    StateVector biased = state;
    AttackScenario s;
    s.kind = AttackKind::AcRandom;
    s.c = VectorXd::Zero(n);
    std::vector<int> bus_of_col;
    for (int b = 0; b < grid.n_bus(); ++b)
      if (b != grid.ref_bus) bus_of_col.push_back(b);
    for (int i = 0; i < q; ++i) {
      const double dc = box(rng);
      s.c[idx[i]] = dc;
      biased.theta[bus_of_col[idx[i]]] += dc;
    }
    s.a = measurement_function(biased, grid, pre) - h0;
    s.rho = attack_strength(s.a, R);
    if (strength_bucket(s.rho) >= 0) return s;
  }
  throw std::runtime_error("ac attack sampler starved below bucket floor");
}

}  // namespace gridmtd
