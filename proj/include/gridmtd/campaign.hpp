#pragma once

#include <nlohmann/json.hpp>

#include "gridmtd/attack.hpp"
#include "gridmtd/design.hpp"
#include "gridmtd/grid.hpp"
#include "gridmtd/powerflow.hpp"
#include "gridmtd/subspace.hpp"

#include <array>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gridmtd {

enum class DesignerKind { RobustAuto, RobustComplete, RobustIncomplete, MaxRank };

inline const char* to_string(DesignerKind d) {
  switch (d) {
    case DesignerKind::RobustAuto: return "robust";
    case DesignerKind::RobustComplete: return "robust_complete";
    case DesignerKind::RobustIncomplete: return "robust_incomplete";
    case DesignerKind::MaxRank: return "max_rank";
  }
  return "?";
}

struct CampaignConfig {
  double alpha = 0.05;
  double sigma = 0.01;      // per-channel noise (p.u.)
  int no_load = 10;         // sampled load conditions
  int no_attack = 50;       // attack attempts per load
  int no_maxrank = 5;       // baseline strategies averaged per attack
  double load_spread = 0.10;
  double mu_min = 0.05;
  double mu_max = 0.20;
  std::uint64_t seed = 42;
  bool with_max_rank = true;
  bool with_clean = true;   // also log un-attacked trials (FPR calibration)
  bool retain_residuals = true;
  int threads = 0;          // 0: hardware concurrency
  OptimizerConfig optimizer;
  AcAttackOptions ac;

  /// Paper-scale trial counts (50 loads x 200 attacks x 20 baselines).
  CampaignConfig paper_scale() const {
    CampaignConfig c = *this;
    c.no_load = 50;
    c.no_attack = 200;
    c.no_maxrank = 20;
    return c;
  }
};

struct ResidualRow {
  int load_idx = 0;
  int trial_idx = 0;
  std::string strategy;
  AttackKind kind = AttackKind::AcRandom;
  int bucket = -1;
  double rho = 0.0;
  double gamma = 0.0;
  bool detected = false;
};

struct BucketStats {
  long trials = 0;
  long detections = 0;
  double adp() const { return trials ? double(detections) / trials : 0.0; }
};

struct CampaignReport {
  std::string case_name;
  DetectorSpec detector;
  CampaignConfig config;
  // strategy -> per-bucket tallies; bucket index kBucketCount holds
  // below-threshold/clean trials.
  std::map<std::string, std::array<BucketStats, kBucketCount + 1>> stats;
  std::vector<ResidualRow> residuals;

  void add(const ResidualRow& row) {
    const int b = row.bucket >= 0 ? row.bucket : kBucketCount;
    auto& s = stats[row.strategy][b];
    ++s.trials;
    if (row.detected) ++s.detections;
    if (config.retain_residuals) residuals.push_back(row);
  }

  void merge(const CampaignReport& other) {
    for (const auto& [name, buckets] : other.stats)
      for (int b = 0; b <= kBucketCount; ++b) {
        stats[name][b].trials += buckets[b].trials;
        stats[name][b].detections += buckets[b].detections;
      }
    residuals.insert(residuals.end(), other.residuals.begin(),
                     other.residuals.end());
  }
};

/// Empirical detection rate of a fixed normalized attack on the
/// simplified model: gamma = ||S'(a_N + e)||^2 with e ~ N(0, I).
inline double simplified_detection_rate(const JacobianPair& pair,
                                        const VectorXd& a_N,
                                        const DetectorSpec& detector,
                                        int trials, std::uint64_t seed) {
  int hits = 0;
  std::normal_distribution<double> gauss;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(t));
    VectorXd e(pair.m());
    for (int i = 0; i < pair.m(); ++i) e[i] = gauss(rng);
    const double gamma = (pair.S_N_post * (a_N + e)).squaredNorm();
    if (gamma > detector.threshold) ++hits;
  }
  return double(hits) / trials;
}

namespace detail {

struct LoadContext {
  GridCase grid;           // case with sampled loads
  StateVector pre_state;   // pre-MTD operating point
  VectorXd R;              // full measurement covariance diagonal
  DetectorSpec detector;
};

inline LoadContext make_load_context(const GridCase& base,
                                     const CampaignConfig& cfg, int load_idx) {
  LoadContext ctx;
  ctx.grid = base;
  auto rng = make_rng(cfg.seed, 0x10adULL, static_cast<std::uint64_t>(load_idx));
  std::uniform_real_distribution<double> f(1.0 - cfg.load_spread,
                                           1.0 + cfg.load_spread);
  if (load_idx > 0) {  // load 0 keeps the default profile
    for (int b = 0; b < ctx.grid.n_bus(); ++b) {
      const double s = f(rng);
      ctx.grid.load_p[b] *= s;
      ctx.grid.load_q[b] *= s;
    }
  }
  const MtdStrategy none = MtdStrategy::none(base.n_branch());
  ctx.pre_state = solve_powerflow(ctx.grid, none);
  ctx.R = isotropic_variance(base, cfg.sigma);
  ctx.detector = make_detector(cfg.alpha, residual_dof(base));
  return ctx;
}

inline MtdStrategy design_strategy(const LoadContext& ctx, DesignerKind kind,
                                   const CampaignConfig& cfg,
                                   std::uint64_t salt) {
  const VectorXd R_flow =
      VectorXd::Constant(ctx.grid.n_branch(), cfg.sigma * cfg.sigma);
  switch (kind) {
    case DesignerKind::MaxRank:
      return max_rank_baseline(ctx.grid, cfg.mu_min, cfg.mu_max,
                               mix_seed(cfg.seed, 0xba5eULL, salt));
    case DesignerKind::RobustComplete:
      return robust_complete(ctx.grid, ctx.pre_state, R_flow, cfg.optimizer)
          .strategy;
    case DesignerKind::RobustIncomplete:
      return robust_incomplete(ctx.grid, ctx.pre_state, R_flow, cfg.optimizer)
          .strategy;
    case DesignerKind::RobustAuto:
    default:
      if (ctx.grid.n_branch() >= 2 * ctx.grid.n_state())
        return robust_complete(ctx.grid, ctx.pre_state, R_flow, cfg.optimizer)
            .strategy;
      return robust_incomplete(ctx.grid, ctx.pre_state, R_flow, cfg.optimizer)
          .strategy;
  }
}

// One attacked (or clean) full-AC trial: simulate, estimate, detect.
inline ResidualRow run_trial(const LoadContext& ctx,
                             const MtdStrategy& strategy,
                             const std::string& label, const VectorXd& c_bias,
                             const CampaignConfig& cfg, int load_idx,
                             int trial_idx, std::uint64_t noise_salt) {
  const StateVector post_state = solve_powerflow(ctx.grid, strategy);

  ResidualRow row;
  row.load_idx = load_idx;
  row.trial_idx = trial_idx;
  row.strategy = label;
  row.kind = AttackKind::AcRandom;

  VectorXd a = VectorXd::Zero(measurement_count(ctx.grid));
  if (c_bias.size() > 0) {
    const MtdStrategy pre = MtdStrategy::none(ctx.grid.n_branch());
    StateVector biased = post_state;
    int col = 0;
    for (int b = 0; b < ctx.grid.n_bus(); ++b)
      if (b != ctx.grid.ref_bus) biased.theta[b] += c_bias[col++];
    a = measurement_function(biased, ctx.grid, pre) -
        measurement_function(post_state, ctx.grid, pre);
    row.rho = attack_strength(a, ctx.R);
    row.bucket = strength_bucket(row.rho);
  }

  MeasurementVector meas = simulate_measurements(
      post_state, ctx.grid, strategy, ctx.R,
      mix_seed(cfg.seed, 0x0e15ULL, static_cast<std::uint64_t>(load_idx),
               static_cast<std::uint64_t>(trial_idx), noise_salt));
  meas.z += a;

  const StateVector est = wls_estimate(meas, ctx.grid, strategy);
  row.gamma = residual_norm(meas, est, ctx.grid, strategy);
  row.detected = row.gamma > ctx.detector.threshold;
  return row;
}

inline CampaignReport run_campaign_load(const GridCase& base,
                                        const CampaignConfig& cfg,
                                        DesignerKind designer, int load_idx) {
  CampaignReport rep;
  rep.case_name = base.name;
  rep.config = cfg;
  const LoadContext ctx = make_load_context(base, cfg, load_idx);
  rep.detector = ctx.detector;

  const MtdStrategy robust = design_strategy(ctx, designer, cfg, 0);
  const std::string robust_label = to_string(designer);

  for (int t = 0; t < cfg.no_attack; ++t) {
    // state bias sampled once per attempt, shared across strategies
    auto rng = make_rng(cfg.seed, 0xa77ULL, static_cast<std::uint64_t>(load_idx),
                        static_cast<std::uint64_t>(t));
    const int n = ctx.grid.n_state();
    std::uniform_int_distribution<int> qdist(1, n);
    std::uniform_real_distribution<double> box(-cfg.ac.c_max, cfg.ac.c_max);
    VectorXd c = VectorXd::Zero(n);
    const int q = qdist(rng);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < q; ++i) {
      std::uniform_int_distribution<int> pick(i, n - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    for (int i = 0; i < q; ++i) c[idx[i]] = box(rng);

    rep.add(run_trial(ctx, robust, robust_label, c, cfg, load_idx, t, 0));
    if (cfg.with_max_rank) {
      for (int s = 0; s < cfg.no_maxrank; ++s) {
        const MtdStrategy mr = design_strategy(
            ctx, DesignerKind::MaxRank, cfg,
            mix_seed(static_cast<std::uint64_t>(load_idx),
                     static_cast<std::uint64_t>(t),
                     static_cast<std::uint64_t>(s)));
        rep.add(run_trial(ctx, mr, "max_rank", c, cfg, load_idx, t,
                          static_cast<std::uint64_t>(s + 1)));
      }
    }
    if (cfg.with_clean)
      rep.add(run_trial(ctx, robust, "clean", VectorXd(), cfg, load_idx, t,
                        0xc1ea4ULL));
  }
  return rep;
}

}  // namespace detail

/// Full-AC Monte-Carlo campaign: per sampled load, design the MTD, craft
/// attacks with the attacker's pre-MTD model, then run WLS + chi-square
/// detection on the post-MTD system. Deterministic under (seed, config).
inline CampaignReport run_campaign(const GridCase& base,
                                   const CampaignConfig& cfg,
                                   DesignerKind designer = DesignerKind::RobustAuto) {
  base.validate();
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int threads =
      std::max(1, std::min(cfg.threads > 0 ? cfg.threads : hw, cfg.no_load));

  std::vector<std::future<CampaignReport>> jobs;
  std::atomic<int> next{0};
  std::vector<CampaignReport> partial(cfg.no_load);
  auto worker = [&]() {
    for (;;) {
      const int l = next.fetch_add(1);
      if (l >= cfg.no_load) return;
      partial[l] = detail::run_campaign_load(base, cfg, designer, l);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  CampaignReport rep;
  rep.case_name = base.name;
  rep.config = cfg;
  for (const auto& p : partial) {
    rep.detector = p.detector;
    rep.merge(p);
  }
  return rep;
}

/// Residual samples as CSV for downstream plotting.
inline std::string residual_csv(const CampaignReport& rep) {
  std::ostringstream out;
  out << "load_idx,trial_idx,strategy,kind,bucket,rho,gamma,detected\n";
  for (const auto& r : rep.residuals)
    out << r.load_idx << ',' << r.trial_idx << ',' << r.strategy << ','
        << to_string(r.kind) << ',' << bucket_label(r.bucket) << ',' << r.rho
        << ',' << r.gamma << ',' << (r.detected ? 1 : 0) << '\n';
  return out.str();
}

inline nlohmann::json report_json(const CampaignReport& rep) {
  nlohmann::json j;
  j["case"] = rep.case_name;
  j["alpha"] = rep.detector.alpha;
  j["dof"] = rep.detector.dof;
  j["threshold"] = rep.detector.threshold;
  j["config"] = {{"no_load", rep.config.no_load},
                 {"no_attack", rep.config.no_attack},
                 {"no_maxrank", rep.config.no_maxrank},
                 {"sigma", rep.config.sigma},
                 {"seed", rep.config.seed}};
  for (const auto& [name, buckets] : rep.stats) {
    nlohmann::json arr = nlohmann::json::array();
    for (int b = 0; b <= kBucketCount; ++b) {
      if (buckets[b].trials == 0) continue;
      arr.push_back({{"bucket", b < kBucketCount ? bucket_label(b) : "clean/<5"},
                     {"trials", buckets[b].trials},
                     {"detections", buckets[b].detections},
                     {"adp", buckets[b].adp()}});
    }
    j["strategies"][name] = arr;
  }
  return j;
}

}  // namespace gridmtd
