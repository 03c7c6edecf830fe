// gridmtd command-line tool: case inspection, D-FACTS placement, MTD
// design, weakest-point certification, attack campaigns, and reporting.

#include <CLI11.hpp>

#include "gridmtd/gridmtd.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace gridmtd;
using nlohmann::json;

struct Timer {
  std::string phase;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  explicit Timer(std::string p) : phase(std::move(p)) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    std::cerr << "[time] " << phase << ": " << s << " s\n";
  }
};

struct RunConfig {
  std::string case_ref = "case14";
  std::string designer = "robust_auto";
  double alpha = 0.05;
  double sigma = 0.01;
  std::optional<double> tau;  // overrides per-branch tau when set
  double mu_min = 0.05;
  double mu_max = 0.20;
  double gamma = 0.99;
  std::string single_state = "upper";  // upper | lower | none
  int no_load = 10;
  int no_attack = 50;
  int no_maxrank = 5;
  double load_spread = 0.10;
  double c_max = 0.05;
  int multistart = 12;
  int threads = 0;
  std::uint64_t seed = 42;
  std::vector<double> rho_grid = {5, 7, 10, 15, 20, 25};
  bool use_placement = false;  // restrict design to Algorithm-style placement
};

RunConfig load_config(const std::string& path) {
  RunConfig c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j = json::parse(in);
  auto get = [&](const char* k, auto& field) {
    if (j.contains(k)) field = j.at(k).get<std::decay_t<decltype(field)>>();
  };
  get("case", c.case_ref);
  get("designer", c.designer);
  get("alpha", c.alpha);
  get("sigma", c.sigma);
  if (j.contains("tau")) c.tau = j.at("tau").get<double>();
  get("mu_min", c.mu_min);
  get("mu_max", c.mu_max);
  get("gamma", c.gamma);
  get("single_state", c.single_state);
  get("no_load", c.no_load);
  get("no_attack", c.no_attack);
  get("no_maxrank", c.no_maxrank);
  get("load_spread", c.load_spread);
  get("c_max", c.c_max);
  get("multistart", c.multistart);
  get("threads", c.threads);
  get("seed", c.seed);
  get("rho_grid", c.rho_grid);
  get("use_placement", c.use_placement);
  return c;
}

GridCase load_grid(const RunConfig& cfg) {
  GridCase g;
  const auto names = builtin_case_names();
  if (std::find(names.begin(), names.end(), cfg.case_ref) != names.end()) {
    g = builtin_case(cfg.case_ref);
  } else {
    std::ifstream in(cfg.case_ref);
    if (!in) throw GridError("cannot open case file: " + cfg.case_ref);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    g = load_case(text);
  }
  if (cfg.tau) g = g.with_tau(*cfg.tau);
  return g;
}

OptimizerConfig optimizer_config(const RunConfig& cfg) {
  OptimizerConfig oc;
  oc.multistart_count = cfg.multistart;
  oc.gamma = cfg.gamma;
  oc.seed = cfg.seed;
  if (cfg.single_state == "none")
    oc.single_state = SingleStateConstraint::None;
  else if (cfg.single_state == "lower")
    oc.single_state = SingleStateConstraint::LowerBound;
  else
    oc.single_state = SingleStateConstraint::UpperBound;
  return oc;
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write: " + out);
    f << j.dump(2) << "\n";
  }
}

json design_json(const GridCase& g, const DesignResult& res) {
  json j;
  j["case"] = g.name;
  j["delta_x"] = std::vector<double>(
      res.strategy.delta_x.data(),
      res.strategy.delta_x.data() + res.strategy.delta_x.size());
  j["objective_value"] = res.objective_value;
  j["theta_weak"] = res.theta_weak;
  j["k"] = res.k;
  j["iterations"] = res.iterations;
  j["converged"] = res.converged;
  j["complete"] = res.complete;
  return j;
}

DesignResult run_design(const GridCase& g, const RunConfig& cfg) {
  const auto state = solve_powerflow(g, MtdStrategy::none(g.n_branch()));
  const VectorXd R_flow =
      VectorXd::Constant(g.n_branch(), cfg.sigma * cfg.sigma);
  const auto oc = optimizer_config(cfg);
  if (cfg.designer == "robust_complete")
    return robust_complete(g, state, R_flow, oc);
  if (cfg.designer == "robust_incomplete")
    return robust_incomplete(g, state, R_flow, oc);
  if (cfg.designer == "max_rank") {
    DesignResult res;
    res.strategy = max_rank_baseline(g, cfg.mu_min, cfg.mu_max, cfg.seed);
    const auto pair = make_jacobian_pair(g, res.strategy, state, R_flow);
    const auto dec = principal_decomposition(pair);
    res.k = 2 * pair.n() - composite_rank(pair);
    res.theta_weak = dec.angles[std::min<int>(res.k, pair.n() - 1)];
    res.objective_value = std::cos(res.theta_weak);
    res.converged = true;
    res.complete = (res.k == 0);
    return res;
  }
  if (cfg.designer == "robust_auto") {
    return g.n_branch() >= 2 * g.n_state()
               ? robust_complete(g, state, R_flow, oc)
               : robust_incomplete(g, state, R_flow, oc);
  }
  throw std::runtime_error("unknown designer: " + cfg.designer);
}

int cmd_info(const RunConfig& cfg) {
  Timer t("info");
  const auto g = load_grid(cfg);
  const int n = g.n_state(), m = g.n_branch();
  std::cout << "case: " << g.name << "\n"
            << "buses: " << g.n_bus() << " (ref bus " << g.ref_bus + 1
            << ", v=" << g.ref_vm << ")\n"
            << "branches: m=" << m << ", states: n=" << n << "\n"
            << "measurements: p=" << measurement_count(g)
            << ", chi-square dof=" << residual_dof(g) << "\n"
            << "complete-capable: "
            << (m >= 2 * n ? "yes" : "no") << " (m=" << m << " vs 2n="
            << 2 * n << ")\n";
  const auto cyc = cycle_buses(g);
  std::vector<int> excluded;
  for (int b = 0; b < g.n_bus(); ++b)
    if (std::find(cyc.begin(), cyc.end(), b) == cyc.end())
      excluded.push_back(b + 1);
  std::cout << "cycle basis size: " << cycle_basis(g).size() << "\n";
  if (excluded.empty()) {
    std::cout << "cycle-excluded buses: none\n";
  } else {
    std::cout << "cycle-excluded buses (MTD-blind):";
    for (int b : excluded) std::cout << ' ' << b;
    std::cout << "\n";
  }
  if (cyc.empty())
    std::cout << "warning: all buses cycle-excluded; MTD ineffective\n";
  return 0;
}

int cmd_placement(const RunConfig& cfg, const std::string& out) {
  Timer t("placement");
  const auto g = load_grid(cfg);
  auto pl = dfacts_placement(g);
  if (!pl.dfacts_branches.empty()) {
    // achieved k at a random feasible perturbation on the placement
    const auto gp = g.with_placement(pl.dfacts_branches);
    const auto state = solve_powerflow(gp, MtdStrategy::none(gp.n_branch()));
    const auto mr = max_rank_baseline(gp, cfg.mu_min, cfg.mu_max, cfg.seed);
    const VectorXd R_flow =
        VectorXd::Constant(gp.n_branch(), cfg.sigma * cfg.sigma);
    const auto pair = make_jacobian_pair(gp, mr, state, R_flow);
    pl.k_min = 2 * pair.n() - composite_rank(pair);
  }
  json j;
  j["case"] = g.name;
  j["dfacts_branches"] = pl.dfacts_branches;
  j["covered_buses"] = pl.covered_buses;
  j["excluded_buses"] = pl.excluded_buses;
  j["complement_acyclic"] = pl.complement_acyclic;
  j["residual_loops"] = pl.residual_loops;
  j["k_min"] = pl.k_min;
  emit(j, out);
  return 0;
}

int cmd_design(const RunConfig& cfg, const std::string& out) {
  Timer t("design");
  auto g = load_grid(cfg);
  if (cfg.use_placement) {
    const auto pl = dfacts_placement(g);
    g = g.with_placement(pl.dfacts_branches);
  }
  const auto res = run_design(g, cfg);
  emit(design_json(g, res), out);
  return res.converged ? 0 : 1;
}

int cmd_certify(const RunConfig& cfg, const std::string& out) {
  Timer t("certify");
  auto g = load_grid(cfg);
  if (cfg.use_placement) {
    const auto pl = dfacts_placement(g);
    g = g.with_placement(pl.dfacts_branches);
  }
  const auto res = run_design(g, cfg);
  const auto state = solve_powerflow(g, MtdStrategy::none(g.n_branch()));
  const VectorXd R_flow =
      VectorXd::Constant(g.n_branch(), cfg.sigma * cfg.sigma);
  const auto pair = make_jacobian_pair(g, res.strategy, state, R_flow);
  const auto det =
      make_detector(cfg.alpha, g.n_branch() - g.n_state());
  json j = design_json(g, res);
  json table = json::array();
  json weak;
  for (double rho : cfg.rho_grid) {
    const double a_norm = rho * std::sqrt(double(g.n_branch()));
    const auto rep = weakest_point(pair, a_norm, det);
    table.push_back({{"rho", rho},
                     {"attack_norm", a_norm},
                     {"theta_weak", rep.theta_weak},
                     {"f_min", rep.f_min}});
    if (weak.empty()) {
      weak["k"] = rep.k;
      weak["rank_composite"] = rep.rank;
      weak["u_weak"] = std::vector<double>(
          rep.u_weak.data(), rep.u_weak.data() + rep.u_weak.size());
    }
  }
  j["weakest_point"] = weak;
  j["f_min_table"] = table;
  emit(j, out);
  return 0;
}

int cmd_campaign(const RunConfig& cfg, const std::string& out,
                 bool paper_scale) {
  Timer t("campaign");
  const auto g = load_grid(cfg);
  CampaignConfig cc;
  cc.alpha = cfg.alpha;
  cc.sigma = cfg.sigma;
  cc.no_load = cfg.no_load;
  cc.no_attack = cfg.no_attack;
  cc.no_maxrank = cfg.no_maxrank;
  cc.load_spread = cfg.load_spread;
  cc.mu_min = cfg.mu_min;
  cc.mu_max = cfg.mu_max;
  cc.seed = cfg.seed;
  cc.threads = cfg.threads;
  cc.ac.c_max = cfg.c_max;
  cc.optimizer = optimizer_config(cfg);
  if (paper_scale) cc = cc.paper_scale();
  DesignerKind dk = DesignerKind::RobustAuto;
  if (cfg.designer == "robust_complete") dk = DesignerKind::RobustComplete;
  if (cfg.designer == "robust_incomplete") dk = DesignerKind::RobustIncomplete;
  if (cfg.designer == "max_rank") dk = DesignerKind::MaxRank;
  const auto rep = run_campaign(g, cc, dk);
  emit(report_json(rep), out);
  if (!out.empty()) {
    const std::string csv_path = out + ".residuals.csv";
    std::ofstream csv(csv_path);
    csv << residual_csv(rep);
    std::cerr << "residual samples: " << csv_path << "\n";
  }
  return 0;
}

int cmd_report(const std::string& in) {
  Timer t("report");
  std::ifstream f(in);
  if (!f) throw std::runtime_error("cannot open report: " + in);
  json j = json::parse(f);
  std::cout << "case " << j.at("case").get<std::string>() << ", alpha="
            << j.at("alpha").get<double>() << ", dof=" << j.at("dof").get<int>()
            << ", threshold=" << j.at("threshold").get<double>() << "\n\n";
  std::cout << "strategy            bucket       trials  detections   ADP\n";
  for (const auto& [name, arr] : j.at("strategies").items()) {
    for (const auto& row : arr) {
      char line[128];
      std::snprintf(line, sizeof line, "%-18s  %-10s %8ld   %8ld   %6.3f",
                    name.c_str(),
                    row.at("bucket").get<std::string>().c_str(),
                    row.at("trials").get<long>(),
                    row.at("detections").get<long>(),
                    row.at("adp").get<double>());
      std::cout << line << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moving-target-defence toolkit for power-grid FDI detection"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string case_ref, config_path, out;
  std::optional<std::uint64_t> seed_flag;
  bool paper_scale = false;

  app.add_option("--case", case_ref, "builtin case name or JSON case path");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed_flag, "RNG seed override");
  app.add_option("--out", out, "output file (default: stdout)");
  app.add_flag("--paper-scale", paper_scale,
               "use full-scale campaign trial counts");

  auto* info = app.add_subcommand("info", "print case summary");
  auto* placement = app.add_subcommand("placement", "D-FACTS placement");
  auto* design = app.add_subcommand("design", "MTD reactance design");
  auto* certify =
      app.add_subcommand("certify", "weakest-point certification");
  auto* campaign = app.add_subcommand("campaign", "Monte-Carlo campaign");
  auto* report = app.add_subcommand("report", "pretty-print a campaign JSON");
  std::string report_in;
  report->add_option("input", report_in, "campaign JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    if (!case_ref.empty()) cfg.case_ref = case_ref;
    if (seed_flag) cfg.seed = *seed_flag;

    if (info->parsed()) return cmd_info(cfg);
    if (placement->parsed()) return cmd_placement(cfg, out);
    if (design->parsed()) return cmd_design(cfg, out);
    if (certify->parsed()) return cmd_certify(cfg, out);
    if (campaign->parsed()) return cmd_campaign(cfg, out, paper_scale);
    if (report->parsed()) return cmd_report(report_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
