#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridmtd {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A transmission branch. Reactance must be positive; `tau` bounds the
/// D-FACTS perturbation as a fraction of `x`.
struct Branch {
  int from_bus = 0;  // 0-based
  int to_bus = 0;    // 0-based
  double r = 0.0;
  double x = 0.0;
  bool has_dfacts = true;
  double tau = 0.2;
};

/// Per-branch series admittance y = g + jb.
struct Admittance {
  VectorXd g;
  VectorXd b;
};

/// Reactance perturbation commanded to the D-FACTS devices.
/// delta_x has one entry per branch; entries on branches without a
/// device must be zero and the rest must stay within [-tau*x, tau*x].
struct MtdStrategy {
  VectorXd delta_x;

  static MtdStrategy none(int m) { return MtdStrategy{VectorXd::Zero(m)}; }
};

/// Incidence matrices of the grid in canonical branch order.
/// A = C_f - C_t; A_r drops the reference-bus column.
struct IncidenceSet {
  MatrixXd A;    // m x n_bus, rows have one +1 (from) and one -1 (to)
  MatrixXd A_r;  // m x (n_bus - 1)
  MatrixXd C_f;  // m x n_bus, 0/1
  MatrixXd C_t;  // m x n_bus, 0/1
};

/// Immutable grid model: buses, branches and net power injections.
/// Branch order in the source document is the canonical index; all
/// user-facing reports are 1-based.
class GridCase {
 public:
  std::string name;
  double base_mva = 100.0;
  int ref_bus = 0;  // 0-based
  double ref_vm = 1.0;
  std::vector<Branch> branches;
  VectorXd load_p;  // net active injection per bus (p.u.)
  VectorXd load_q;  // net reactive injection per bus (p.u.)

  int n_bus() const { return static_cast<int>(load_p.size()); }
  int n_branch() const { return static_cast<int>(branches.size()); }
  /// Number of non-reference buses (the paper's n).
  int n_state() const { return n_bus() - 1; }

  std::vector<int> dfacts_branches() const {
    std::vector<int> out;
    for (int k = 0; k < n_branch(); ++k)
      if (branches[k].has_dfacts) out.push_back(k);
    return out;
  }

  void validate() const;
  void validate_strategy(const MtdStrategy& s, double tol = 1e-12) const;

  /// Restricts D-FACTS devices to the given branch set (0-based indices).
  GridCase with_placement(const std::vector<int>& dfacts) const {
    GridCase out = *this;
    std::vector<bool> keep(branches.size(), false);
    for (int k : dfacts) keep.at(static_cast<size_t>(k)) = true;
    for (size_t k = 0; k < out.branches.size(); ++k)
      out.branches[k].has_dfacts = keep[k];
    return out;
  }

  GridCase with_tau(double tau) const {
    GridCase out = *this;
    for (auto& br : out.branches) br.tau = tau;
    return out;
  }
};

namespace detail {

inline std::vector<std::vector<std::pair<int, int>>> adjacency(
    const GridCase& c) {
  // adjacency[bus] = list of (neighbor, branch index)
  std::vector<std::vector<std::pair<int, int>>> adj(c.n_bus());
  for (int k = 0; k < c.n_branch(); ++k) {
    adj[c.branches[k].from_bus].push_back({c.branches[k].to_bus, k});
    adj[c.branches[k].to_bus].push_back({c.branches[k].from_bus, k});
  }
  return adj;
}

inline bool connected(const GridCase& c) {
  if (c.n_bus() == 0) return false;
  auto adj = adjacency(c);
  std::vector<bool> seen(c.n_bus(), false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, k] : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace detail

inline void GridCase::validate() const {
  if (n_bus() < 2) throw GridError(name + ": need at least 2 buses");
  if (ref_bus < 0 || ref_bus >= n_bus())
    throw GridError(name + ": reference bus out of range");
  if (load_q.size() != load_p.size())
    throw GridError(name + ": inconsistent injection vectors");
  for (int k = 0; k < n_branch(); ++k) {
    const Branch& br = branches[k];
    if (br.from_bus < 0 || br.from_bus >= n_bus() || br.to_bus < 0 ||
        br.to_bus >= n_bus() || br.from_bus == br.to_bus)
      throw GridError(name + ": branch " + std::to_string(k + 1) +
                      " has invalid endpoints");
    if (!(br.x > 0.0))
      throw GridError(name + ": branch " + std::to_string(k + 1) +
                      " needs x > 0");
    if (br.r < 0.0)
      throw GridError(name + ": branch " + std::to_string(k + 1) +
                      " needs r >= 0");
    if (br.tau < 0.0 || br.tau >= 1.0)
      throw GridError(name + ": branch " + std::to_string(k + 1) +
                      " needs 0 <= tau < 1");
  }
  if (!detail::connected(*this)) throw GridError(name + ": graph disconnected");
}

inline void GridCase::validate_strategy(const MtdStrategy& s,
                                        double tol) const {
  if (s.delta_x.size() != n_branch())
    throw GridError("strategy length != branch count");
  for (int k = 0; k < n_branch(); ++k) {
    const Branch& br = branches[k];
    const double dx = s.delta_x[k];
    if (!br.has_dfacts) {
      if (dx != 0.0)
        throw GridError("perturbation on branch " + std::to_string(k + 1) +
                        " without D-FACTS device");
    } else if (std::abs(dx) > br.tau * br.x + tol) {
      throw GridError("perturbation bound violated on branch " +
                      std::to_string(k + 1));
    }
  }
}

/// Series admittance with the strategy applied: g = r/(r^2+x'^2),
/// b = -x'/(r^2+x'^2), x' = x + delta_x. Charging and taps are neglected.
inline Admittance branch_admittance(const GridCase& c, const MtdStrategy& s) {
  c.validate_strategy(s);
  const int m = c.n_branch();
  Admittance y{VectorXd(m), VectorXd(m)};
  for (int k = 0; k < m; ++k) {
    const double r = c.branches[k].r;
    const double x = c.branches[k].x + s.delta_x[k];
    const double d = r * r + x * x;
    y.g[k] = r / d;
    y.b[k] = -x / d;
  }
  return y;
}

inline IncidenceSet incidence(const GridCase& c) {
  const int m = c.n_branch(), nb = c.n_bus();
  IncidenceSet inc;
  inc.C_f = MatrixXd::Zero(m, nb);
  inc.C_t = MatrixXd::Zero(m, nb);
  for (int k = 0; k < m; ++k) {
    inc.C_f(k, c.branches[k].from_bus) = 1.0;
    inc.C_t(k, c.branches[k].to_bus) = 1.0;
  }
  inc.A = inc.C_f - inc.C_t;
  inc.A_r.resize(m, nb - 1);
  int col = 0;
  for (int b = 0; b < nb; ++b) {
    if (b == c.ref_bus) continue;
    inc.A_r.col(col++) = inc.A.col(b);
  }
  return inc;
}

/// Independent cycles as branch-index lists (spanning tree + one chord
/// per cycle). Returns exactly m - n_bus + 1 cycles on connected grids.
inline std::vector<std::vector<int>> cycle_basis(const GridCase& c) {
  const int nb = c.n_bus();
  auto adj = detail::adjacency(c);

  // BFS spanning tree: parent branch per bus.
  std::vector<int> parent_branch(nb, -1), parent_bus(nb, -1), depth(nb, 0);
  std::vector<bool> in_tree_branch(c.n_branch(), false);
  std::vector<bool> seen(nb, false);
  std::vector<int> queue = {c.ref_bus};
  seen[c.ref_bus] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (auto [v, k] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      parent_branch[v] = k;
      parent_bus[v] = u;
      depth[v] = depth[u] + 1;
      in_tree_branch[k] = true;
      queue.push_back(v);
    }
  }

  std::vector<std::vector<int>> cycles;
  for (int k = 0; k < c.n_branch(); ++k) {
    if (in_tree_branch[k]) continue;
    // chord k closes a cycle: k plus the tree path between its endpoints
    std::vector<int> cyc = {k};
    int a = c.branches[k].from_bus, b = c.branches[k].to_bus;
    while (depth[a] > depth[b]) {
      cyc.push_back(parent_branch[a]);
      a = parent_bus[a];
    }
    while (depth[b] > depth[a]) {
      cyc.push_back(parent_branch[b]);
      b = parent_bus[b];
    }
    while (a != b) {
      cyc.push_back(parent_branch[a]);
      cyc.push_back(parent_branch[b]);
      a = parent_bus[a];
      b = parent_bus[b];
    }
    std::sort(cyc.begin(), cyc.end());
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

/// Buses that lie on at least one cycle (the paper's N^c). Attacks on the
/// remaining buses cannot be exposed by any reactance change.
inline std::vector<int> cycle_buses(const GridCase& c) {
  std::vector<bool> on_cycle(c.n_bus(), false);
  for (const auto& cyc : cycle_basis(c))
    for (int k : cyc) {
      on_cycle[c.branches[k].from_bus] = true;
      on_cycle[c.branches[k].to_bus] = true;
    }
  std::vector<int> out;
  for (int b = 0; b < c.n_bus(); ++b)
    if (on_cycle[b]) out.push_back(b);
  return out;
}

/// Parses a case document. Injections are net p.u. values (generation
/// minus demand); `dfacts`/`tau` per branch are optional.
inline GridCase load_case(const nlohmann::json& doc,
                          double default_tau = 0.2) {
  GridCase c;
  try {
    c.name = doc.value("name", "unnamed");
    c.base_mva = doc.value("base_mva", 100.0);
    const auto& buses = doc.at("buses");
    const int nb = static_cast<int>(buses.size());
    c.load_p.resize(nb);
    c.load_q.resize(nb);
    std::vector<int> ids;
    for (int i = 0; i < nb; ++i) {
      const auto& b = buses.at(i);
      ids.push_back(b.at("id").get<int>());
      c.load_p[i] = b.at("p").get<double>();
      c.load_q[i] = b.at("q").get<double>();
    }
    auto bus_index = [&](int id) {
      auto it = std::find(ids.begin(), ids.end(), id);
      if (it == ids.end())
        throw GridError("unknown bus id " + std::to_string(id));
      return static_cast<int>(it - ids.begin());
    };
    c.ref_bus = bus_index(doc.at("ref_bus").get<int>());
    c.ref_vm = doc.value("ref_vm", 1.0);
    for (const auto& b : doc.at("branches")) {
      Branch br;
      br.from_bus = bus_index(b.at("from").get<int>());
      br.to_bus = bus_index(b.at("to").get<int>());
      br.r = b.at("r").get<double>();
      br.x = b.at("x").get<double>();
      br.has_dfacts = b.value("dfacts", true);
      br.tau = b.value("tau", default_tau);
      c.branches.push_back(br);
    }
  } catch (const nlohmann::json::exception& e) {
    throw GridError(std::string("case parse failure: ") + e.what());
  }
  c.validate();
  return c;
}

inline GridCase load_case(const std::string& text, double default_tau = 0.2) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GridError(std::string("case parse failure: ") + e.what());
  }
  return load_case(doc, default_tau);
}

inline GridCase load_case(const char* text, double default_tau = 0.2) {
  return load_case(std::string(text), default_tau);
}

}  // namespace gridmtd
