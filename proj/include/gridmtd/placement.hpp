#pragma once

#include "gridmtd/grid.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

namespace gridmtd {

/// Simple undirected graph over bus indices, edges carry branch ids so
/// results map back to the canonical branch order.
struct BusGraph {
  int n = 0;
  std::vector<std::array<int, 3>> edges;  // {u, v, branch_id}

  static BusGraph from_case(const GridCase& c) {
    BusGraph g;
    g.n = c.n_bus();
    for (int k = 0; k < c.n_branch(); ++k)
      g.edges.push_back({c.branches[k].from_bus, c.branches[k].to_bus, k});
    return g;
  }

  BusGraph restricted(const std::vector<int>& edge_ids) const {
    BusGraph g;
    g.n = n;
    std::set<int> keep(edge_ids.begin(), edge_ids.end());
    for (const auto& e : edges)
      if (keep.count(e[2])) g.edges.push_back(e);
    return g;
  }

  std::vector<int> edge_ids() const {
    std::vector<int> out;
    for (const auto& e : edges) out.push_back(e[2]);
    return out;
  }
};

/// Maximum-cardinality matching on a general graph (Edmonds' blossom
/// algorithm: grow alternating forests, contract odd cycles, augment).
/// Returns matched branch ids. O(V^3), ample for grid-sized graphs.
inline std::vector<int> max_matching(const BusGraph& g) {
  const int n = g.n;
  // adjacency over distinct vertex pairs; parallel edges never help a matching
  std::vector<std::vector<int>> adj(n);
  std::vector<std::vector<int>> eid(n, std::vector<int>(n, -1));
  for (const auto& e : g.edges) {
    if (e[0] == e[1]) continue;
    if (eid[e[0]][e[1]] < 0) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
      eid[e[0]][e[1]] = eid[e[1]][e[0]] = e[2];
    }
  }

  std::vector<int> match(n, -1), parent(n), base(n);
  std::vector<bool> used(n), blossom(n);

  auto lowest_common_ancestor = [&](int a, int b) {
    std::vector<bool> seen(n, false);
    for (;;) {
      a = base[a];
      seen[a] = true;
      if (match[a] == -1) break;
      a = parent[match[a]];
    }
    for (;;) {
      b = base[b];
      if (seen[b]) return b;
      b = parent[match[b]];
    }
  };

  auto mark_path = [&](int v, int b, int child, std::queue<int>& q) {
    while (base[v] != b) {
      blossom[base[v]] = true;
      blossom[base[match[v]]] = true;
      parent[v] = child;
      child = match[v];
      if (!used[match[v]]) {
        used[match[v]] = true;
        q.push(match[v]);
      }
      v = parent[match[v]];
    }
  };

  auto find_augmenting_path = [&](int root) -> int {
    std::fill(used.begin(), used.end(), false);
    std::fill(parent.begin(), parent.end(), -1);
    for (int i = 0; i < n; ++i) base[i] = i;
    used[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
          // odd cycle: contract the blossom
          int b = lowest_common_ancestor(v, to);
          std::fill(blossom.begin(), blossom.end(), false);
          mark_path(v, b, to, q);
          mark_path(to, b, v, q);
          for (int i = 0; i < n; ++i)
            if (blossom[base[i]]) {
              base[i] = b;
              if (!used[i]) {
                used[i] = true;
                q.push(i);
              }
            }
        } else if (parent[to] == -1) {
          parent[to] = v;
          if (match[to] == -1) return to;  // augmenting path found
          used[match[to]] = true;
          q.push(match[to]);
        }
      }
    }
    return -1;
  };

  for (int v = 0; v < n; ++v) {
    if (match[v] != -1 || adj[v].empty()) continue;
    int u = find_augmenting_path(v);
    while (u != -1) {  // flip the path back to the root
      int pv = parent[u], ppv = match[pv];
      match[u] = pv;
      match[pv] = u;
      u = ppv;
    }
  }

  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (match[v] > v) out.push_back(eid[v][match[v]]);
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum edge cover: a maximum matching extended greedily with one
/// incident edge per uncovered vertex. Vertices with no incident edge in
/// the graph are skipped by the caller's contract.
inline std::vector<int> min_edge_cover(const BusGraph& g) {
  std::vector<int> cover = max_matching(g);
  std::vector<bool> covered(g.n, false), present(g.n, false);
  for (const auto& e : g.edges) present[e[0]] = present[e[1]] = true;
  std::set<int> chosen(cover.begin(), cover.end());
  for (const auto& e : g.edges)
    if (chosen.count(e[2])) covered[e[0]] = covered[e[1]] = true;
  for (int v = 0; v < g.n; ++v) {
    if (covered[v] || !present[v]) continue;
    if (present[v] && !covered[v]) {
      // first incident edge in canonical order
      int pick = -1;
      for (const auto& e : g.edges)
        if (e[0] == v || e[1] == v) {
          pick = e[2];
          break;
        }
      if (pick < 0) throw std::logic_error("isolated vertex in edge cover");
      chosen.insert(pick);
      covered[v] = true;
      for (const auto& e : g.edges)
        if (e[2] == pick) covered[e[0]] = covered[e[1]] = true;
    }
  }
  return std::vector<int>(chosen.begin(), chosen.end());
}

namespace detail {

/// Cycle basis of an edge-id subgraph, as branch-id lists.
inline std::vector<std::vector<int>> graph_cycle_basis(const BusGraph& g) {
  // union-find spanning forest; each non-tree edge closes one cycle
  std::vector<int> uf(g.n);
  for (int i = 0; i < g.n; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) {
    return uf[x] == x ? x : uf[x] = find(uf[x]);
  };
  std::vector<std::vector<std::pair<int, int>>> tree_adj(g.n);
  std::vector<std::array<int, 3>> chords;
  for (const auto& e : g.edges) {
    int a = find(e[0]), b = find(e[1]);
    if (a == b) {
      chords.push_back(e);
    } else {
      uf[a] = b;
      tree_adj[e[0]].push_back({e[1], e[2]});
      tree_adj[e[1]].push_back({e[0], e[2]});
    }
  }
  std::vector<std::vector<int>> cycles;
  for (const auto& ch : chords) {
    // BFS tree path between chord endpoints
    std::vector<int> prev_edge(g.n, -1), prev_bus(g.n, -1);
    std::vector<bool> seen(g.n, false);
    std::queue<int> q;
    q.push(ch[0]);
    seen[ch[0]] = true;
    while (!q.empty() && !seen[ch[1]]) {
      int u = q.front();
      q.pop();
      for (auto [v, k] : tree_adj[u])
        if (!seen[v]) {
          seen[v] = true;
          prev_edge[v] = k;
          prev_bus[v] = u;
          q.push(v);
        }
    }
    std::vector<int> cyc = {ch[2]};
    for (int v = ch[1]; v != ch[0]; v = prev_bus[v]) cyc.push_back(prev_edge[v]);
    std::sort(cyc.begin(), cyc.end());
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace detail

struct PlacementResult {
  std::vector<int> dfacts_branches;  // 0-based branch ids, sorted
  std::vector<int> covered_buses;
  std::vector<int> excluded_buses;   // buses on no cycle
  std::vector<std::vector<int>> residual_loops;  // leftover complement cycles
  bool complement_acyclic = false;
  int k_min = -1;  // filled by the caller via the subspace module
};

/// D-FACTS placement: minimum edge cover of the cycle-covered subgraph,
/// then per remaining complement cycle move one edge across, provided
/// the device subgraph stays acyclic.
inline PlacementResult dfacts_placement(const GridCase& c) {
  PlacementResult res;
  const auto nc = cycle_buses(c);
  std::vector<bool> on_cycle(c.n_bus(), false);
  for (int b : nc) on_cycle[b] = true;
  for (int b = 0; b < c.n_bus(); ++b)
    if (!on_cycle[b]) res.excluded_buses.push_back(b);
  if (nc.empty()) return res;  // tree grid: nothing a perturbation can expose

  // reduced graph: cycle buses and the branches among them
  BusGraph reduced;
  reduced.n = c.n_bus();
  for (int k = 0; k < c.n_branch(); ++k) {
    const Branch& br = c.branches[k];
    if (on_cycle[br.from_bus] && on_cycle[br.to_bus])
      reduced.edges.push_back({br.from_bus, br.to_bus, k});
  }

  std::set<int> e_min_set;
  for (int k : min_edge_cover(reduced)) e_min_set.insert(k);
  auto complement_ids = [&]() {
    std::vector<int> out;
    for (const auto& e : reduced.edges)
      if (!e_min_set.count(e[2])) out.push_back(e[2]);
    return out;
  };

  // Break complement loops one at a time, recomputing the basis after each
  // move. Prefer a move that keeps the device subgraph acyclic; on dense
  // grids (more branches than twice a spanning tree) no such move may
  // exist, in which case full loop coverage wins and the first loop edge
  // in canonical order is taken anyway.
  auto device_acyclic = [&]() {
    return detail::graph_cycle_basis(reduced.restricted(
               std::vector<int>(e_min_set.begin(), e_min_set.end())))
        .empty();
  };
  for (int guard = 0; guard < c.n_branch(); ++guard) {
    const auto loops =
        detail::graph_cycle_basis(reduced.restricted(complement_ids()));
    if (loops.empty()) break;
    const auto& loop = loops.front();
    int fallback = -1;
    bool moved = false;
    for (int k : loop) {  // canonical branch order within the loop
      if (fallback < 0) fallback = k;
      e_min_set.insert(k);
      if (device_acyclic()) {
        moved = true;
        break;
      }
      e_min_set.erase(k);
    }
    if (!moved) e_min_set.insert(fallback);
  }

  res.dfacts_branches.assign(e_min_set.begin(), e_min_set.end());
  res.residual_loops =
      detail::graph_cycle_basis(reduced.restricted(complement_ids()));
  res.complement_acyclic = res.residual_loops.empty();
  std::vector<bool> covered(c.n_bus(), false);
  for (int k : res.dfacts_branches) {
    covered[c.branches[k].from_bus] = true;
    covered[c.branches[k].to_bus] = true;
  }
  for (int b : nc)
    if (covered[b]) res.covered_buses.push_back(b);
  return res;
}

}  // namespace gridmtd
