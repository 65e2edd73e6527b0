#pragma once

// Exact global minimum cut (Stoer-Wagner) and exhaustive cut enumeration.
// The solver uses the exact cut once to seed the epoch target and again to
// verify certificates; enumeration backs the randomized test oracles.

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hkbound/graph.hpp"

namespace hk {

struct CutSide {
  std::vector<int> vertex_set;  // one side S, 0 < |S| < n
  std::vector<int> edge_set;    // edges with exactly one endpoint in S
  double weight = 0.0;
};

// Builds the full CutSide for a given vertex subset under a value map.
inline CutSide make_cut_side(const Graph& g, const std::vector<double>& value,
                             std::vector<int> vertex_set) {
  std::vector<char> in_side(g.vertex_count(), 0);
  for (int v : vertex_set) in_side[v] = 1;
  CutSide side;
  side.vertex_set = std::move(vertex_set);
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (in_side[e.u] != in_side[e.v]) {
      side.edge_set.push_back(id);
      side.weight += value[id];
    }
  }
  return side;
}

// Deterministic Stoer-Wagner. O(n^3 + nm) with the scan-based maximum
// adjacency search; ties broken toward smaller vertex ids, minimum kept
// first-found. Desk-scale replacement for randomized near-linear min cut.
inline std::pair<double, CutSide> global_mincut(const Graph& g,
                                                const std::vector<double>& value) {
  int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("global_mincut: need at least two vertices");
  for (double x : value)
    if (x < 0.0) throw std::invalid_argument("global_mincut: negative edge value");

  // Aggregated weights between supervertices.
  std::vector<std::map<int, double>> adj(n);
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    adj[e.u][e.v] += value[id];
    adj[e.v][e.u] += value[id];
  }
  std::vector<std::vector<int>> members(n);
  for (int v = 0; v < n; ++v) members[v] = {v};
  std::vector<char> active(n, 1);

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_side = {0};

  for (int phase = 0; phase < n - 1; ++phase) {
    int start = 0;
    while (!active[start]) ++start;

    std::vector<char> in_a(n, 0);
    std::vector<double> conn(n, 0.0);
    in_a[start] = 1;
    for (auto& [x, w] : adj[start]) conn[x] += w;

    int remaining = -1;  // count of active vertices not yet in A
    {
      int cnt = 0;
      for (int v = 0; v < n; ++v)
        if (active[v]) ++cnt;
      remaining = cnt - 1;
    }

    int s = start, t = start;
    while (remaining > 0) {
      int pick = -1;
      double pick_conn = -1.0;
      for (int v = 0; v < n; ++v) {
        if (!active[v] || in_a[v]) continue;
        if (conn[v] > pick_conn) {
          pick_conn = conn[v];
          pick = v;
        }
      }
      in_a[pick] = 1;
      s = t;
      t = pick;
      --remaining;
      for (auto& [x, w] : adj[pick])
        if (active[x] && !in_a[x]) conn[x] += w;
    }

    if (conn[t] < best) {
      best = conn[t];
      best_side = members[t];
    }

    // Merge t into s.
    for (auto& [x, w] : adj[t]) {
      if (x == s) continue;
      adj[s][x] += w;
      adj[x][s] += w;
      adj[x].erase(t);
    }
    adj[s].erase(t);
    adj[t].clear();
    members[s].insert(members[s].end(), members[t].begin(), members[t].end());
    members[t].clear();
    active[t] = 0;
  }

  std::sort(best_side.begin(), best_side.end());
  return {best, make_cut_side(g, value, std::move(best_side))};
}

inline std::pair<double, CutSide> global_mincut(const Graph& g, const WeightState& ws) {
  std::vector<double> value(g.edge_count());
  for (int id = 0; id < g.edge_count(); ++id) value[id] = ws.weight(id);
  return global_mincut(g, value);
}

// All 2^{n-1}-1 cuts, vertex 0 fixed to the complement side. Guarded to
// n <= 20; this is a test oracle, not a solver path.
inline std::vector<CutSide> enumerate_cuts(const Graph& g, const std::vector<double>& value) {
  int n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("enumerate_cuts: n > 20");
  std::vector<CutSide> cuts;
  std::uint32_t limit = 1u << (n - 1);
  cuts.reserve(limit - 1);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    std::vector<int> side;
    for (int v = 1; v < n; ++v)
      if (mask & (1u << (v - 1))) side.push_back(v);
    cuts.push_back(make_cut_side(g, value, std::move(side)));
  }
  return cuts;
}

}  // namespace hk
