#pragma once

// Weighted undirected multigraph, input parsing, and the evolving edge
// weight state shared by the solver modules.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

class parse_error : public std::runtime_error {
 public:
  enum class Kind { SelfLoop, NonPositiveCapacity, Disconnected, Malformed };

  parse_error(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Edge {
  int u = 0;
  int v = 0;
  double capacity = 0.0;
};

// Immutable connected multigraph with positive capacities. Vertex ids are
// 0..n-1, edge ids 0..m-1 in input order. Parallel edges are kept distinct;
// self-loops are rejected.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ <= 0) throw parse_error(parse_error::Kind::Malformed, "graph: vertex count must be positive");
    adjacency_.assign(n_, {});
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
      const Edge& e = edges_[id];
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw parse_error(parse_error::Kind::Malformed,
                          "graph: edge " + std::to_string(id) + " has endpoint out of range");
      if (e.u == e.v)
        throw parse_error(parse_error::Kind::SelfLoop,
                          "graph: edge " + std::to_string(id) + " is a self-loop");
      if (!(e.capacity > 0.0) || !std::isfinite(e.capacity))
        throw parse_error(parse_error::Kind::NonPositiveCapacity,
                          "graph: edge " + std::to_string(id) + " has non-positive capacity");
      adjacency_[e.u].push_back(id);
      adjacency_[e.v].push_back(id);
    }
    if (!connected())
      throw parse_error(parse_error::Kind::Disconnected, "graph: input graph is disconnected");
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_[id]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Incident edge ids of v, in input order.
  const std::vector<int>& incident(int v) const { return adjacency_[v]; }

  int other_endpoint(int edge_id, int v) const {
    const Edge& e = edges_[edge_id];
    return e.u == v ? e.v : e.u;
  }

 private:
  bool connected() const {
    if (edges_.empty()) return n_ == 1;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int id : adjacency_[v]) {
        int w = other_endpoint(id, v);
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == n_;
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// Parses the text format: header "p <n> <m>", then m lines "e <u> <v> <c>"
// with 1-based vertex ids. Lines starting with "c" are comments.
inline Graph parse_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  long n = -1, m = -1;
  std::vector<Edge> edges;

  auto malformed = [&](const std::string& msg) {
    return parse_error(parse_error::Kind::Malformed,
                       "parse: line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag == "c") continue;
    if (tag == "p") {
      if (n != -1) throw malformed("duplicate header line");
      if (!(ls >> n >> m) || n <= 0 || m < 0) throw malformed("expected 'p <n> <m>'");
      std::string rest;
      if (ls >> rest) throw malformed("trailing tokens after header");
      continue;
    }
    if (tag == "e") {
      if (n == -1) throw malformed("edge line before header");
      long u, v;
      double cap;
      if (!(ls >> u >> v >> cap)) throw malformed("expected 'e <u> <v> <c>'");
      std::string rest;
      if (ls >> rest) throw malformed("trailing tokens after edge");
      if (u < 1 || u > n || v < 1 || v > n) throw malformed("vertex id out of range");
      if (u == v)
        throw parse_error(parse_error::Kind::SelfLoop,
                          "parse: line " + std::to_string(lineno) + ": self-loop");
      if (!(cap > 0.0) || !std::isfinite(cap))
        throw parse_error(parse_error::Kind::NonPositiveCapacity,
                          "parse: line " + std::to_string(lineno) + ": capacity must be positive");
      edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), cap});
      continue;
    }
    throw malformed("unknown line tag '" + tag + "'");
  }
  if (n == -1) throw parse_error(parse_error::Kind::Malformed, "parse: missing header line");
  if (static_cast<long>(edges.size()) != m)
    throw parse_error(parse_error::Kind::Malformed,
                      "parse: header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(edges.size()));
  return Graph(static_cast<int>(n), std::move(edges));
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline void serialize_graph(const Graph& g, std::ostream& out) {
  out << "p " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  out.precision(17);
  for (const Edge& e : g.edges())
    out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.capacity << '\n';
}

inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  serialize_graph(g, out);
  return out.str();
}

// Evolving edge weights of the MWU run. Weights start at 1/c and only ever
// increase. Only the lazily maintained approximation is materialized; the
// exact weights coincide with it at every flush boundary. Log values are
// kept alongside the plain values since weights reach m^{O(1/eps)}.
class WeightState {
 public:
  explicit WeightState(const Graph& g) { reset(g); }

  void reset(const Graph& g) {
    int m = g.edge_count();
    log_w_.resize(m);
    w_.resize(m);
    for (int id = 0; id < m; ++id) {
      log_w_[id] = -std::log(g.edge(id).capacity);
      w_[id] = 1.0 / g.edge(id).capacity;
    }
    wc_sum_ = static_cast<double>(m);  // <w, c> = m at w = 1/c
  }

  int size() const { return static_cast<int>(w_.size()); }
  double weight(int edge_id) const { return w_[edge_id]; }
  double log_weight(int edge_id) const { return log_w_[edge_id]; }
  double wc_sum() const { return wc_sum_; }

  // Applies an emitted log-weight gain and returns the additive weight
  // increment. Gains are always positive.
  double apply_log_gain(int edge_id, double log_gain, double capacity) {
    double before = w_[edge_id];
    log_w_[edge_id] += log_gain;
    double after = before * std::exp(log_gain);
    w_[edge_id] = after;
    double delta = after - before;
    wc_sum_ += capacity * delta;
    return delta;
  }

  // Recomputes <w, c> directly; used at epoch boundaries to cancel the
  // drift of incremental maintenance.
  void resync_wc_sum(const Graph& g) {
    double s = 0.0;
    for (int id = 0; id < g.edge_count(); ++id) s += w_[id] * g.edge(id).capacity;
    wc_sum_ = s;
  }

 private:
  std::vector<double> log_w_;
  std::vector<double> w_;
  double wc_sum_ = 0.0;
};

// Sum of approximate weights over edges incident to v.
inline double weighted_degree(const Graph& g, const WeightState& ws, int v) {
  double s = 0.0;
  for (int id : g.incident(v)) s += ws.weight(id);
  return s;
}

// FNV-1a over the canonical serialization; used to key run records.
inline std::uint64_t graph_digest(const Graph& g) {
  std::string text = serialize_graph(g);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hk
