#pragma once

// Euler-tour order of a rooted tree, the range tree over its 2n symbols,
// and the canonical cut family: any 1-cut or 2-cut of the tree decomposes
// into O(log^2 n) disjoint canonical cuts, each a pair of disjoint range
// tree node spans holding the edges that cross between them.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hkbound/graph.hpp"
#include "hkbound/path_forest.hpp"

namespace hk {

// Positions of v- and v+ in the total order on the 2n tour symbols.
// Children are visited in ascending id order, so the order is unique.
class EulerOrder {
 public:
  explicit EulerOrder(const std::vector<int>& parent) {
    int n = static_cast<int>(parent.size());
    auto children = detail::children_lists(parent);
    int root = 0;
    while (parent[root] != -1) ++root;
    pos_minus_.assign(n, -1);
    pos_plus_.assign(n, -1);
    int next = 0;
    std::vector<std::pair<int, int>> stack = {{root, 0}};
    while (!stack.empty()) {
      auto& [v, ci] = stack.back();
      if (ci == 0) pos_minus_[v] = next++;
      if (ci < static_cast<int>(children[v].size())) {
        int c = children[v][ci++];
        stack.push_back({c, 0});
      } else {
        pos_plus_[v] = next++;
        stack.pop_back();
      }
    }
    vertex_at_minus_.assign(2 * n, -1);
    for (int v = 0; v < n; ++v) vertex_at_minus_[pos_minus_[v]] = v;
  }

  int size() const { return static_cast<int>(pos_minus_.size()); }
  int minus(int v) const { return pos_minus_[v]; }
  int plus(int v) const { return pos_plus_[v]; }

  // v lies in the subtree of a (inclusive).
  bool in_subtree(int v, int a) const {
    return pos_minus_[a] <= pos_minus_[v] && pos_minus_[v] <= pos_plus_[a];
  }

 private:
  std::vector<int> pos_minus_;
  std::vector<int> pos_plus_;
  std::vector<int> vertex_at_minus_;
};

// Succinct identifier of a 1-cut or 2-cut relative to a rooted tree.
struct CutDescriptor {
  enum class Kind { OneCut, Incomparable2Cut, Nested2Cut };
  Kind kind = Kind::OneCut;
  int s = -1;
  int t = -1;  // unused for OneCut

  static CutDescriptor one_cut(int s) { return {Kind::OneCut, s, -1}; }
  static CutDescriptor incomparable(int s, int t) { return {Kind::Incomparable2Cut, s, t}; }
  static CutDescriptor nested(int s, int t) { return {Kind::Nested2Cut, s, t}; }

  bool operator==(const CutDescriptor&) const = default;
};

struct Interval {
  int lo = 0;
  int hi = -1;  // inclusive; lo > hi means empty
  bool empty() const { return lo > hi; }
};

// The two sides of a descriptor as unions of at most 2 and 3 intervals on
// the symbol positions. Membership of an edge is decided by its endpoints'
// minus positions: the edge crosses iff exactly one of them lies in side1.
struct CutSides {
  std::vector<Interval> side1;
  std::vector<Interval> side2;
};

class CanonicalCutFamily {
 public:
  struct CanonicalCut {
    int node_a = 0;       // range tree node ids, span(a) left of span(b)
    int node_b = 0;
    std::vector<int> edges;  // edge ids sorted by capacity ascending
    double gamma = 0.0;      // min capacity in the cut
    bool complete = false;   // full edge list present
  };

  // Builds the family for graph g under Euler order eo (of some rooted
  // spanning tree on the same vertex set). With materialize_all (the
  // default for small n) every nonempty canonical cut is stored up front;
  // otherwise cuts are extracted from a merge-sort tree on first touch.
  CanonicalCutFamily(const Graph& g, const EulerOrder& eo, bool materialize_all_now = true)
      : graph_(&g), euler_(&eo) {
    int n = eo.size();
    positions_ = 2 * n;
    leaf_count_ = 1;
    levels_ = 0;
    while (leaf_count_ < positions_) {
      leaf_count_ <<= 1;
      ++levels_;
    }
    if (leaf_count_ == 1) levels_ = 0;

    span_lo_.assign(2 * leaf_count_, 0);
    span_hi_.assign(2 * leaf_count_, -1);
    for (int i = 0; i < leaf_count_; ++i) {
      span_lo_[leaf_count_ + i] = i;
      span_hi_[leaf_count_ + i] = i;
    }
    for (int a = leaf_count_ - 1; a >= 1; --a) {
      span_lo_[a] = span_lo_[2 * a];
      span_hi_[a] = span_hi_[2 * a + 1];
    }

    // Edge endpoints as minus positions, canonically pu < pv.
    int m = g.edge_count();
    edge_pu_.resize(m);
    edge_pv_.resize(m);
    for (int id = 0; id < m; ++id) {
      int a = eo.minus(g.edge(id).u);
      int b = eo.minus(g.edge(id).v);
      edge_pu_[id] = std::min(a, b);
      edge_pv_[id] = std::max(a, b);
    }

    // Global capacity order (ties by id): canonical cut edge lists are
    // born sorted when inserted in this order.
    cap_order_.resize(m);
    for (int id = 0; id < m; ++id) cap_order_[id] = id;
    std::sort(cap_order_.begin(), cap_order_.end(), [&](int x, int y) {
      if (g.edge(x).capacity != g.edge(y).capacity)
        return g.edge(x).capacity < g.edge(y).capacity;
      return x < y;
    });

    build_merge_sort_tree();
    if (materialize_all_now) materialize_all();
  }

  int tree_height() const { return levels_; }

  // ---- descriptor geometry -------------------------------------------

  CutSides sides(const CutDescriptor& cd) const {
    const EulerOrder& eo = *euler_;
    int last = positions_ - 1;
    CutSides out;
    auto push = [](std::vector<Interval>& list, int lo, int hi) {
      if (lo <= hi) list.push_back({lo, hi});
    };
    switch (cd.kind) {
      case CutDescriptor::Kind::OneCut: {
        if (eo.minus(cd.s) == 0)
          throw std::invalid_argument("decompose: 1-cut at the root is not a cut");
        push(out.side1, eo.minus(cd.s), eo.plus(cd.s));
        push(out.side2, 0, eo.minus(cd.s) - 1);
        push(out.side2, eo.plus(cd.s) + 1, last);
        break;
      }
      case CutDescriptor::Kind::Incomparable2Cut: {
        int s = cd.s, t = cd.t;
        if (s == t || eo.in_subtree(s, t) || eo.in_subtree(t, s))
          throw std::invalid_argument("decompose: vertices are not incomparable");
        if (eo.minus(s) > eo.minus(t)) std::swap(s, t);
        push(out.side1, eo.minus(s), eo.plus(s));
        push(out.side1, eo.minus(t), eo.plus(t));
        push(out.side2, 0, eo.minus(s) - 1);
        push(out.side2, eo.plus(s) + 1, eo.minus(t) - 1);
        push(out.side2, eo.plus(t) + 1, last);
        break;
      }
      case CutDescriptor::Kind::Nested2Cut: {
        int s = cd.s, t = cd.t;
        if (s == t || !eo.in_subtree(s, t))
          throw std::invalid_argument("decompose: s must be a strict descendant of t");
        push(out.side1, eo.minus(t), eo.minus(s) - 1);
        push(out.side1, eo.plus(s) + 1, eo.plus(t));
        push(out.side2, 0, eo.minus(t) - 1);
        push(out.side2, eo.minus(s), eo.plus(s));
        push(out.side2, eo.plus(t) + 1, last);
        break;
      }
    }
    return out;
  }

  // Euler membership test: does the cut described by cd contain the edge?
  bool brute_force_member(const CutDescriptor& cd, int edge_id) const {
    CutSides ss = sides(cd);
    auto in1 = [&](int p) {
      for (const Interval& iv : ss.side1)
        if (iv.lo <= p && p <= iv.hi) return true;
      return false;
    };
    return in1(edge_pu_[edge_id]) != in1(edge_pv_[edge_id]);
  }

  std::vector<int> brute_force_cut_edges(const CutDescriptor& cd) const {
    std::vector<int> out;
    for (int id = 0; id < graph_->edge_count(); ++id)
      if (brute_force_member(cd, id)) out.push_back(id);
    return out;
  }

  // ---- decomposition ---------------------------------------------------

  // Ids of the nonempty canonical cuts whose disjoint union is the cut of
  // cd. Materializes touched cuts on demand in lazy mode.
  std::vector<int> decompose(const CutDescriptor& cd) {
    CutSides ss = sides(cd);
    std::vector<int> nodes1 = cover_nodes(ss.side1);
    std::vector<int> nodes2 = cover_nodes(ss.side2);
    std::vector<int> out;
    for (int a : nodes1)
      for (int b : nodes2) {
        int id = cut_id_for_pair(a, b);
        if (id >= 0) out.push_back(id);
      }
    return out;
  }

  // Canonical nodes covering one side (for the decomposition-size tests).
  std::vector<int> cover_nodes(const std::vector<Interval>& side) const {
    std::vector<int> nodes;
    for (const Interval& iv : side)
      if (!iv.empty()) decompose_interval(iv.lo, iv.hi, nodes);
    return nodes;
  }

  const CanonicalCut& cut(int id) const { return cuts_[id]; }
  int materialized_count() const { return static_cast<int>(cuts_.size()); }

  // Forces every nonempty canonical cut into existence (O(m log^2 n)
  // insertions); the lazy mode calls this never, tests call it freely.
  void materialize_all() {
    if (fully_materialized_) return;
    for (int e : cap_order_) {
      int la = leaf_count_ + edge_pu_[e];
      int lb = leaf_count_ + edge_pv_[e];
      // All disjoint ancestor pairs: both strictly below the heap lca.
      for (int a = la; a > 1; a >>= 1)
        for (int b = lb; b > 1; b >>= 1) {
          if (!disjoint(a, b)) continue;
          int x = a, y = b;
          if (span_lo_[x] > span_lo_[y]) std::swap(x, y);
          auto it = pair_index_.find(pair_key(x, y));
          int id;
          if (it == pair_index_.end()) {
            CanonicalCut cc;
            cc.node_a = x;
            cc.node_b = y;
            id = static_cast<int>(cuts_.size());
            cuts_.push_back(std::move(cc));
            pair_index_.emplace(pair_key(x, y), id);
          } else {
            id = it->second;
            assert(id >= 0 && "edge enumerates a pair cached as empty");
          }
          if (!cuts_[id].complete) append_edge(id, e);
        }
    }
    for (auto& cc : cuts_) cc.complete = true;
    fully_materialized_ = true;
  }

  // Number of canonical cuts the edge belongs to (membership bound tests).
  int membership_count(int edge_id) const {
    int la = leaf_count_ + edge_pu_[edge_id];
    int lb = leaf_count_ + edge_pv_[edge_id];
    int count = 0;
    for (int a = la; a > 1; a >>= 1)
      for (int b = lb; b > 1; b >>= 1)
        if (disjoint(a, b)) ++count;
    return count;
  }

 private:
  bool disjoint(int a, int b) const {
    return span_hi_[a] < span_lo_[b] || span_hi_[b] < span_lo_[a];
  }

  static std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }

  void decompose_interval(int lo, int hi, std::vector<int>& out) const {
    int l = lo + leaf_count_, r = hi + leaf_count_;
    std::vector<int> right_side;
    while (l <= r) {
      if (l & 1) out.push_back(l++);
      if (!(r & 1)) right_side.push_back(r--);
      l >>= 1;
      r >>= 1;
    }
    out.insert(out.end(), right_side.rbegin(), right_side.rend());
  }

  void build_merge_sort_tree() {
    // Edges bucketed per leaf by pu, then merged level by level; each
    // node's list is sorted by pv. Stored in CSR layout per level.
    int m = graph_->edge_count();
    level_edges_.assign(levels_ + 1, {});
    level_start_.assign(levels_ + 1, {});

    // Leaf level (level = levels_): sort by (pu, pv).
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (edge_pu_[x] != edge_pu_[y]) return edge_pu_[x] < edge_pu_[y];
      if (edge_pv_[x] != edge_pv_[y]) return edge_pv_[x] < edge_pv_[y];
      return x < y;
    });

    int nodes_at = leaf_count_;
    level_edges_[levels_] = order;
    level_start_[levels_].assign(nodes_at + 1, 0);
    {
      int idx = 0;
      for (int leaf = 0; leaf < nodes_at; ++leaf) {
        level_start_[levels_][leaf] = idx;
        while (idx < m && edge_pu_[order[idx]] == leaf) ++idx;
      }
      level_start_[levels_][nodes_at] = m;
    }

    for (int lv = levels_ - 1; lv >= 0; --lv) {
      int count = 1 << lv;
      level_start_[lv].assign(count + 1, 0);
      level_edges_[lv].resize(m);
      const auto& below = level_edges_[lv + 1];
      const auto& below_start = level_start_[lv + 1];
      int idx = 0;
      for (int node = 0; node < count; ++node) {
        level_start_[lv][node] = idx;
        int lb = below_start[2 * node], le = below_start[2 * node + 1];
        int rb = below_start[2 * node + 1], re = below_start[2 * node + 2];
        while (lb < le && rb < re) {
          int x = below[lb], y = below[rb];
          if (edge_pv_[x] < edge_pv_[y] || (edge_pv_[x] == edge_pv_[y] && x <= y))
            level_edges_[lv][idx++] = x, ++lb;
          else
            level_edges_[lv][idx++] = y, ++rb;
        }
        while (lb < le) level_edges_[lv][idx++] = below[lb++];
        while (rb < re) level_edges_[lv][idx++] = below[rb++];
      }
      level_start_[lv][count] = idx;
    }
  }

  // Edges with pu in span(a), pv in span(b), where span(a) < span(b).
  // Returned in pv order; callers re-sort by capacity on materialization.
  void extract_pair_edges(int a, int b, std::vector<int>& out) const {
    int lv = 0, node = a;
    while (node >= (2 << lv)) ++lv;      // level of heap id a
    int offset = node - (1 << lv);
    const auto& edges = level_edges_[lv];
    const auto& start = level_start_[lv];
    int lo = start[offset], hi = start[offset + 1];
    // Binary search pv range [span_lo_[b], span_hi_[b]].
    auto lb = std::lower_bound(edges.begin() + lo, edges.begin() + hi, span_lo_[b],
                               [&](int e, int p) { return edge_pv_[e] < p; });
    auto ub = std::upper_bound(edges.begin() + lo, edges.begin() + hi, span_hi_[b],
                               [&](int p, int e) { return p < edge_pv_[e]; });
    out.assign(lb, ub);
  }

  // Cut id for a normalized pair, materializing on demand; -1 if empty.
  int cut_id_for_pair(int a, int b) {
    if (span_lo_[a] > span_lo_[b]) std::swap(a, b);
    auto it = pair_index_.find(pair_key(a, b));
    if (it != pair_index_.end()) return it->second;
    if (fully_materialized_) return -1;  // absent means empty

    std::vector<int> edges;
    extract_pair_edges(a, b, edges);
    if (edges.empty()) {
      pair_index_.emplace(pair_key(a, b), -1);
      return -1;
    }
    std::sort(edges.begin(), edges.end(), [&](int x, int y) {
      double cx = graph_->edge(x).capacity, cy = graph_->edge(y).capacity;
      if (cx != cy) return cx < cy;
      return x < y;
    });
    CanonicalCut cc;
    cc.node_a = a;
    cc.node_b = b;
    cc.gamma = graph_->edge(edges.front()).capacity;
    cc.edges = std::move(edges);
    cc.complete = true;
    int id = static_cast<int>(cuts_.size());
    cuts_.push_back(std::move(cc));
    pair_index_.emplace(pair_key(a, b), id);
    return id;
  }

  void append_edge(int cut_id, int edge_id) {
    CanonicalCut& cc = cuts_[cut_id];
    if (cc.edges.empty()) cc.gamma = graph_->edge(edge_id).capacity;
    cc.edges.push_back(edge_id);
  }

  const Graph* graph_;
  const EulerOrder* euler_;
  int positions_ = 0;
  int leaf_count_ = 1;
  int levels_ = 0;
  std::vector<int> span_lo_, span_hi_;
  std::vector<int> edge_pu_, edge_pv_;
  std::vector<int> cap_order_;
  std::vector<std::vector<int>> level_edges_;
  std::vector<std::vector<int>> level_start_;
  std::unordered_map<std::uint64_t, int> pair_index_;
  std::vector<CanonicalCut> cuts_;
  bool fully_materialized_ = false;
};

}  // namespace hk
