#pragma once

// Rooted-tree path machinery behind all cut-value maintenance: per-node
// real values with add and min+argmin along node-to-root paths, and a
// static LCA index. Trees never change topology here, so paths run over a
// heavy-path decomposition on a lazy segment tree; operations cost
// O(log^2 n) against the O(log n) amortized of splay-based dynamic trees,
// which is indistinguishable at the scales this artifact targets.

#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk {

// Large finite stand-in for +infinity; keeps all arithmetic total.
inline constexpr double kHugeValue = 1e300;

namespace detail {

// Validates a parent array and returns depths. Exactly one root with
// parent -1; throws on cycles or bad indices.
inline std::vector<int> tree_depths(const std::vector<int>& parent) {
  int n = static_cast<int>(parent.size());
  if (n == 0) throw std::invalid_argument("tree: empty parent array");
  std::vector<int> depth(n, -1);
  int roots = 0;
  for (int v = 0; v < n; ++v) {
    if (parent[v] == -1) {
      ++roots;
      depth[v] = 0;
    } else if (parent[v] < 0 || parent[v] >= n) {
      throw std::invalid_argument("tree: parent index out of range");
    }
  }
  if (roots != 1) throw std::invalid_argument("tree: expected exactly one root");
  for (int v = 0; v < n; ++v) {
    if (depth[v] >= 0) continue;
    // Walk up to a resolved node; a walk longer than n means a cycle.
    int x = v, steps = 0;
    while (depth[x] < 0) {
      x = parent[x];
      if (++steps > n) throw std::invalid_argument("tree: cyclic parent array");
    }
    std::vector<int> chain;
    for (int y = v; y != x; y = parent[y]) chain.push_back(y);
    int d = depth[x];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
  }
  return depth;
}

// Children lists with ascending ids, making traversals deterministic.
inline std::vector<std::vector<int>> children_lists(const std::vector<int>& parent) {
  int n = static_cast<int>(parent.size());
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v)
    if (parent[v] != -1) children[parent[v]].push_back(v);
  return children;  // ascending since v increases
}

}  // namespace detail

// Euler tour + sparse table; O(n log n) build, O(1) query.
class LcaIndex {
 public:
  explicit LcaIndex(const std::vector<int>& parent) : parent_(parent) {
    depth_ = detail::tree_depths(parent);
    int n = static_cast<int>(parent.size());
    auto children = detail::children_lists(parent);
    int root = 0;
    while (parent[root] != -1) ++root;

    tour_.reserve(2 * n);
    first_.assign(n, -1);
    // Iterative Euler visit sequence (node recorded on entry and after
    // each child).
    std::vector<std::pair<int, int>> stack = {{root, 0}};
    while (!stack.empty()) {
      auto& [v, ci] = stack.back();
      if (ci == 0) {
        first_[v] = static_cast<int>(tour_.size());
        tour_.push_back(v);
      }
      if (ci < static_cast<int>(children[v].size())) {
        int c = children[v][ci++];
        stack.push_back({c, 0});
      } else {
        stack.pop_back();
        if (!stack.empty()) tour_.push_back(stack.back().first);
      }
    }

    int len = static_cast<int>(tour_.size());
    log2_.assign(len + 1, 0);
    for (int i = 2; i <= len; ++i) log2_[i] = log2_[i / 2] + 1;
    int levels = log2_[len] + 1;
    table_.assign(levels, std::vector<int>(len));
    for (int i = 0; i < len; ++i) table_[0][i] = tour_[i];
    for (int k = 1; k < levels; ++k)
      for (int i = 0; i + (1 << k) <= len; ++i) {
        int a = table_[k - 1][i];
        int b = table_[k - 1][i + (1 << (k - 1))];
        table_[k][i] = depth_[a] <= depth_[b] ? a : b;
      }
  }

  int query(int u, int v) const {
    int a = first_[u], b = first_[v];
    if (a > b) std::swap(a, b);
    int k = log2_[b - a + 1];
    int x = table_[k][a];
    int y = table_[k][b - (1 << k) + 1];
    return depth_[x] <= depth_[y] ? x : y;
  }

  int lca_of_edge(int u, int v) const { return query(u, v); }
  int depth(int v) const { return depth_[v]; }
  const std::vector<int>& parent() const { return parent_; }

 private:
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> tour_;
  std::vector<int> first_;
  std::vector<int> log2_;
  std::vector<std::vector<int>> table_;
};

// Per-node values over a static rooted tree with node-to-root path add and
// path min. Argmin ties resolve toward the deepest node, then the smallest
// id, so runs are reproducible.
class PathForest {
 public:
  PathForest(const std::vector<int>& parent, const std::vector<double>& init)
      : parent_(parent) {
    if (parent.size() != init.size())
      throw std::invalid_argument("forest: init size mismatch");
    depth_ = detail::tree_depths(parent);
    n_ = static_cast<int>(parent.size());
    build_decomposition();
    build_segtree(init);
  }

  int size() const { return n_; }
  int depth(int v) const { return depth_[v]; }

  // Adds alpha to every node on the v-to-root path, v inclusive.
  void path_add(int v, double alpha) {
    int cur = v;
    while (cur != -1) {
      seg_add(1, 0, n_ - 1, pos_[head_[cur]], pos_[cur], alpha);
      cur = parent_[head_[cur]];
    }
  }

  // Minimum value on the v-to-root path with its witness node.
  std::pair<double, int> path_min(int v) {
    Best best;
    int cur = v;
    while (cur != -1) {
      collect_min(1, 0, n_ - 1, pos_[head_[cur]], pos_[cur], best);
      cur = parent_[head_[cur]];
    }
    return {best.value, best.node};
  }

  // Minimum over ancestors of v that are strict descendants of stop.
  // stop must be a proper ancestor of v; an empty range (stop == parent
  // of v is fine, stop == v is not) yields the huge sentinel.
  std::pair<double, int> path_min_below(int v, int stop) {
    assert(stop != v);
    Best best;
    int cur = v;
    while (head_[cur] != head_[stop]) {
      collect_min(1, 0, n_ - 1, pos_[head_[cur]], pos_[cur], best);
      cur = parent_[head_[cur]];
      assert(cur != -1 && "path_min_below: stop is not an ancestor of v");
    }
    if (pos_[cur] > pos_[stop])
      collect_min(1, 0, n_ - 1, pos_[stop] + 1, pos_[cur], best);
    return {best.value, best.node};
  }

  double point_value(int v) {
    Best best;
    collect_min(1, 0, n_ - 1, pos_[v], pos_[v], best);
    return best.value;
  }

  // Total segment-tree node visits; exposed so tests can report the
  // measured cost constant.
  std::uint64_t op_cost() const { return visits_; }

 private:
  struct Best {
    double value = std::numeric_limits<double>::infinity();
    int node = -1;
    int depth = -1;
  };

  void consider(Best& best, double value, int node, int depth) const {
    if (value < best.value ||
        (value == best.value && (depth > best.depth || (depth == best.depth && node < best.node))))
      best = {value, node, depth};
  }

  void build_decomposition() {
    auto children = detail::children_lists(parent_);
    std::vector<int> sz(n_, 1), order;
    order.reserve(n_);
    int root = 0;
    while (parent_[root] != -1) ++root;
    // Post-order sizes.
    std::vector<std::pair<int, int>> stack = {{root, 0}};
    std::vector<int> post;
    post.reserve(n_);
    while (!stack.empty()) {
      auto& [v, ci] = stack.back();
      if (ci < static_cast<int>(children[v].size()))
        stack.push_back({children[v][ci++], 0});
      else {
        post.push_back(v);
        stack.pop_back();
      }
    }
    for (int v : post)
      if (parent_[v] != -1) sz[parent_[v]] += sz[v];

    heavy_.assign(n_, -1);
    for (int v = 0; v < n_; ++v) {
      int best = -1, best_sz = 0;
      for (int c : children[v])
        if (sz[c] > best_sz) {
          best_sz = sz[c];
          best = c;
        }
      heavy_[v] = best;
    }

    pos_.assign(n_, -1);
    head_.assign(n_, -1);
    node_at_.assign(n_, -1);
    int next = 0;
    // DFS with the heavy child first keeps each chain contiguous with
    // positions increasing by depth.
    std::vector<int> dfs = {root};
    head_[root] = root;
    while (!dfs.empty()) {
      int v = dfs.back();
      dfs.pop_back();
      // Walk down the heavy chain from v.
      for (int x = v; x != -1; x = heavy_[x]) {
        head_[x] = head_[v];
        pos_[x] = next;
        node_at_[next] = x;
        ++next;
        for (auto it = children[x].rbegin(); it != children[x].rend(); ++it)
          if (*it != heavy_[x]) {
            head_[*it] = *it;
            dfs.push_back(*it);
          }
      }
    }
  }

  struct SegNode {
    double min = 0.0;
    int arg = -1;       // position of the argmin
    double lazy = 0.0;  // pending add for the subtree
  };

  void build_segtree(const std::vector<double>& init) {
    seg_.assign(4 * static_cast<std::size_t>(n_), SegNode{});
    seg_build(1, 0, n_ - 1, init);
  }

  void seg_build(int node, int lo, int hi, const std::vector<double>& init) {
    if (lo == hi) {
      seg_[node].min = init[node_at_[lo]];
      seg_[node].arg = lo;
      return;
    }
    int mid = (lo + hi) / 2;
    seg_build(2 * node, lo, mid, init);
    seg_build(2 * node + 1, mid + 1, hi, init);
    pull(node);
  }

  void pull(int node) {
    const SegNode& a = seg_[2 * node];
    const SegNode& b = seg_[2 * node + 1];
    if (better(a, b))
      seg_[node].min = a.min, seg_[node].arg = a.arg;
    else
      seg_[node].min = b.min, seg_[node].arg = b.arg;
  }

  bool better(const SegNode& a, const SegNode& b) const {
    if (a.min != b.min) return a.min < b.min;
    int va = node_at_[a.arg], vb = node_at_[b.arg];
    if (depth_[va] != depth_[vb]) return depth_[va] > depth_[vb];
    return va < vb;
  }

  void seg_add(int node, int lo, int hi, int l, int r, double alpha) {
    ++visits_;
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      seg_[node].min += alpha;
      seg_[node].lazy += alpha;
      return;
    }
    push(node);
    int mid = (lo + hi) / 2;
    seg_add(2 * node, lo, mid, l, r, alpha);
    seg_add(2 * node + 1, mid + 1, hi, l, r, alpha);
    pull(node);
  }

  void push(int node) {
    double lz = seg_[node].lazy;
    if (lz == 0.0) return;
    for (int c : {2 * node, 2 * node + 1}) {
      seg_[c].min += lz;
      seg_[c].lazy += lz;
    }
    seg_[node].lazy = 0.0;
  }

  void collect_min(int node, int lo, int hi, int l, int r, Best& best) {
    ++visits_;
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      int v = node_at_[seg_[node].arg];
      consider(best, seg_[node].min, v, depth_[v]);
      return;
    }
    push(node);
    int mid = (lo + hi) / 2;
    collect_min(2 * node, lo, mid, l, r, best);
    collect_min(2 * node + 1, mid + 1, hi, l, r, best);
  }

  int n_ = 0;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> heavy_;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<int> node_at_;
  std::vector<SegNode> seg_;
  std::uint64_t visits_ = 0;
};

}  // namespace hk
