#pragma once

// Bucketed lazy increment counters and the per-canonical-cut layer that
// simulates MWU weight updates along any 1-cut/2-cut while emitting only
// large per-edge increments. Between flushes the emitted totals
// underestimate the true values by less than one counter unit per
// instance; a flush restores exact equality.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hkbound/euler_canonical.hpp"
#include "hkbound/graph.hpp"

namespace hk {

// Approximates k counters advancing concurrently at fixed positive rates.
// Counter i in bucket j (rates in (R 2^-(j+1), R 2^-j]) emits increments
// of delta = k r_i / (R 2^-j) > 1/2 whenever the bucket accumulator
// crosses whole integers, so that emitted totals v~ satisfy
// v~ <= v < v~ + 1 after every inc and v~ = v after a flush.
class LazyIncs {
 public:
  // Counters must be sorted by rate descending (ties in any order).
  LazyIncs(std::vector<int> ids, std::vector<double> rates)
      : ids_(std::move(ids)), rates_(std::move(rates)) {
    if (ids_.size() != rates_.size() || ids_.empty())
      throw std::invalid_argument("lazy_incs: bad counter list");
    for (std::size_t i = 0; i < rates_.size(); ++i) {
      if (!(rates_[i] > 0.0)) throw std::invalid_argument("lazy_incs: rates must be positive");
      if (i > 0 && rates_[i] > rates_[i - 1])
        throw std::invalid_argument("lazy_incs: rates must be sorted descending");
    }
    double R = rates_.front();
    int begin = 0;
    int cur_j = bucket_index(R, rates_.front());
    for (int i = 1; i <= static_cast<int>(rates_.size()); ++i) {
      int j = i < static_cast<int>(rates_.size()) ? bucket_index(R, rates_[i]) : -1;
      if (j != cur_j) {
        buckets_.push_back({cur_j, begin, i, std::ldexp(R, -cur_j), 0.0, 0});
        begin = i;
        cur_j = j;
      }
    }
  }

  int counter_count() const { return static_cast<int>(ids_.size()); }
  int bucket_count() const { return static_cast<int>(buckets_.size()); }

  // Largest j with r <= R 2^-j, computed with exact power-of-two fixups.
  static int bucket_index(double R, double r) {
    int j = std::max(0, static_cast<int>(std::floor(std::log2(R / r))));
    while (std::ldexp(r, j + 1) <= R) ++j;
    while (j > 0 && std::ldexp(r, j) > R) --j;
    return j;
  }

  int bucket_of_counter(int i) const {
    for (const Bucket& b : buckets_)
      if (b.begin <= i && i < b.end) return b.j;
    return -1;
  }

  // Advances every counter by rate * g. Appends emitted (id, delta) pairs.
  void inc(double g, std::vector<std::pair<int, double>>& out) {
    for (Bucket& b : buckets_) {
      b.T += g * b.rate;
      double whole = std::floor(b.T);
      if (whole > b.n) {
        double k = whole - b.n;
        for (int i = b.begin; i < b.end; ++i)
          out.push_back({ids_[i], k * rates_[i] / b.rate});
        b.n = whole;
      }
    }
  }

  // Emits all residuals and resets the accumulators; afterwards the
  // emitted totals equal the true values exactly.
  void flush(std::vector<std::pair<int, double>>& out) {
    for (Bucket& b : buckets_) {
      double frac = b.T - b.n;
      if (frac > 0.0)
        for (int i = b.begin; i < b.end; ++i)
          out.push_back({ids_[i], frac * rates_[i] / b.rate});
      b.T = 0.0;
      b.n = 0;
    }
  }

 private:
  struct Bucket {
    int j;
    int begin, end;  // counter index range
    double rate;     // R 2^-j
    double T;        // accumulator
    double n;        // emitted whole part
  };

  std::vector<int> ids_;
  std::vector<double> rates_;
  std::vector<Bucket> buckets_;
};

// One LazyIncs per touched nonempty canonical cut, with counter rates
// S / c_e, S = (ceil(log2 2n))^2. A counter tracks S * ln-weight-gain /
// eps for its edge, so an emitted delta converts to the log-weight gain
// eps * delta / S.
class LazyIncCuts {
 public:
  LazyIncCuts(const Graph& g, CanonicalCutFamily& fam, WeightState& ws, double epsilon)
      : graph_(&g), family_(&fam), weights_(&ws), epsilon_(epsilon) {
    int h = fam.tree_height();
    scale_ = static_cast<double>(h) * h;
    if (scale_ < 1.0) scale_ = 1.0;  // single-vertex degenerate guard
  }

  double scale() const { return scale_; }

  std::vector<int> decompose(const CutDescriptor& cd) { return family_->decompose(cd); }

  // Exact min capacity over the cut, via the per-canonical-cut minima.
  double gamma_of(const std::vector<int>& cut_ids) const {
    double gamma = kHugeValue;
    for (int id : cut_ids) gamma = std::min(gamma, family_->cut(id).gamma);
    return gamma;
  }

  // Simulates w_e *= exp(eps * gamma / c_e) for every edge of the
  // decomposed cut; returns only the emitted (edge, delta_w) increments.
  std::vector<std::pair<int, double>> inc_cut_on(const std::vector<int>& cut_ids, double gamma) {
    assert(!cut_ids.empty());
    scratch_.clear();
    for (int id : cut_ids) instance(id).inc(gamma, scratch_);
    std::vector<std::pair<int, double>> out;
    out.reserve(scratch_.size());
    for (auto [edge, delta] : scratch_) {
      double dw = weights_->apply_log_gain(edge, epsilon_ * delta / scale_,
                                           graph_->edge(edge).capacity);
      out.push_back({edge, dw});
    }
    return out;
  }

  std::vector<std::pair<int, double>> inc_cut(const CutDescriptor& cd) {
    auto ids = decompose(cd);
    if (ids.empty()) throw std::invalid_argument("inc_cut: cut has no crossing edges");
    return inc_cut_on(ids, gamma_of(ids));
  }

  // Dual bookkeeping: the packing coefficient placed on the cut this
  // iteration applies to every edge of the cut; accumulated per instance
  // and distributed at flush time.
  void add_load(const std::vector<int>& cut_ids, double coeff) {
    for (int id : cut_ids) {
      instance(id);
      load_acc_[id] += coeff;
    }
  }

  // Emits all residual weight increments, merged per edge (at most m
  // entries); afterwards the maintained weights are exact.
  std::vector<std::pair<int, double>> flush() {
    scratch_.clear();
    for (int id : touched_) incs_[id]->flush(scratch_);
    // Merge per edge before applying.
    std::vector<std::pair<int, double>> out;
    if (scratch_.empty()) return out;
    if (merge_buf_.empty()) merge_buf_.assign(graph_->edge_count(), 0.0);
    std::vector<int> edges;
    for (auto [edge, delta] : scratch_) {
      if (delta <= 0.0) continue;
      if (merge_buf_[edge] == 0.0) edges.push_back(edge);
      merge_buf_[edge] += delta;
    }
    std::sort(edges.begin(), edges.end());
    out.reserve(edges.size());
    for (int edge : edges) {
      double dw = weights_->apply_log_gain(edge, epsilon_ * merge_buf_[edge] / scale_,
                                           graph_->edge(edge).capacity);
      out.push_back({edge, dw});
      merge_buf_[edge] = 0.0;
    }
    return out;
  }

  // Adds the accumulated per-cut dual loads onto per-edge totals.
  void drain_loads(std::vector<double>& edge_loads) const {
    for (int id : touched_) {
      double load = load_acc_[id];
      if (load == 0.0) continue;
      for (int e : family_->cut(id).edges) edge_loads[e] += load;
    }
  }

  int touched_instances() const { return static_cast<int>(touched_.size()); }

 private:
  LazyIncs& instance(int cut_id) {
    if (cut_id >= static_cast<int>(incs_.size())) {
      incs_.resize(cut_id + 1);
      load_acc_.resize(cut_id + 1, 0.0);
    }
    if (!incs_[cut_id]) {
      const auto& cc = family_->cut(cut_id);
      std::vector<double> rates(cc.edges.size());
      for (std::size_t i = 0; i < cc.edges.size(); ++i)
        rates[i] = scale_ / graph_->edge(cc.edges[i]).capacity;
      incs_[cut_id] = std::make_unique<LazyIncs>(cc.edges, std::move(rates));
      touched_.push_back(cut_id);
    }
    return *incs_[cut_id];
  }

  const Graph* graph_;
  CanonicalCutFamily* family_;
  WeightState* weights_;
  double epsilon_;
  double scale_ = 1.0;
  std::vector<std::unique_ptr<LazyIncs>> incs_;
  std::vector<double> load_acc_;
  std::vector<int> touched_;
  std::vector<std::pair<int, double>> scratch_;
  std::vector<double> merge_buf_;
};

}  // namespace hk
