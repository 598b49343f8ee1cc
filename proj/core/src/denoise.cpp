#include "prefgraph/denoise.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <tuple>

#include "prefgraph/error.hpp"

namespace prefgraph {
namespace {

constexpr double kRelativeTieTolerance = 1e-9;

double total_weight(const PreferenceGraph& graph) {
  double total = 0.0;
  for (const auto& [key, w] : graph.arc_map()) total += w;
  return total;
}

std::vector<std::size_t> positions_of(const PreferenceGraph& graph, const VertexSequence& sequence) {
  const auto n = graph.num_vertices();
  if (sequence.order.size() != n) {
    throw Error(ErrorKind::kVertexSetMismatch, "sequence has " + std::to_string(sequence.order.size()) +
                                                   " entries for " + std::to_string(n) + " vertices");
  }
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pos(n, kUnset);
  for (std::size_t i = 0; i < n; ++i) {
    if (!graph.contains(sequence.order[i])) {
      throw Error(ErrorKind::kVertexSetMismatch, "sequence names unknown vertex '" + sequence.order[i] + "'");
    }
    const auto v = graph.index_of(sequence.order[i]);
    if (pos[v] != kUnset) {
      throw Error(ErrorKind::kVertexSetMismatch, "sequence repeats vertex '" + sequence.order[i] + "'");
    }
    pos[v] = i;
  }
  return pos;
}

class GreedyOrdering {
 public:
  explicit GreedyOrdering(const PreferenceGraph& graph)
      : graph_(graph),
        n_(graph.num_vertices()),
        active_(n_, true),
        out_count_(n_, 0),
        in_count_(n_, 0),
        out_(n_),
        in_(n_),
        tolerance_(kRelativeTieTolerance * std::max(1.0, total_weight(graph))) {
    for (const auto& [key, w] : graph.arc_map()) {
      out_[key.first].emplace_back(key.second, w);
      in_[key.second].emplace_back(key.first, w);
      ++out_count_[key.first];
      ++in_count_[key.second];
    }
  }

  VertexSequence run() {
    std::vector<std::size_t> head;
    std::vector<std::size_t> tail;  // built back to front
    std::size_t remaining = n_;
    while (remaining > 0) {
      while (auto sink = smallest_where([&](std::size_t v) { return out_count_[v] == 0; })) {
        tail.push_back(*sink);
        remove(*sink);
        --remaining;
      }
      while (auto source = smallest_where([&](std::size_t v) { return in_count_[v] == 0; })) {
        head.push_back(*source);
        remove(*source);
        --remaining;
      }
      if (remaining == 0) break;
      const auto pick = max_delta();
      head.push_back(pick);
      remove(pick);
      --remaining;
    }
    VertexSequence seq;
    seq.order.reserve(n_);
    for (auto v : head) seq.order.push_back(graph_.id(v));
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) seq.order.push_back(graph_.id(*it));
    return seq;
  }

 private:
  template <typename Pred>
  std::optional<std::size_t> smallest_where(Pred pred) const {
    for (auto v : graph_.lexicographic_order()) {
      if (active_[v] && pred(v)) return v;
    }
    return std::nullopt;
  }

  double delta(std::size_t v) const {
    double out = 0.0;
    double in = 0.0;
    for (const auto& [u, w] : out_[v]) {
      if (active_[u]) out += w;
    }
    for (const auto& [u, w] : in_[v]) {
      if (active_[u]) in += w;
    }
    return out - in;
  }

  std::size_t max_delta() const {
    std::vector<double> deltas(n_, -std::numeric_limits<double>::infinity());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < n_; ++v) {
      if (!active_[v]) continue;
      deltas[v] = delta(v);
      best = std::max(best, deltas[v]);
    }
    for (auto v : graph_.lexicographic_order()) {
      if (active_[v] && deltas[v] >= best - tolerance_) return v;
    }
    return graph_.lexicographic_order().front();  // unreachable while a vertex is active
  }

  void remove(std::size_t v) {
    active_[v] = false;
    for (const auto& [u, w] : out_[v]) {
      if (active_[u]) --in_count_[u];
    }
    for (const auto& [u, w] : in_[v]) {
      if (active_[u]) --out_count_[u];
    }
  }

  const PreferenceGraph& graph_;
  std::size_t n_;
  std::vector<bool> active_;
  std::vector<std::size_t> out_count_;
  std::vector<std::size_t> in_count_;
  std::vector<std::vector<std::pair<std::size_t, double>>> out_;
  std::vector<std::vector<std::pair<std::size_t, double>>> in_;
  double tolerance_;
};

class ExactSearch {
 public:
  explicit ExactSearch(const PreferenceGraph& graph)
      : graph_(graph),
        n_(graph.num_vertices()),
        weights_(n_ * n_, 0.0),
        placed_(n_, false),
        tolerance_(kRelativeTieTolerance * std::max(1.0, total_weight(graph))) {
    for (const auto& [key, w] : graph.arc_map()) weights_[key.first * n_ + key.second] = w;
    // The greedy sequence bounds the optimum from above until a leaf is found.
    for (const auto& arc : induced_fas(graph, greedy_fas_order(graph))) bound_ += arc.weight;
    current_.reserve(n_);
  }

  VertexSequence run() {
    search(0.0);
    VertexSequence seq;
    for (auto v : best_) seq.order.push_back(graph_.id(v));
    return seq;
  }

 private:
  // Sequences are visited in lexicographic order, so the first leaf at a
  // given cost is the smallest one and only strict improvements replace it.
  bool hopeless(double cost) const {
    return found_ ? cost >= bound_ - tolerance_ : cost > bound_ + tolerance_;
  }

  void search(double cost) {
    if (current_.size() == n_) {
      if (!hopeless(cost)) {
        bound_ = cost;
        best_ = current_;
        found_ = true;
      }
      return;
    }
    for (auto v : graph_.lexicographic_order()) {
      if (placed_[v]) continue;
      // Arcs from v back to already placed vertices point leftward.
      double added = 0.0;
      for (auto u : current_) added += weights_[v * n_ + u];
      if (hopeless(cost + added)) continue;
      placed_[v] = true;
      current_.push_back(v);
      search(cost + added);
      current_.pop_back();
      placed_[v] = false;
    }
  }

  const PreferenceGraph& graph_;
  std::size_t n_;
  std::vector<double> weights_;
  std::vector<bool> placed_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double bound_ = 0.0;
  bool found_ = false;
  double tolerance_;
};

}  // namespace

VertexSequence greedy_fas_order(const PreferenceGraph& graph) { return GreedyOrdering(graph).run(); }

std::vector<WeightedArc> induced_fas(const PreferenceGraph& graph, const VertexSequence& sequence) {
  const auto pos = positions_of(graph, sequence);
  std::vector<WeightedArc> out;
  for (const auto& arc : graph.arcs()) {
    if (pos[graph.index_of(arc.from)] > pos[graph.index_of(arc.to)]) out.push_back(arc);
  }
  return out;
}

DenoiseResult apply_sequence(const PreferenceGraph& graph, const VertexSequence& sequence) {
  const auto pos = positions_of(graph, sequence);
  DenoiseResult result{PreferenceGraph(graph.vertices()), {}, 0.0, sequence};
  for (const auto& arc : graph.arcs()) {
    const auto from = graph.index_of(arc.from);
    const auto to = graph.index_of(arc.to);
    if (pos[from] > pos[to]) {
      result.removed_weight += arc.weight;
      result.removed.push_back(arc);
    } else {
      result.dag.add_preference(from, to, arc.weight);
    }
  }
  return result;
}

DenoiseResult exact_min_fas(const PreferenceGraph& graph, std::size_t exact_threshold) {
  if (graph.num_vertices() > exact_threshold) {
    throw Error(ErrorKind::kOverThreshold, "exact feedback arc set limited to " + std::to_string(exact_threshold) +
                                               " vertices, graph has " + std::to_string(graph.num_vertices()));
  }
  return apply_sequence(graph, ExactSearch(graph).run());
}

DenoiseResult denoise(const PreferenceGraph& graph, DenoiseMode mode, std::size_t exact_threshold) {
  if (mode == DenoiseMode::kExact) return exact_min_fas(graph, exact_threshold);
  return apply_sequence(graph, greedy_fas_order(graph));
}

}  // namespace prefgraph
