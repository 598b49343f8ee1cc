#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prefgraph/graph.hpp"

namespace prefgraph {

/// A left-to-right arrangement of every vertex. Arcs pointing from a
/// later vertex to an earlier one form the feedback arc set it induces.
struct VertexSequence {
  std::vector<std::string> order;

  friend bool operator==(const VertexSequence&, const VertexSequence&) = default;
};

enum class DenoiseMode { kGreedy, kExact };

inline constexpr std::size_t kDefaultExactThreshold = 8;

struct DenoiseResult {
  PreferenceGraph dag;
  std::vector<WeightedArc> removed;  // sorted by (from, to)
  double removed_weight = 0.0;
  VertexSequence sequence;
};

/// Sink/source stripping heuristic on weighted degrees: sinks are
/// prepended to the tail sequence, sources appended to the head, and when
/// neither exists the vertex with the largest out-minus-in weight goes to
/// the head. Ties go to the lexicographically smallest identifier; degree
/// differences within a relative 1e-9 of the total weight count as ties.
VertexSequence greedy_fas_order(const PreferenceGraph& graph);

/// Arcs that point against `sequence`. Throws kVertexSetMismatch when the
/// sequence is not a permutation of the graph's vertices.
std::vector<WeightedArc> induced_fas(const PreferenceGraph& graph, const VertexSequence& sequence);

/// Splits the graph into the DAG kept by `sequence` and the removed arcs.
DenoiseResult apply_sequence(const PreferenceGraph& graph, const VertexSequence& sequence);

/// Minimum-weight feedback arc set by exhaustive search over vertex
/// sequences (branch and bound, lexicographic visiting order). Among
/// optimal sequences the lexicographically smallest wins. Throws
/// kOverThreshold when the graph has more than `exact_threshold` vertices.
DenoiseResult exact_min_fas(const PreferenceGraph& graph, std::size_t exact_threshold = kDefaultExactThreshold);

DenoiseResult denoise(const PreferenceGraph& graph, DenoiseMode mode = DenoiseMode::kGreedy,
                      std::size_t exact_threshold = kDefaultExactThreshold);

}  // namespace prefgraph
