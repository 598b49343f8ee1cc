#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefgraph/graph.hpp"
#include "prefgraph/judge.hpp"

namespace prefgraph {

struct ActiveConfig {
  /// Total number of distinct item pairs to evaluate.
  std::size_t budget = 0;
  /// Share of the budget spent on uniformly random pairs.
  double alpha = 0.5;
  double damping = 0.85;
  double pagerank_tolerance = 1e-9;
  std::size_t pagerank_max_iterations = 200;
  double uncertainty_epsilon = 1e-6;

  /// floor(alpha * budget) random pairs.
  std::size_t random_pairs() const;
  /// Throws kInvalidArgument (or kOverThreshold when the budget exceeds
  /// the number of pairs among `num_items`).
  void validate(std::size_t num_items) const;
};

struct PageRankResult {
  std::map<std::string, double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration with out-weight-normalised transitions; dangling
/// vertices spread their mass uniformly.
PageRankResult pagerank(const PreferenceGraph& graph, const ActiveConfig& config);

/// 1 / (|PR(u) - PR(v)| + epsilon): large when the two scores are close.
/// Throws kUnknownVertex or kSelfPreference.
double uncertainty(const std::map<std::string, double>& scores, const std::string& u, const std::string& v,
                   const ActiveConfig& config);

struct ActiveResult {
  PreferenceGraph graph;
  /// Pairs in evaluation order, each as (smaller id, larger id).
  std::vector<std::pair<std::string, std::string>> evaluated;
  std::size_t random_pairs = 0;
};

/// Budgeted graph construction: floor(alpha * B) random pairs, then the
/// most uncertain unevaluated pair under the current PageRank until B
/// pairs are evaluated. Every chosen pair is judged by each evaluator in
/// both presentation orders; per direction the verdict count is averaged
/// over evaluators. Ties between pairs go to the smallest (u, v).
ActiveResult active_ged(std::span<const Item> items, const Question& question, const EvaluatorSet& evaluators,
                        const ActiveConfig& config, std::uint64_t seed);

}  // namespace prefgraph
