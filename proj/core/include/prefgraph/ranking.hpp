#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prefgraph/graph.hpp"

namespace prefgraph {

/// Total order over candidates, best first, with optional parallel scores.
///
/// Scores are informational except for one rule: adjacent entries with
/// equal scores are tied. spearman() gives tied entries their average
/// position; kendall_tau_distance() rejects tied rankings.
class Ranking {
 public:
  Ranking() = default;
  /// Throws kDuplicateVertex on repeated identifiers and kInvalidArgument
  /// when scores are present with the wrong length.
  explicit Ranking(std::vector<std::string> order, std::optional<std::vector<double>> scores = std::nullopt);

  const std::vector<std::string>& order() const noexcept { return order_; }
  const std::optional<std::vector<double>>& scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return order_.size(); }
  bool empty() const noexcept { return order_.empty(); }
  const std::string& front() const { return order_.front(); }

  bool has_ties() const;
  /// Same order, scores dropped.
  Ranking strict() const { return Ranking(order_); }
  /// 1-based positions with tied groups sharing their mean position.
  std::map<std::string, double> fractional_positions() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<std::string> order_;
  std::optional<std::vector<double>> scores_;
};

/// Number of vertices reachable from each vertex, excluding itself.
/// Throws kCyclicInput.
std::map<std::string, std::size_t> descendant_counts(const PreferenceGraph& dag);

/// Sorts vertices by descendant count, descending, ties broken by
/// identifier. Scores are the descendant counts. Throws kCyclicInput.
Ranking rank_from_dag(const PreferenceGraph& dag);

/// Number of candidate pairs ordered differently. Throws
/// kIdentifierSetMismatch or kTiedRanking.
std::size_t kendall_tau_distance(const Ranking& a, const Ranking& b);

/// Spearman rank correlation on (fractional) positions. Throws
/// kIdentifierSetMismatch, or kInvalidArgument for fewer than 2 items.
double spearman(const Ranking& a, const Ranking& b);

}  // namespace prefgraph
