#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "prefgraph/ranking.hpp"

namespace prefgraph {

/// Rankings to aggregate, with optional per-ranking reliability weights.
class RankingProfile {
 public:
  /// Throws kEmptyVertexSet for no rankings, kWeightCountMismatch or
  /// kNonpositiveWeight for bad weights. Identifier sets are checked by
  /// the aggregators, since partial rankings are legal for weight score.
  explicit RankingProfile(std::vector<Ranking> rankings, std::optional<std::vector<double>> weights = std::nullopt);

  const std::vector<Ranking>& rankings() const noexcept { return rankings_; }
  const std::optional<std::vector<double>>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return rankings_.size(); }
  /// Weight of ranking i, 1 when the profile is unweighted.
  double weight(std::size_t i) const { return weights_ ? (*weights_)[i] : 1.0; }

  /// True when every ranking covers the same identifiers.
  bool is_full() const;
  /// Identifier union, sorted.
  std::vector<std::string> candidates() const;

 private:
  std::vector<Ranking> rankings_;
  std::optional<std::vector<double>> weights_;
};

enum class AggregationMethod {
  kWeightScore,
  kKemeny,
  kWeightedKemeny,
  kPairwiseMajority,
  kWeightedPairwiseMajority,
};

enum class SearchMode { kExact, kLocalSearch };

struct AggregationOptions {
  std::size_t exact_threshold = 8;
  /// Random restarts of the local search beyond the weight-score start.
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  /// Force a mode; by default exact up to the threshold, local search above.
  std::optional<SearchMode> mode;
  /// Weight score only: score absent candidates 0 instead of rejecting.
  bool allow_partial = false;
};

/// Parses ws|kemeny|wkemeny|pm|wpm. Throws kInvalidArgument.
AggregationMethod parse_aggregation_method(std::string_view name);
std::string_view to_string(AggregationMethod method) noexcept;

/// Positional scores l - r + 1 summed across rankings, sorted descending
/// with identifier tie-break. Profile weights are ignored. With
/// `allow_partial`, a candidate missing from a ranking scores 0 there;
/// otherwise partial profiles throw kIdentifierSetMismatch.
Ranking weight_score_aggregate(const RankingProfile& profile, bool allow_partial = false);

/// argmin over orders of sum_i alpha_i * tau(order, R_i).
Ranking kemeny_aggregate(const RankingProfile& profile, const AggregationOptions& options = {});

/// argmax over orders of the (weighted) count of pairwise agreements.
Ranking pairwise_majority_aggregate(const RankingProfile& profile, const AggregationOptions& options = {});

/// Dispatches on method. Unweighted methods ignore profile weights.
Ranking aggregate(const RankingProfile& profile, AggregationMethod method, const AggregationOptions& options = {});

/// sum_i alpha_i * tau(order, R_i) for a strict candidate order.
double kemeny_objective(const RankingProfile& profile, const Ranking& order);
/// Weighted count of pairwise agreements between `order` and the profile.
double pairwise_agreement(const RankingProfile& profile, const Ranking& order);

}  // namespace prefgraph
