#include "prefgraph/rank_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "prefgraph/error.hpp"
#include "prefgraph/random.hpp"

namespace prefgraph {

RankingProfile::RankingProfile(std::vector<Ranking> rankings, std::optional<std::vector<double>> weights)
    : rankings_(std::move(rankings)), weights_(std::move(weights)) {
  if (rankings_.empty()) throw Error(ErrorKind::kEmptyVertexSet, "ranking profile is empty");
  if (weights_) {
    if (weights_->size() != rankings_.size()) {
      throw Error(ErrorKind::kWeightCountMismatch, std::to_string(weights_->size()) + " weights for " +
                                                       std::to_string(rankings_.size()) + " rankings");
    }
    for (double w : *weights_) {
      if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::kNonpositiveWeight, "ranking weights must be positive");
    }
  }
}

bool RankingProfile::is_full() const {
  auto reference = rankings_.front().order();
  std::sort(reference.begin(), reference.end());
  return std::all_of(rankings_.begin() + 1, rankings_.end(), [&](const Ranking& r) {
    auto ids = r.order();
    std::sort(ids.begin(), ids.end());
    return ids == reference;
  });
}

std::vector<std::string> RankingProfile::candidates() const {
  std::set<std::string> all;
  for (const auto& r : rankings_) all.insert(r.order().begin(), r.order().end());
  return {all.begin(), all.end()};
}

AggregationMethod parse_aggregation_method(std::string_view name) {
  if (name == "ws") return AggregationMethod::kWeightScore;
  if (name == "kemeny") return AggregationMethod::kKemeny;
  if (name == "wkemeny") return AggregationMethod::kWeightedKemeny;
  if (name == "pm") return AggregationMethod::kPairwiseMajority;
  if (name == "wpm") return AggregationMethod::kWeightedPairwiseMajority;
  throw Error(ErrorKind::kInvalidArgument, "unknown aggregation method '" + std::string(name) + "'");
}

std::string_view to_string(AggregationMethod method) noexcept {
  switch (method) {
    case AggregationMethod::kWeightScore: return "ws";
    case AggregationMethod::kKemeny: return "kemeny";
    case AggregationMethod::kWeightedKemeny: return "wkemeny";
    case AggregationMethod::kPairwiseMajority: return "pm";
    case AggregationMethod::kWeightedPairwiseMajority: return "wpm";
  }
  return "?";
}

namespace {

constexpr double kRelativeTieTolerance = 1e-9;

// Candidates in identifier order plus before[a * n + b]: the weight of
// rankings that place candidate a ahead of candidate b.
struct PairwiseTable {
  std::vector<std::string> candidates;
  std::size_t n = 0;
  std::vector<double> before;
  double tolerance = 0.0;

  double at(std::size_t a, std::size_t b) const { return before[a * n + b]; }
};

PairwiseTable tabulate(const RankingProfile& profile) {
  if (!profile.is_full()) {
    throw Error(ErrorKind::kIdentifierSetMismatch, "Kemeny and pairwise majority need full rankings over one set");
  }
  PairwiseTable table;
  table.candidates = profile.candidates();
  table.n = table.candidates.size();
  table.before.assign(table.n * table.n, 0.0);
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < table.n; ++i) index[table.candidates[i]] = i;
  double total = 0.0;
  for (std::size_t r = 0; r < profile.size(); ++r) {
    const auto& order = profile.rankings()[r].order();
    const double w = profile.weight(r);
    total += w;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        table.before[index[order[i]] * table.n + index[order[j]]] += w;
      }
    }
  }
  table.tolerance = kRelativeTieTolerance * std::max(1.0, total * static_cast<double>(table.n * table.n));
  return table;
}

Ranking to_ranking(const PairwiseTable& table, const std::vector<std::size_t>& order) {
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (auto i : order) ids.push_back(table.candidates[i]);
  return Ranking(std::move(ids));
}

// Exact Kemeny by branch and bound over prefixes. Candidates are tried in
// identifier order, so the first order reaching the optimum is the
// lexicographically smallest and only strict improvements replace it.
class KemenySearch {
 public:
  explicit KemenySearch(const PairwiseTable& table) : table_(table), placed_(table.n, false) {}

  std::vector<std::size_t> run() {
    search(0.0);
    return best_;
  }

 private:
  bool hopeless(double cost) const {
    return found_ && cost >= bound_ - table_.tolerance;
  }

  void search(double cost) {
    if (current_.size() == table_.n) {
      if (!hopeless(cost)) {
        bound_ = cost;
        best_ = current_;
        found_ = true;
      }
      return;
    }
    for (std::size_t v = 0; v < table_.n; ++v) {
      if (placed_[v]) continue;
      // Placing v after every placed u disagrees with rankings that put v first.
      double added = 0.0;
      for (auto u : current_) added += table_.at(v, u);
      if (hopeless(cost + added)) continue;
      placed_[v] = true;
      current_.push_back(v);
      search(cost + added);
      current_.pop_back();
      placed_[v] = false;
    }
  }

  const PairwiseTable& table_;
  std::vector<bool> placed_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double bound_ = 0.0;
  bool found_ = false;
};

// Exact pairwise majority by plain enumeration in lexicographic order.
std::vector<std::size_t> majority_by_enumeration(const PairwiseTable& table) {
  std::vector<std::size_t> perm(table.n);
  for (std::size_t i = 0; i < table.n; ++i) perm[i] = i;
  std::vector<std::size_t> best = perm;
  double best_agreement = -std::numeric_limits<double>::infinity();
  do {
    double agreement = 0.0;
    for (std::size_t i = 0; i < table.n; ++i) {
      for (std::size_t j = i + 1; j < table.n; ++j) agreement += table.at(perm[i], perm[j]);
    }
    if (agreement > best_agreement + table.tolerance) {
      best_agreement = agreement;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// cost(a, b): objective contribution of placing a immediately before b.
using PairCost = std::function<double(std::size_t, std::size_t)>;

double order_cost(const std::vector<std::size_t>& order, const PairCost& cost) {
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) total += cost(order[i], order[j]);
  }
  return total;
}

void climb(std::vector<std::size_t>& order, const PairCost& cost, double tolerance) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      if (cost(order[i + 1], order[i]) < cost(order[i], order[i + 1]) - tolerance) {
        std::swap(order[i], order[i + 1]);
        improved = true;
      }
    }
  }
}

std::vector<std::size_t> local_search(const PairwiseTable& table, const RankingProfile& profile,
                                      const AggregationOptions& options, const PairCost& cost) {
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < table.n; ++i) index[table.candidates[i]] = i;
  std::vector<std::size_t> start;
  const auto seed_order = weight_score_aggregate(profile);
  for (const auto& id : seed_order.order()) start.push_back(index[id]);

  climb(start, cost, table.tolerance);
  auto best = start;
  double best_cost = order_cost(best, cost);
  Rng rng(derive_seed(options.seed, 0));
  for (std::size_t r = 0; r < options.restarts; ++r) {
    auto candidate = start;
    rng.shuffle(candidate);
    climb(candidate, cost, table.tolerance);
    const double c = order_cost(candidate, cost);
    if (c < best_cost - table.tolerance) {
      best_cost = c;
      best = std::move(candidate);
    }
  }
  return best;
}

SearchMode resolve_mode(const AggregationOptions& options, std::size_t n) {
  if (options.mode) {
    if (*options.mode == SearchMode::kExact && n > options.exact_threshold) {
      throw Error(ErrorKind::kOverThreshold, "exact aggregation limited to " + std::to_string(options.exact_threshold) +
                                                 " candidates, profile has " + std::to_string(n));
    }
    return *options.mode;
  }
  return n <= options.exact_threshold ? SearchMode::kExact : SearchMode::kLocalSearch;
}

RankingProfile unweighted(const RankingProfile& profile) { return RankingProfile(profile.rankings()); }

}  // namespace

Ranking weight_score_aggregate(const RankingProfile& profile, bool allow_partial) {
  if (!allow_partial && !profile.is_full()) {
    throw Error(ErrorKind::kIdentifierSetMismatch, "rankings cover different candidates; enable partial mode");
  }
  std::map<std::string, double> total;
  for (const auto& id : profile.candidates()) total[id] = 0.0;
  for (const auto& r : profile.rankings()) {
    const auto length = static_cast<double>(r.size());
    for (std::size_t pos = 0; pos < r.size(); ++pos) total[r.order()[pos]] += length - static_cast<double>(pos + 1) + 1.0;
  }
  std::vector<std::pair<std::string, double>> entries(total.begin(), total.end());
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> order;
  std::vector<double> scores;
  for (auto& [id, score] : entries) {
    order.push_back(id);
    scores.push_back(score);
  }
  return Ranking(std::move(order), std::move(scores));
}

Ranking kemeny_aggregate(const RankingProfile& profile, const AggregationOptions& options) {
  const auto table = tabulate(profile);
  if (resolve_mode(options, table.n) == SearchMode::kExact) return to_ranking(table, KemenySearch(table).run());
  const PairCost disagreement = [&](std::size_t a, std::size_t b) { return table.at(b, a); };
  return to_ranking(table, local_search(table, profile, options, disagreement));
}

Ranking pairwise_majority_aggregate(const RankingProfile& profile, const AggregationOptions& options) {
  const auto table = tabulate(profile);
  if (resolve_mode(options, table.n) == SearchMode::kExact) return to_ranking(table, majority_by_enumeration(table));
  const PairCost lost_agreement = [&](std::size_t a, std::size_t b) { return -table.at(a, b); };
  return to_ranking(table, local_search(table, profile, options, lost_agreement));
}

Ranking aggregate(const RankingProfile& profile, AggregationMethod method, const AggregationOptions& options) {
  switch (method) {
    case AggregationMethod::kWeightScore:
      return weight_score_aggregate(profile, options.allow_partial);
    case AggregationMethod::kKemeny:
      return kemeny_aggregate(unweighted(profile), options);
    case AggregationMethod::kWeightedKemeny:
      return kemeny_aggregate(profile, options);
    case AggregationMethod::kPairwiseMajority:
      return pairwise_majority_aggregate(unweighted(profile), options);
    case AggregationMethod::kWeightedPairwiseMajority:
      return pairwise_majority_aggregate(profile, options);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown aggregation method");
}

double kemeny_objective(const RankingProfile& profile, const Ranking& order) {
  double total = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    total += profile.weight(i) * static_cast<double>(kendall_tau_distance(order.strict(), profile.rankings()[i].strict()));
  }
  return total;
}

double pairwise_agreement(const RankingProfile& profile, const Ranking& order) {
  std::map<std::string_view, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order.order()[i]] = i;
  double total = 0.0;
  for (std::size_t r = 0; r < profile.size(); ++r) {
    const auto& ids = profile.rankings()[r].order();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const auto a = pos.find(ids[i]);
        const auto b = pos.find(ids[j]);
        if (a == pos.end() || b == pos.end()) {
          throw Error(ErrorKind::kIdentifierSetMismatch, "order does not cover the profile's candidates");
        }
        if (a->second < b->second) total += profile.weight(r);
      }
    }
  }
  return total;
}

}  // namespace prefgraph
