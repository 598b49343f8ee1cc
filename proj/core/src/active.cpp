#include "prefgraph/active.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "prefgraph/error.hpp"
#include "prefgraph/random.hpp"

namespace prefgraph {

std::size_t ActiveConfig::random_pairs() const {
  return static_cast<std::size_t>(std::floor(alpha * static_cast<double>(budget)));
}

void ActiveConfig::validate(std::size_t num_items) const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::kInvalidArgument, "alpha must lie in (0, 1)");
  if (!(damping > 0.0 && damping < 1.0)) throw Error(ErrorKind::kInvalidArgument, "damping must lie in (0, 1)");
  if (!(pagerank_tolerance > 0.0)) throw Error(ErrorKind::kInvalidArgument, "PageRank tolerance must be positive");
  if (!(uncertainty_epsilon > 0.0)) throw Error(ErrorKind::kInvalidArgument, "uncertainty epsilon must be positive");
  if (random_pairs() < 1) {
    throw Error(ErrorKind::kInvalidArgument, "alpha * budget must leave at least one random pair");
  }
  const auto pairs = num_items * (num_items - (num_items > 0 ? 1 : 0)) / 2;
  if (budget > pairs) {
    throw Error(ErrorKind::kOverThreshold, "budget " + std::to_string(budget) + " exceeds the " +
                                               std::to_string(pairs) + " available pairs");
  }
}

PageRankResult pagerank(const PreferenceGraph& graph, const ActiveConfig& config) {
  const auto n = graph.num_vertices();
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> out_weight(n, 0.0);
  for (const auto& [key, w] : graph.arc_map()) out_weight[key.first] += w;

  std::vector<double> rank(n, uniform);
  std::vector<double> next(n);
  PageRankResult result;
  while (result.iterations < config.pagerank_max_iterations) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (out_weight[v] == 0.0) dangling += rank[v];
    }
    const double base = (1.0 - config.damping) * uniform + config.damping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (const auto& [key, w] : graph.arc_map()) {
      next[key.second] += config.damping * rank[key.first] * w / out_weight[key.first];
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    ++result.iterations;
    if (change < config.pagerank_tolerance) {
      result.converged = true;
      break;
    }
  }
  double total = 0.0;
  for (double r : rank) total += r;
  for (std::size_t v = 0; v < n; ++v) result.scores[graph.id(v)] = rank[v] / total;
  return result;
}

double uncertainty(const std::map<std::string, double>& scores, const std::string& u, const std::string& v,
                   const ActiveConfig& config) {
  if (u == v) throw Error(ErrorKind::kSelfPreference, "uncertainty of '" + u + "' against itself");
  const auto pu = scores.find(u);
  const auto pv = scores.find(v);
  if (pu == scores.end() || pv == scores.end()) {
    throw Error(ErrorKind::kUnknownVertex, "no PageRank score for '" + (pu == scores.end() ? u : v) + "'");
  }
  return 1.0 / (std::abs(pu->second - pv->second) + config.uncertainty_epsilon);
}

namespace {

void evaluate_pair(PreferenceGraph& graph, std::span<const Item> items, std::size_t a, std::size_t b,
                   const Question& question, const EvaluatorSet& evaluators) {
  double a_wins = 0.0;
  double b_wins = 0.0;
  for (const auto& evaluator : evaluators) {
    for (const auto& record : debiased_judge(*evaluator, question, items[a], items[b])) {
      (record.winner == items[a].id ? a_wins : b_wins) += 1.0;
    }
  }
  const double k = static_cast<double>(evaluators.size());
  if (a_wins > 0.0) graph.add_preference(items[a].id, items[b].id, a_wins / k);
  if (b_wins > 0.0) graph.add_preference(items[b].id, items[a].id, b_wins / k);
}

}  // namespace

ActiveResult active_ged(std::span<const Item> items, const Question& question, const EvaluatorSet& evaluators,
                        const ActiveConfig& config, std::uint64_t seed) {
  if (items.size() < 2) throw Error(ErrorKind::kInvalidArgument, "active selection needs at least two items");
  if (evaluators.empty()) throw Error(ErrorKind::kInvalidArgument, "at least one evaluator is required");
  config.validate(items.size());

  std::vector<std::string> ids;
  for (const auto& item : items) ids.push_back(item.id);
  ActiveResult result{PreferenceGraph(ids), {}, config.random_pairs()};
  const auto& graph_ref = result.graph;

  // Candidate pairs as item indices, ordered by (smaller id, larger id).
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const bool in_order = items[i].id < items[j].id;
      pairs.emplace_back(in_order ? i : j, in_order ? j : i);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
    return std::tie(items[x.first].id, items[x.second].id) < std::tie(items[y.first].id, items[y.second].id);
  });
  std::vector<bool> done(pairs.size(), false);
  auto record = [&](std::size_t p) {
    done[p] = true;
    evaluate_pair(result.graph, items, pairs[p].first, pairs[p].second, question, evaluators);
    result.evaluated.emplace_back(items[pairs[p].first].id, items[pairs[p].second].id);
  };

  std::vector<std::size_t> shuffled(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) shuffled[p] = p;
  Rng rng(seed);
  rng.shuffle(shuffled);
  for (std::size_t r = 0; r < result.random_pairs; ++r) record(shuffled[r]);

  while (result.evaluated.size() < config.budget) {
    const auto scores = pagerank(graph_ref, config).scores;
    std::size_t pick = pairs.size();
    double best = -1.0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (done[p]) continue;
      const double u = uncertainty(scores, items[pairs[p].first].id, items[pairs[p].second].id, config);
      if (u > best) {
        best = u;
        pick = p;
      }
    }
    record(pick);
  }
  return result;
}

}  // namespace prefgraph
