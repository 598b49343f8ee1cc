#include "prefgraph/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "prefgraph/error.hpp"

namespace prefgraph {

Ranking::Ranking(std::vector<std::string> order, std::optional<std::vector<double>> scores)
    : order_(std::move(order)), scores_(std::move(scores)) {
  std::set<std::string_view> seen;
  for (const auto& id : order_) {
    if (!seen.insert(id).second) throw Error(ErrorKind::kDuplicateVertex, "ranking lists '" + id + "' twice");
  }
  if (scores_ && scores_->size() != order_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "ranking has " + std::to_string(order_.size()) + " entries but " +
                                                 std::to_string(scores_->size()) + " scores");
  }
}

bool Ranking::has_ties() const {
  if (!scores_) return false;
  for (std::size_t i = 1; i < scores_->size(); ++i) {
    if ((*scores_)[i] == (*scores_)[i - 1]) return true;
  }
  return false;
}

std::map<std::string, double> Ranking::fractional_positions() const {
  std::map<std::string, double> out;
  std::size_t start = 0;
  while (start < order_.size()) {
    std::size_t end = start + 1;
    if (scores_) {
      while (end < order_.size() && (*scores_)[end] == (*scores_)[start]) ++end;
    }
    // positions start+1 .. end share their mean
    const double mean = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t i = start; i < end; ++i) out[order_[i]] = mean;
    start = end;
  }
  return out;
}

std::map<std::string, std::size_t> descendant_counts(const PreferenceGraph& dag) {
  if (has_cycle(dag)) throw Error(ErrorKind::kCyclicInput, "descendant counts need an acyclic graph");
  const auto n = dag.num_vertices();
  const auto adj = dag.out_adjacency();
  std::map<std::string, std::size_t> out;
  std::vector<char> seen(n);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(seen.begin(), seen.end(), 0);
    seen[v] = 1;
    stack.assign(1, v);
    std::size_t reached = 0;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& [next, w] : adj[u]) {
        if (!seen[next]) {
          seen[next] = 1;
          ++reached;
          stack.push_back(next);
        }
      }
    }
    out[dag.id(v)] = reached;
  }
  return out;
}

Ranking rank_from_dag(const PreferenceGraph& dag) {
  const auto counts = descendant_counts(dag);
  std::vector<std::string> order(dag.vertices());
  std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    const auto ca = counts.at(a);
    const auto cb = counts.at(b);
    return ca != cb ? ca > cb : a < b;
  });
  std::vector<double> scores;
  scores.reserve(order.size());
  for (const auto& id : order) scores.push_back(static_cast<double>(counts.at(id)));
  return Ranking(std::move(order), std::move(scores));
}

namespace {

void require_same_items(const Ranking& a, const Ranking& b) {
  auto sa = a.order();
  auto sb = b.order();
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) throw Error(ErrorKind::kIdentifierSetMismatch, "rankings cover different candidates");
}

}  // namespace

std::size_t kendall_tau_distance(const Ranking& a, const Ranking& b) {
  require_same_items(a, b);
  if (a.has_ties() || b.has_ties()) {
    throw Error(ErrorKind::kTiedRanking, "Kendall tau distance is defined on strict orders only");
  }
  std::map<std::string_view, std::size_t> pos_b;
  for (std::size_t i = 0; i < b.size(); ++i) pos_b[b.order()[i]] = i;
  std::vector<std::size_t> seq;
  seq.reserve(a.size());
  for (const auto& id : a.order()) seq.push_back(pos_b[id]);
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] > seq[j]) ++discordant;
    }
  }
  return discordant;
}

double spearman(const Ranking& a, const Ranking& b) {
  require_same_items(a, b);
  if (a.size() < 2) throw Error(ErrorKind::kInvalidArgument, "Spearman correlation needs at least 2 items");
  // Pearson correlation of the position vectors; equals 1 - 6 sum d^2 / (n(n^2-1)) without ties.
  const auto pa = a.fractional_positions();
  const auto pb = b.fractional_positions();
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (const auto& [id, x] : pa) {
    const double y = pb.at(id);
    sab += (x - mean) * (y - mean);
    saa += (x - mean) * (x - mean);
    sbb += (y - mean) * (y - mean);
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw Error(ErrorKind::kNumeric, "Spearman correlation undefined for a fully tied ranking");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace prefgraph
