#include "prefgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "prefgraph/error.hpp"

namespace prefgraph {

PreferenceGraph::PreferenceGraph(std::vector<std::string> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) {
    throw Error(ErrorKind::kEmptyVertexSet, "a preference graph needs at least one vertex");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      throw Error(ErrorKind::kDuplicateVertex, "vertex '" + vertices_[i] + "' listed twice");
    }
  }
  lex_order_.reserve(vertices_.size());
  for (const auto& [name, index] : index_) lex_order_.push_back(index);
  lex_rank_.resize(vertices_.size());
  for (std::size_t r = 0; r < lex_order_.size(); ++r) lex_rank_[lex_order_[r]] = r;
}

bool PreferenceGraph::contains(std::string_view id) const { return index_.find(id) != index_.end(); }

std::size_t PreferenceGraph::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorKind::kUnknownVertex, "unknown vertex '" + std::string(id) + "'");
  }
  return it->second;
}

void PreferenceGraph::add_preference(std::string_view winner, std::string_view loser, double weight) {
  add_preference(index_of(winner), index_of(loser), weight);
}

void PreferenceGraph::add_preference(std::size_t winner, std::size_t loser, double weight) {
  if (winner >= vertices_.size() || loser >= vertices_.size()) {
    throw Error(ErrorKind::kUnknownVertex, "vertex index out of range");
  }
  if (winner == loser) {
    throw Error(ErrorKind::kSelfPreference, "vertex '" + vertices_[winner] + "' cannot beat itself");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    std::ostringstream msg;
    msg << "arc " << vertices_[winner] << "->" << vertices_[loser] << " has weight " << weight;
    throw Error(ErrorKind::kNonpositiveWeight, msg.str());
  }
  arcs_[{winner, loser}] += weight;
}

double PreferenceGraph::weight(std::string_view from, std::string_view to) const {
  return weight(index_of(from), index_of(to));
}

double PreferenceGraph::weight(std::size_t from, std::size_t to) const {
  auto it = arcs_.find({from, to});
  return it == arcs_.end() ? 0.0 : it->second;
}

bool PreferenceGraph::has_arc(std::string_view from, std::string_view to) const {
  return has_arc(index_of(from), index_of(to));
}

bool PreferenceGraph::has_arc(std::size_t from, std::size_t to) const { return arcs_.contains({from, to}); }

double PreferenceGraph::net_weight(std::string_view u, std::string_view v) const {
  const auto iu = index_of(u);
  const auto iv = index_of(v);
  if (iu == iv) {
    throw Error(ErrorKind::kSelfPreference, "net weight of '" + std::string(u) + "' against itself");
  }
  return weight(iu, iv) - weight(iv, iu);
}

std::vector<WeightedArc> PreferenceGraph::arcs() const {
  std::vector<WeightedArc> out;
  out.reserve(arcs_.size());
  for (const auto& [key, w] : arcs_) out.push_back({vertices_[key.first], vertices_[key.second], w});
  std::sort(out.begin(), out.end(), [](const WeightedArc& a, const WeightedArc& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  return out;
}

std::vector<std::vector<std::pair<std::size_t, double>>> PreferenceGraph::out_adjacency() const {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(vertices_.size());
  for (const auto& [key, w] : arcs_) adj[key.first].emplace_back(key.second, w);
  return adj;
}

bool PreferenceGraph::same_vertex_set(const PreferenceGraph& other) const {
  if (other.vertices_.size() != vertices_.size()) return false;
  return std::all_of(vertices_.begin(), vertices_.end(), [&](const std::string& v) { return other.contains(v); });
}

bool operator==(const PreferenceGraph& a, const PreferenceGraph& b) {
  return a.vertices_ == b.vertices_ && a.arcs_ == b.arcs_;
}

namespace {

std::string describe(const std::vector<std::string>& vertices) {
  std::string out = "[";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out += ", ";
    out += vertices[i];
  }
  return out + "]";
}

}  // namespace

GraphSet::GraphSet(std::vector<PreferenceGraph> graphs, std::vector<std::string> labels)
    : graphs_(std::move(graphs)), labels_(std::move(labels)) {
  if (graphs_.empty()) throw Error(ErrorKind::kEmptyVertexSet, "graph set is empty");
  if (!labels_.empty() && labels_.size() != graphs_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "label count does not match graph count");
  }
  auto name = [&](std::size_t i) { return labels_.empty() ? "graph " + std::to_string(i) : "'" + labels_[i] + "'"; };
  for (std::size_t i = 1; i < graphs_.size(); ++i) {
    if (!graphs_[i].same_vertex_set(graphs_[0])) {
      throw Error(ErrorKind::kVertexSetMismatch, name(0) + " has vertices " + describe(graphs_[0].vertices()) +
                                                     " but " + name(i) + " has " + describe(graphs_[i].vertices()));
    }
  }
}

PreferenceGraph ensemble(const GraphSet& graphs, std::optional<std::span<const double>> evaluator_weights) {
  if (evaluator_weights) {
    if (evaluator_weights->size() != graphs.size()) {
      throw Error(ErrorKind::kWeightCountMismatch, std::to_string(evaluator_weights->size()) +
                                                       " evaluator weights for " + std::to_string(graphs.size()) +
                                                       " graphs");
    }
    for (double w : *evaluator_weights) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw Error(ErrorKind::kNonpositiveWeight, "evaluator weights must be positive");
      }
    }
  }
  const auto& first = graphs.graphs().front();
  PreferenceGraph out(first.vertices());
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const double scale = evaluator_weights ? (*evaluator_weights)[g] : 1.0;
    const auto& member = graphs.graphs()[g];
    for (const auto& [key, w] : member.arc_map()) {
      out.add_preference(out.index_of(member.id(key.first)), out.index_of(member.id(key.second)), scale * w);
    }
  }
  return out;
}

bool has_cycle(const PreferenceGraph& graph) {
  // Kahn elimination: a cycle exists iff some vertex is never freed.
  const auto n = graph.num_vertices();
  std::vector<std::size_t> in_degree(n, 0);
  for (const auto& [key, w] : graph.arc_map()) ++in_degree[key.second];
  const auto adj = graph.out_adjacency();
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_degree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (const auto& [to, w] : adj[v]) {
      if (--in_degree[to] == 0) ready.push_back(to);
    }
  }
  return removed != n;
}

double cycle_rate(std::span<const PreferenceGraph> graphs) {
  if (graphs.empty()) throw Error(ErrorKind::kInvalidArgument, "cycle rate of an empty collection");
  const auto cyclic = std::count_if(graphs.begin(), graphs.end(), [](const auto& g) { return has_cycle(g); });
  return 100.0 * static_cast<double>(cyclic) / static_cast<double>(graphs.size());
}

}  // namespace prefgraph
