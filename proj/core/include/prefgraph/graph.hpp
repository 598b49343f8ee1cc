#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prefgraph {

/// One directed, weighted preference: `from` is preferred over `to`.
struct WeightedArc {
  std::string from;
  std::string to;
  double weight = 0.0;

  friend bool operator==(const WeightedArc&, const WeightedArc&) = default;
};

/// Weighted directed graph over opaque candidate identifiers.
///
/// Arcs are stored per direction, so u->v and v->u may coexist; the net
/// preference between two candidates is available through net_weight().
/// Every stored weight is strictly positive and self-arcs never exist.
///
/// Vertices keep their insertion order for serialization. All
/// tie-breaking in the library uses lexicographic order of the
/// identifier strings instead, exposed here as lexicographic_rank().
class PreferenceGraph {
 public:
  using ArcMap = std::map<std::pair<std::size_t, std::size_t>, double>;

  /// Throws kEmptyVertexSet or kDuplicateVertex.
  explicit PreferenceGraph(std::vector<std::string> vertices);

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_arcs() const noexcept { return arcs_.size(); }

  bool contains(std::string_view id) const;
  /// Throws kUnknownVertex.
  std::size_t index_of(std::string_view id) const;
  const std::string& id(std::size_t index) const { return vertices_.at(index); }

  /// Position of each vertex index in lexicographic identifier order.
  const std::vector<std::size_t>& lexicographic_rank() const noexcept { return lex_rank_; }
  /// Vertex indices sorted by identifier.
  const std::vector<std::size_t>& lexicographic_order() const noexcept { return lex_order_; }

  /// Adds `weight` to winner->loser. Throws kUnknownVertex,
  /// kSelfPreference or kNonpositiveWeight.
  void add_preference(std::string_view winner, std::string_view loser, double weight = 1.0);
  void add_preference(std::size_t winner, std::size_t loser, double weight = 1.0);

  /// Stored weight of from->to, 0 when the arc is absent.
  double weight(std::string_view from, std::string_view to) const;
  double weight(std::size_t from, std::size_t to) const;
  bool has_arc(std::string_view from, std::string_view to) const;
  bool has_arc(std::size_t from, std::size_t to) const;

  /// w(u->v) - w(v->u). Throws kUnknownVertex or kSelfPreference.
  double net_weight(std::string_view u, std::string_view v) const;

  /// Arcs sorted by (from, to) identifier.
  std::vector<WeightedArc> arcs() const;
  /// Arcs keyed by vertex index pair.
  const ArcMap& arc_map() const noexcept { return arcs_; }

  /// Outgoing (target, weight) lists per vertex index.
  std::vector<std::vector<std::pair<std::size_t, double>>> out_adjacency() const;

  /// Same identifiers, ignoring order.
  bool same_vertex_set(const PreferenceGraph& other) const;

  /// Same vertex list and identical arc weights.
  friend bool operator==(const PreferenceGraph& a, const PreferenceGraph& b);

 private:
  std::vector<std::string> vertices_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::size_t> lex_rank_;
  std::vector<std::size_t> lex_order_;
  ArcMap arcs_;
};

/// Graphs from k evaluators over one shared vertex set.
class GraphSet {
 public:
  /// Throws kEmptyVertexSet when `graphs` is empty, kVertexSetMismatch
  /// when vertex sets differ, kInvalidArgument when `labels` is
  /// non-empty and its size differs from the graph count.
  explicit GraphSet(std::vector<PreferenceGraph> graphs, std::vector<std::string> labels = {});

  const std::vector<PreferenceGraph>& graphs() const noexcept { return graphs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return graphs_.size(); }

 private:
  std::vector<PreferenceGraph> graphs_;
  std::vector<std::string> labels_;
};

/// Union of arcs with summed weights. With evaluator weights each graph's
/// contribution is scaled by its weight before summing. The result keeps
/// the vertex order of the first graph.
PreferenceGraph ensemble(const GraphSet& graphs,
                         std::optional<std::span<const double>> evaluator_weights = std::nullopt);

bool has_cycle(const PreferenceGraph& graph);

/// Percentage (0-100) of graphs containing at least one directed cycle.
double cycle_rate(std::span<const PreferenceGraph> graphs);

}  // namespace prefgraph
