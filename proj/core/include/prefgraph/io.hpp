#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prefgraph/denoise.hpp"
#include "prefgraph/graph.hpp"
#include "prefgraph/judge.hpp"
#include "prefgraph/perturb.hpp"
#include "prefgraph/rank_ensemble.hpp"
#include "prefgraph/ranking.hpp"

namespace prefgraph {

/// JSON object with insertion-ordered keys.
using Document = nlohmann::ordered_json;

/// Two-space indented text with a trailing newline. Equal documents give
/// identical bytes.
std::string dump(const Document& doc);
/// Throws kMalformedDocument.
Document parse_document(std::string_view text);
/// Throws kIo.
std::string read_file(const std::filesystem::path& path);

// Graph: {"vertices": [...], "arcs": [{"from", "to", "w"}]}, arcs sorted
// by (from, to).
Document to_document(const PreferenceGraph& graph);
PreferenceGraph graph_from_document(const Document& doc);
std::string serialize(const PreferenceGraph& graph);
PreferenceGraph parse_graph(std::string_view text);

// Ranking: {"order": [...], "scores": [...]?}
Document to_document(const Ranking& ranking);
Ranking ranking_from_document(const Document& doc);
Ranking parse_ranking(std::string_view text);

// Profile: {"rankings": [Ranking...], "weights": [...]?}
Document to_document(const RankingProfile& profile);
RankingProfile profile_from_document(const Document& doc);
RankingProfile parse_profile(std::string_view text);

// Graph document of the DAG plus "removed", "removed_weight", "sequence".
Document to_document(const DenoiseResult& result);

Document to_document(const RecoveryReport& report);

// Judgment line: {"evaluator_id", "question_id", "item_a", "item_b",
// "winner", "presentation_order": "ab" | "ba"}.
Document to_document(const JudgmentRecord& record);
JudgmentRecord judgment_from_document(const Document& doc);
/// Compact single-line form, no trailing newline.
std::string serialize_line(const JudgmentRecord& record);
std::vector<JudgmentRecord> parse_judgments(std::istream& in);

// Items: [{"id", "content"}]
std::vector<Item> items_from_document(const Document& doc);
std::vector<Item> parse_items(std::string_view text);
Document to_document(std::span<const Item> items);

}  // namespace prefgraph
