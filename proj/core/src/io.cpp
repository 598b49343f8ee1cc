#include "prefgraph/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "prefgraph/error.hpp"

namespace prefgraph {
namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::kMalformedDocument, what); }

const Document& member(const Document& doc, const char* key, const char* context) {
  if (!doc.is_object()) malformed(std::string(context) + " must be an object");
  auto it = doc.find(key);
  if (it == doc.end()) malformed(std::string(context) + " is missing \"" + key + "\"");
  return *it;
}

std::string string_member(const Document& doc, const char* key, const char* context) {
  const auto& value = member(doc, key, context);
  if (!value.is_string()) malformed(std::string(context) + " field \"" + key + "\" must be a string");
  return value.get<std::string>();
}

std::vector<std::string> string_array(const Document& value, const char* what) {
  if (!value.is_array()) malformed(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& entry : value) {
    if (!entry.is_string()) malformed(std::string(what) + " must be an array of strings");
    out.push_back(entry.get<std::string>());
  }
  return out;
}

std::vector<double> number_array(const Document& value, const char* what) {
  if (!value.is_array()) malformed(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& entry : value) {
    if (!entry.is_number()) malformed(std::string(what) + " must be an array of numbers");
    out.push_back(entry.get<double>());
  }
  return out;
}

Document arc_array(const std::vector<WeightedArc>& arcs) {
  Document out = Document::array();
  for (const auto& arc : arcs) {
    Document entry;
    entry["from"] = arc.from;
    entry["to"] = arc.to;
    entry["w"] = arc.weight;
    out.push_back(std::move(entry));
  }
  return out;
}

Document number_or_null(double value) { return std::isfinite(value) ? Document(value) : Document(nullptr); }

}  // namespace

std::string dump(const Document& doc) { return doc.dump(2) + "\n"; }

Document parse_document(std::string_view text) {
  try {
    return Document::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  return buffer.str();
}

Document to_document(const PreferenceGraph& graph) {
  Document doc;
  doc["vertices"] = graph.vertices();
  doc["arcs"] = arc_array(graph.arcs());
  return doc;
}

PreferenceGraph graph_from_document(const Document& doc) {
  PreferenceGraph graph(string_array(member(doc, "vertices", "graph document"), "\"vertices\""));
  const auto& arcs = member(doc, "arcs", "graph document");
  if (!arcs.is_array()) malformed("\"arcs\" must be an array");
  for (const auto& arc : arcs) {
    const auto& w = member(arc, "w", "arc");
    if (!w.is_number()) malformed("arc field \"w\" must be a number");
    graph.add_preference(string_member(arc, "from", "arc"), string_member(arc, "to", "arc"), w.get<double>());
  }
  return graph;
}

std::string serialize(const PreferenceGraph& graph) { return dump(to_document(graph)); }

PreferenceGraph parse_graph(std::string_view text) { return graph_from_document(parse_document(text)); }

Document to_document(const Ranking& ranking) {
  Document doc;
  doc["order"] = ranking.order();
  if (ranking.scores()) doc["scores"] = *ranking.scores();
  return doc;
}

Ranking ranking_from_document(const Document& doc) {
  auto order = string_array(member(doc, "order", "ranking document"), "\"order\"");
  std::optional<std::vector<double>> scores;
  if (doc.contains("scores")) scores = number_array(doc["scores"], "\"scores\"");
  return Ranking(std::move(order), std::move(scores));
}

Ranking parse_ranking(std::string_view text) { return ranking_from_document(parse_document(text)); }

Document to_document(const RankingProfile& profile) {
  Document doc;
  doc["rankings"] = Document::array();
  for (const auto& r : profile.rankings()) doc["rankings"].push_back(to_document(r));
  if (profile.weights()) doc["weights"] = *profile.weights();
  return doc;
}

RankingProfile profile_from_document(const Document& doc) {
  const auto& rankings = member(doc, "rankings", "profile document");
  if (!rankings.is_array()) malformed("\"rankings\" must be an array");
  std::vector<Ranking> out;
  for (const auto& r : rankings) out.push_back(ranking_from_document(r));
  std::optional<std::vector<double>> weights;
  if (doc.contains("weights")) weights = number_array(doc["weights"], "\"weights\"");
  return RankingProfile(std::move(out), std::move(weights));
}

RankingProfile parse_profile(std::string_view text) { return profile_from_document(parse_document(text)); }

Document to_document(const DenoiseResult& result) {
  Document doc = to_document(result.dag);
  doc["removed"] = arc_array(result.removed);
  doc["removed_weight"] = result.removed_weight;
  doc["sequence"] = result.sequence.order;
  return doc;
}

Document to_document(const RecoveryReport& report) {
  Document doc;
  doc["N"] = report.ensemble_size;
  doc["trials"] = report.trials;
  doc["successes"] = report.successes;
  doc["empirical_probability"] = report.empirical_probability;
  doc["analytic_bound"] = number_or_null(report.analytic_bound);
  doc["bound_applicable"] = report.bound_applicable;
  doc["bound_satisfied"] = report.bound_applicable ? Document(report.empirical_probability >= report.analytic_bound)
                                                   : Document(nullptr);
  doc["delta1"] = report.params.delta1;
  doc["delta2"] = report.params.delta2;
  doc["epsilon"] = report.epsilon;
  doc["num_vertices"] = report.num_vertices;
  doc["num_arcs"] = report.num_arcs;
  doc["denoise_mode"] = report.denoise_mode == DenoiseMode::kExact ? "exact" : "greedy";
  doc["seed"] = report.seed;
  return doc;
}

Document to_document(const JudgmentRecord& record) {
  Document doc;
  doc["evaluator_id"] = record.evaluator_id;
  doc["question_id"] = record.question_id;
  doc["item_a"] = record.item_a;
  doc["item_b"] = record.item_b;
  doc["winner"] = record.winner;
  doc["presentation_order"] = record.presentation_order == PresentationOrder::kAB ? "ab" : "ba";
  return doc;
}

JudgmentRecord judgment_from_document(const Document& doc) {
  JudgmentRecord record;
  record.evaluator_id = string_member(doc, "evaluator_id", "judgment");
  record.question_id = string_member(doc, "question_id", "judgment");
  record.item_a = string_member(doc, "item_a", "judgment");
  record.item_b = string_member(doc, "item_b", "judgment");
  record.winner = string_member(doc, "winner", "judgment");
  const auto order = string_member(doc, "presentation_order", "judgment");
  if (order == "ab") {
    record.presentation_order = PresentationOrder::kAB;
  } else if (order == "ba") {
    record.presentation_order = PresentationOrder::kBA;
  } else {
    malformed("presentation_order must be \"ab\" or \"ba\"");
  }
  record.validate();
  return record;
}

std::string serialize_line(const JudgmentRecord& record) { return to_document(record).dump(); }

std::vector<JudgmentRecord> parse_judgments(std::istream& in) {
  std::vector<JudgmentRecord> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(judgment_from_document(parse_document(line)));
    } catch (const Error& e) {
      malformed("line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Item> items_from_document(const Document& doc) {
  if (!doc.is_array()) malformed("items document must be an array");
  std::vector<Item> items;
  for (const auto& entry : doc) {
    items.push_back({string_member(entry, "id", "item"), string_member(entry, "content", "item")});
  }
  return items;
}

std::vector<Item> parse_items(std::string_view text) { return items_from_document(parse_document(text)); }

Document to_document(std::span<const Item> items) {
  Document doc = Document::array();
  for (const auto& item : items) {
    Document entry;
    entry["id"] = item.id;
    entry["content"] = item.content;
    doc.push_back(std::move(entry));
  }
  return doc;
}

}  // namespace prefgraph
