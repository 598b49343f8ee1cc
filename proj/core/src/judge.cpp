#include "prefgraph/judge.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "prefgraph/error.hpp"
#include "prefgraph/io.hpp"
#include "prefgraph/random.hpp"

namespace prefgraph {

void JudgmentRecord::validate() const {
  if (item_a == item_b) throw Error(ErrorKind::kSelfPreference, "judgment compares '" + item_a + "' with itself");
  if (winner != item_a && winner != item_b) {
    throw Error(ErrorKind::kInvalidArgument,
                "winner '" + winner + "' is neither '" + item_a + "' nor '" + item_b + "'");
  }
}

SimulatedEvaluator::SimulatedEvaluator(std::string id, Ranking default_truth, double flip_probability,
                                       std::uint64_t seed)
    : id_(std::move(id)), default_truth_(std::move(default_truth)), flip_probability_(flip_probability), seed_(seed) {
  if (!(flip_probability_ >= 0.0 && flip_probability_ < 0.5)) {
    throw Error(ErrorKind::kInvalidArgument, "flip probability must lie in [0, 0.5)");
  }
}

void SimulatedEvaluator::set_truth(const std::string& question_id, Ranking truth) {
  truth_by_question_.insert_or_assign(question_id, std::move(truth));
}

const Ranking& SimulatedEvaluator::truth_for(const std::string& question_id) const {
  auto it = truth_by_question_.find(question_id);
  return it == truth_by_question_.end() ? default_truth_ : it->second;
}

const std::string& SimulatedEvaluator::winner(const std::string& question_id, const std::string& item_a,
                                              const std::string& item_b) const {
  if (item_a == item_b) throw Error(ErrorKind::kSelfPreference, "cannot judge '" + item_a + "' against itself");
  const auto& order = truth_for(question_id).order();
  const auto pa = std::find(order.begin(), order.end(), item_a);
  const auto pb = std::find(order.begin(), order.end(), item_b);
  if (pa == order.end() || pb == order.end()) {
    throw Error(ErrorKind::kUnknownVertex, "item '" + (pa == order.end() ? item_a : item_b) +
                                               "' is not in the true ranking of question '" + question_id + "'");
  }
  const auto& better = pa < pb ? item_a : item_b;
  const auto& worse = pa < pb ? item_b : item_a;
  // Seed from the unordered pair so both presentations agree.
  const auto& low = std::min(item_a, item_b);
  const auto& high = std::max(item_a, item_b);
  std::uint64_t key = derive_seed(seed_, hash_string(question_id));
  key = derive_seed(key, hash_string(low));
  key = derive_seed(key, hash_string(high));
  const double u = static_cast<double>(mix64(key) >> 11) * 0x1.0p-53;
  return u < flip_probability_ ? worse : better;
}

Side SimulatedEvaluator::judge(const Question& question, const Item& first, const Item& second) const {
  return winner(question.id, first.id, second.id) == first.id ? Side::kFirst : Side::kSecond;
}

ReplayEvaluator::ReplayEvaluator(std::string id, std::span<const JudgmentRecord> records) : id_(std::move(id)) {
  for (const auto& r : records) {
    if (r.evaluator_id != id_) continue;
    r.validate();
    const bool ab = r.presentation_order == PresentationOrder::kAB;
    verdicts_.try_emplace({r.question_id, ab ? r.item_a : r.item_b, ab ? r.item_b : r.item_a}, r.winner);
  }
}

Side ReplayEvaluator::judge(const Question& question, const Item& first, const Item& second) const {
  auto it = verdicts_.find({question.id, first.id, second.id});
  if (it == verdicts_.end()) {
    throw Error(ErrorKind::kEvaluator, "evaluator '" + id_ + "' has no recorded verdict for (" + first.id + ", " +
                                           second.id + ") on question '" + question.id + "'");
  }
  return it->second == first.id ? Side::kFirst : Side::kSecond;
}

const std::string& simulated_judge(const SimulatedEvaluator& sim, const std::string& question_id,
                                   const std::string& item_a, const std::string& item_b) {
  return sim.winner(question_id, item_a, item_b);
}

std::array<JudgmentRecord, 2> debiased_judge(const Evaluator& evaluator, const Question& question, const Item& item_a,
                                             const Item& item_b) {
  if (item_a.id == item_b.id) {
    throw Error(ErrorKind::kSelfPreference, "cannot judge '" + item_a.id + "' against itself");
  }
  const auto forward = evaluator.judge(question, item_a, item_b);
  const auto backward = evaluator.judge(question, item_b, item_a);
  JudgmentRecord ab{evaluator.id(), question.id, item_a.id, item_b.id,
                    forward == Side::kFirst ? item_a.id : item_b.id, PresentationOrder::kAB};
  JudgmentRecord ba{evaluator.id(), question.id, item_a.id, item_b.id,
                    backward == Side::kFirst ? item_b.id : item_a.id, PresentationOrder::kBA};
  return {std::move(ab), std::move(ba)};
}

PreferenceGraph build_preference_graph(const std::vector<std::string>& items,
                                       std::span<const JudgmentRecord> judgments) {
  PreferenceGraph graph(items);
  for (const auto& record : judgments) {
    record.validate();
    graph.add_preference(record.winner, record.loser(), 1.0);
  }
  return graph;
}

std::vector<JudgmentRecord> ingest_judgments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  return parse_judgments(in);
}

Ranking rank_by_net_out_weight(const PreferenceGraph& graph) {
  const auto n = graph.num_vertices();
  std::vector<double> score(n, 0.0);
  for (const auto& [key, w] : graph.arc_map()) {
    score[key.first] += w;
    score[key.second] -= w;
  }
  std::vector<std::size_t> order(graph.lexicographic_order());
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return score[a] > score[b]; });
  std::vector<std::string> ids;
  std::vector<double> scores;
  for (auto v : order) {
    ids.push_back(graph.id(v));
    scores.push_back(score[v]);
  }
  return Ranking(std::move(ids), std::move(scores));
}

namespace {

std::vector<std::string> item_ids(std::span<const Item> items) {
  std::vector<std::string> ids;
  ids.reserve(items.size());
  for (const auto& item : items) ids.push_back(item.id);
  return ids;
}

}  // namespace

GraphSet judge_all_pairs(std::span<const Item> items, const Question& question, const EvaluatorSet& evaluators) {
  if (evaluators.empty()) throw Error(ErrorKind::kInvalidArgument, "at least one evaluator is required");
  const auto ids = item_ids(items);
  std::vector<PreferenceGraph> graphs;
  std::vector<std::string> labels;
  for (const auto& evaluator : evaluators) {
    std::vector<JudgmentRecord> records;
    records.reserve(items.size() * (items.size() - 1));
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        for (auto& r : debiased_judge(*evaluator, question, items[i], items[j])) records.push_back(std::move(r));
      }
    }
    graphs.push_back(build_preference_graph(ids, records));
    labels.push_back(evaluator->id());
  }
  return GraphSet(std::move(graphs), std::move(labels));
}

GraphSet graphs_from_judgments(const std::vector<std::string>& items, const std::string& question_id,
                               std::span<const JudgmentRecord> judgments) {
  std::map<std::string, std::vector<JudgmentRecord>> by_evaluator;
  for (const auto& r : judgments) {
    if (r.question_id == question_id) by_evaluator[r.evaluator_id].push_back(r);
  }
  if (by_evaluator.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no judgments recorded for question '" + question_id + "'");
  }
  std::vector<PreferenceGraph> graphs;
  std::vector<std::string> labels;
  for (const auto& [evaluator, records] : by_evaluator) {
    graphs.push_back(build_preference_graph(items, records));
    labels.push_back(evaluator);
  }
  return GraphSet(std::move(graphs), std::move(labels));
}

Ranking ged_rank(const GraphSet& graphs, std::optional<std::span<const double>> evaluator_weights,
                 const GedOptions& options) {
  const auto combined = ensemble(graphs, evaluator_weights);
  if (options.skip_denoise) return rank_by_net_out_weight(combined);
  return rank_from_dag(denoise(combined, options.denoise_mode, options.exact_threshold).dag);
}

std::string select_best(std::span<const Item> items, const Question& question, const EvaluatorSet& evaluators,
                        std::optional<std::span<const double>> evaluator_weights, const GedOptions& options) {
  if (items.size() < 2) throw Error(ErrorKind::kInvalidArgument, "selection needs at least two items");
  return ged_rank(judge_all_pairs(items, question, evaluators), evaluator_weights, options).front();
}

Ranking rank_models(const AnswerMatrix& matrix, const EvaluatorSet& evaluators, AggregationMethod method,
                    const AggregationOptions& aggregation, const GedOptions& options,
                    std::optional<std::span<const double>> evaluator_weights) {
  if (matrix.questions.empty()) throw Error(ErrorKind::kInvalidArgument, "model ranking needs at least one question");
  if (matrix.models.size() < 2) throw Error(ErrorKind::kInvalidArgument, "model ranking needs at least two models");
  if (matrix.answers.size() != matrix.questions.size()) {
    throw Error(ErrorKind::kInvalidArgument, "answer matrix is missing questions");
  }
  std::vector<Ranking> per_question;
  per_question.reserve(matrix.questions.size());
  for (std::size_t q = 0; q < matrix.questions.size(); ++q) {
    if (matrix.answers[q].size() != matrix.models.size()) {
      throw Error(ErrorKind::kInvalidArgument, "question '" + matrix.questions[q].id + "' is missing answers");
    }
    std::vector<Item> items;
    for (std::size_t m = 0; m < matrix.models.size(); ++m) items.push_back({matrix.models[m], matrix.answers[q][m]});
    per_question.push_back(ged_rank(judge_all_pairs(items, matrix.questions[q], evaluators), evaluator_weights, options));
  }
  return aggregate(RankingProfile(std::move(per_question)), method, aggregation);
}

}  // namespace prefgraph
