#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefgraph/denoise.hpp"
#include "prefgraph/graph.hpp"
#include "prefgraph/rank_ensemble.hpp"
#include "prefgraph/ranking.hpp"

namespace prefgraph {

struct Item {
  std::string id;
  std::string content;
};

struct Question {
  std::string id;
  std::string text;
};

enum class PresentationOrder { kAB, kBA };
enum class Side { kFirst, kSecond };

/// One pairwise verdict. item_a/item_b name the pair; presentation_order
/// records which of them the evaluator saw first.
struct JudgmentRecord {
  std::string evaluator_id;
  std::string question_id;
  std::string item_a;
  std::string item_b;
  std::string winner;
  PresentationOrder presentation_order = PresentationOrder::kAB;

  /// Throws kSelfPreference when item_a == item_b and kInvalidArgument
  /// when the winner is neither item.
  void validate() const;
  const std::string& loser() const { return winner == item_a ? item_b : item_a; }

  friend bool operator==(const JudgmentRecord&, const JudgmentRecord&) = default;
};

/// Pairwise judge. Implementations always pick a side; there is no abstain.
///
/// This is the seam for external model adapters: an adapter renders the
/// question and the two items (in the given order) into its prompt and
/// maps the answer onto a Side.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual const std::string& id() const = 0;
  virtual Side judge(const Question& question, const Item& first, const Item& second) const = 0;
  /// False when calls must be serialised.
  virtual bool concurrent_safe() const { return false; }
};

using EvaluatorSet = std::vector<std::shared_ptr<const Evaluator>>;

/// Offline judge that knows the true order for each question and reports
/// the wrong side with a fixed probability. The flip decision is a hash of
/// (seed, question, unordered pair), so presentation order never matters.
class SimulatedEvaluator final : public Evaluator {
 public:
  /// Throws kInvalidArgument unless 0 <= flip_probability < 0.5.
  SimulatedEvaluator(std::string id, Ranking default_truth, double flip_probability, std::uint64_t seed);

  /// Per-question truth overriding the default.
  void set_truth(const std::string& question_id, Ranking truth);

  const std::string& id() const override { return id_; }
  Side judge(const Question& question, const Item& first, const Item& second) const override;
  bool concurrent_safe() const override { return true; }

  /// Identifier of the item this evaluator prefers. Throws kUnknownVertex.
  const std::string& winner(const std::string& question_id, const std::string& item_a,
                            const std::string& item_b) const;

  double flip_probability() const noexcept { return flip_probability_; }

 private:
  const Ranking& truth_for(const std::string& question_id) const;

  std::string id_;
  Ranking default_truth_;
  std::map<std::string, Ranking> truth_by_question_;
  double flip_probability_;
  std::uint64_t seed_;
};

/// Answers from previously recorded verdicts of one evaluator. A lookup
/// matches question, pair and presentation order; misses throw kEvaluator.
class ReplayEvaluator final : public Evaluator {
 public:
  ReplayEvaluator(std::string id, std::span<const JudgmentRecord> records);

  const std::string& id() const override { return id_; }
  Side judge(const Question& question, const Item& first, const Item& second) const override;
  bool concurrent_safe() const override { return true; }

 private:
  std::string id_;
  // (question, first presented, second presented) -> winner
  std::map<std::array<std::string, 3>, std::string> verdicts_;
};

/// Winner chosen by `sim` between two items of one question.
const std::string& simulated_judge(const SimulatedEvaluator& sim, const std::string& question_id,
                                   const std::string& item_a, const std::string& item_b);

/// Asks for (a, b) and then (b, a) and returns both verdicts.
std::array<JudgmentRecord, 2> debiased_judge(const Evaluator& evaluator, const Question& question, const Item& item_a,
                                             const Item& item_b);

/// One vertex per item, +1 on winner->loser per verdict.
PreferenceGraph build_preference_graph(const std::vector<std::string>& items,
                                       std::span<const JudgmentRecord> judgments);

/// Line-delimited judgment records. Blank lines are skipped; a bad line
/// throws kMalformedDocument naming its line number. Missing file: kIo.
std::vector<JudgmentRecord> ingest_judgments(const std::filesystem::path& path);

/// Options for the ensemble -> denoise -> rank pipeline.
struct GedOptions {
  DenoiseMode denoise_mode = DenoiseMode::kGreedy;
  std::size_t exact_threshold = kDefaultExactThreshold;
  /// Skip cycle removal and rank by net out-weight instead.
  bool skip_denoise = false;
};

/// Scores each vertex by sum_v net_weight(u, v); descending, identifier ties.
Ranking rank_by_net_out_weight(const PreferenceGraph& graph);

/// One graph per evaluator from all-pairs debiased judging.
GraphSet judge_all_pairs(std::span<const Item> items, const Question& question, const EvaluatorSet& evaluators);

/// Evaluator graphs grouped from recorded verdicts of one question, in
/// evaluator-id order.
GraphSet graphs_from_judgments(const std::vector<std::string>& items, const std::string& question_id,
                               std::span<const JudgmentRecord> judgments);

/// Ensemble, denoise and rank one question's evaluator graphs.
Ranking ged_rank(const GraphSet& graphs, std::optional<std::span<const double>> evaluator_weights = std::nullopt,
                 const GedOptions& options = {});

/// Top item of the consensus ranking for one question. Needs at least
/// two items and one evaluator.
std::string select_best(std::span<const Item> items, const Question& question, const EvaluatorSet& evaluators,
                        std::optional<std::span<const double>> evaluator_weights = std::nullopt,
                        const GedOptions& options = {});

/// Model answers per question: answers[q][m] is model m's answer to question q.
struct AnswerMatrix {
  std::vector<std::string> models;
  std::vector<Question> questions;
  std::vector<std::vector<std::string>> answers;
};

/// Per-question consensus rankings of the models, aggregated across
/// questions with `method`.
Ranking rank_models(const AnswerMatrix& matrix, const EvaluatorSet& evaluators, AggregationMethod method,
                    const AggregationOptions& aggregation = {}, const GedOptions& options = {},
                    std::optional<std::span<const double>> evaluator_weights = std::nullopt);

}  // namespace prefgraph
