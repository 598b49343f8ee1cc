#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "prefgraph/active.hpp"
#include "prefgraph/denoise.hpp"
#include "prefgraph/error.hpp"
#include "prefgraph/graph.hpp"
#include "prefgraph/io.hpp"
#include "prefgraph/judge.hpp"
#include "prefgraph/perturb.hpp"
#include "prefgraph/random.hpp"
#include "prefgraph/rank_ensemble.hpp"
#include "prefgraph/ranking.hpp"

namespace prefgraph::cli {
namespace {

struct EnsembleArgs {
  std::vector<std::string> inputs;
  std::vector<double> weights;
};

struct DenoiseArgs {
  std::string input;
  std::string mode = "greedy";
  std::size_t threshold = kDefaultExactThreshold;
};

struct RankArgs {
  std::string input;
  bool table = false;
};

struct AggregateArgs {
  std::string input;
  std::string method;
  std::string mode = "auto";
  std::size_t threshold = 8;
  std::size_t restarts = 5;
  std::optional<std::uint64_t> seed;
  bool partial = false;
  bool table = false;
};

struct MetricsArgs {
  std::vector<std::string> cycle_rate;
  std::vector<std::string> spearman;
  std::vector<std::string> kendall;
};

struct SimulateArgs {
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::vector<std::size_t> ensemble_sizes{10, 50, 200};
  std::size_t trials = 500;
  std::optional<std::uint64_t> seed;
  std::size_t vertices = 6;
  std::optional<std::size_t> arcs;
  double density = 0.5;
  std::string ground_truth;
  std::size_t threshold = kDefaultExactThreshold;
  std::size_t parallel = 1;
  bool table = false;
  bool csv = false;
};

struct EvaluatorArgs {
  std::string judgments;
  bool simulate = false;
  std::size_t evaluators = 3;
  double flip = 0.3;
  std::optional<std::uint64_t> seed;
};

struct ActiveArgs {
  std::string items;
  std::string question;
  std::size_t budget = 0;
  double alpha = 0.5;
  double damping = 0.85;
  double tolerance = 1e-9;
  double epsilon = 1e-6;
  EvaluatorArgs evaluators;
};

struct SelectArgs {
  std::string items;
  std::string question;
  std::vector<double> weights;
  std::string mode = "greedy";
  bool table = false;
  EvaluatorArgs evaluators;
};

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::kParse: return kParse;
    case ErrorCategory::kCompatibility: return kCompatibility;
    case ErrorCategory::kCapability: return kCapability;
    case ErrorCategory::kNumeric: return kNumeric;
    case ErrorCategory::kIo: return kIo;
  }
  return kUnexpected;
}

DenoiseMode parse_mode(const std::string& mode) { return mode == "exact" ? DenoiseMode::kExact : DenoiseMode::kGreedy; }

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const char* why) {
  if (!seed) throw Error(ErrorKind::kInvalidArgument, std::string("--seed is required ") + why);
  return *seed;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return value < 0 ? "-inf" : "inf";
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << value;
  return s.str();
}

void print_ranking_table(std::ostream& out, const Ranking& ranking) {
  out << "rank  id  score\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    out << (i + 1) << "  " << ranking.order()[i];
    if (ranking.scores()) out << "  " << format_number((*ranking.scores())[i]);
    out << "\n";
  }
}

// Evaluators from recorded verdicts (one replay per evaluator id) or
// simulated judges whose truth is the item file order.
EvaluatorSet make_evaluators(const EvaluatorArgs& args, const std::vector<Item>& items,
                             const std::vector<JudgmentRecord>& records) {
  EvaluatorSet out;
  if (args.simulate) {
    const auto seed = require_seed(args.seed, "for simulated evaluators");
    std::vector<std::string> truth;
    for (const auto& item : items) truth.push_back(item.id);
    for (std::size_t i = 0; i < args.evaluators; ++i) {
      out.push_back(std::make_shared<SimulatedEvaluator>("sim-" + std::to_string(i), Ranking(truth), args.flip,
                                                         derive_seed(seed, i)));
    }
    if (out.empty()) throw Error(ErrorKind::kInvalidArgument, "--evaluators must be at least 1");
    return out;
  }
  std::vector<std::string> ids;
  for (const auto& r : records) ids.push_back(r.evaluator_id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (const auto& id : ids) out.push_back(std::make_shared<ReplayEvaluator>(id, records));
  if (out.empty()) throw Error(ErrorKind::kInvalidArgument, "judgment file holds no records");
  return out;
}

void require_one_source(const EvaluatorArgs& args) {
  if (args.simulate == !args.judgments.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "pass exactly one of --judgments or --simulate");
  }
}

std::string default_question(const EvaluatorArgs& args, const std::string& question,
                             const std::vector<JudgmentRecord>& records) {
  if (!question.empty()) return question;
  if (!args.simulate && !records.empty()) return records.front().question_id;
  return "q0";
}

int cmd_ensemble(const EnsembleArgs& args, std::ostream& out) {
  std::vector<PreferenceGraph> graphs;
  for (const auto& path : args.inputs) graphs.push_back(parse_graph(read_file(path)));
  GraphSet set(std::move(graphs), args.inputs);
  const auto combined = args.weights.empty() ? ensemble(set) : ensemble(set, std::span<const double>(args.weights));
  out << serialize(combined);
  return kOk;
}

int cmd_denoise(const DenoiseArgs& args, std::ostream& out) {
  const auto graph = parse_graph(read_file(args.input));
  out << dump(to_document(denoise(graph, parse_mode(args.mode), args.threshold)));
  return kOk;
}

int cmd_rank(const RankArgs& args, std::ostream& out) {
  const auto ranking = rank_from_dag(parse_graph(read_file(args.input)));
  if (args.table) {
    print_ranking_table(out, ranking);
  } else {
    out << dump(to_document(ranking));
  }
  return kOk;
}

int cmd_aggregate(const AggregateArgs& args, std::ostream& out) {
  const auto profile = parse_profile(read_file(args.input));
  const auto method = parse_aggregation_method(args.method);
  AggregationOptions options;
  options.exact_threshold = args.threshold;
  options.restarts = args.restarts;
  options.allow_partial = args.partial;
  if (args.mode == "exact") options.mode = SearchMode::kExact;
  if (args.mode == "local") options.mode = SearchMode::kLocalSearch;
  const bool searches = method != AggregationMethod::kWeightScore;
  const bool local = options.mode ? *options.mode == SearchMode::kLocalSearch
                                  : profile.candidates().size() > options.exact_threshold;
  if (searches && local) options.seed = require_seed(args.seed, "for local-search aggregation");
  const auto ranking = aggregate(profile, method, options);
  if (args.table) {
    print_ranking_table(out, ranking);
  } else {
    out << dump(to_document(ranking));
  }
  return kOk;
}

int cmd_metrics(const MetricsArgs& args, std::ostream& out) {
  const int chosen = !args.cycle_rate.empty() + !args.spearman.empty() + !args.kendall.empty();
  if (chosen != 1) throw Error(ErrorKind::kInvalidArgument, "choose one of --cycle-rate, --spearman, --kendall");
  Document doc;
  if (!args.cycle_rate.empty()) {
    std::vector<PreferenceGraph> graphs;
    for (const auto& path : args.cycle_rate) graphs.push_back(parse_graph(read_file(path)));
    const auto cyclic = std::count_if(graphs.begin(), graphs.end(), [](const auto& g) { return has_cycle(g); });
    doc["cycle_rate"] = cycle_rate(graphs);
    doc["cyclic"] = cyclic;
    doc["total"] = graphs.size();
  } else if (!args.spearman.empty()) {
    doc["spearman"] = spearman(parse_ranking(read_file(args.spearman[0])), parse_ranking(read_file(args.spearman[1])));
  } else {
    doc["kendall_tau_distance"] =
        kendall_tau_distance(parse_ranking(read_file(args.kendall[0])), parse_ranking(read_file(args.kendall[1])));
  }
  out << dump(doc);
  return kOk;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  const auto seed = require_seed(args.seed, "for simulation");
  const PerturbationParams params{args.delta1, args.delta2};
  params.validate();
  const auto truth = !args.ground_truth.empty()
                         ? parse_graph(read_file(args.ground_truth))
                         : (args.arcs ? random_dag_with_arcs(args.vertices, *args.arcs, derive_seed(seed, 0))
                                      : random_dag(args.vertices, args.density, derive_seed(seed, 0)));
  RecoveryOptions options;
  options.exact_threshold = args.threshold;
  options.parallel = args.parallel;
  std::vector<RecoveryReport> reports;
  for (std::size_t i = 0; i < args.ensemble_sizes.size(); ++i) {
    reports.push_back(
        recovery_probability(truth, params, args.ensemble_sizes[i], args.trials, derive_seed(seed, i + 1), options));
  }
  if (args.csv) {
    out << "N,empirical,bound\n";
    for (const auto& r : reports) {
      out << r.ensemble_size << "," << format_number(r.empirical_probability) << ","
          << format_number(r.analytic_bound) << "\n";
    }
  } else if (args.table) {
    out << std::left << std::setw(8) << "N" << std::setw(12) << "empirical" << "bound\n";
    for (const auto& r : reports) {
      out << std::left << std::setw(8) << r.ensemble_size << std::setw(12) << format_number(r.empirical_probability)
          << format_number(r.analytic_bound) << "\n";
    }
  } else {
    Document doc;
    doc["ground_truth"] = to_document(truth);
    doc["reports"] = Document::array();
    for (const auto& r : reports) doc["reports"].push_back(to_document(r));
    out << dump(doc);
  }
  return kOk;
}

int cmd_active(const ActiveArgs& args, std::ostream& out) {
  require_one_source(args.evaluators);
  const auto items = parse_items(read_file(args.items));
  const auto records = args.evaluators.judgments.empty() ? std::vector<JudgmentRecord>{}
                                                         : ingest_judgments(args.evaluators.judgments);
  const auto evaluators = make_evaluators(args.evaluators, items, records);
  const auto seed = require_seed(args.evaluators.seed, "for random pair selection");
  ActiveConfig config;
  config.budget = args.budget;
  config.alpha = args.alpha;
  config.damping = args.damping;
  config.pagerank_tolerance = args.tolerance;
  config.uncertainty_epsilon = args.epsilon;
  const Question question{default_question(args.evaluators, args.question, records), ""};
  const auto result = active_ged(items, question, evaluators, config, derive_seed(seed, 1000));
  Document doc = to_document(result.graph);
  doc["evaluated"] = Document::array();
  for (const auto& [u, v] : result.evaluated) doc["evaluated"].push_back(Document::array({u, v}));
  doc["random_pairs"] = result.random_pairs;
  out << dump(doc);
  return kOk;
}

int cmd_select(const SelectArgs& args, std::ostream& out) {
  require_one_source(args.evaluators);
  const auto items = parse_items(read_file(args.items));
  if (items.size() < 2) throw Error(ErrorKind::kInvalidArgument, "selection needs at least two items");
  GedOptions options;
  options.denoise_mode = parse_mode(args.mode);
  const std::optional<std::span<const double>> weights =
      args.weights.empty() ? std::nullopt : std::optional<std::span<const double>>(args.weights);

  std::optional<Ranking> ranking;
  std::string question_id;
  if (args.evaluators.simulate) {
    const auto evaluators = make_evaluators(args.evaluators, items, {});
    question_id = default_question(args.evaluators, args.question, {});
    ranking = ged_rank(judge_all_pairs(items, Question{question_id, ""}, evaluators), weights, options);
  } else {
    const auto records = ingest_judgments(args.evaluators.judgments);
    question_id = default_question(args.evaluators, args.question, records);
    std::vector<std::string> ids;
    for (const auto& item : items) ids.push_back(item.id);
    ranking = ged_rank(graphs_from_judgments(ids, question_id, records), weights, options);
  }
  if (args.table) {
    out << "question " << question_id << " best " << ranking->front() << "\n";
    print_ranking_table(out, *ranking);
    return kOk;
  }
  Document doc;
  doc["question"] = question_id;
  doc["best"] = ranking->front();
  doc["ranking"] = to_document(*ranking);
  out << dump(doc);
  return kOk;
}

void add_evaluator_flags(CLI::App* cmd, EvaluatorArgs& args) {
  cmd->add_option("--judgments", args.judgments, "Line-delimited judgment records to replay");
  cmd->add_flag("--simulate", args.simulate, "Use simulated evaluators whose truth is the items file order");
  cmd->add_option("--evaluators", args.evaluators, "Number of simulated evaluators")->capture_default_str();
  cmd->add_option("--flip", args.flip, "Flip probability of simulated evaluators, in [0, 0.5)")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Random seed (required for any randomness)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Preference-graph ensembling, denoising and ranking toolkit", "prefgraph"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  EnsembleArgs ensemble_args;
  auto* ensemble_cmd = app.add_subcommand("ensemble", "Sum evaluator graphs over one vertex set");
  ensemble_cmd->add_option("inputs", ensemble_args.inputs, "Graph documents")->required();
  ensemble_cmd->add_option("--weights", ensemble_args.weights, "Positive evaluator weights, one per input")
      ->delimiter(',');

  DenoiseArgs denoise_args;
  auto* denoise_cmd = app.add_subcommand("denoise", "Remove a feedback arc set to obtain a DAG");
  denoise_cmd->add_option("input", denoise_args.input, "Graph document")->required();
  denoise_cmd->add_option("--mode", denoise_args.mode, "greedy or exact")
      ->check(CLI::IsMember({"greedy", "exact"}))
      ->capture_default_str();
  denoise_cmd->add_option("--threshold", denoise_args.threshold, "Vertex limit for exact mode")->capture_default_str();

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "Rank the vertices of a DAG by descendant count");
  rank_cmd->add_option("input", rank_args.input, "Graph document (acyclic)")->required();
  rank_cmd->add_flag("--table", rank_args.table, "Print a human-readable table");

  AggregateArgs aggregate_args;
  auto* aggregate_cmd = app.add_subcommand("aggregate", "Aggregate a ranking profile into a consensus ranking");
  aggregate_cmd->add_option("input", aggregate_args.input, "Profile document")->required();
  aggregate_cmd->add_option("--method", aggregate_args.method, "ws, kemeny, wkemeny, pm or wpm")
      ->required()
      ->check(CLI::IsMember({"ws", "kemeny", "wkemeny", "pm", "wpm"}));
  aggregate_cmd->add_option("--mode", aggregate_args.mode, "auto, exact or local")
      ->check(CLI::IsMember({"auto", "exact", "local"}))
      ->capture_default_str();
  aggregate_cmd->add_option("--threshold", aggregate_args.threshold, "Candidate limit for exact search")
      ->capture_default_str();
  aggregate_cmd->add_option("--restarts", aggregate_args.restarts, "Random restarts of the local search")
      ->capture_default_str();
  aggregate_cmd->add_option("--seed", aggregate_args.seed, "Random seed (required for local search)");
  aggregate_cmd->add_flag("--partial", aggregate_args.partial, "Allow partial rankings (ws only)");
  aggregate_cmd->add_flag("--table", aggregate_args.table, "Print a human-readable table");

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand("metrics", "Cycle rate and ranking comparison metrics");
  metrics_cmd->add_option("--cycle-rate", metrics_args.cycle_rate, "Graph documents");
  metrics_cmd->add_option("--spearman", metrics_args.spearman, "Two ranking documents")
      ->expected(2)
      ;
  metrics_cmd->add_option("--kendall", metrics_args.kendall, "Two ranking documents")
      ->expected(2)
      ;

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo check of ground-truth recovery");
  simulate_cmd->add_option("--delta1", simulate_args.delta1, "Arc flip probability")->required();
  simulate_cmd->add_option("--delta2", simulate_args.delta2, "Spurious arc probability")->required();
  simulate_cmd->add_option("--N", simulate_args.ensemble_sizes, "Ensemble sizes")
      ->delimiter(',')
      ->capture_default_str();
  simulate_cmd->add_option("--trials", simulate_args.trials, "Trials per ensemble size")->capture_default_str();
  simulate_cmd->add_option("--seed", simulate_args.seed, "Random seed")->required();
  simulate_cmd->add_option("--vertices", simulate_args.vertices, "Vertices of the random ground truth")
      ->capture_default_str();
  simulate_cmd->add_option("--arcs", simulate_args.arcs, "Exact arc count of the random ground truth");
  simulate_cmd->add_option("--density", simulate_args.density, "Forward-pair probability of the random ground truth")
      ->capture_default_str();
  simulate_cmd->add_option("--ground-truth", simulate_args.ground_truth, "Ground-truth DAG document")
      ;
  simulate_cmd->add_option("--threshold", simulate_args.threshold, "Vertex limit for exact denoising")
      ->capture_default_str();
  simulate_cmd->add_option("--parallel", simulate_args.parallel, "Worker threads")->capture_default_str();
  simulate_cmd->add_flag("--table", simulate_args.table, "Print an (N, empirical, bound) table");
  simulate_cmd->add_flag("--csv", simulate_args.csv, "Print (N, empirical, bound) as CSV");

  ActiveArgs active_args;
  auto* active_cmd = app.add_subcommand("active", "Budgeted graph construction with PageRank uncertainty");
  active_cmd->add_option("--items", active_args.items, "Items document")->required();
  active_cmd->add_option("--question", active_args.question, "Question identifier");
  active_cmd->add_option("--budget", active_args.budget, "Number of pairs to evaluate")->required();
  active_cmd->add_option("--alpha", active_args.alpha, "Random share of the budget, in (0, 1)")
      ->capture_default_str();
  active_cmd->add_option("--damping", active_args.damping, "PageRank damping")->capture_default_str();
  active_cmd->add_option("--tolerance", active_args.tolerance, "PageRank L1 tolerance")->capture_default_str();
  active_cmd->add_option("--epsilon", active_args.epsilon, "Uncertainty epsilon")->capture_default_str();
  add_evaluator_flags(active_cmd, active_args.evaluators);

  SelectArgs select_args;
  auto* select_cmd = app.add_subcommand("select", "Pick the best item of one question");
  select_cmd->add_option("--items", select_args.items, "Items document")->required();
  select_cmd->add_option("--question", select_args.question, "Question identifier");
  select_cmd->add_option("--weights", select_args.weights, "Positive evaluator weights")->delimiter(',');
  select_cmd->add_option("--mode", select_args.mode, "Denoising mode: greedy or exact")
      ->check(CLI::IsMember({"greedy", "exact"}))
      ->capture_default_str();
  select_cmd->add_flag("--table", select_args.table, "Print a human-readable table");
  add_evaluator_flags(select_cmd, select_args.evaluators);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*ensemble_cmd) return cmd_ensemble(ensemble_args, out);
    if (*denoise_cmd) return cmd_denoise(denoise_args, out);
    if (*rank_cmd) return cmd_rank(rank_args, out);
    if (*aggregate_cmd) return cmd_aggregate(aggregate_args, out);
    if (*metrics_cmd) return cmd_metrics(metrics_args, out);
    if (*simulate_cmd) return cmd_simulate(simulate_args, out);
    if (*active_cmd) return cmd_active(active_args, out);
    if (*select_cmd) return cmd_select(select_args, out);
  } catch (const Error& e) {
    err << "prefgraph: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "prefgraph: " << e.what() << "\n";
    return kUnexpected;
  }
  return kUnexpected;
}

}  // namespace prefgraph::cli
