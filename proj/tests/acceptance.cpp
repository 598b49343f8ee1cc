// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: prefgraph_acceptance <path to prefgraph binary>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "prefgraph/active.hpp"
#include "prefgraph/denoise.hpp"
#include "prefgraph/io.hpp"
#include "prefgraph/judge.hpp"
#include "prefgraph/perturb.hpp"
#include "prefgraph/random.hpp"
#include "prefgraph/rank_ensemble.hpp"
#include "support.hpp"

namespace {

using namespace prefgraph;
namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double value, int precision = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << value;
  return s.str();
}

PreferenceGraph triangle() {
  PreferenceGraph g({"a", "b", "c"});
  g.add_preference("a", "b");
  g.add_preference("b", "c");
  g.add_preference("c", "a");
  return g;
}

Outcome cycle_rate_exactness() {
  std::vector<PreferenceGraph> graphs;
  for (int i = 0; i < 164; ++i) {
    PreferenceGraph g({"a", "b", "c"});
    g.add_preference("a", "b");
    g.add_preference("b", "c");
    graphs.push_back(i < 100 ? triangle() : g);
  }
  const double rate = cycle_rate(graphs);
  return {std::abs(rate - 60.97) <= 0.01, "cycle_rate=" + fmt(rate)};
}

bool partitions(const PreferenceGraph& input, const DenoiseResult& r) {
  auto map = r.dag.arc_map();
  for (const auto& arc : r.removed) {
    const auto key = std::make_pair(input.index_of(arc.from), input.index_of(arc.to));
    if (map.count(key)) return false;
    map[key] = arc.weight;
  }
  return map == input.arc_map();
}

Outcome denoise_soundness() {
  std::mt19937_64 gen(1001);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + i % 12;
    const double density = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    const auto g = testing::random_graph(gen, n, density, testing::real_weight);
    const auto r = denoise(g, DenoiseMode::kGreedy);
    if (testing::has_simple_cycle(r.dag) || !partitions(g, r)) ++failures;
  }
  return {failures == 0, "graphs=1000 failures=" + std::to_string(failures)};
}

Outcome fas_oracle_equivalence() {
  std::mt19937_64 gen(1002);
  int mismatches = 0;
  int greedy_below = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + i % 7;
    const double density = std::uniform_real_distribution<double>(0.1, 0.9)(gen);
    const auto g = testing::random_graph(gen, n, density, testing::dyadic_weight);
    const double exact = exact_min_fas(g).removed_weight;
    if (exact != testing::min_fas_subset_dp(g)) ++mismatches;
    if (denoise(g, DenoiseMode::kGreedy).removed_weight < exact) ++greedy_below;
  }
  return {mismatches == 0 && greedy_below == 0,
          "graphs=300 exact_mismatches=" + std::to_string(mismatches) + " greedy_below_exact=" +
              std::to_string(greedy_below)};
}

Outcome eades_guarantee() {
  std::mt19937_64 gen(1003);
  int violations = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + i % 11;
    const double density = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    const auto g = testing::random_connected_simple(gen, n, density);
    const double bound = static_cast<double>(g.num_arcs()) / 2.0 - static_cast<double>(n) / 6.0;
    const double removed = static_cast<double>(induced_fas(g, greedy_fas_order(g)).size());
    if (removed > bound) ++violations;
    tightest = std::min(tightest, bound - removed);
  }
  return {violations == 0, "graphs=300 violations=" + std::to_string(violations) + " min_slack=" + fmt(tightest)};
}

Outcome recovery_validation() {
  const auto truth = random_dag_with_arcs(6, 8, 2024);
  const PerturbationParams params{0.25, 0.3};
  RecoveryOptions options;
  std::string detail;
  bool pass = true;
  double previous = 0.0;
  for (std::size_t N : {10, 50, 200}) {
    const auto r = recovery_probability(truth, params, N, 500, derive_seed(5, N), options);
    if (r.denoise_mode != DenoiseMode::kExact) pass = false;
    if (r.analytic_bound >= 0.0 && r.empirical_probability < r.analytic_bound) pass = false;
    if (r.empirical_probability < previous - 0.02) pass = false;
    previous = std::max(previous, r.empirical_probability);
    detail += "N=" + std::to_string(N) + " empirical=" + fmt(r.empirical_probability) +
              " bound=" + fmt(r.analytic_bound) + "; ";
  }
  return {pass, detail + "U=" + std::to_string(15 - truth.num_arcs())};
}

Outcome aggregation_correctness() {
  std::mt19937_64 gen(1006);
  AggregationOptions exact;
  exact.mode = SearchMode::kExact;
  int disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 4;
    const std::size_t k = 1 + (i / 4) % 5;
    std::vector<Ranking> rankings;
    for (std::size_t r = 0; r < k; ++r) rankings.emplace_back(testing::shuffled(gen, testing::labels(n)));
    const RankingProfile profile(rankings);
    if (kemeny_aggregate(profile, exact).order() != pairwise_majority_aggregate(profile, exact).order()) {
      ++disagreements;
    }
  }
  const RankingProfile hand({Ranking({"a", "b", "c"}), Ranking({"b", "a", "c"})});
  const bool hand_ok = weight_score_aggregate(hand).order() == std::vector<std::string>{"a", "b", "c"};
  return {disagreements == 0 && hand_ok, "profiles=200 disagreements=" + std::to_string(disagreements) +
                                             " weight_score_example=" + (hand_ok ? "ok" : "wrong")};
}

Outcome metric_correctness() {
  std::mt19937_64 gen(1007);
  const Ranking r({"a", "b", "c", "d", "e"});
  const Ranking rev({"e", "d", "c", "b", "a"});
  bool pass = spearman(r, r) == 1.0 && spearman(r, rev) == -1.0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto base = testing::labels(2 + i % 19);
    const auto a = testing::shuffled(gen, base);
    const auto b = testing::shuffled(gen, base);
    worst = std::max(worst, std::abs(spearman(Ranking(a), Ranking(b)) - testing::spearman_formula(a, b)));
  }
  pass = pass && worst <= 1e-12;
  int axiom_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const auto base = testing::labels(1 + i % 10);
    const Ranking x(testing::shuffled(gen, base));
    const Ranking y(testing::shuffled(gen, base));
    const Ranking z(testing::shuffled(gen, base));
    const auto xy = kendall_tau_distance(x, y);
    const bool ok = kendall_tau_distance(x, x) == 0 && xy == kendall_tau_distance(y, x) && ((xy == 0) == (x == y)) &&
                    kendall_tau_distance(x, z) <= xy + kendall_tau_distance(y, z);
    axiom_failures += !ok;
  }
  pass = pass && axiom_failures == 0;
  std::ostringstream error;
  error << worst;
  return {pass, "max_spearman_error=" + error.str() + " kendall_axiom_failures=" +
                    std::to_string(axiom_failures)};
}

std::vector<Item> numbered_items(std::size_t n) {
  std::vector<Item> items;
  for (std::size_t i = 0; i < n; ++i) items.push_back({"i" + std::to_string(i), ""});
  return items;
}

EvaluatorSet noisy_evaluators(std::size_t k, double flip, std::uint64_t seed,
                              const std::vector<std::pair<std::string, Ranking>>& truths) {
  EvaluatorSet out;
  for (std::size_t i = 0; i < k; ++i) {
    auto sim = std::make_shared<SimulatedEvaluator>("sim-" + std::to_string(i), truths.front().second, flip,
                                                    derive_seed(seed, i));
    for (const auto& [question, truth] : truths) sim->set_truth(question, truth);
    out.push_back(sim);
  }
  return out;
}

Outcome multi_evaluator_gain() {
  const std::size_t questions = 200;
  const auto items = numbered_items(10);
  std::vector<std::string> ids;
  for (const auto& item : items) ids.push_back(item.id);
  std::mt19937_64 gen(1008);
  std::vector<std::pair<std::string, Ranking>> truths;
  for (std::size_t q = 0; q < questions; ++q) truths.emplace_back("q" + std::to_string(q), Ranking(testing::shuffled(gen, ids)));
  const auto evaluators = noisy_evaluators(3, 0.3, 88, truths);

  std::size_t ged = 0;
  std::size_t ged_raw = 0;
  std::vector<std::size_t> single(evaluators.size(), 0);
  GedOptions raw;
  raw.skip_denoise = true;
  for (const auto& [question, truth] : truths) {
    const auto graphs = judge_all_pairs(items, {question, ""}, evaluators);
    ged += ged_rank(graphs).front() == truth.front();
    ged_raw += ged_rank(graphs, std::nullopt, raw).front() == truth.front();
    for (std::size_t e = 0; e < evaluators.size(); ++e) {
      const GraphSet one({graphs.graphs()[e]});
      single[e] += ged_rank(one).front() == truth.front();
    }
  }
  bool pass = ged >= ged_raw;
  std::string detail = "ged=" + fmt(ged / double(questions), 3) + " ged_without_denoise=" +
                       fmt(ged_raw / double(questions), 3) + " single=";
  for (std::size_t e = 0; e < single.size(); ++e) {
    pass = pass && ged > single[e];
    detail += (e ? "," : "") + fmt(single[e] / double(questions), 3);
  }
  return {pass, detail};
}

Outcome active_budget_ordering() {
  const auto items = numbered_items(10);
  std::vector<std::string> ids;
  for (const auto& item : items) ids.push_back(item.id);
  const std::size_t pairs = 45;
  const std::array<std::size_t, 3> budgets{pairs * 30 / 100, pairs * 50 / 100, pairs};
  std::array<std::size_t, 3> agree{};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 gen(seed);
    const std::vector<std::pair<std::string, Ranking>> truths{{"q", Ranking(testing::shuffled(gen, ids))}};
    const auto evaluators = noisy_evaluators(3, 0.3, derive_seed(9000, seed), truths);
    const Question question{"q", ""};
    const auto full = select_best(items, question, evaluators);
    for (std::size_t b = 0; b < budgets.size(); ++b) {
      ActiveConfig config;
      config.budget = budgets[b];
      const auto result = active_ged(items, question, evaluators, config, derive_seed(seed, b));
      agree[b] += rank_from_dag(denoise(result.graph).dag).front() == full;
    }
  }
  const bool pass = agree[0] <= agree[1] && agree[1] <= agree[2] && agree[2] == 100;
  return {pass, "budgets=" + std::to_string(budgets[0]) + "/" + std::to_string(budgets[1]) + "/" +
                    std::to_string(budgets[2]) + " agreement=" + std::to_string(agree[0]) + "%," +
                    std::to_string(agree[1]) + "%," + std::to_string(agree[2]) + "%"};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), got);
  const int status = pclose(pipe);
  return out + "<status " + std::to_string(status) + ">";
}

Outcome cli_determinism(const std::string& binary) {
  if (binary.empty()) return {false, "no prefgraph binary given"};
  const auto dir = fs::temp_directory_path() / "prefgraph_acceptance";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const auto g1 = write("g1.json", serialize(random_dag(7, 0.5, 1)));
  auto noisy = perturb(random_dag(7, 0.5, 1), {0.3, 0.3}, 2);
  const auto g2 = write("g2.json", serialize(noisy));
  const auto profile = write("profile.json", R"({"rankings":[{"order":["a","b","c","d"]},{"order":["b","a","d","c"]},{"order":["a","c","b","d"]}],"weights":[1,2,1]})");
  const auto r1 = write("r1.json", R"({"order":["a","b","c","d"]})");
  const auto r2 = write("r2.json", R"({"order":["b","a","d","c"]})");
  const auto items = write("items.json", dump(to_document(std::span<const Item>(numbered_items(8)))));
  std::string lines;
  for (const auto& [a, b, w] : std::vector<std::tuple<const char*, const char*, const char*>>{
           {"i0", "i1", "i0"}, {"i0", "i2", "i2"}, {"i1", "i2", "i1"}}) {
    for (const char* order : {"ab", "ba"}) {
      lines += serialize_line({"e1", "q1", a, b, w, std::string(order) == "ab" ? PresentationOrder::kAB
                                                                              : PresentationOrder::kBA}) + "\n";
    }
  }
  const auto judgments = write("judgments.jsonl", lines);
  const auto three = write("three.json", R"([{"id":"i0","content":""},{"id":"i1","content":""},{"id":"i2","content":""}])");

  const std::vector<std::string> commands{
      "ensemble " + g1 + " " + g2 + " --weights 1,2",
      "denoise " + g2,
      "denoise " + g2 + " --mode exact",
      "rank " + g1 + " --table",
      "aggregate " + profile + " --method wkemeny",
      "aggregate " + profile + " --method pm --mode local --seed 5",
      "aggregate " + profile + " --method ws --table",
      "metrics --cycle-rate " + g1 + " " + g2,
      "metrics --spearman " + r1 + " " + r2,
      "metrics --kendall " + r1 + " " + r2,
      "simulate --delta1 0.25 --delta2 0.3 --trials 100 --seed 7",
      "simulate --delta1 0.25 --delta2 0.3 --trials 100 --seed 7 --vertices 10 --parallel 3 --csv",
      "active --items " + items + " --budget 12 --simulate --seed 3",
      "select --items " + items + " --simulate --seed 3 --evaluators 3 --flip 0.3",
      "select --items " + three + " --judgments " + judgments,
  };
  std::size_t identical = 0;
  std::string first_difference;
  for (const auto& args : commands) {
    const auto command = "\"" + binary + "\" " + args + " 2>/dev/null";
    const auto a = capture(command);
    const auto b = capture(command);
    const bool ok = a == b && a.find("<status 0>") != std::string::npos;
    identical += ok;
    if (!ok && first_difference.empty()) first_difference = " first_failure='" + args + "'";
  }
  fs::remove_all(dir);
  return {identical == commands.size(),
          "commands=" + std::to_string(commands.size()) + " identical=" + std::to_string(identical) + first_difference};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  struct Criterion {
    int number;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "cycle-rate exactness", 1, cycle_rate_exactness},
      {2, "denoise soundness", 10, denoise_soundness},
      {3, "FAS oracle equivalence", 60, fas_oracle_equivalence},
      {4, "Eades guarantee", 10, eades_guarantee},
      {5, "recovery bound validation", 60, recovery_validation},
      {6, "rank-aggregation correctness", 30, aggregation_correctness},
      {7, "metric correctness", 5, metric_correctness},
      {8, "multi-evaluator gain", 60, multi_evaluator_gain},
      {9, "ActiveGED budget ordering", 120, active_budget_ordering},
      {10, "CLI determinism", 30, [&] { return cli_determinism(binary); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name << ": " << outcome.detail << " ("
              << fmt(seconds, 2) << "s, limit " << c.limit_seconds << "s" << (in_time ? "" : ", TOO SLOW") << ")"
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
