#include "prefgraph/perturb.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "prefgraph/error.hpp"
#include "prefgraph/random.hpp"

namespace prefgraph {

void PerturbationParams::validate() const {
  if (!(delta1 >= 0.0 && delta1 <= 1.0) || !(delta2 >= 0.0 && delta2 <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "delta1 and delta2 must lie in [0, 1]");
  }
}

namespace {

void require_unit_dag(const PreferenceGraph& ground_truth) {
  if (has_cycle(ground_truth)) throw Error(ErrorKind::kCyclicInput, "ground truth must be acyclic");
  for (const auto& [key, w] : ground_truth.arc_map()) {
    if (w != 1.0) throw Error(ErrorKind::kInvalidArgument, "ground truth arcs must have unit weight");
  }
}

std::vector<std::string> numbered_vertices(std::size_t n) {
  const auto width = std::to_string(n > 0 ? n - 1 : 0).size();
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto digits = std::to_string(i);
    names.push_back("v" + std::string(width - digits.size(), '0') + digits);
  }
  return names;
}

std::size_t count_successes(const PreferenceGraph& ground_truth, const PerturbationParams& params, std::size_t N,
                            std::uint64_t seed, std::size_t exact_threshold, std::size_t begin, std::size_t end) {
  std::size_t successes = 0;
  for (std::size_t t = begin; t < end; ++t) {
    if (recovery_trial(ground_truth, params, N, derive_seed(seed, t), exact_threshold)) ++successes;
  }
  return successes;
}

}  // namespace

PreferenceGraph perturb(const PreferenceGraph& ground_truth, const PerturbationParams& params, std::uint64_t seed) {
  params.validate();
  require_unit_dag(ground_truth);
  Rng rng(seed);
  PreferenceGraph out(ground_truth.vertices());
  const auto n = ground_truth.num_vertices();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ground_truth.has_arc(i, j) || ground_truth.has_arc(j, i)) {
        const bool forward = ground_truth.has_arc(i, j);
        const bool flipped = rng.bernoulli(params.delta1);
        if (forward != flipped) {
          out.add_preference(i, j);
        } else {
          out.add_preference(j, i);
        }
      } else {
        const double u = rng.uniform();
        if (u < params.delta2 / 2.0) {
          out.add_preference(i, j);
        } else if (u < params.delta2) {
          out.add_preference(j, i);
        }
      }
    }
  }
  return out;
}

double theorem_bound(std::size_t num_vertices, std::size_t num_arcs, double epsilon, double delta2, std::size_t N) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw Error(ErrorKind::kInvalidArgument, "epsilon must lie in (0, 0.5]");
  if (!(delta2 >= 0.0 && delta2 <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "delta2 must lie in [0, 1]");
  if (N < 1) throw Error(ErrorKind::kInvalidArgument, "ensemble size N must be at least 1");
  const auto pairs = num_vertices * (num_vertices - (num_vertices > 0 ? 1 : 0)) / 2;
  if (num_arcs > pairs) throw Error(ErrorKind::kInvalidArgument, "more arcs than vertex pairs");
  const double arcs = static_cast<double>(num_arcs);
  const double unconnected = static_cast<double>(pairs - num_arcs);
  const double n_eps2 = static_cast<double>(N) * epsilon * epsilon;
  double bound = 1.0 - 2.0 * arcs * std::exp(-n_eps2 / 2.0);
  if (unconnected > 0.0) {
    bound -= 2.0 * unconnected *
             std::exp(-n_eps2 / (6.0 * unconnected * unconnected * delta2 + 2.0 * unconnected * epsilon));
  }
  return bound;
}

bool is_subgraph(const PreferenceGraph& g, const PreferenceGraph& h) {
  if (!g.same_vertex_set(h)) throw Error(ErrorKind::kVertexSetMismatch, "subgraph test needs one vertex set");
  for (const auto& [key, w] : g.arc_map()) {
    if (!h.has_arc(g.id(key.first), g.id(key.second))) return false;
  }
  return true;
}

bool recovery_trial(const PreferenceGraph& ground_truth, const PerturbationParams& params, std::size_t N,
                    std::uint64_t seed, std::size_t exact_threshold) {
  if (N < 1) throw Error(ErrorKind::kInvalidArgument, "ensemble size N must be at least 1");
  std::vector<PreferenceGraph> samples;
  samples.reserve(N);
  for (std::size_t s = 0; s < N; ++s) samples.push_back(perturb(ground_truth, params, derive_seed(seed, s)));
  // The 1/N normalisation is omitted: containment after denoising does
  // not change under a uniform positive rescaling of all weights.
  const auto combined = ensemble(GraphSet(std::move(samples)));
  const auto mode = ground_truth.num_vertices() <= exact_threshold ? DenoiseMode::kExact : DenoiseMode::kGreedy;
  return is_subgraph(ground_truth, denoise(combined, mode, exact_threshold).dag);
}

RecoveryReport recovery_probability(const PreferenceGraph& ground_truth, const PerturbationParams& params,
                                    std::size_t N, std::size_t trials, std::uint64_t seed,
                                    const RecoveryOptions& options) {
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "at least one trial is required");
  if (N < 1) throw Error(ErrorKind::kInvalidArgument, "ensemble size N must be at least 1");
  params.validate();
  require_unit_dag(ground_truth);

  RecoveryReport report;
  report.trials = trials;
  report.params = params;
  report.ensemble_size = N;
  report.epsilon = 0.5 - params.delta1;
  report.num_vertices = ground_truth.num_vertices();
  report.num_arcs = ground_truth.num_arcs();
  report.denoise_mode =
      ground_truth.num_vertices() <= options.exact_threshold ? DenoiseMode::kExact : DenoiseMode::kGreedy;
  report.seed = seed;

  const auto workers = std::max<std::size_t>(1, std::min(options.parallel, trials));
  if (workers == 1) {
    report.successes = count_successes(ground_truth, params, N, seed, options.exact_threshold, 0, trials);
  } else {
    std::vector<std::size_t> partial(workers, 0);
    {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < workers; ++w) {
        const auto begin = trials * w / workers;
        const auto end = trials * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] {
          partial[w] = count_successes(ground_truth, params, N, seed, options.exact_threshold, begin, end);
        });
      }
    }
    for (auto s : partial) report.successes += s;
  }
  report.empirical_probability = static_cast<double>(report.successes) / static_cast<double>(trials);

  report.bound_applicable = report.epsilon > 0.0;
  report.analytic_bound =
      report.bound_applicable
          ? theorem_bound(report.num_vertices, report.num_arcs, report.epsilon, params.delta2, N)
          : -std::numeric_limits<double>::infinity();
  return report;
}

PreferenceGraph random_dag(std::size_t num_vertices, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "arc probability must lie in [0, 1]");
  PreferenceGraph dag(numbered_vertices(num_vertices));
  Rng rng(seed);
  std::vector<std::size_t> perm(num_vertices);
  for (std::size_t i = 0; i < num_vertices; ++i) perm[i] = i;
  rng.shuffle(perm);
  for (std::size_t i = 0; i < num_vertices; ++i) {
    for (std::size_t j = i + 1; j < num_vertices; ++j) {
      if (rng.bernoulli(p)) dag.add_preference(perm[i], perm[j]);
    }
  }
  return dag;
}

PreferenceGraph random_dag_with_arcs(std::size_t num_vertices, std::size_t num_arcs, std::uint64_t seed) {
  const auto pairs = num_vertices * (num_vertices - (num_vertices > 0 ? 1 : 0)) / 2;
  if (num_arcs > pairs) throw Error(ErrorKind::kInvalidArgument, "more arcs than vertex pairs");
  PreferenceGraph dag(numbered_vertices(num_vertices));
  Rng rng(seed);
  std::vector<std::size_t> perm(num_vertices);
  for (std::size_t i = 0; i < num_vertices; ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<std::pair<std::size_t, std::size_t>> forward;
  for (std::size_t i = 0; i < num_vertices; ++i) {
    for (std::size_t j = i + 1; j < num_vertices; ++j) forward.emplace_back(perm[i], perm[j]);
  }
  rng.shuffle(forward);
  for (std::size_t k = 0; k < num_arcs; ++k) dag.add_preference(forward[k].first, forward[k].second);
  return dag;
}

}  // namespace prefgraph
