#pragma once

#include <cstddef>
#include <cstdint>

#include "prefgraph/denoise.hpp"
#include "prefgraph/graph.hpp"

namespace prefgraph {

/// Noise model around a ground-truth DAG: every true arc is reversed with
/// probability delta1; every unconnected pair gains an arc with
/// probability delta2, each direction equally likely.
struct PerturbationParams {
  double delta1 = 0.0;
  double delta2 = 0.0;

  /// Throws kInvalidArgument unless both lie in [0, 1].
  void validate() const;
  friend bool operator==(const PerturbationParams&, const PerturbationParams&) = default;
};

struct RecoveryReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double empirical_probability = 0.0;
  /// -infinity when delta1 >= 0.5 and the bound does not apply.
  double analytic_bound = 0.0;
  bool bound_applicable = false;
  PerturbationParams params;
  std::size_t ensemble_size = 0;  // N
  double epsilon = 0.0;           // 0.5 - delta1
  std::size_t num_vertices = 0;
  std::size_t num_arcs = 0;
  /// kGreedy when the ground truth exceeded the exact threshold.
  DenoiseMode denoise_mode = DenoiseMode::kExact;
  std::uint64_t seed = 0;

  friend bool operator==(const RecoveryReport&, const RecoveryReport&) = default;
};

struct RecoveryOptions {
  std::size_t exact_threshold = kDefaultExactThreshold;
  /// Worker threads; the report does not depend on this.
  std::size_t parallel = 1;
};

/// One noisy copy of `ground_truth` (acyclic, unit weights). Throws
/// kCyclicInput or kInvalidArgument for other inputs.
PreferenceGraph perturb(const PreferenceGraph& ground_truth, const PerturbationParams& params, std::uint64_t seed);

/// Lower bound on the probability that the denoised ensemble of N noisy
/// copies contains the ground truth:
///   1 - 2|A| exp(-N eps^2 / 2) - 2U exp(-N eps^2 / (6 U^2 delta2 + 2 U eps))
/// with U = |V|(|V|-1)/2 - |A|. The value may be negative.
double theorem_bound(std::size_t num_vertices, std::size_t num_arcs, double epsilon, double delta2, std::size_t N);

/// Every arc of g is present, same direction, in h. Weights are ignored.
/// Throws kVertexSetMismatch.
bool is_subgraph(const PreferenceGraph& g, const PreferenceGraph& h);

/// Ensembles N perturbations, denoises (exact up to the threshold,
/// greedy above) and checks that the ground truth survived.
bool recovery_trial(const PreferenceGraph& ground_truth, const PerturbationParams& params, std::size_t N,
                    std::uint64_t seed, std::size_t exact_threshold = kDefaultExactThreshold);

/// Runs `trials` independent recovery trials with derived seeds.
RecoveryReport recovery_probability(const PreferenceGraph& ground_truth, const PerturbationParams& params,
                                    std::size_t N, std::size_t trials, std::uint64_t seed,
                                    const RecoveryOptions& options = {});

/// Vertices v0..v{n-1} (zero-padded); a random permutation orients pairs,
/// each forward pair kept with probability p.
PreferenceGraph random_dag(std::size_t num_vertices, double p, std::uint64_t seed);
/// As random_dag, but with exactly `num_arcs` forward pairs.
PreferenceGraph random_dag_with_arcs(std::size_t num_vertices, std::size_t num_arcs, std::uint64_t seed);

}  // namespace prefgraph
