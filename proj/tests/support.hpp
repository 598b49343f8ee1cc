#pragma once
// Seeded generators and brute-force oracles shared by the unit, property
// and acceptance tests. None of the oracles call into the library's
// algorithms; they only read graphs through the public accessors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "prefgraph/graph.hpp"
#include "prefgraph/ranking.hpp"

namespace prefgraph::testing {

inline std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

/// Random graph with each ordered pair present with probability `density`.
/// Weights come from `weight` (called once per arc).
inline PreferenceGraph random_graph(std::mt19937_64& gen, std::size_t n, double density,
                                    const std::function<double(std::mt19937_64&)>& weight) {
  PreferenceGraph g(labels(n));
  std::bernoulli_distribution coin(density);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && coin(gen)) g.add_preference(u, v, weight(gen));
    }
  }
  return g;
}

inline double unit_weight(std::mt19937_64&) { return 1.0; }

/// Dyadic weights k/4 for k in 1..40, so every sum is exact in binary.
inline double dyadic_weight(std::mt19937_64& gen) {
  return static_cast<double>(std::uniform_int_distribution<int>(1, 40)(gen)) / 4.0;
}

inline double real_weight(std::mt19937_64& gen) {
  return 10.0 * (1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(gen));
}

/// Weakly connected simple digraph without antiparallel arcs: a random
/// spanning tree with random orientations plus extra pairs at `density`.
inline PreferenceGraph random_connected_simple(std::mt19937_64& gen, std::size_t n, double density) {
  PreferenceGraph g(labels(n));
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::bernoulli_distribution coin(0.5);
  auto link = [&](std::size_t a, std::size_t b) {
    const auto key = std::minmax(a, b);
    if (!used.insert(key).second) return;
    if (coin(gen)) std::swap(a, b);
    g.add_preference(a, b, 1.0);
  };
  for (std::size_t v = 1; v < n; ++v) link(v, std::uniform_int_distribution<std::size_t>(0, v - 1)(gen));
  std::bernoulli_distribution extra(density);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (extra(gen)) link(a, b);
    }
  }
  return g;
}

inline std::vector<std::string> shuffled(std::mt19937_64& gen, std::vector<std::string> v) {
  std::shuffle(v.begin(), v.end(), gen);
  return v;
}

/// Dense adjacency weights w[u][v] read through the public accessor.
inline std::vector<std::vector<double>> dense(const PreferenceGraph& g) {
  const auto n = g.num_vertices();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v) w[u][v] = g.weight(g.id(u), g.id(v));
    }
  }
  return w;
}

/// Enumerates simple cycles rooted at their smallest vertex; true if any.
inline bool has_simple_cycle(const PreferenceGraph& g) {
  const auto w = dense(g);
  const auto n = w.size();
  std::vector<bool> on_path(n, false);
  std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t root, std::size_t at) {
    for (std::size_t next = root; next < n; ++next) {
      if (w[at][next] <= 0.0) continue;
      if (next == root) return true;
      if (on_path[next]) continue;
      on_path[next] = true;
      const bool found = extend(root, next);
      on_path[next] = false;
      if (found) return true;
    }
    return false;
  };
  for (std::size_t root = 0; root < n; ++root) {
    on_path[root] = true;
    const bool found = extend(root, root);
    on_path[root] = false;
    if (found) return true;
  }
  return false;
}

/// Minimum removed weight over all vertex orders by a subset DP:
/// cost(S + v) = cost(S) + sum over u in S of w(v -> u), where S is the
/// already placed prefix and arcs from later to earlier vertices are removed.
inline double min_fas_subset_dp(const PreferenceGraph& g) {
  const auto w = dense(g);
  const auto n = w.size();
  const std::size_t full = (std::size_t{1} << n);
  std::vector<double> best(full, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t s = 0; s < full; ++s) {
    if (!std::isfinite(best[s])) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (s & (std::size_t{1} << v)) continue;
      double add = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        if (s & (std::size_t{1} << u)) add += w[v][u];
      }
      auto& slot = best[s | (std::size_t{1} << v)];
      slot = std::min(slot, best[s] + add);
    }
  }
  return best[full - 1];
}

/// Same minimum by reverse-lexicographic permutation enumeration.
inline double min_fas_permutations(const PreferenceGraph& g) {
  const auto w = dense(g);
  std::vector<std::size_t> order(w.size());
  std::iota(order.rbegin(), order.rend(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) cost += w[order[j]][order[i]];
    }
    best = std::min(best, cost);
  } while (std::prev_permutation(order.begin(), order.end()));
  return best;
}

inline bool acyclic_by_dfs(const PreferenceGraph& g) { return !has_simple_cycle(g); }

/// rho = 1 - 6 sum d^2 / (n (n^2 - 1)) for tie-free rankings.
inline double spearman_formula(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::string, double> pos;
  for (std::size_t i = 0; i < b.size(); ++i) pos[b[i]] = static_cast<double>(i);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(i) - pos.at(a[i]);
    sum += d * d;
  }
  const double n = static_cast<double>(a.size());
  return 1.0 - 6.0 * sum / (n * (n * n - 1.0));
}

/// Number of pairs ordered differently, by checking every pair.
inline std::size_t discordant_pairs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::string, std::size_t> pa;
  std::map<std::string, std::size_t> pb;
  for (std::size_t i = 0; i < a.size(); ++i) pa[a[i]] = i;
  for (std::size_t i = 0; i < b.size(); ++i) pb[b[i]] = i;
  std::size_t count = 0;
  for (const auto& [x, px] : pa) {
    for (const auto& [y, py] : pa) {
      if (x < y && ((px < py) != (pb.at(x) < pb.at(y)))) ++count;
    }
  }
  return count;
}

/// All orders minimising the weighted Kendall sum, by enumeration.
inline std::set<std::vector<std::string>> kemeny_optima(const std::vector<std::vector<std::string>>& profile,
                                                        const std::vector<double>& weights) {
  auto order = profile.front();
  std::sort(order.begin(), order.end());
  std::set<std::vector<std::string>> best;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      cost += weights[i] * static_cast<double>(discordant_pairs(order, profile[i]));
    }
    if (cost < best_cost - 1e-9) {
      best_cost = cost;
      best.clear();
    }
    if (std::abs(cost - best_cost) <= 1e-9) best.insert(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

/// Power iteration on the dense Google matrix.
inline std::vector<double> pagerank_dense(const PreferenceGraph& g, double damping, std::size_t iterations) {
  const auto w = dense(g);
  const auto n = w.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));  // m[to][from]
  for (std::size_t u = 0; u < n; ++u) {
    const double out = std::accumulate(w[u].begin(), w[u].end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      const double p = out > 0.0 ? w[u][v] / out : 1.0 / static_cast<double>(n);
      m[v][u] = damping * p + (1.0 - damping) / static_cast<double>(n);
    }
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<double> y(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u = 0; u < n; ++u) y[v] += m[v][u] * x[u];
    }
    x = y;
  }
  return x;
}

}  // namespace prefgraph::testing
