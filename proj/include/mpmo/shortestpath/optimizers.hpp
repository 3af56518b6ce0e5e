#pragma once

// Path optimizers: the consensus-based single archive, the joint-objective
// baseline, and the two-stage per-party search with ultimatum consensus.
//
// Budgets count generations. A generation selects a parent and mutates it;
// a mutation without a valid completion, an offspring ending at the source
// and an offspring longer than the vertex cap all cost one generation and no
// evaluation. Every evaluated offspring costs one evaluation.
//
// RNG draw order per generation: parent index, then the mutation draws.

#include "mpmo/random.hpp"
#include "mpmo/shortestpath/approx.hpp"
#include "mpmo/shortestpath/archive.hpp"
#include "mpmo/shortestpath/graph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace mpmo::sp {

/// Approximation quality of a population against reference fronts.
/// `mean_eps_endpoints` averages the best member per endpoint and is +inf
/// while some endpoint has no member.
struct MetricSample {
  std::uint64_t generation = 0;
  std::uint64_t evaluations = 0;
  double max_eps = 0.0;
  double mean_eps_members = 0.0;
  double mean_eps_endpoints = 0.0;
};

struct SpSnapshot {
  std::uint64_t generation = 0;
  std::uint64_t evaluations = 0;
  std::span<const SpArchive> archives;
};

using SpObserver = std::function<void(const SpSnapshot&)>;

struct SpRunOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  /// Metric sampling period in generations; 0 disables sampling.
  std::uint64_t cadence = 100;
  /// Reference fronts for metrics and hit detection; optional.
  const CommonFronts* fronts = nullptr;
  bool stop_at_hit = false;
  SpObserver observer;
};

struct SpTrace {
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t no_change = 0;
  /// Evaluations at the first population change after which every endpoint
  /// of the reference fronts holds a member of degree 0.
  std::optional<std::uint64_t> hit_time;
  std::vector<SpMember> population;
  std::vector<MetricSample> metrics;
  std::uint64_t seed = 0;
};

struct EndpointConsensus {
  Vertex endpoint = 0;
  std::vector<SpMember> members;
  double eps2_relaxed = 0.0;
  double utility1 = 0.0;
  double utility2 = 0.0;
};

struct Consensus {
  std::vector<EndpointConsensus> agreed;
  /// Endpoints where no proposal was accepted within the relaxation ceiling.
  std::vector<Vertex> failed;

  [[nodiscard]] std::vector<SpMember> members() const;
};

struct SimpleSpResult {
  SpTrace trace;  // population holds the consensus members
  std::vector<SpMember> party1;
  std::vector<SpMember> party2;
  Consensus consensus;
};

/// Party 1 proposes each of its members; party 2 accepts a proposal at the
/// first relaxation level eps' = eps2 + j * step (eps' <= eps2_max) where the
/// proposal's party-2 box at base 1+eps' equals the box of a party-2 member
/// with the same endpoint. Each endpoint 2..vertex_count keeps the proposals
/// with the smallest accepted eps'. Utilities: party 1 gets 1, party 2 gets 1
/// at eps2 and (eps2_max - eps') / (eps2_max - eps2) above it.
[[nodiscard]] Consensus ultimatum_consensus(std::size_t vertex_count,
                                            std::span<const SpMember> party1,
                                            std::span<const SpMember> party2,
                                            const ApproxParams& params);

/// Single archive under the per-party rule, base r = params.r or (1+min eps)^(1/(n-1)).
[[nodiscard]] SpTrace run_empmo_cons_sp(const WeightedDigraph& g, const ApproxParams& params,
                                        const SpRunOptions& options);

/// Baseline: the same archive over the concatenated objective vector.
[[nodiscard]] SpTrace run_demo_sp(const WeightedDigraph& g, double r,
                                  const SpRunOptions& options, std::size_t max_vertices = 0);

/// Stage 1 runs one archive per party (base (1+eps_m)^(1/(n-1))), alternating
/// one generation each; stage 2 is `ultimatum_consensus` on the final archives.
[[nodiscard]] SimpleSpResult run_empmo_simple_sp(const WeightedDigraph& g,
                                                 const ApproxParams& params,
                                                 const SpRunOptions& options);

[[nodiscard]] MetricSample measure_population(std::uint64_t generation,
                                              std::uint64_t evaluations,
                                              std::span<const SpMember> population,
                                              const CommonFronts& fronts);

/// True when every endpoint of `fronts` has a member of degree 0.
[[nodiscard]] bool covers_fronts(std::span<const SpMember> population, const CommonFronts& fronts);

}  // namespace mpmo::sp
