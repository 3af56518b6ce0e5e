#pragma once

// SEMO and the three evolutionary multi-party optimizers for the
// pseudo-Boolean family.
//
// Counting rule: every offspring evaluation adds one to `evaluations`. The
// initial solution costs one evaluation, except for EMPMO_simple which
// charges it once per party archive. `StopRule::budget` caps the number of
// offspring evaluations; `hit_time` is the value of `evaluations` right after
// the target set became fully covered.
//
// RNG draw order per run: initial bits (one draw per bit, unless an initial
// solution is supplied), then per offspring: individual index, party (EMPMO_random
// only), bit index.

#include "mpmo/pseudoboolean.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpmo {

struct PopulationEntry {
  BitString solution;
  MultiPartyObjectives objectives;
  std::uint64_t birth_iteration = 0;
};

struct StopRule {
  std::uint64_t budget = 100'000'000;
  bool stop_at_hit = true;
};

/// State visible to an observer after every offspring step. For EMPMO_simple
/// `archives` holds P_1, ..., P_M followed by the common set; every other
/// optimizer exposes its single archive.
struct SearchSnapshot {
  std::uint64_t iteration = 0;
  std::uint64_t evaluations = 0;
  std::span<const std::vector<PopulationEntry>> archives;
};

using SearchObserver = std::function<void(const SearchSnapshot&)>;

struct RunOptions {
  std::uint64_t seed = 0;
  StopRule stop{};
  std::optional<BitString> initial;
  SearchObserver observer;
};

struct RunTrace {
  std::uint64_t evaluations = 0;
  std::uint64_t iterations = 0;
  std::optional<std::uint64_t> hit_time;
  /// The archive the hit criterion is judged on (the common set for EMPMO_simple).
  std::vector<PopulationEntry> final_population;
  /// Per-party archives; only filled by EMPMO_simple.
  std::vector<std::vector<PopulationEntry>> party_populations;
  std::uint64_t seed = 0;
};

/// Target: the full flattened Pareto front of the problem.
[[nodiscard]] RunTrace run_semo(const PseudoBooleanProblem& problem, const RunOptions& options);

/// Target: the common optimum 1^n present in the common set. Requires M >= 2.
[[nodiscard]] RunTrace run_empmo_simple(const PseudoBooleanProblem& problem,
                                        const RunOptions& options);

/// `phi` is the probability of letting party 1 drive an iteration; requires M = 2.
[[nodiscard]] RunTrace run_empmo_random(const PseudoBooleanProblem& problem, double phi,
                                        const RunOptions& options);

/// Single-individual search that accepts an offspring iff its multi-party
/// payoff is positive. Requires M >= 2.
[[nodiscard]] RunTrace run_empmo_payoff(const PseudoBooleanProblem& problem,
                                        const RunOptions& options);

/// One CSV record for a trace:
/// run_id,algorithm,problem,n,phi,seed,evaluations,iterations,hit_time,wall_ms
[[nodiscard]] std::string trace_csv_header();
[[nodiscard]] std::string trace_csv_row(std::string_view run_id, std::string_view algorithm,
                                        const PseudoBooleanProblem& problem,
                                        std::optional<double> phi, const RunTrace& trace,
                                        double wall_ms);

}  // namespace mpmo
