#pragma once

// Batch runner: one RunSpec describes a single seeded run of any optimizer;
// sweeps expand a key=value config into the cartesian product of its lists.
//
// Summary CSV columns:
//   run_id,algorithm,problem,instance,n,phi,eps1,eps2,eps2max,seed,budget,
//   evaluations,generations,hit_time,error
// Metric CSV columns:
//   run_id,generation,evaluations,max_eps,mean_eps_members,mean_eps_endpoints
// Every summary column is a deterministic function of the run's parameters.

#include "mpmo/shortestpath/optimizers.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpmo::harness {

enum class Algorithm { Semo, EmpmoSimple, EmpmoRandom, EmpmoPayoff, EmpmoSimpleSp, EmpmoConsSp, DemoSp };

[[nodiscard]] std::string_view to_string(Algorithm a);
/// Accepts the ids printed by to_string: semo, empmo-simple, empmo-random,
/// empmo-payoff, empmo-simple-sp, empmo-cons-sp, demo-sp.
[[nodiscard]] std::optional<Algorithm> parse_algorithm(std::string_view id);
[[nodiscard]] bool is_path_algorithm(Algorithm a);

inline constexpr std::uint64_t kDefaultBitBudget = 100'000'000;
inline constexpr std::uint64_t kDefaultPathBudget = 100'000;

struct RunSpec {
  Algorithm algorithm = Algorithm::EmpmoPayoff;
  /// Bit-string problem name (aorz, aofz, bpaoaz, aoaz) or "bpmosp" for path
  /// runs. Empty selects bpaoaz or bpmosp by algorithm.
  std::string problem;
  /// Bit strings: "random" or "zeros" start. Paths: "fixture",
  /// "planted:n=<n>:seed=<s>[:key=value...]" or an instance file path.
  std::string instance = "random";
  /// Bit-string length; for path runs filled in from the instance.
  std::size_t n = 0;
  std::optional<double> phi;
  double eps1 = 1.0;
  double eps2 = 1.0;
  double eps2max = 2.0;
  std::uint64_t seed = 0;
  /// Offspring evaluations for bit strings, generations for paths. 0 = default.
  std::uint64_t budget = 0;
  /// Metric sampling period (path runs); not part of the run identity.
  std::uint64_t cadence = 100;

  /// Fills defaults (budget, path vertex count) and checks consistency.
  /// Throws ParameterError.
  void resolve();
  /// Parameter string the run id is hashed from.
  [[nodiscard]] std::string canonical() const;
  /// 16 hex digits of the FNV-1a hash of canonical().
  [[nodiscard]] std::string run_id() const;
};

struct RunRecord {
  RunSpec spec;
  std::uint64_t evaluations = 0;
  std::uint64_t generations = 0;
  std::optional<std::uint64_t> hit_time;
  std::string error;
  double wall_ms = 0.0;
  std::vector<sp::MetricSample> metrics;
};

/// A resolved path instance with reference fronts when they are known.
struct PathInstance {
  sp::WeightedDigraph graph;
  std::optional<sp::CommonFronts> fronts;
};

/// Loads "fixture", "planted:..." or a file. Fronts come from the planted
/// tree, or from the exact catalog when the graph is small enough.
[[nodiscard]] PathInstance load_path_instance(std::string_view instance);

/// Runs one spec; a failure is captured in RunRecord::error.
[[nodiscard]] RunRecord execute(RunSpec spec);

[[nodiscard]] std::string summary_header();
[[nodiscard]] std::string summary_row(const RunRecord& record);
[[nodiscard]] std::string metric_header();
[[nodiscard]] std::string metric_rows(const RunRecord& record);

/// Parses the header-keyed fields of a summary row back into a spec.
[[nodiscard]] RunSpec spec_from_summary(const std::map<std::string, std::string>& row);

/// Minimal CSV reader for files produced by this harness (no quoting).
[[nodiscard]] std::vector<std::map<std::string, std::string>> read_csv(std::string_view text);

struct SweepConfig {
  std::vector<RunSpec> runs;
};

/// key=value lines; '#' starts a comment. Values may be comma lists, and
/// `seeds` also accepts an inclusive range "a..b". Keys: algorithm, problem,
/// instance, n, phi, eps, eps1, eps2, eps2max, seeds, budget, cadence.
[[nodiscard]] SweepConfig parse_sweep_config(std::string_view text);

/// Executes every run on up to `jobs` threads; results keep config order.
[[nodiscard]] std::vector<RunRecord> run_sweep(const SweepConfig& config, std::size_t jobs);

struct Aggregate {
  RunSpec key;  // seed unused
  std::size_t runs = 0;
  std::size_t hits = 0;
  std::size_t failures = 0;
  double mean_evaluations = 0.0;
  double std_evaluations = 0.0;
  double min_evaluations = 0.0;
  double max_evaluations = 0.0;
};

/// Groups records that differ only in seed; statistics over evaluations of
/// runs without error. `std` is the sample standard deviation.
[[nodiscard]] std::vector<Aggregate> summarize(const std::vector<RunRecord>& records);
[[nodiscard]] std::string aggregate_header();
[[nodiscard]] std::string aggregate_row(const Aggregate& a);

struct SlopeFit {
  RunSpec key;  // n and seed unused
  std::size_t points = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
};

/// Least-squares fit of log(mean evaluations) against log n across
/// aggregates that differ only in n. Groups with fewer than two distinct n
/// are omitted.
[[nodiscard]] std::vector<SlopeFit> fit_slopes(const std::vector<Aggregate>& aggregates);
[[nodiscard]] std::string slope_header();
[[nodiscard]] std::string slope_row(const SlopeFit& s);

/// Writes `content` to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace mpmo::harness
