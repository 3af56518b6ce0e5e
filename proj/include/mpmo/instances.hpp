#pragma once

// Problem instances for the path optimizers: the 5-vertex fixture, a planted
// generator with a guaranteed common solution per endpoint, and the
// `bpmosp v1` text format.

#include "mpmo/shortestpath/approx.hpp"
#include "mpmo/shortestpath/graph.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mpmo::instances {

/// Malformed instance text. `line()` is 1-based; 0 when no single line is at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Five vertices, seven edges, two parties with two objectives each.
[[nodiscard]] sp::WeightedDigraph fixture_graph();

struct PlantedSpec {
  std::size_t n = 10;
  std::uint64_t seed = 0;
  /// Each vertex links to this many nearest neighbours, in both directions.
  std::size_t neighbors = 3;
  std::size_t hover_points = 3;
  std::size_t density_blobs = 3;
  /// Off-tree weights get an extra uniform integer in [0, jitter].
  std::int64_t jitter = 0;
  double crash_probability = 1e-3;
  double shelter_factor = 0.5;
  double fatality_factor = 0.8;
  double eco_log_mean = 0.0;
  double eco_log_sigma = 0.5;
  std::size_t max_retries = 100;

  /// "kind=planted n=.. seed=.. ..." as echoed into instance files.
  [[nodiscard]] std::string describe() const;
};

/// Reads "n=10 seed=3 jitter=2" style settings; ':' also separates fields and
/// a leading "planted" or "kind=planted" is ignored. Unknown keys throw ParameterError.
[[nodiscard]] PlantedSpec parse_planted_spec(std::string_view text);

struct PlantedInstance {
  sp::WeightedDigraph graph;
  /// The breadth-first tree path to every endpoint; each is its endpoint's
  /// unique common solution.
  std::map<sp::Vertex, sp::Path> tree_paths;
  sp::CommonFronts fronts;
  PlantedSpec spec;
};

/// Random geometric digraph with UAV-flavoured raw weights. A breadth-first
/// tree from the source gets weight 1 on every objective, every other edge
/// at least 2, so each tree path strictly dominates all alternatives for
/// both parties.
[[nodiscard]] PlantedInstance generate_planted_uav(const PlantedSpec& spec);

/// `bpmosp v1` text. `comment` lines are written after the version line, each prefixed "# ".
[[nodiscard]] std::string write_instance(const sp::WeightedDigraph& g,
                                         std::string_view comment = {});

/// Rejects a bad header, non-positive weights, duplicate edges, self loops,
/// out-of-range vertices and vertices unreachable from the source.
[[nodiscard]] sp::WeightedDigraph parse_instance(std::string_view text);

}  // namespace mpmo::instances
