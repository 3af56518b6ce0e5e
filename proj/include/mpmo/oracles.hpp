#pragma once

// Exhaustive ground truth for small instances, plus exact reference formulas.
// Everything here is written independently of the optimizers it checks.

#include "mpmo/pseudoboolean.hpp"
#include "mpmo/shortestpath/approx.hpp"
#include "mpmo/shortestpath/archive.hpp"
#include "mpmo/shortestpath/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

namespace mpmo::oracle {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxBitStringLength = 16;
inline constexpr std::size_t kMaxGraphVertices = 12;

struct PbSolution {
  BitString x;
  MultiPartyObjectives f;
};

struct PseudoBooleanCatalog {
  /// Pareto set of each party on its own objectives.
  std::vector<std::vector<PbSolution>> party_sets;
  /// Solutions optimal for every party.
  std::vector<PbSolution> common;
  /// Pareto set of the concatenated objective vector.
  std::vector<PbSolution> joint;
};

/// Enumerates {0,1}^n. Throws SizeLimitError when n exceeds kMaxBitStringLength.
[[nodiscard]] PseudoBooleanCatalog brute_force_pseudoboolean(const PseudoBooleanProblem& problem);

/// Exact Pareto sets of one endpoint, all paths in ascending order.
struct EndpointCatalog {
  std::vector<sp::SpMember> party1;
  std::vector<sp::SpMember> party2;
  std::vector<sp::SpMember> joint;
  std::vector<sp::SpMember> common;
};

using PathCatalog = std::map<sp::Vertex, EndpointCatalog>;

/// Label-correcting enumeration of all Pareto paths per endpoint, once per
/// party and once over the concatenated objectives. Requires two parties and
/// at most kMaxGraphVertices vertices.
[[nodiscard]] PathCatalog exact_path_catalog(const sp::WeightedDigraph& g);

/// Objectives of the common set per endpoint.
[[nodiscard]] sp::CommonFronts common_fronts(const PathCatalog& catalog);

/// Common paths whose proper prefixes (length >= 1) are not common paths of
/// their own endpoint, one line per violation.
[[nodiscard]] std::vector<std::string> prefix_closure_violations(const PathCatalog& catalog);

/// max over members, parties and objectives of f(x)/f(z) - 1, clamped at 0.
/// Throws DomainError on an empty set.
[[nodiscard]] Rational epsilon_of_solution(const MultiPartyObjectives& f,
                                           const std::vector<MultiPartyObjectives>& common);

/// The same quantity found by bisection on the (1+eps)-weak-domination test.
[[nodiscard]] double epsilon_by_bisection(const MultiPartyObjectives& f,
                                          const std::vector<MultiPartyObjectives>& common,
                                          double tolerance = 1e-12);

/// Sum_{i=1}^{z} n / i: expected one-bit-flip evaluations to turn z zeros into ones.
[[nodiscard]] Rational payoff_runtime_predictor(std::size_t n, std::size_t zeros);

[[nodiscard]] std::string catalog_report(const PseudoBooleanProblem& problem,
                                         const PseudoBooleanCatalog& catalog);
[[nodiscard]] std::string catalog_report(const PathCatalog& catalog);

}  // namespace mpmo::oracle
