#pragma once

// Multiplicative approximation: epsilon-domination, box indices and the
// approximation degree of a path against a reference front.

#include "mpmo/core.hpp"
#include "mpmo/shortestpath/graph.hpp"

#include <map>
#include <vector>

namespace mpmo::sp {

/// Largest integer k with r^k <= f. Requires f >= 1 and r > 1.
[[nodiscard]] Objective floor_log(Objective f, double r);

/// Per-objective floor(log_r f).
[[nodiscard]] ObjectiveVector box_index(const ObjectiveVector& f, double r);
/// Per-party box indices, all at the same base.
[[nodiscard]] MultiPartyObjectives box_index(const MultiPartyObjectives& f, double r);

/// Weak form: same endpoint and f_mk(a) <= (1+eps) f_mk(b) for every k of party m.
[[nodiscard]] bool epsilon_dominates(Vertex endpoint_a, const MultiPartyObjectives& fa,
                                     Vertex endpoint_b, const MultiPartyObjectives& fb,
                                     double eps, std::size_t party);
/// Strict form: the weak form plus F_m(a) != F_m(b).
[[nodiscard]] bool strictly_epsilon_dominates(Vertex endpoint_a, const MultiPartyObjectives& fa,
                                              Vertex endpoint_b, const MultiPartyObjectives& fb,
                                              double eps, std::size_t party);

struct ApproxParams {
  double eps1 = 1.0;
  double eps2 = 1.0;
  /// Ceiling party 2 may relax to during consensus.
  double eps2_max = 2.0;
  /// Box base for the single-archive optimizers; 0 derives (1+min eps)^(1/(n-1)).
  double r = 0.0;
  /// Increment between consensus relaxation levels; 0 means eps2.
  double relax_step = 0.0;
  /// Longest admissible vertex sequence; 0 means 2n.
  std::size_t max_vertices = 0;

  /// Throws ParameterError on an inadmissible combination.
  void validate() const;
  [[nodiscard]] double eps_min() const noexcept { return eps1 < eps2 ? eps1 : eps2; }
  [[nodiscard]] double step() const noexcept { return relax_step > 0 ? relax_step : eps2; }
  [[nodiscard]] std::size_t vertex_cap(std::size_t n) const noexcept {
    return max_vertices > 0 ? max_vertices : 2 * n;
  }
};

/// (1+eps)^(1/(n-1)); for n = 1 the base is 1+eps.
[[nodiscard]] double path_box_base(std::size_t n, double eps);

/// Objectives of the reference solutions per endpoint.
using CommonFronts = std::map<Vertex, std::vector<MultiPartyObjectives>>;

/// Smallest eps >= 0 such that `f` (1+eps)-weakly-dominates every member of
/// `front` for every party: max ratio f_mk / z_mk minus one, clamped at 0.
/// Throws DomainError on an empty front.
[[nodiscard]] double approximation_degree(const MultiPartyObjectives& f,
                                          const std::vector<MultiPartyObjectives>& front);

}  // namespace mpmo::sp
