#pragma once

// Add/Delete path mutation. Candidates are enumerated in ascending vertex
// order before the uniform draw, so a seeded run is reproducible.
//
// RNG draw order: operation (Add or Delete, one half each), then position,
// then candidate index (Add only).

#include "mpmo/random.hpp"
#include "mpmo/shortestpath/graph.hpp"

#include <optional>
#include <vector>

namespace mpmo::sp {

enum class MutationKind { Add, Delete };

struct MutationResult {
  MutationKind kind = MutationKind::Add;
  /// Empty when the chosen operation has no valid completion.
  std::optional<Path> offspring;
};

/// Vertices that may follow position `pos` (0 <= pos <= l): detour vertices
/// v' with (v_pos, v') and (v', v_pos+1) in E for interior positions,
/// successors of the endpoint otherwise.
[[nodiscard]] std::vector<Vertex> add_candidates(const WeightedDigraph& g, const Path& p,
                                                 std::size_t pos);

/// Inserts `add_candidates(g, p, pos)[choice]` after position `pos`.
[[nodiscard]] std::optional<Path> apply_add(const WeightedDigraph& g, const Path& p,
                                            std::size_t pos, std::size_t choice);

/// Delete at index i (1 <= i <= l-1): splices out v_i+1 when i <= l-2 and
/// (v_i, v_i+2) is an edge; drops the endpoint when i = l-1.
[[nodiscard]] std::optional<Path> apply_delete(const WeightedDigraph& g, const Path& p,
                                               std::size_t i);

[[nodiscard]] MutationResult mutate_path(const WeightedDigraph& g, const Path& p, Rng& rng);

}  // namespace mpmo::sp
