#pragma once

// Directed graphs with per-party edge weight vectors, and paths from the source.

#include "mpmo/core.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mpmo::sp {

/// Vertices are labeled 1..n; vertex 1 is the source.
using Vertex = std::uint32_t;
inline constexpr Vertex kSource = 1;

struct Edge {
  Vertex to = 0;
  MultiPartyObjectives weight;
};

class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(std::size_t n, std::vector<std::size_t> objective_counts);

  /// Rejects self loops, out-of-range endpoints, duplicates, a party
  /// structure different from the graph's, and weights below 1.
  void add_edge(Vertex u, Vertex v, MultiPartyObjectives weight);

  [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_; }
  [[nodiscard]] std::size_t party_count() const noexcept { return counts_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& objective_counts() const noexcept {
    return counts_;
  }

  /// Out-edges of `u` in ascending order of target.
  [[nodiscard]] std::span<const Edge> successors(Vertex u) const;
  [[nodiscard]] const MultiPartyObjectives* weight(Vertex u, Vertex v) const;
  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const { return weight(u, v) != nullptr; }

  /// Largest single weight entry of party `m` over all edges.
  [[nodiscard]] Objective max_weight(std::size_t m) const;

  /// Vertices not reachable from the source, ascending.
  [[nodiscard]] std::vector<Vertex> unreachable_vertices() const;
  /// Throws StructuralError if some vertex cannot be reached from the source.
  void require_reachable() const;

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::size_t n_ = 0;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<Edge>> out_;  // indexed by vertex, slot 0 unused
  std::size_t edges_ = 0;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.to == b.to && a.weight == b.weight;
}

/// Vertex sequence (v_0 = source, v_1, ..., v_l).
class Path {
 public:
  Path() : vertices_{kSource} {}
  explicit Path(std::vector<Vertex> vertices);

  [[nodiscard]] const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] Vertex endpoint() const noexcept { return vertices_.back(); }
  /// Number of edges l.
  [[nodiscard]] std::size_t length() const noexcept { return vertices_.size() - 1; }
  [[nodiscard]] Vertex operator[](std::size_t i) const { return vertices_[i]; }

  /// "(1,3,4,5)"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::vector<Vertex> vertices_;
};

/// Parses "(1,3,4,5)" or "1,3,4,5".
[[nodiscard]] Path parse_path(std::string_view text);

[[nodiscard]] bool is_valid_path(const WeightedDigraph& g, const Path& p);

/// Entrywise sum of edge weights per party. The bare source evaluates to zeros.
[[nodiscard]] MultiPartyObjectives eval_path(const WeightedDigraph& g, const Path& p);

}  // namespace mpmo::sp
