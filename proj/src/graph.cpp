#include "mpmo/shortestpath/graph.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <charconv>
#include <deque>

namespace mpmo::sp {

WeightedDigraph::WeightedDigraph(std::size_t n, std::vector<std::size_t> objective_counts)
    : n_(n), counts_(std::move(objective_counts)), out_(n + 1) {
  if (n < 1) throw StructuralError("graph needs at least the source vertex");
  if (counts_.empty()) throw StructuralError("graph needs at least one party");
  for (auto k : counts_) {
    if (k == 0) throw StructuralError("every party needs at least one objective");
  }
}

void WeightedDigraph::check_vertex(Vertex v) const {
  if (v < 1 || v > n_) {
    throw StructuralError(fmt::format("vertex {} outside 1..{}", v, n_));
  }
}

void WeightedDigraph::add_edge(Vertex u, Vertex v, MultiPartyObjectives weight) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw StructuralError(fmt::format("self loop at vertex {}", u));
  if (weight.objective_counts() != counts_) {
    throw StructuralError(fmt::format("edge ({},{}) has the wrong party structure", u, v));
  }
  for (const auto& party : weight.parties()) {
    for (auto w : party.values()) {
      if (w < 1) throw DomainError(fmt::format("edge ({},{}) has weight {} < 1", u, v, w));
    }
  }
  auto& list = out_[u];
  auto it = std::ranges::lower_bound(list, v, {}, &Edge::to);
  if (it != list.end() && it->to == v) {
    throw StructuralError(fmt::format("duplicate edge ({},{})", u, v));
  }
  list.insert(it, Edge{v, std::move(weight)});
  ++edges_;
}

std::span<const Edge> WeightedDigraph::successors(Vertex u) const {
  check_vertex(u);
  return out_[u];
}

const MultiPartyObjectives* WeightedDigraph::weight(Vertex u, Vertex v) const {
  if (u < 1 || u > n_) return nullptr;
  const auto& list = out_[u];
  auto it = std::ranges::lower_bound(list, v, {}, &Edge::to);
  return (it != list.end() && it->to == v) ? &it->weight : nullptr;
}

Objective WeightedDigraph::max_weight(std::size_t m) const {
  Objective best = 0;
  for (const auto& list : out_) {
    for (const auto& e : list) {
      for (auto w : e.weight.party(m).values()) best = std::max(best, w);
    }
  }
  return best;
}

std::vector<Vertex> WeightedDigraph::unreachable_vertices() const {
  std::vector<bool> seen(n_ + 1, false);
  std::deque<Vertex> queue{kSource};
  seen[kSource] = true;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (const auto& e : out_[u]) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        queue.push_back(e.to);
      }
    }
  }
  std::vector<Vertex> missing;
  for (Vertex v = 1; v <= n_; ++v) {
    if (!seen[v]) missing.push_back(v);
  }
  return missing;
}

void WeightedDigraph::require_reachable() const {
  const auto missing = unreachable_vertices();
  if (!missing.empty()) {
    throw StructuralError(
        fmt::format("vertices unreachable from the source: {}", fmt::join(missing, ",")));
  }
}

Path::Path(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty() || vertices_.front() != kSource) {
    throw StructuralError("a path must start at the source vertex");
  }
}

std::string Path::to_string() const { return fmt::format("({})", fmt::join(vertices_, ",")); }

Path parse_path(std::string_view text) {
  if (!text.empty() && text.front() == '(') text.remove_prefix(1);
  if (!text.empty() && text.back() == ')') text.remove_suffix(1);
  std::vector<Vertex> vertices;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    Vertex v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParameterError(fmt::format("invalid vertex '{}' in path", token));
    }
    vertices.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Path(std::move(vertices));
}

bool is_valid_path(const WeightedDigraph& g, const Path& p) {
  const auto& v = p.vertices();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!g.has_edge(v[i], v[i + 1])) return false;
  }
  return true;
}

MultiPartyObjectives eval_path(const WeightedDigraph& g, const Path& p) {
  auto total = MultiPartyObjectives::zeros(g.objective_counts());
  const auto& v = p.vertices();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const auto* w = g.weight(v[i], v[i + 1]);
    if (w == nullptr) {
      throw StructuralError(fmt::format("({},{}) is not an edge", v[i], v[i + 1]));
    }
    total += *w;
  }
  return total;
}

}  // namespace mpmo::sp
