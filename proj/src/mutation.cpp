#include "mpmo/shortestpath/mutation.hpp"

#include <fmt/format.h>

namespace mpmo::sp {

namespace {

Path insert_after(const Path& p, std::size_t pos, Vertex v) {
  auto seq = p.vertices();
  seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos + 1), v);
  return Path(std::move(seq));
}

}  // namespace

std::vector<Vertex> add_candidates(const WeightedDigraph& g, const Path& p, std::size_t pos) {
  if (pos > p.length()) throw DomainError(fmt::format("add position {} beyond the path", pos));
  std::vector<Vertex> out;
  const auto successors = g.successors(p[pos]);
  if (pos == p.length()) {
    for (const auto& e : successors) out.push_back(e.to);
    return out;
  }
  const Vertex next = p[pos + 1];
  for (const auto& e : successors) {
    if (g.has_edge(e.to, next)) out.push_back(e.to);
  }
  return out;
}

std::optional<Path> apply_add(const WeightedDigraph& g, const Path& p, std::size_t pos,
                              std::size_t choice) {
  const auto candidates = add_candidates(g, p, pos);
  if (choice >= candidates.size()) return std::nullopt;
  return insert_after(p, pos, candidates[choice]);
}

std::optional<Path> apply_delete(const WeightedDigraph& g, const Path& p, std::size_t i) {
  const std::size_t l = p.length();
  if (l < 2 || i < 1 || i > l - 1) return std::nullopt;
  auto v = p.vertices();
  if (i == l - 1) {
    v.pop_back();
    return Path(std::move(v));
  }
  if (!g.has_edge(v[i], v[i + 2])) return std::nullopt;
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i + 1));
  return Path(std::move(v));
}

MutationResult mutate_path(const WeightedDigraph& g, const Path& p, Rng& rng) {
  MutationResult result;
  if (uniform_index(rng, 2) == 0) {
    result.kind = MutationKind::Add;
    const std::size_t pos = uniform_index(rng, p.length() + 1);
    const auto candidates = add_candidates(g, p, pos);
    if (candidates.empty()) return result;
    result.offspring = insert_after(p, pos, candidates[uniform_index(rng, candidates.size())]);
  } else {
    result.kind = MutationKind::Delete;
    if (p.length() < 2) return result;
    result.offspring = apply_delete(g, p, 1 + uniform_index(rng, p.length() - 1));
  }
  return result;
}

}  // namespace mpmo::sp
