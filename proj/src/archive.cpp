#include "mpmo/shortestpath/archive.hpp"

#include "mpmo/shortestpath/approx.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>

namespace mpmo::sp {

namespace {

constexpr auto kMin = OptimizationSense::Minimize;

}  // namespace

std::vector<ObjectiveVector> ArchiveView::project(const MultiPartyObjectives& f) const {
  switch (kind) {
    case Kind::PerParty: return {f.parties().begin(), f.parties().end()};
    case Kind::Joint: return {f.flatten()};
    case Kind::Party: return {f.party(party)};
  }
  return {};
}

SpArchive::SpArchive(ArchiveView view, double r, const WeightedDigraph& g)
    : view_(view),
      r_(r),
      root_{Path{}, MultiPartyObjectives::zeros(g.objective_counts()), 0},
      buckets_(g.vertex_count() + 1) {
  if (!(r > 1.0)) throw ParameterError(fmt::format("box base must exceed 1, got {}", r));
}

SpArchive::Stored SpArchive::make(Path path, MultiPartyObjectives objectives,
                                  std::uint64_t birth) const {
  if (path.endpoint() == kSource) throw DomainError("archive members must leave the source");
  if (path.endpoint() >= buckets_.size()) throw StructuralError("endpoint outside the graph");
  Stored s{{std::move(path), std::move(objectives), birth}, {}, {}};
  s.views = view_.project(s.member.objectives);
  s.boxes.reserve(s.views.size());
  for (const auto& v : s.views) s.boxes.push_back(box_index(v, r_));
  return s;
}

bool SpArchive::offer(Path path, MultiPartyObjectives objectives, std::uint64_t birth) {
  auto s = make(std::move(path), std::move(objectives), birth);
  auto& bucket = buckets_[s.member.path.endpoint()];

  bool accepted = false;
  for (std::size_t v = 0; v < s.views.size() && !accepted; ++v) {
    accepted = std::ranges::none_of(bucket, [&](const Stored& z) {
      return dominates(z.views[v], s.views[v], kMin) || dominates(z.boxes[v], s.boxes[v], kMin);
    });
  }
  if (!accepted) return false;

  count_ -= std::erase_if(bucket, [&](const Stored& z) {
    for (std::size_t v = 0; v < s.views.size(); ++v) {
      if (!weakly_dominates(s.boxes[v], z.boxes[v], kMin)) return false;
    }
    return true;
  });
  bucket.push_back(std::move(s));
  ++count_;
  return true;
}

void SpArchive::insert(Path path, MultiPartyObjectives objectives, std::uint64_t birth) {
  auto s = make(std::move(path), std::move(objectives), birth);
  buckets_[s.member.path.endpoint()].push_back(std::move(s));
  ++count_;
}

const SpMember& SpArchive::member(std::size_t i) const {
  if (i == 0) return root_;
  --i;
  for (const auto& bucket : buckets_) {
    if (i < bucket.size()) return bucket[i].member;
    i -= bucket.size();
  }
  throw DomainError("archive index out of range");
}

std::vector<SpMember> SpArchive::members() const {
  std::vector<SpMember> out;
  out.reserve(count_);
  for (const auto& bucket : buckets_) {
    for (const auto& s : bucket) out.push_back(s.member);
  }
  return out;
}

std::vector<SpMember> SpArchive::members_at(Vertex endpoint) const {
  std::vector<SpMember> out;
  if (endpoint < buckets_.size()) {
    for (const auto& s : buckets_[endpoint]) out.push_back(s.member);
  }
  return out;
}

std::uint64_t archive_size_bound(const WeightedDigraph& g, double r) {
  const auto n = static_cast<Objective>(g.vertex_count());
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t m = 0; m < g.party_count(); ++m) {
    const Objective span = std::max<Objective>((n - 1) * g.max_weight(m), 1);
    const auto boxes = static_cast<std::uint64_t>(floor_log(span, r) + 1);
    std::uint64_t per_endpoint = 1;
    for (std::size_t k = 1; k < g.objective_counts()[m]; ++k) per_endpoint *= boxes;
    best = std::min(best, static_cast<std::uint64_t>(n - 1) * per_endpoint);
  }
  return best + 1;
}

}  // namespace mpmo::sp
