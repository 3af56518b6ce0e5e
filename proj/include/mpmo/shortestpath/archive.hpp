#pragma once

// Box-index archive shared by the path optimizers. Members are compared only
// against members with the same endpoint. The bare source path is kept as a
// permanent mutation parent and never takes part in comparisons.

#include "mpmo/shortestpath/graph.hpp"

#include <cstdint>
#include <vector>

namespace mpmo::sp {

struct SpMember {
  Path path;
  MultiPartyObjectives objectives;
  std::uint64_t birth = 0;
};

/// Which objective vectors an archive compares.
struct ArchiveView {
  enum class Kind {
    /// One view per party. Accept if some party admits the offspring; remove
    /// incumbents whose boxes the offspring weakly dominates for every party.
    PerParty,
    /// All parties concatenated into a single vector.
    Joint,
    /// Party `party` alone.
    Party,
  };
  Kind kind = Kind::PerParty;
  std::size_t party = 0;

  static ArchiveView per_party() { return {Kind::PerParty, 0}; }
  static ArchiveView joint() { return {Kind::Joint, 0}; }
  static ArchiveView single(std::size_t m) { return {Kind::Party, m}; }

  [[nodiscard]] std::vector<ObjectiveVector> project(const MultiPartyObjectives& f) const;
};

class SpArchive {
 public:
  SpArchive(ArchiveView view, double r, const WeightedDigraph& g);

  /// Offers a path whose endpoint is not the source (minimization).
  /// Acceptance: for some view no same-endpoint incumbent strictly dominates
  /// the offspring in objectives or in box index. On acceptance, incumbents
  /// whose boxes the offspring weakly dominates in every view are removed.
  bool offer(Path path, MultiPartyObjectives objectives, std::uint64_t birth);

  /// Adds a member without any acceptance test.
  void insert(Path path, MultiPartyObjectives objectives, std::uint64_t birth);

  /// Member count including the source path.
  [[nodiscard]] std::size_t size() const noexcept { return count_ + 1; }
  /// Canonical order: the source path, then endpoints ascending, then insertion order.
  [[nodiscard]] const SpMember& member(std::size_t i) const;
  /// Every member except the source path, in canonical order.
  [[nodiscard]] std::vector<SpMember> members() const;
  [[nodiscard]] std::vector<SpMember> members_at(Vertex endpoint) const;

  [[nodiscard]] double base() const noexcept { return r_; }
  [[nodiscard]] const ArchiveView& view() const noexcept { return view_; }

 private:
  struct Stored {
    SpMember member;
    std::vector<ObjectiveVector> views;
    std::vector<ObjectiveVector> boxes;
  };

  Stored make(Path path, MultiPartyObjectives objectives, std::uint64_t birth) const;

  ArchiveView view_;
  double r_;
  SpMember root_;
  std::vector<std::vector<Stored>> buckets_;  // indexed by endpoint
  std::size_t count_ = 0;
};

/// min_m (n-1) (floor(log_r((n-1) w_m^max)) + 1)^(k_m - 1) + 1.
[[nodiscard]] std::uint64_t archive_size_bound(const WeightedDigraph& g, double r);

}  // namespace mpmo::sp
