#include "mpmo/core.hpp"
#include "mpmo/random.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>

namespace mpmo {

namespace {

void check_entries(const std::vector<Objective>& values) {
  if (std::ranges::any_of(values, [](Objective v) { return v < 0; })) {
    throw DomainError("objective values must be non-negative");
  }
}

void require_same_length(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw StructuralError(
        fmt::format("objective vectors differ in length ({} vs {})", a.size(), b.size()));
  }
}

// Orient a pairwise difference so that positive always means "a is better".
Objective oriented(Objective a, Objective b, OptimizationSense sense) {
  return sense == OptimizationSense::Maximize ? a - b : b - a;
}

}  // namespace

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw DomainError("uniform_index over an empty range");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(rng);
}

ObjectiveVector::ObjectiveVector(std::vector<Objective> values) : values_(std::move(values)) {
  check_entries(values_);
}

ObjectiveVector::ObjectiveVector(std::initializer_list<Objective> values) : values_(values) {
  check_entries(values_);
}

ObjectiveVector ObjectiveVector::zeros(std::size_t k) {
  return ObjectiveVector(std::vector<Objective>(k, 0));
}

ObjectiveVector& ObjectiveVector::operator+=(const ObjectiveVector& other) {
  require_same_length(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

std::string ObjectiveVector::to_string() const {
  return fmt::format("({})", fmt::join(values_, ","));
}

MultiPartyObjectives::MultiPartyObjectives(std::vector<ObjectiveVector> parties)
    : parties_(std::move(parties)) {}

MultiPartyObjectives::MultiPartyObjectives(std::initializer_list<ObjectiveVector> parties)
    : parties_(parties) {}

MultiPartyObjectives MultiPartyObjectives::zeros(std::span<const std::size_t> objective_counts) {
  std::vector<ObjectiveVector> parties;
  parties.reserve(objective_counts.size());
  for (auto k : objective_counts) parties.push_back(ObjectiveVector::zeros(k));
  return MultiPartyObjectives(std::move(parties));
}

std::vector<std::size_t> MultiPartyObjectives::objective_counts() const {
  std::vector<std::size_t> counts;
  counts.reserve(parties_.size());
  for (const auto& p : parties_) counts.push_back(p.size());
  return counts;
}

ObjectiveVector MultiPartyObjectives::flatten() const {
  std::vector<Objective> joint;
  for (const auto& p : parties_) joint.insert(joint.end(), p.values().begin(), p.values().end());
  return ObjectiveVector(std::move(joint));
}

MultiPartyObjectives& MultiPartyObjectives::operator+=(const MultiPartyObjectives& other) {
  if (party_count() != other.party_count()) {
    throw StructuralError("party counts differ");
  }
  for (std::size_t m = 0; m < parties_.size(); ++m) parties_[m] += other.parties_[m];
  return *this;
}

std::string MultiPartyObjectives::to_string() const {
  std::vector<std::string> parts;
  parts.reserve(parties_.size());
  for (const auto& p : parties_) parts.push_back(p.to_string());
  return fmt::format("({})", fmt::join(parts, ","));
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::Dominates: return "Dominates";
    case Dominance::DominatedBy: return "DominatedBy";
    case Dominance::Equal: return "Equal";
    case Dominance::Incomparable: return "Incomparable";
  }
  return "?";
}

Dominance dominance_compare(const ObjectiveVector& a, const ObjectiveVector& b,
                            OptimizationSense sense) {
  require_same_length(a, b);
  bool a_better = false;
  bool b_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto d = oriented(a[k], b[k], sense);
    if (d > 0) a_better = true;
    if (d < 0) b_better = true;
  }
  if (a_better && b_better) return Dominance::Incomparable;
  if (a_better) return Dominance::Dominates;
  if (b_better) return Dominance::DominatedBy;
  return Dominance::Equal;
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b, OptimizationSense sense) {
  const auto d = dominance_compare(a, b, sense);
  return d == Dominance::Dominates || d == Dominance::Equal;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, OptimizationSense sense) {
  return dominance_compare(a, b, sense) == Dominance::Dominates;
}

int payoff_component(const ObjectiveVector& from, const ObjectiveVector& to,
                     OptimizationSense sense) {
  switch (dominance_compare(to, from, sense)) {
    case Dominance::Dominates: return 1;
    case Dominance::DominatedBy: return -1;
    default: return 0;
  }
}

PayoffValue multiparty_payoff(const MultiPartyObjectives& from, const MultiPartyObjectives& to,
                              OptimizationSense sense) {
  if (from.party_count() != to.party_count()) {
    throw StructuralError(fmt::format("party counts differ ({} vs {})", from.party_count(),
                                      to.party_count()));
  }
  PayoffValue value;
  value.per_party.reserve(from.party_count());
  for (std::size_t m = 0; m < from.party_count(); ++m) {
    const int pm = payoff_component(from.party(m), to.party(m), sense);
    value.per_party.push_back(pm);
    value.total += pm;
  }
  return value;
}

}  // namespace mpmo
