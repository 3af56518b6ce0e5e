#pragma once

// Problem-agnostic objective types, dominance relations and the sign-valued
// multi-party payoff shared by every optimizer in the library.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpmo {

/// Raised when two operands do not share the same shape (vector length, party count).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for algorithm parameters outside their admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a value lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by oracles asked to enumerate an instance beyond their hard size bound.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

using Objective = std::int64_t;

/// Objective scores of one party. Entries are non-negative integers.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::vector<Objective> values);
  ObjectiveVector(std::initializer_list<Objective> values);

  static ObjectiveVector zeros(std::size_t k);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] Objective operator[](std::size_t k) const { return values_[k]; }
  [[nodiscard]] std::span<const Objective> values() const noexcept { return values_; }

  ObjectiveVector& operator+=(const ObjectiveVector& other);

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
  friend auto operator<=>(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  std::vector<Objective> values_;
};

/// One objective vector per party: F(x) = (F_1(x), ..., F_M(x)).
class MultiPartyObjectives {
 public:
  MultiPartyObjectives() = default;
  explicit MultiPartyObjectives(std::vector<ObjectiveVector> parties);
  MultiPartyObjectives(std::initializer_list<ObjectiveVector> parties);

  static MultiPartyObjectives zeros(std::span<const std::size_t> objective_counts);

  [[nodiscard]] std::size_t party_count() const noexcept { return parties_.size(); }
  [[nodiscard]] const ObjectiveVector& party(std::size_t m) const { return parties_.at(m); }
  [[nodiscard]] std::span<const ObjectiveVector> parties() const noexcept { return parties_; }
  [[nodiscard]] std::vector<std::size_t> objective_counts() const;

  /// Concatenation F_1 ++ F_2 ++ ... used when party structure is ignored.
  [[nodiscard]] ObjectiveVector flatten() const;

  MultiPartyObjectives& operator+=(const MultiPartyObjectives& other);

  /// "((a,b),(c,d))"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const MultiPartyObjectives&, const MultiPartyObjectives&) = default;
  friend auto operator<=>(const MultiPartyObjectives&, const MultiPartyObjectives&) = default;

 private:
  std::vector<ObjectiveVector> parties_;
};

enum class OptimizationSense { Minimize, Maximize };

enum class Dominance { Dominates, DominatedBy, Equal, Incomparable };

[[nodiscard]] std::string to_string(Dominance d);

/// Pareto comparison of `a` against `b` under `sense`.
[[nodiscard]] Dominance dominance_compare(const ObjectiveVector& a, const ObjectiveVector& b,
                                          OptimizationSense sense);

[[nodiscard]] bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b,
                                    OptimizationSense sense);

[[nodiscard]] bool dominates(const ObjectiveVector& a, const ObjectiveVector& b,
                             OptimizationSense sense);

/// +1 if moving `from` -> `to` weakly improves every objective and strictly
/// improves one, -1 for the mirrored degradation, 0 otherwise (identical
/// vectors included).
[[nodiscard]] int payoff_component(const ObjectiveVector& from, const ObjectiveVector& to,
                                   OptimizationSense sense);

struct PayoffValue {
  int total = 0;
  std::vector<int> per_party;
};

[[nodiscard]] PayoffValue multiparty_payoff(const MultiPartyObjectives& from,
                                            const MultiPartyObjectives& to,
                                            OptimizationSense sense);

}  // namespace mpmo
