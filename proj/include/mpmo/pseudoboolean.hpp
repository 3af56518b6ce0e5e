#pragma once

// The AORZ / AOFZ / BPAOAZ / AOAZ benchmark family over {0,1}^n.

#include "mpmo/core.hpp"
#include "mpmo/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpmo {

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

  /// Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view text);
  static BitString ones(std::size_t n) { return BitString(n, true); }
  static BitString zeros(std::size_t n) { return BitString(n, false); }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void flip(std::size_t i) { bits_.at(i) ^= 1; }

  [[nodiscard]] std::size_t count_ones() const noexcept;
  /// Number of ones among positions [first, last).
  [[nodiscard]] std::size_t count_ones(std::size_t first, std::size_t last) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

[[nodiscard]] std::size_t hamming_distance(const BitString& a, const BitString& b);

enum class ProblemKind { Aorz, Aofz, Bpaoaz, Aoaz };

[[nodiscard]] std::string_view to_string(ProblemKind kind);
[[nodiscard]] std::optional<ProblemKind> parse_problem_kind(std::string_view name);

/// A member of the pseudo-Boolean family at a fixed even length n >= 4.
/// BPAOAZ has two parties with two objectives each; AOAZ is the same four
/// functions as a single party; AORZ and AOFZ are the halves on their own.
class PseudoBooleanProblem {
 public:
  PseudoBooleanProblem(ProblemKind kind, std::size_t n);

  [[nodiscard]] ProblemKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] OptimizationSense sense() const noexcept { return OptimizationSense::Maximize; }
  [[nodiscard]] std::size_t party_count() const noexcept;
  [[nodiscard]] std::vector<std::size_t> objective_counts() const;
  [[nodiscard]] std::string_view name() const noexcept { return to_string(kind_); }

  [[nodiscard]] MultiPartyObjectives evaluate(const BitString& x) const;

 private:
  ProblemKind kind_;
  std::size_t n_;
};

[[nodiscard]] MultiPartyObjectives eval_problem(const PseudoBooleanProblem& problem,
                                                const BitString& x);

/// Pareto front of the problem with party structure ignored (flattened
/// objective vectors), from the closed-form description of the optimal sets.
[[nodiscard]] std::vector<ObjectiveVector> analytic_front(const PseudoBooleanProblem& problem);

/// Objectives of the unique common Pareto optimum 1^n.
[[nodiscard]] MultiPartyObjectives common_optimum(const PseudoBooleanProblem& problem);

[[nodiscard]] BitString flip_bit(const BitString& x, std::size_t i);
[[nodiscard]] BitString one_bit_mutation(const BitString& x, Rng& rng);
[[nodiscard]] BitString random_bitstring(std::size_t n, Rng& rng);

}  // namespace mpmo
