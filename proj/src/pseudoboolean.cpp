#include "mpmo/pseudoboolean.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <set>

namespace mpmo {

BitString BitString::from_string(std::string_view text) {
  BitString x(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      x.bits_[i] = 1;
    } else if (text[i] != '0') {
      throw ParameterError(fmt::format("invalid bit character '{}'", text[i]));
    }
  }
  return x;
}

std::size_t BitString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::size_t BitString::count_ones(std::size_t first, std::size_t last) const {
  if (first > last || last > bits_.size()) throw DomainError("bit range out of bounds");
  return static_cast<std::size_t>(
      std::count(bits_.begin() + static_cast<std::ptrdiff_t>(first),
                 bits_.begin() + static_cast<std::ptrdiff_t>(last), std::uint8_t{1}));
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw StructuralError("bit strings differ in length");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Aorz: return "aorz";
    case ProblemKind::Aofz: return "aofz";
    case ProblemKind::Bpaoaz: return "bpaoaz";
    case ProblemKind::Aoaz: return "aoaz";
  }
  return "?";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view name) {
  for (auto kind : {ProblemKind::Aorz, ProblemKind::Aofz, ProblemKind::Bpaoaz, ProblemKind::Aoaz}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

PseudoBooleanProblem::PseudoBooleanProblem(ProblemKind kind, std::size_t n) : kind_(kind), n_(n) {
  if (n < 4 || n % 2 != 0) {
    throw ParameterError(fmt::format("problem length must be even and >= 4, got {}", n));
  }
}

std::size_t PseudoBooleanProblem::party_count() const noexcept {
  return kind_ == ProblemKind::Bpaoaz ? 2 : 1;
}

std::vector<std::size_t> PseudoBooleanProblem::objective_counts() const {
  switch (kind_) {
    case ProblemKind::Bpaoaz: return {2, 2};
    case ProblemKind::Aoaz: return {4};
    default: return {2};
  }
}

MultiPartyObjectives PseudoBooleanProblem::evaluate(const BitString& x) const {
  if (x.size() != n_) {
    throw StructuralError(fmt::format("bit string has length {}, problem expects {}", x.size(), n_));
  }
  const std::size_t half = n_ / 2;
  const auto front_ones = static_cast<Objective>(x.count_ones(0, half));
  const auto rear_ones = static_cast<Objective>(x.count_ones(half, n_));
  const auto h = static_cast<Objective>(half);

  // AORZ: f11 = rear ones, f12 = front ones + rear zeros.
  const ObjectiveVector aorz{rear_ones, front_ones + (h - rear_ones)};
  // AOFZ: f21 = front zeros + rear ones, f22 = front ones.
  const ObjectiveVector aofz{(h - front_ones) + rear_ones, front_ones};

  switch (kind_) {
    case ProblemKind::Aorz: return MultiPartyObjectives{aorz};
    case ProblemKind::Aofz: return MultiPartyObjectives{aofz};
    case ProblemKind::Bpaoaz: return MultiPartyObjectives{aorz, aofz};
    case ProblemKind::Aoaz: return MultiPartyObjectives{ObjectiveVector{aorz[0], aorz[1], aofz[0], aofz[1]}};
  }
  return {};
}

MultiPartyObjectives eval_problem(const PseudoBooleanProblem& problem, const BitString& x) {
  return problem.evaluate(x);
}

std::vector<ObjectiveVector> analytic_front(const PseudoBooleanProblem& problem) {
  const auto n = static_cast<Objective>(problem.n());
  const auto h = n / 2;
  std::set<ObjectiveVector> front;
  // X_1* = 1^{n/2} a with j ones in a.
  const auto party1_optimum = [&](Objective j) {
    return std::vector<Objective>{j, n - j, j, h};
  };
  // X_2* = a 1^{n/2} with i ones in a.
  const auto party2_optimum = [&](Objective i) {
    return std::vector<Objective>{h, i, n - i, i};
  };
  for (Objective j = 0; j <= h; ++j) {
    const auto a = party1_optimum(j);
    const auto b = party2_optimum(j);
    switch (problem.kind()) {
      case ProblemKind::Aorz: front.insert(ObjectiveVector{a[0], a[1]}); break;
      case ProblemKind::Aofz: front.insert(ObjectiveVector{b[2], b[3]}); break;
      case ProblemKind::Bpaoaz:
      case ProblemKind::Aoaz:
        front.insert(ObjectiveVector(a));
        front.insert(ObjectiveVector(b));
        break;
    }
  }
  return {front.begin(), front.end()};
}

MultiPartyObjectives common_optimum(const PseudoBooleanProblem& problem) {
  return problem.evaluate(BitString::ones(problem.n()));
}

BitString flip_bit(const BitString& x, std::size_t i) {
  BitString y = x;
  y.flip(i);
  return y;
}

BitString one_bit_mutation(const BitString& x, Rng& rng) {
  return flip_bit(x, uniform_index(rng, x.size()));
}

BitString random_bitstring(std::size_t n, Rng& rng) {
  BitString x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (uniform_index(rng, 2) == 1) x.flip(i);
  }
  return x;
}

}  // namespace mpmo
