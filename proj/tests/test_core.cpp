#include "mpmo/core.hpp"
#include "mpmo/pseudoboolean.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mpmo {
namespace {

constexpr auto kMax = OptimizationSense::Maximize;
constexpr auto kMin = OptimizationSense::Minimize;

ObjectiveVector random_vector(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<Objective> d(0, 3);
  std::vector<Objective> v(k);
  for (auto& x : v) x = d(rng);
  return ObjectiveVector(std::move(v));
}

Dominance mirror(Dominance d) {
  switch (d) {
    case Dominance::Dominates: return Dominance::DominatedBy;
    case Dominance::DominatedBy: return Dominance::Dominates;
    default: return d;
  }
}

TEST(Dominance, TwoObjectiveExamples) {
  EXPECT_EQ(dominance_compare({36, 44}, {35, 40}, kMax), Dominance::Dominates);
  EXPECT_EQ(dominance_compare({35, 40}, {36, 44}, kMax), Dominance::DominatedBy);
  EXPECT_EQ(dominance_compare({56, 30}, {60, 25}, kMax), Dominance::Incomparable);
  EXPECT_EQ(dominance_compare({4, 4}, {4, 4}, kMax), Dominance::Equal);
  EXPECT_EQ(dominance_compare({4, 4}, {4, 4}, kMin), Dominance::Equal);
}

TEST(Dominance, SenseFlipsTheOutcome) {
  EXPECT_EQ(dominance_compare({1, 2}, {2, 2}, kMin), Dominance::Dominates);
  EXPECT_EQ(dominance_compare({1, 2}, {2, 2}, kMax), Dominance::DominatedBy);
}

TEST(Dominance, WeakAndStrictForms) {
  EXPECT_TRUE(weakly_dominates({3, 3}, {3, 3}, kMax));
  EXPECT_FALSE(dominates({3, 3}, {3, 3}, kMax));
  EXPECT_TRUE(dominates({3, 4}, {3, 3}, kMax));
  EXPECT_FALSE(weakly_dominates({3, 2}, {2, 3}, kMax));
}

TEST(Dominance, LengthMismatchIsStructuralError) {
  EXPECT_THROW((void)dominance_compare({1, 2}, {1, 2, 3}, kMax), StructuralError);
  EXPECT_THROW((void)payoff_component({1}, {1, 2}, kMax), StructuralError);
}

TEST(Dominance, MirrorPropertyOnRandomVectors) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5000; ++t) {
    const std::size_t k = 1 + t % 6;
    const auto a = random_vector(rng, k);
    const auto b = random_vector(rng, k);
    for (auto sense : {kMin, kMax}) {
      EXPECT_EQ(dominance_compare(b, a, sense), mirror(dominance_compare(a, b, sense)));
    }
  }
}

TEST(Dominance, StrictPartialOrderOnRandomTriples) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20000; ++t) {
    const std::size_t k = 1 + t % 6;
    const auto a = random_vector(rng, k);
    const auto b = random_vector(rng, k);
    const auto c = random_vector(rng, k);
    EXPECT_FALSE(dominates(a, a, kMax));
    if (dominates(a, b, kMax)) EXPECT_FALSE(dominates(b, a, kMax));
    if (dominates(a, b, kMax) && dominates(b, c, kMax)) EXPECT_TRUE(dominates(a, c, kMax));
  }
}

TEST(Payoff, ComponentExamples) {
  EXPECT_EQ(payoff_component({0, 4}, {0, 5}, kMax), 1);
  EXPECT_EQ(payoff_component({4, 0}, {3, 1}, kMax), 0);
  EXPECT_EQ(payoff_component({2, 2}, {2, 2}, kMax), 0);
  EXPECT_EQ(payoff_component({2, 2}, {1, 2}, kMax), -1);
  EXPECT_EQ(payoff_component({2, 2}, {1, 2}, kMin), 1);
}

TEST(Payoff, ComponentIsAntisymmetric) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5000; ++t) {
    const std::size_t k = 1 + t % 6;
    const auto a = random_vector(rng, k);
    const auto b = random_vector(rng, k);
    EXPECT_EQ(payoff_component(a, b, kMax), -payoff_component(b, a, kMax));
  }
}

TEST(Payoff, MultipartyTotalsPerParty) {
  const MultiPartyObjectives from{{1, 1}, {1, 1}};
  const MultiPartyObjectives to{{2, 1}, {2, 0}};
  const auto p = multiparty_payoff(from, to, kMax);
  EXPECT_EQ(p.per_party, (std::vector<int>{1, 0}));
  EXPECT_EQ(p.total, 1);
  EXPECT_EQ(multiparty_payoff(from, from, kMax).total, 0);
  const MultiPartyObjectives single{{1, 1}};
  EXPECT_THROW((void)multiparty_payoff(from, single, kMax), StructuralError);
}

TEST(Payoff, BpaoazFlipClasses) {
  const PseudoBooleanProblem p(ProblemKind::Bpaoaz, 8);
  // First-half 0 -> 1: party 1 improves, party 2 is mixed.
  const auto x = BitString::from_string("00001111");
  auto up = multiparty_payoff(p.evaluate(x), p.evaluate(flip_bit(x, 0)), kMax);
  EXPECT_EQ(up.per_party, (std::vector<int>{1, 0}));
  EXPECT_EQ(up.total, 1);
  // Second-half 1 -> 0: party 1 is mixed, party 2 degrades.
  auto down = multiparty_payoff(p.evaluate(x), p.evaluate(flip_bit(x, 7)), kMax);
  EXPECT_EQ(down.per_party, (std::vector<int>{0, -1}));
  EXPECT_EQ(down.total, -1);
}

// Positive payoff exactly for 0 -> 1 flips, over every x of length n <= 10.
TEST(Payoff, BpaoazPositiveIffZeroBecomesOneExhaustive) {
  for (std::size_t n = 4; n <= 10; n += 2) {
    const PseudoBooleanProblem p(ProblemKind::Bpaoaz, n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      BitString x(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) x.flip(i);
      }
      const auto fx = p.evaluate(x);
      for (std::size_t i = 0; i < n; ++i) {
        const bool positive = multiparty_payoff(fx, p.evaluate(flip_bit(x, i)), kMax).total > 0;
        ASSERT_EQ(positive, !x[i]) << "n=" << n << " x=" << x.to_string() << " i=" << i;
      }
    }
  }
}

TEST(Objectives, FlattenAndFormat) {
  const MultiPartyObjectives f{{1, 2}, {3, 4}};
  EXPECT_EQ(f.flatten(), (ObjectiveVector{1, 2, 3, 4}));
  EXPECT_EQ(f.to_string(), "((1,2),(3,4))");
  EXPECT_EQ(f.objective_counts(), (std::vector<std::size_t>{2, 2}));
}

}  // namespace
}  // namespace mpmo
