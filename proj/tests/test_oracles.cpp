#include "mpmo/instances.hpp"
#include "mpmo/oracles.hpp"
#include "mpmo/pseudoboolean_optimizers.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace mpmo::oracle {
namespace {

constexpr auto kMax = OptimizationSense::Maximize;

std::set<std::string> paths_of(const std::vector<sp::SpMember>& members) {
  std::set<std::string> out;
  for (const auto& m : members) out.insert(m.path.to_string());
  return out;
}

TEST(BruteForce, BpaoazSetSizes) {
  const auto cat = brute_force_pseudoboolean(PseudoBooleanProblem(ProblemKind::Bpaoaz, 8));
  EXPECT_EQ(cat.party_sets[0].size(), 16u);
  EXPECT_EQ(cat.party_sets[1].size(), 16u);
  EXPECT_EQ(cat.joint.size(), 31u);
  ASSERT_EQ(cat.common.size(), 1u);
  EXPECT_EQ(cat.common.front().x, BitString::ones(8));
  for (const auto& s : cat.party_sets[0]) EXPECT_EQ(s.x.count_ones(0, 4), 4u);
}

TEST(BruteForce, CommonIsIntersectionOfPartySets) {
  for (std::size_t n : {4, 6, 8, 10}) {
    const auto cat = brute_force_pseudoboolean(PseudoBooleanProblem(ProblemKind::Bpaoaz, n));
    std::set<BitString> first;
    for (const auto& s : cat.party_sets[0]) first.insert(s.x);
    std::set<BitString> both;
    for (const auto& s : cat.party_sets[1]) {
      if (first.contains(s.x)) both.insert(s.x);
    }
    std::set<BitString> common;
    for (const auto& s : cat.common) common.insert(s.x);
    EXPECT_EQ(common, both);
    for (std::size_t m = 0; m < 2; ++m) {
      for (const auto& a : cat.party_sets[m]) {
        for (const auto& b : cat.party_sets[m]) {
          EXPECT_FALSE(dominates(a.f.party(m), b.f.party(m), kMax));
        }
      }
    }
  }
}

TEST(BruteForce, RefusesLongStrings) {
  EXPECT_THROW((void)brute_force_pseudoboolean(PseudoBooleanProblem(ProblemKind::Bpaoaz, 18)),
               SizeLimitError);
}

TEST(PathCatalog, FixtureSets) {
  const auto cat = exact_path_catalog(instances::fixture_graph());
  const auto& e5 = cat.at(5);
  EXPECT_EQ(paths_of(e5.party1), (std::set<std::string>{"(1,3,5)", "(1,3,4,5)"}));
  EXPECT_EQ(paths_of(e5.party2), (std::set<std::string>{"(1,2,5)", "(1,3,4,5)"}));
  EXPECT_EQ(paths_of(e5.joint), (std::set<std::string>{"(1,2,5)", "(1,3,5)", "(1,3,4,5)"}));
  EXPECT_EQ(paths_of(e5.common), (std::set<std::string>{"(1,3,4,5)"}));
  EXPECT_EQ(paths_of(cat.at(2).common), (std::set<std::string>{"(1,2)"}));
  EXPECT_EQ(paths_of(cat.at(3).common), (std::set<std::string>{"(1,3)"}));
  EXPECT_EQ(paths_of(cat.at(4).common), (std::set<std::string>{"(1,3,4)"}));
  EXPECT_TRUE(prefix_closure_violations(cat).empty());
}

TEST(PathCatalog, PlantedCommonSetsAreNonemptyAndJoint) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    instances::PlantedSpec spec;
    spec.n = 9;
    spec.seed = seed;
    spec.jitter = 4;
    for (const auto& [v, e] : exact_path_catalog(instances::generate_planted_uav(spec).graph)) {
      const auto joint = paths_of(e.joint);
      for (const auto& p : paths_of(e.common)) EXPECT_TRUE(joint.contains(p));
      EXPECT_FALSE(e.common.empty()) << "endpoint " << v;
    }
  }
}

TEST(PathCatalog, RefusesLargeGraphs) {
  instances::PlantedSpec spec;
  spec.n = 13;
  EXPECT_THROW((void)exact_path_catalog(instances::generate_planted_uav(spec).graph),
               SizeLimitError);
}

TEST(Epsilon, FrozenFixtureValues) {
  const auto g = instances::fixture_graph();
  const auto fronts = common_fronts(exact_path_catalog(g));
  const auto& front = fronts.at(5);
  const auto eps = [&](std::string_view p) { return epsilon_of_solution(sp::eval_path(g, sp::parse_path(p)), front); };
  EXPECT_EQ(eps("(1,3,4,5)"), Rational(0));
  EXPECT_EQ(eps("(1,2,5)"), Rational(3, 5));
  EXPECT_EQ(eps("(1,3,5)"), Rational(2, 5));
  EXPECT_NEAR(epsilon_by_bisection(sp::eval_path(g, sp::parse_path("(1,2,5)")), front), 0.6, 1e-9);
  EXPECT_THROW((void)epsilon_of_solution(front.front(), {}), DomainError);
}

TEST(Epsilon, ClosedFormMatchesBisection) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<Objective> d(1, 60);
  std::uniform_int_distribution<int> size(1, 4);
  for (int t = 0; t < 1000; ++t) {
    const auto draw = [&] { return MultiPartyObjectives{{d(rng), d(rng)}, {d(rng), d(rng)}}; };
    const auto f = draw();
    std::vector<MultiPartyObjectives> set;
    for (int i = size(rng); i > 0; --i) set.push_back(draw());
    const double exact = epsilon_of_solution(f, set).convert_to<double>();
    ASSERT_NEAR(epsilon_by_bisection(f, set), exact, 1e-9);
    ASSERT_NEAR(sp::approximation_degree(f, set), exact, 1e-12);
    bool dominates_all = true;
    for (const auto& z : set) {
      for (std::size_t m = 0; m < 2; ++m) {
        dominates_all &= weakly_dominates(f.party(m), z.party(m), OptimizationSense::Minimize);
      }
    }
    ASSERT_EQ(exact == 0.0, dominates_all);
  }
}

TEST(Predictor, HarmonicSums) {
  EXPECT_EQ(payoff_runtime_predictor(4, 4), Rational(25, 3));
  EXPECT_EQ(payoff_runtime_predictor(7, 0), Rational(0));
  EXPECT_NEAR(payoff_runtime_predictor(50, 25).convert_to<double>(), 190.7, 0.15);
  EXPECT_NEAR(payoff_runtime_predictor(50, 50).convert_to<double>(), 224.96, 0.005);
  EXPECT_THROW((void)payoff_runtime_predictor(4, 5), DomainError);
}

TEST(Predictor, FixedStartMonteCarlo) {
  const PseudoBooleanProblem p(ProblemKind::Bpaoaz, 50);
  BitString start = BitString::ones(50);
  for (std::size_t i = 0; i < 50; i += 2) start.flip(i);
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RunOptions o;
    o.seed = seed;
    o.initial = start;
    sum += static_cast<double>(*run_empmo_payoff(p, o).hit_time - 1);
  }
  const double predicted = payoff_runtime_predictor(50, 25).convert_to<double>();
  EXPECT_NEAR(sum / 500.0, predicted, 0.1 * predicted);
}

TEST(Report, MentionsCommonSolution) {
  const PseudoBooleanProblem p(ProblemKind::Bpaoaz, 6);
  const auto text = catalog_report(p, brute_force_pseudoboolean(p));
  EXPECT_NE(text.find("111111"), std::string::npos);
  const auto paths = catalog_report(exact_path_catalog(instances::fixture_graph()));
  EXPECT_NE(paths.find("common (1,3,4,5)"), std::string::npos);
}

}  // namespace
}  // namespace mpmo::oracle
