// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "mpmo/harness.hpp"
#include "mpmo/instances.hpp"
#include "mpmo/oracles.hpp"
#include "mpmo/pseudoboolean_optimizers.hpp"
#include "mpmo/shortestpath/optimizers.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace mpmo;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and limits.
constexpr double kPredictorTolerance = 0.10;
constexpr double kOrderingGap = 1.20;
constexpr double kPhiRatio = 1.5;
constexpr double kRealTolerance = 1e-12;
constexpr std::uint64_t kConvergenceBudget = 1'000'000;
constexpr std::uint64_t kBoundBudget = 20'000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> check;
};

// Collects failures; detail keeps the first few.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
    ++failures_;
  }
  [[nodiscard]] Outcome result(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, fmt::format("{} failure(s): {}", failures_, notes_)};
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

std::set<std::string> path_strings(const std::vector<sp::SpMember>& members) {
  std::set<std::string> out;
  for (const auto& m : members) out.insert(m.path.to_string());
  return out;
}

// Every simple path from the source to `target`, found by depth-first search.
void simple_paths(const sp::WeightedDigraph& g, std::vector<sp::Vertex>& stack, sp::Vertex target,
                  std::set<std::string>& out) {
  if (stack.back() == target) {
    out.insert(sp::Path(stack).to_string());
    return;
  }
  for (const auto& e : g.successors(stack.back())) {
    if (std::ranges::find(stack, e.to) != stack.end()) continue;
    stack.push_back(e.to);
    simple_paths(g, stack, target, out);
    stack.pop_back();
  }
}

double mean_evaluations(harness::RunSpec spec, std::uint64_t seeds, Checker& check) {
  double sum = 0.0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    spec.seed = s;
    const auto r = harness::execute(spec);
    check.expect(r.error.empty() && r.hit_time.has_value(),
                 fmt::format("{} n={} seed={} did not hit {}", harness::to_string(spec.algorithm),
                             spec.n, s, r.error));
    sum += static_cast<double>(r.evaluations);
  }
  return sum / static_cast<double>(seeds);
}

harness::RunSpec bit_spec(harness::Algorithm a, std::string problem, std::size_t n,
                          std::optional<double> phi = std::nullopt) {
  harness::RunSpec spec;
  spec.algorithm = a;
  spec.problem = std::move(problem);
  spec.n = n;
  spec.phi = phi;
  return spec;
}

Outcome oracle_equivalence() {
  Checker check;
  for (std::size_t n : {4, 6, 8, 10, 12, 14}) {
    const PseudoBooleanProblem bp(ProblemKind::Bpaoaz, n);
    const auto cat = oracle::brute_force_pseudoboolean(bp);
    const std::size_t half = n / 2;
    for (std::size_t m = 0; m < 2; ++m) {
      const auto& set = cat.party_sets[m];
      std::set<ObjectiveVector> front;
      for (const auto& s : set) front.insert(s.f.party(m));
      check.expect(front.size() == half + 1,
                   fmt::format("n={} party {} front size {}", n, m + 1, front.size()));
      check.expect(set.size() == (std::size_t{1} << half),
                   fmt::format("n={} party {} set size {}", n, m + 1, set.size()));
    }
    const std::size_t aoaz_size = (std::size_t{1} << (half + 1)) - 1;
    check.expect(cat.joint.size() == aoaz_size,
                 fmt::format("n={} joint set size {}", n, cat.joint.size()));
    const auto single = oracle::brute_force_pseudoboolean(PseudoBooleanProblem(ProblemKind::Aoaz, n));
    check.expect(single.party_sets[0].size() == aoaz_size,
                 fmt::format("n={} AOAZ set size {}", n, single.party_sets[0].size()));
    check.expect(cat.common.size() == 1 && cat.common[0].x == BitString::ones(n),
                 fmt::format("n={} common set is not {{1^n}}", n));
  }
  return check.result("n in {4..14}: party fronts n/2+1, sets 2^(n/2), AOAZ 2^(n/2+1)-1, common {1^n}");
}

Outcome fixture_golden() {
  Checker check;
  const auto g = instances::fixture_graph();
  const std::map<std::string, MultiPartyObjectives> table1{
      {"(1,2,5)", {{10, 4}, {8, 5}}},   {"(1,2,3,5)", {{5, 8}, {8, 8}}},
      {"(1,2,3,4,5)", {{8, 7}, {6, 7}}}, {"(1,3,5)", {{4, 5}, {7, 8}}},
      {"(1,3,4,5)", {{7, 4}, {5, 7}}}};
  const std::map<std::string, MultiPartyObjectives> table2{
      {"(1,2)", {{1, 2}, {2, 4}}},     {"(1,2,3)", {{4, 5}, {4, 5}}},
      {"(1,3)", {{3, 2}, {3, 5}}},     {"(1,3,4)", {{5, 3}, {4, 6}}},
      {"(1,2,3,4)", {{6, 6}, {5, 6}}}};

  for (const auto* table : {&table1, &table2}) {
    for (const auto& [text, f] : *table) {
      const auto got = sp::eval_path(g, sp::parse_path(text));
      check.expect(got == f, fmt::format("{} evaluates to {}", text, got.to_string()));
    }
  }
  std::set<std::string> listed;
  for (const auto* table : {&table1, &table2}) {
    for (const auto& [text, f] : *table) listed.insert(text);
  }
  std::set<std::string> enumerated;
  for (sp::Vertex v = 2; v <= 5; ++v) {
    std::vector<sp::Vertex> stack{sp::kSource};
    simple_paths(g, stack, v, enumerated);
  }
  check.expect(enumerated == listed, "simple path set differs from the tables");

  const auto cat = oracle::exact_path_catalog(g);
  const auto& e5 = cat.at(5);
  check.expect(path_strings(e5.party1) == std::set<std::string>{"(1,3,5)", "(1,3,4,5)"},
               "endpoint 5 party 1 set");
  check.expect(path_strings(e5.party2) == std::set<std::string>{"(1,2,5)", "(1,3,4,5)"},
               "endpoint 5 party 2 set");
  check.expect(path_strings(e5.common) == std::set<std::string>{"(1,3,4,5)"},
               "endpoint 5 common set");
  const std::map<sp::Vertex, std::string> common{{2, "(1,2)"}, {3, "(1,3)"}, {4, "(1,3,4)"}};
  for (const auto& [v, text] : common) {
    check.expect(path_strings(cat.at(v).common) == std::set<std::string>{text},
                 fmt::format("endpoint {} common set", v));
  }
  return check.result("10 table rows exact; endpoint sets match");
}

Outcome payoff_predictor() {
  Checker check;
  constexpr std::size_t n = 50;
  constexpr std::uint64_t seeds = 500;
  auto spec = bit_spec(harness::Algorithm::EmpmoPayoff, "bpaoaz", n);
  spec.instance = "zeros";
  const double mean = mean_evaluations(spec, seeds, check);
  const double predicted = oracle::payoff_runtime_predictor(n, n).convert_to<double>();
  const double rel = std::abs(mean - predicted) / predicted;
  check.expect(rel <= kPredictorTolerance,
               fmt::format("mean {:.2f} vs {:.2f} off by {:.1f}%", mean, predicted, 100 * rel));
  return check.result(fmt::format("mean {:.2f} vs n*H_n {:.2f} ({:+.1f}%)", mean, predicted,
                                  100 * (mean - predicted) / predicted));
}

Outcome runtime_ordering() {
  Checker check;
  std::string summary;
  for (std::size_t n : {40, 80}) {
    const double semo = mean_evaluations(bit_spec(harness::Algorithm::Semo, "aoaz", n), 10, check);
    const double simple =
        mean_evaluations(bit_spec(harness::Algorithm::EmpmoSimple, "bpaoaz", n), 10, check);
    const double random =
        mean_evaluations(bit_spec(harness::Algorithm::EmpmoRandom, "bpaoaz", n, 0.5), 10, check);
    const double payoff =
        mean_evaluations(bit_spec(harness::Algorithm::EmpmoPayoff, "bpaoaz", n), 10, check);
    check.expect(semo >= kOrderingGap * simple, fmt::format("n={} SEMO {} vs simple {}", n, semo, simple));
    check.expect(simple >= kOrderingGap * random,
                 fmt::format("n={} simple {} vs random {}", n, simple, random));
    check.expect(random >= payoff, fmt::format("n={} random {} vs payoff {}", n, random, payoff));
    summary += fmt::format("{}n={}: {:.0f} > {:.0f} > {:.0f} >= {:.0f}", summary.empty() ? "" : "; ",
                           n, semo, simple, random, payoff);
  }
  return check.result(summary);
}

Outcome phi_u_shape() {
  Checker check;
  std::map<double, double> mean;
  for (double phi : {0.05, 0.5, 0.95}) {
    mean[phi] =
        mean_evaluations(bit_spec(harness::Algorithm::EmpmoRandom, "bpaoaz", 60, phi), 10, check);
  }
  check.expect(mean[0.05] > kPhiRatio * mean[0.5], "phi=0.05 not above 1.5x phi=0.5");
  check.expect(mean[0.95] > kPhiRatio * mean[0.5], "phi=0.95 not above 1.5x phi=0.5");
  return check.result(fmt::format("phi 0.05/0.5/0.95: {:.1f} / {:.1f} / {:.1f}", mean[0.05],
                                  mean[0.5], mean[0.95]));
}

Outcome archive_bound() {
  Checker check;
  std::size_t runs = 0;
  std::size_t largest = 0;
  for (std::size_t n : {10, 20, 30}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      instances::PlantedSpec ps;
      ps.n = n;
      ps.seed = seed;
      const auto inst = instances::generate_planted_uav(ps);
      sp::ApproxParams params;
      const double r = sp::path_box_base(n, params.eps_min());
      const auto bound = sp::archive_size_bound(inst.graph, r);
      std::size_t violations = 0;
      sp::SpRunOptions opts;
      opts.seed = seed;
      opts.budget = kBoundBudget;
      opts.cadence = 0;
      opts.observer = [&](const sp::SpSnapshot& s) {
        const auto size = s.archives.front().size();
        largest = std::max(largest, size);
        if (size > bound) ++violations;
      };
      (void)sp::run_empmo_cons_sp(inst.graph, params, opts);
      check.expect(violations == 0, fmt::format("n={} seed={}: {} generations over bound {}", n,
                                                seed, violations, bound));
      ++runs;
    }
  }
  return check.result(fmt::format("{} runs x {} generations, largest archive {}, zero violations",
                                  runs, kBoundBudget, largest));
}

Outcome prefix_closure() {
  Checker check;
  std::size_t instances_checked = 0;
  const auto report = [&](const sp::WeightedDigraph& g, const std::string& label) {
    for (const auto& v : oracle::prefix_closure_violations(oracle::exact_path_catalog(g))) {
      check.expect(false, label + ": " + v);
    }
    ++instances_checked;
  };
  report(instances::fixture_graph(), "fixture");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    instances::PlantedSpec ps;
    ps.n = 4 + seed % 6;  // 4..9
    ps.seed = seed;
    ps.jitter = 3;
    report(instances::generate_planted_uav(ps).graph, fmt::format("planted n={} seed={}", ps.n, seed));
  }
  return check.result(fmt::format("{} instances, zero violations", instances_checked));
}

// Smallest degree per endpoint against the exact common fronts.
std::map<sp::Vertex, double> endpoint_minimum(const std::vector<sp::SpMember>& population,
                                              const sp::CommonFronts& fronts) {
  std::map<sp::Vertex, double> best;
  for (const auto& [v, front] : fronts) best[v] = INFINITY;
  for (const auto& m : population) {
    auto it = fronts.find(m.path.endpoint());
    if (it == fronts.end()) continue;
    best[it->first] = std::min(best[it->first], sp::approximation_degree(m.objectives, it->second));
  }
  return best;
}

Outcome epsilon_convergence() {
  Checker check;
  std::string summary;
  instances::PlantedSpec ps;
  ps.n = 10;
  const std::vector<std::pair<std::string, sp::WeightedDigraph>> cases{
      {"fixture", instances::fixture_graph()},
      {"planted n=10", instances::generate_planted_uav(ps).graph}};
  for (const auto& [label, g] : cases) {
    const auto fronts = oracle::common_fronts(oracle::exact_path_catalog(g));
    sp::ApproxParams params;
    sp::SpRunOptions opts;
    opts.budget = kConvergenceBudget;
    opts.cadence = 0;

    const auto cons = sp::run_empmo_cons_sp(g, params, opts);
    for (const auto& [v, eps] : endpoint_minimum(cons.population, fronts)) {
      check.expect(eps == 0.0, fmt::format("{} cons endpoint {} minimum eps {}", label, v, eps));
    }

    const auto simple = sp::run_empmo_simple_sp(g, params, opts);
    check.expect(simple.consensus.failed.empty(),
                 fmt::format("{} simple-SP consensus failed at {} endpoint(s)", label,
                             simple.consensus.failed.size()));
    double relaxed = 0.0;
    for (const auto& e : simple.consensus.agreed) relaxed = std::max(relaxed, e.eps2_relaxed);
    check.expect(relaxed <= params.eps2_max + kRealTolerance,
                 fmt::format("{} simple-SP relaxed to {}", label, relaxed));

    const auto demo =
        sp::run_demo_sp(g, sp::path_box_base(g.vertex_count(), params.eps_min()), opts);
    const auto demo_metric = sp::measure_population(demo.generations, demo.evaluations,
                                                    demo.population, fronts);
    // On planted instances the common path dominates every alternative, so
    // the joint front is the common set and the baseline converges too.
    if (label == "fixture") {
      check.expect(demo_metric.max_eps > 0.0, "fixture DEMO max eps is 0");
    }
    summary += fmt::format("{}{}: simple-SP eps2'<={} DEMO max eps {:.2f}",
                           summary.empty() ? "" : "; ", label, relaxed, demo_metric.max_eps);
  }
  return check.result("cons per-endpoint min eps 0; " + summary);
}

Outcome lemma5_replay() {
  Checker check;
  const auto g = instances::fixture_graph();
  const auto member = [&](std::string_view text) {
    auto p = sp::parse_path(text);
    auto f = sp::eval_path(g, p);
    return sp::SpMember{std::move(p), std::move(f), 0};
  };
  sp::SpArchive a1(sp::ArchiveView::single(0), 2.0, g);
  sp::SpArchive a2(sp::ArchiveView::single(1), 2.0, g);
  for (const char* text : {"(1,3,5)", "(1,3,4,5)"}) {
    auto m = member(text);
    a1.insert(m.path, m.objectives, 0);
  }
  {
    auto m = member("(1,2,5)");
    a2.insert(m.path, m.objectives, 0);
  }
  const auto p1 = a1.members();
  const auto p2 = a2.members();

  for (const auto& m : p1) {
    check.expect(sp::box_index(m.objectives.party(0), 2.0) == ObjectiveVector{2, 2},
                 m.path.to_string() + " party-1 box is not (2,2)");
  }
  check.expect(sp::box_index(p2.front().objectives.party(1), 2.0) == ObjectiveVector{3, 2},
               "(1,2,5) party-2 box is not (3,2)");

  sp::ApproxParams strict;
  strict.eps2_max = 1.0;
  const auto none = sp::ultimatum_consensus(5, p1, p2, strict);
  check.expect(std::ranges::find(none.failed, sp::Vertex{5}) != none.failed.end(),
               "consensus at eps2=1 is not empty at endpoint 5");

  sp::ApproxParams relaxed;
  const auto some = sp::ultimatum_consensus(5, p1, p2, relaxed);
  const auto it = std::ranges::find_if(some.agreed, [](const auto& e) { return e.endpoint == 5; });
  check.expect(it != some.agreed.end(), "no consensus at eps2'=2");
  if (it != some.agreed.end()) {
    check.expect(std::abs(it->eps2_relaxed - 2.0) < kRealTolerance, "consensus not at eps2'=2");
    for (const auto& m : it->members) {
      check.expect(sp::box_index(m.objectives.party(1), 3.0) == ObjectiveVector{1, 1},
                   m.path.to_string() + " agreed box is not (1,1)");
    }
  }
  return check.result("empty at eps2=1; consensus at eps2'=2 in box (1,1)");
}

Outcome determinism() {
  Checker check;
  std::vector<harness::RunSpec> specs;
  for (auto a : {harness::Algorithm::Semo, harness::Algorithm::EmpmoSimple,
                 harness::Algorithm::EmpmoRandom, harness::Algorithm::EmpmoPayoff}) {
    for (std::uint64_t seed : {0, 7}) {
      auto spec = bit_spec(a, a == harness::Algorithm::Semo ? "aoaz" : "bpaoaz", 20);
      spec.seed = seed;
      specs.push_back(spec);
    }
  }
  for (auto a : {harness::Algorithm::EmpmoConsSp, harness::Algorithm::EmpmoSimpleSp,
                 harness::Algorithm::DemoSp}) {
    for (const char* inst : {"fixture", "planted:n=10:seed=4"}) {
      harness::RunSpec spec;
      spec.algorithm = a;
      spec.instance = inst;
      spec.seed = 3;
      spec.budget = 20'000;
      specs.push_back(spec);
    }
  }
  std::string csv = harness::summary_header() + "\n";
  for (const auto& s : specs) csv += harness::summary_row(harness::execute(s)) + "\n";

  const auto rows = harness::read_csv(csv);
  const auto lines = [&] {
    std::vector<std::string> out;
    std::size_t start = csv.find('\n') + 1;
    while (start < csv.size()) {
      const auto end = csv.find('\n', start);
      out.push_back(csv.substr(start, end - start));
      start = end + 1;
    }
    return out;
  }();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto again = harness::summary_row(harness::execute(harness::spec_from_summary(rows[i])));
    check.expect(again == lines[i], "row differs: " + lines[i]);
  }
  return check.result(fmt::format("{}/{} rows replayed byte-identically", rows.size(), specs.size()));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence (pseudo-Boolean)", 60, oracle_equivalence},
      {2, "fixture golden test", 1, fixture_golden},
      {3, "payoff harmonic-sum predictor", 60, payoff_predictor},
      {4, "runtime ordering", 600, runtime_ordering},
      {5, "phi U-shape", 600, phi_u_shape},
      {6, "archive size bound", 600, archive_bound},
      {7, "prefix closure", 300, prefix_closure},
      {8, "epsilon convergence", 900, epsilon_convergence},
      {9, "ultimatum counterexample replay", 1, lemma5_replay},
      {10, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, fmt::format("exception: {}", e.what())};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      out.pass = false;
      out.detail += fmt::format(" (over the {}s limit)", c.limit_seconds);
    }
    if (!out.pass) ++failed;
    fmt::print("{} criterion {:>2} {}: {} [{:.2f}s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
               out.detail, seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
