#include "mpmo/pseudoboolean_optimizers.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace mpmo {

namespace {

BitString initial_solution(const PseudoBooleanProblem& problem, const RunOptions& options,
                           Rng& rng) {
  if (options.initial) {
    if (options.initial->size() != problem.n()) {
      throw StructuralError("initial solution length does not match the problem");
    }
    return *options.initial;
  }
  return random_bitstring(problem.n(), rng);
}

// Tracks whether an archive holds every target objective vector.
class Coverage {
 public:
  explicit Coverage(std::vector<ObjectiveVector> targets)
      : targets_(targets.begin(), targets.end()) {}

  template <typename Project>
  bool covered(const std::vector<PopulationEntry>& archive, Project project) const {
    std::set<ObjectiveVector> seen;
    for (const auto& e : archive) {
      auto key = project(e);
      if (targets_.contains(key)) seen.insert(std::move(key));
    }
    return seen.size() == targets_.size();
  }

 private:
  std::set<ObjectiveVector> targets_;
};

struct Progress {
  std::uint64_t evaluations = 0;
  std::uint64_t iterations = 0;
  std::uint64_t offspring = 0;
  std::optional<std::uint64_t> hit_time;

  bool finished(const StopRule& stop) const {
    return (stop.stop_at_hit && hit_time) || offspring >= stop.budget;
  }
  void mark_hit() {
    if (!hit_time) hit_time = evaluations;
  }
};

void notify(const RunOptions& options, const Progress& progress,
            std::span<const std::vector<PopulationEntry>> archives) {
  if (options.observer) {
    options.observer(SearchSnapshot{progress.iterations, progress.evaluations, archives});
  }
}

RunTrace finish(Progress progress, std::vector<PopulationEntry> population,
                std::uint64_t seed) {
  RunTrace trace;
  trace.evaluations = progress.evaluations;
  trace.iterations = progress.iterations;
  trace.hit_time = progress.hit_time;
  trace.final_population = std::move(population);
  trace.seed = seed;
  return trace;
}

void require_parties(const PseudoBooleanProblem& problem) {
  if (problem.party_count() < 2) {
    throw StructuralError(fmt::format("{} has a single party; use SEMO", problem.name()));
  }
}

bool holds(const std::vector<PopulationEntry>& archive, const MultiPartyObjectives& target) {
  return std::ranges::any_of(archive, [&](const auto& e) { return e.objectives == target; });
}

}  // namespace

RunTrace run_semo(const PseudoBooleanProblem& problem, const RunOptions& options) {
  Rng rng(options.seed);
  const auto sense = problem.sense();
  const Coverage coverage(analytic_front(problem));
  const auto joint = [](const PopulationEntry& e) { return e.objectives.flatten(); };

  Progress progress;
  auto x0 = initial_solution(problem, options, rng);
  auto f0 = problem.evaluate(x0);
  std::vector<PopulationEntry> archive{{std::move(x0), std::move(f0), 0}};
  std::vector<ObjectiveVector> flat{joint(archive.front())};
  progress.evaluations = 1;
  if (coverage.covered(archive, joint)) progress.mark_hit();

  while (!progress.finished(options.stop)) {
    const auto& parent = archive[uniform_index(rng, archive.size())];
    auto y = one_bit_mutation(parent.solution, rng);
    auto fy = problem.evaluate(y);
    ++progress.evaluations;
    ++progress.iterations;
    ++progress.offspring;

    auto fy_flat = fy.flatten();
    const bool rejected = std::ranges::any_of(flat, [&](const ObjectiveVector& z) {
      const auto d = dominance_compare(z, fy_flat, sense);
      return d == Dominance::Dominates || d == Dominance::Equal;
    });
    if (!rejected) {
      std::size_t keep = 0;
      for (std::size_t i = 0; i < archive.size(); ++i) {
        if (!dominates(fy_flat, flat[i], sense)) {
          if (keep != i) {
            archive[keep] = std::move(archive[i]);
            flat[keep] = std::move(flat[i]);
          }
          ++keep;
        }
      }
      archive.resize(keep);
      flat.resize(keep);
      archive.push_back({std::move(y), std::move(fy), progress.iterations});
      flat.push_back(std::move(fy_flat));
      if (!progress.hit_time && coverage.covered(archive, joint)) progress.mark_hit();
    }
    notify(options, progress, std::span(&archive, 1));
  }
  return finish(progress, std::move(archive), options.seed);
}

RunTrace run_empmo_simple(const PseudoBooleanProblem& problem, const RunOptions& options) {
  require_parties(problem);
  Rng rng(options.seed);
  const auto sense = problem.sense();
  const std::size_t parties = problem.party_count();
  const auto target = common_optimum(problem);

  Progress progress;
  auto x0 = initial_solution(problem, options, rng);
  auto f0 = problem.evaluate(x0);
  // archives[0..M-1] are the party populations, archives[M] the common set.
  std::vector<std::vector<PopulationEntry>> archives(parties + 1);
  for (auto& a : archives) a.push_back({x0, f0, 0});
  progress.evaluations = parties;
  auto& common = archives[parties];
  if (holds(common, target)) progress.mark_hit();

  while (!progress.finished(options.stop)) {
    ++progress.iterations;
    for (std::size_t m = 0; m < parties && !progress.finished(options.stop); ++m) {
      auto& pm = archives[m];
      auto y = one_bit_mutation(pm[uniform_index(rng, pm.size())].solution, rng);
      auto fy = problem.evaluate(y);
      ++progress.evaluations;
      ++progress.offspring;

      const bool rejected = std::ranges::any_of(pm, [&](const PopulationEntry& z) {
        return weakly_dominates(z.objectives.party(m), fy.party(m), sense);
      });
      if (!rejected) {
        std::erase_if(pm, [&](const PopulationEntry& z) {
          return dominates(fy.party(m), z.objectives.party(m), sense);
        });
        pm.push_back({y, fy, progress.iterations});

        // The common set admits y only if no member weakly dominates it for any party.
        const bool blocked = std::ranges::any_of(common, [&](const PopulationEntry& z) {
          for (std::size_t q = 0; q < parties; ++q) {
            if (weakly_dominates(z.objectives.party(q), fy.party(q), sense)) return true;
          }
          return false;
        });
        if (!blocked) {
          std::erase_if(common, [&](const PopulationEntry& z) {
            for (std::size_t q = 0; q < parties; ++q) {
              if (dominates(fy.party(q), z.objectives.party(q), sense)) return true;
            }
            return false;
          });
          common.push_back({std::move(y), std::move(fy), progress.iterations});
          if (holds(common, target)) progress.mark_hit();
        }
      }
      notify(options, progress, archives);
    }
  }

  auto trace = finish(progress, std::move(archives[parties]), options.seed);
  archives.pop_back();
  trace.party_populations = std::move(archives);
  return trace;
}

RunTrace run_empmo_random(const PseudoBooleanProblem& problem, double phi,
                          const RunOptions& options) {
  if (!(phi > 0.0 && phi < 1.0)) {
    throw ParameterError(fmt::format("phi must lie in (0,1), got {}", phi));
  }
  if (problem.party_count() != 2) {
    throw StructuralError("EMPMO_random is defined for two parties");
  }
  Rng rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto sense = problem.sense();
  const auto target = common_optimum(problem);

  Progress progress;
  auto x0 = initial_solution(problem, options, rng);
  auto f0 = problem.evaluate(x0);
  std::vector<PopulationEntry> archive{{std::move(x0), std::move(f0), 0}};
  progress.evaluations = 1;
  if (holds(archive, target)) progress.mark_hit();

  while (!progress.finished(options.stop)) {
    const std::size_t parent = uniform_index(rng, archive.size());
    const std::size_t m = unit(rng) < phi ? 0 : 1;
    auto y = one_bit_mutation(archive[parent].solution, rng);
    auto fy = problem.evaluate(y);
    ++progress.evaluations;
    ++progress.iterations;
    ++progress.offspring;

    const bool rejected = std::ranges::any_of(archive, [&](const PopulationEntry& z) {
      return weakly_dominates(z.objectives.party(m), fy.party(m), sense);
    });
    if (!rejected) {
      std::erase_if(archive, [&](const PopulationEntry& z) {
        return dominates(fy.party(m), z.objectives.party(m), sense);
      });
      archive.push_back({std::move(y), std::move(fy), progress.iterations});
    }

    // Keep only entries no other entry weakly dominates under party m. Among
    // entries with equal F_m the earliest (lowest position) survives; the
    // archive is ordered by birth.
    std::vector<bool> drop(archive.size(), false);
    for (std::size_t i = 0; i < archive.size(); ++i) {
      const auto& fi = archive[i].objectives.party(m);
      for (std::size_t j = 0; j < archive.size() && !drop[i]; ++j) {
        if (i == j) continue;
        const auto d = dominance_compare(archive[j].objectives.party(m), fi, sense);
        if (d == Dominance::Dominates || (d == Dominance::Equal && j < i)) drop[i] = true;
      }
    }
    std::size_t keep = 0;
    for (std::size_t i = 0; i < archive.size(); ++i) {
      if (drop[i]) continue;
      if (keep != i) archive[keep] = std::move(archive[i]);
      ++keep;
    }
    archive.resize(keep);

    if (!progress.hit_time && holds(archive, target)) progress.mark_hit();
    notify(options, progress, std::span(&archive, 1));
  }
  return finish(progress, std::move(archive), options.seed);
}

RunTrace run_empmo_payoff(const PseudoBooleanProblem& problem, const RunOptions& options) {
  require_parties(problem);
  Rng rng(options.seed);
  const auto sense = problem.sense();
  const auto target = common_optimum(problem);

  Progress progress;
  auto x0 = initial_solution(problem, options, rng);
  auto f0 = problem.evaluate(x0);
  std::vector<PopulationEntry> archive{{std::move(x0), std::move(f0), 0}};
  progress.evaluations = 1;
  if (holds(archive, target)) progress.mark_hit();

  while (!progress.finished(options.stop)) {
    auto& current = archive[uniform_index(rng, archive.size())];
    auto y = one_bit_mutation(current.solution, rng);
    auto fy = problem.evaluate(y);
    ++progress.evaluations;
    ++progress.iterations;
    ++progress.offspring;

    if (multiparty_payoff(current.objectives, fy, sense).total > 0) {
      current = {std::move(y), std::move(fy), progress.iterations};
      if (current.objectives == target) progress.mark_hit();
    }
    notify(options, progress, std::span(&archive, 1));
  }
  return finish(progress, std::move(archive), options.seed);
}

std::string trace_csv_header() {
  return "run_id,algorithm,problem,n,phi,seed,evaluations,iterations,hit_time,wall_ms";
}

std::string trace_csv_row(std::string_view run_id, std::string_view algorithm,
                          const PseudoBooleanProblem& problem, std::optional<double> phi,
                          const RunTrace& trace, double wall_ms) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{:.3f}", run_id, algorithm, problem.name(),
                     problem.n(), phi ? fmt::format("{}", *phi) : std::string{}, trace.seed,
                     trace.evaluations, trace.iterations,
                     trace.hit_time ? fmt::format("{}", *trace.hit_time) : std::string{},
                     wall_ms);
}

}  // namespace mpmo
