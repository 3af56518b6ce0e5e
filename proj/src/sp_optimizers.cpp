#include "mpmo/shortestpath/optimizers.hpp"

#include "mpmo/shortestpath/mutation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace mpmo::sp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool zero_degree(const MultiPartyObjectives& f, const std::vector<MultiPartyObjectives>& front) {
  for (const auto& z : front) {
    for (std::size_t m = 0; m < f.party_count(); ++m) {
      if (!weakly_dominates(f.party(m), z.party(m), OptimizationSense::Minimize)) return false;
    }
  }
  return true;
}

struct Counters {
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t no_change = 0;
  std::optional<std::uint64_t> hit_time;
};

// One generation on `archive`: select, mutate, evaluate, offer.
// Returns true when the archive changed.
bool step(const WeightedDigraph& g, SpArchive& archive, std::size_t cap, std::uint64_t birth,
          Rng& rng, Counters& c) {
  ++c.generations;
  const Path parent = archive.member(uniform_index(rng, archive.size())).path;
  auto result = mutate_path(g, parent, rng);
  if (!result.offspring || result.offspring->endpoint() == kSource ||
      result.offspring->vertices().size() > cap) {
    ++c.no_change;
    return false;
  }
  auto f = eval_path(g, *result.offspring);
  ++c.evaluations;
  return archive.offer(std::move(*result.offspring), std::move(f), birth);
}

SpTrace run_single_archive(const WeightedDigraph& g, ArchiveView view, double r, std::size_t cap,
                           const SpRunOptions& options) {
  Rng rng(options.seed);
  std::vector<SpArchive> archives{SpArchive(view, r, g)};
  auto& archive = archives.front();
  Counters c;
  SpTrace trace;
  trace.seed = options.seed;

  while (c.generations < options.budget) {
    const bool changed = step(g, archive, cap, c.generations + 1, rng, c);
    if (changed && options.fronts && !c.hit_time) {
      if (covers_fronts(archive.members(), *options.fronts)) c.hit_time = c.evaluations;
    }
    if (options.observer) options.observer({c.generations, c.evaluations, archives});
    if (options.fronts && options.cadence > 0 && c.generations % options.cadence == 0) {
      const auto population = archive.members();
      trace.metrics.push_back(
          measure_population(c.generations, c.evaluations, population, *options.fronts));
    }
    if (options.stop_at_hit && c.hit_time) break;
  }

  trace.generations = c.generations;
  trace.evaluations = c.evaluations;
  trace.no_change = c.no_change;
  trace.hit_time = c.hit_time;
  trace.population = archive.members();
  return trace;
}

}  // namespace

std::vector<SpMember> Consensus::members() const {
  std::vector<SpMember> out;
  for (const auto& e : agreed) out.insert(out.end(), e.members.begin(), e.members.end());
  return out;
}

Consensus ultimatum_consensus(std::size_t vertex_count, std::span<const SpMember> party1,
                              std::span<const SpMember> party2, const ApproxParams& params) {
  params.validate();
  std::vector<double> levels;
  const double step = params.step();
  for (std::size_t j = 0;; ++j) {
    const double eps = params.eps2 + static_cast<double>(j) * step;
    if (eps > params.eps2_max * (1.0 + 1e-12)) break;
    levels.push_back(eps);
  }

  // Smallest accepted level per endpoint, with the proposals accepted there.
  std::map<Vertex, std::pair<std::size_t, std::vector<SpMember>>> best;
  for (const auto& proposal : party1) {
    const Vertex e = proposal.path.endpoint();
    for (std::size_t j = 0; j < levels.size(); ++j) {
      const double r = 1.0 + levels[j];
      const auto box = box_index(proposal.objectives.party(1), r);
      const bool accepted = std::ranges::any_of(party2, [&](const SpMember& z) {
        return z.path.endpoint() == e && box_index(z.objectives.party(1), r) == box;
      });
      if (!accepted) continue;
      auto it = best.find(e);
      if (it == best.end() || j < it->second.first) {
        best[e] = {j, {proposal}};
      } else if (j == it->second.first) {
        it->second.second.push_back(proposal);
      }
      break;
    }
  }

  Consensus out;
  for (Vertex v = kSource + 1; v <= vertex_count; ++v) {
    auto it = best.find(v);
    if (it == best.end()) {
      out.failed.push_back(v);
      continue;
    }
    const double eps = levels[it->second.first];
    EndpointConsensus agreed;
    agreed.endpoint = v;
    agreed.members = std::move(it->second.second);
    agreed.eps2_relaxed = eps;
    agreed.utility1 = 1.0;
    agreed.utility2 = it->second.first == 0
                          ? 1.0
                          : (params.eps2_max - eps) / (params.eps2_max - params.eps2);
    out.agreed.push_back(std::move(agreed));
  }
  return out;
}

SpTrace run_empmo_cons_sp(const WeightedDigraph& g, const ApproxParams& params,
                          const SpRunOptions& options) {
  params.validate();
  const double r = params.r > 0 ? params.r : path_box_base(g.vertex_count(), params.eps_min());
  return run_single_archive(g, ArchiveView::per_party(), r, params.vertex_cap(g.vertex_count()),
                            options);
}

SpTrace run_demo_sp(const WeightedDigraph& g, double r, const SpRunOptions& options,
                    std::size_t max_vertices) {
  const std::size_t cap = max_vertices > 0 ? max_vertices : 2 * g.vertex_count();
  return run_single_archive(g, ArchiveView::joint(), r, cap, options);
}

SimpleSpResult run_empmo_simple_sp(const WeightedDigraph& g, const ApproxParams& params,
                                   const SpRunOptions& options) {
  params.validate();
  if (g.party_count() != 2) throw StructuralError("the two-stage optimizer needs two parties");
  const std::size_t n = g.vertex_count();
  const std::size_t cap = params.vertex_cap(n);
  Rng rng(options.seed);
  std::vector<SpArchive> archives{SpArchive(ArchiveView::single(0), path_box_base(n, params.eps1), g),
                                  SpArchive(ArchiveView::single(1), path_box_base(n, params.eps2), g)};
  const auto consensus_now = [&] {
    const auto p1 = archives[0].members();
    const auto p2 = archives[1].members();
    return ultimatum_consensus(n, p1, p2, params);
  };

  Counters c;
  SimpleSpResult result;
  result.trace.seed = options.seed;
  std::uint64_t iteration = 0;
  while (c.generations < options.budget) {
    ++iteration;
    for (std::size_t m = 0; m < archives.size() && c.generations < options.budget; ++m) {
      const bool changed = step(g, archives[m], cap, iteration, rng, c);
      if (changed && options.fronts && !c.hit_time) {
        if (covers_fronts(consensus_now().members(), *options.fronts)) c.hit_time = c.evaluations;
      }
      if (options.observer) options.observer({c.generations, c.evaluations, archives});
      if (options.fronts && options.cadence > 0 && c.generations % options.cadence == 0) {
        const auto population = consensus_now().members();
        result.trace.metrics.push_back(
            measure_population(c.generations, c.evaluations, population, *options.fronts));
      }
    }
    if (options.stop_at_hit && c.hit_time) break;
  }

  result.party1 = archives[0].members();
  result.party2 = archives[1].members();
  result.consensus = ultimatum_consensus(n, result.party1, result.party2, params);
  result.trace.generations = c.generations;
  result.trace.evaluations = c.evaluations;
  result.trace.no_change = c.no_change;
  result.trace.hit_time = c.hit_time;
  result.trace.population = result.consensus.members();
  return result;
}

MetricSample measure_population(std::uint64_t generation, std::uint64_t evaluations,
                                std::span<const SpMember> population, const CommonFronts& fronts) {
  MetricSample s{generation, evaluations, 0.0, 0.0, 0.0};
  std::map<Vertex, double> best;
  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& member : population) {
    auto it = fronts.find(member.path.endpoint());
    if (it == fronts.end() || it->second.empty()) continue;
    const double eps = approximation_degree(member.objectives, it->second);
    s.max_eps = std::max(s.max_eps, eps);
    sum += eps;
    ++counted;
    auto [slot, inserted] = best.try_emplace(member.path.endpoint(), eps);
    if (!inserted) slot->second = std::min(slot->second, eps);
  }
  if (counted == 0) {
    s.max_eps = s.mean_eps_members = s.mean_eps_endpoints = kInf;
    return s;
  }
  s.mean_eps_members = sum / static_cast<double>(counted);
  double endpoint_sum = 0.0;
  std::size_t endpoints = 0;
  for (const auto& [v, front] : fronts) {
    if (front.empty()) continue;
    ++endpoints;
    auto it = best.find(v);
    if (it == best.end()) {
      endpoint_sum = kInf;
      break;
    }
    endpoint_sum += it->second;
  }
  s.mean_eps_endpoints = endpoints == 0 ? 0.0 : endpoint_sum / static_cast<double>(endpoints);
  return s;
}

bool covers_fronts(std::span<const SpMember> population, const CommonFronts& fronts) {
  for (const auto& [v, front] : fronts) {
    if (front.empty()) continue;
    const bool hit = std::ranges::any_of(population, [&](const SpMember& m) {
      return m.path.endpoint() == v && zero_degree(m.objectives, front);
    });
    if (!hit) return false;
  }
  return true;
}

}  // namespace mpmo::sp
