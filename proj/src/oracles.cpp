#include "mpmo/oracles.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace mpmo::oracle {

namespace {

using sp::Path;
using sp::SpMember;
using sp::Vertex;

template <typename Key>
std::vector<PbSolution> pareto_members(const std::vector<PbSolution>& all, Key key,
                                       OptimizationSense sense) {
  // Reduce to distinct objective vectors first; the enumeration repeats them heavily.
  std::set<ObjectiveVector> distinct;
  for (const auto& s : all) distinct.insert(key(s.f));
  std::set<ObjectiveVector> front;
  for (const auto& a : distinct) {
    const bool dominated = std::ranges::any_of(
        distinct, [&](const ObjectiveVector& b) { return dominates(b, a, sense); });
    if (!dominated) front.insert(a);
  }
  std::vector<PbSolution> out;
  for (const auto& s : all) {
    if (front.contains(key(s.f))) out.push_back(s);
  }
  return out;
}

std::vector<PbSolution> intersect(const std::vector<PbSolution>& a,
                                  const std::vector<PbSolution>& b) {
  std::vector<PbSolution> out;
  for (const auto& s : a) {
    if (std::ranges::any_of(b, [&](const PbSolution& t) { return t.x == s.x; })) out.push_back(s);
  }
  return out;
}

using Projection = std::function<ObjectiveVector(const MultiPartyObjectives&)>;

// Martins-style search: every label is a walk from the source; a label is
// discarded as soon as another label at its vertex strictly dominates it.
// With weights >= 1 a walk through a cycle is strictly dominated by the walk
// with the cycle cut out, so the surviving labels are simple paths.
std::map<Vertex, std::vector<SpMember>> pareto_paths(const sp::WeightedDigraph& g,
                                                     const Projection& key) {
  struct Label {
    Path path;
    MultiPartyObjectives f;
    ObjectiveVector k;
    bool alive = true;
  };
  const auto min = OptimizationSense::Minimize;
  std::vector<std::vector<Label>> labels(g.vertex_count() + 1);
  std::deque<std::pair<Vertex, std::size_t>> queue;
  const auto zero = MultiPartyObjectives::zeros(g.objective_counts());
  labels[sp::kSource].push_back({Path{}, zero, key(zero), true});
  queue.emplace_back(sp::kSource, 0);

  while (!queue.empty()) {
    const auto [u, idx] = queue.front();
    queue.pop_front();
    if (!labels[u][idx].alive) continue;
    const Label current = labels[u][idx];
    for (const auto& e : g.successors(u)) {
      if (e.to == sp::kSource) continue;
      auto f = current.f;
      f += e.weight;
      auto k = key(f);
      auto& at = labels[e.to];
      const bool dominated = std::ranges::any_of(
          at, [&](const Label& l) { return l.alive && dominates(l.k, k, min); });
      if (dominated) continue;
      for (auto& l : at) {
        if (l.alive && dominates(k, l.k, min)) l.alive = false;
      }
      auto seq = current.path.vertices();
      seq.push_back(e.to);
      at.push_back({Path(std::move(seq)), std::move(f), std::move(k), true});
      queue.emplace_back(e.to, at.size() - 1);
    }
  }

  std::map<Vertex, std::vector<SpMember>> out;
  for (Vertex v = sp::kSource + 1; v <= g.vertex_count(); ++v) {
    auto& list = out[v];
    for (const auto& l : labels[v]) {
      if (l.alive) list.push_back({l.path, l.f, 0});
    }
    std::ranges::sort(list, {}, &SpMember::path);
  }
  return out;
}

bool contains_path(const std::vector<SpMember>& set, const Path& p) {
  return std::ranges::any_of(set, [&](const SpMember& m) { return m.path == p; });
}

std::string members_line(const std::vector<SpMember>& set) {
  std::string s;
  for (const auto& m : set) {
    if (!s.empty()) s += ' ';
    s += fmt::format("{}={}", m.path.to_string(), m.objectives.to_string());
  }
  return s;
}

}  // namespace

PseudoBooleanCatalog brute_force_pseudoboolean(const PseudoBooleanProblem& problem) {
  const std::size_t n = problem.n();
  if (n > kMaxBitStringLength) {
    throw SizeLimitError(
        fmt::format("brute force is limited to n <= {}, got {}", kMaxBitStringLength, n));
  }
  std::vector<PbSolution> all;
  all.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BitString x(n);
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> (n - 1 - i)) & 1U) x.flip(i);
    }
    auto f = problem.evaluate(x);
    all.push_back({std::move(x), std::move(f)});
  }

  PseudoBooleanCatalog catalog;
  const auto sense = problem.sense();
  for (std::size_t m = 0; m < problem.party_count(); ++m) {
    catalog.party_sets.push_back(pareto_members(
        all, [m](const MultiPartyObjectives& f) { return f.party(m); }, sense));
  }
  catalog.common = catalog.party_sets.front();
  for (std::size_t m = 1; m < catalog.party_sets.size(); ++m) {
    catalog.common = intersect(catalog.common, catalog.party_sets[m]);
  }
  catalog.joint =
      pareto_members(all, [](const MultiPartyObjectives& f) { return f.flatten(); }, sense);
  return catalog;
}

PathCatalog exact_path_catalog(const sp::WeightedDigraph& g) {
  if (g.vertex_count() > kMaxGraphVertices) {
    throw SizeLimitError(fmt::format("exact path catalog is limited to n <= {}, got {}",
                                     kMaxGraphVertices, g.vertex_count()));
  }
  if (g.party_count() != 2) throw StructuralError("exact path catalog expects two parties");

  auto p1 = pareto_paths(g, [](const MultiPartyObjectives& f) { return f.party(0); });
  auto p2 = pareto_paths(g, [](const MultiPartyObjectives& f) { return f.party(1); });
  auto joint = pareto_paths(g, [](const MultiPartyObjectives& f) { return f.flatten(); });

  PathCatalog catalog;
  for (Vertex v = sp::kSource + 1; v <= g.vertex_count(); ++v) {
    EndpointCatalog e{std::move(p1[v]), std::move(p2[v]), std::move(joint[v]), {}};
    for (const auto& m : e.party1) {
      if (contains_path(e.party2, m.path)) e.common.push_back(m);
    }
    catalog.emplace(v, std::move(e));
  }
  return catalog;
}

sp::CommonFronts common_fronts(const PathCatalog& catalog) {
  sp::CommonFronts fronts;
  for (const auto& [v, e] : catalog) {
    auto& front = fronts[v];
    for (const auto& m : e.common) front.push_back(m.objectives);
  }
  return fronts;
}

std::vector<std::string> prefix_closure_violations(const PathCatalog& catalog) {
  std::vector<std::string> out;
  for (const auto& [v, e] : catalog) {
    for (const auto& m : e.common) {
      auto seq = m.path.vertices();
      while (seq.size() > 2) {
        seq.pop_back();
        const Path prefix(seq);
        auto it = catalog.find(prefix.endpoint());
        if (it == catalog.end() || !contains_path(it->second.common, prefix)) {
          out.push_back(fmt::format("prefix {} of common path {} is not common",
                                    prefix.to_string(), m.path.to_string()));
        }
      }
    }
  }
  return out;
}

Rational epsilon_of_solution(const MultiPartyObjectives& f,
                             const std::vector<MultiPartyObjectives>& common) {
  if (common.empty()) throw DomainError("epsilon of a solution needs a nonempty common set");
  Rational worst = 1;
  for (const auto& z : common) {
    for (std::size_t m = 0; m < f.party_count(); ++m) {
      for (std::size_t k = 0; k < f.party(m).size(); ++k) {
        const Rational ratio(f.party(m)[k], z.party(m)[k]);
        if (ratio > worst) worst = ratio;
      }
    }
  }
  return worst - 1;
}

double epsilon_by_bisection(const MultiPartyObjectives& f,
                            const std::vector<MultiPartyObjectives>& common, double tolerance) {
  if (common.empty()) throw DomainError("epsilon of a solution needs a nonempty common set");
  const auto covers = [&](double eps) {
    for (const auto& z : common) {
      for (std::size_t m = 0; m < f.party_count(); ++m) {
        for (std::size_t k = 0; k < f.party(m).size(); ++k) {
          if (static_cast<double>(f.party(m)[k]) > (1.0 + eps) * static_cast<double>(z.party(m)[k]))
            return false;
        }
      }
    }
    return true;
  };
  if (covers(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!covers(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > tolerance * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (covers(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Rational payoff_runtime_predictor(std::size_t n, std::size_t zeros) {
  if (zeros > n) throw DomainError(fmt::format("zero count {} exceeds n = {}", zeros, n));
  Rational total = 0;
  for (std::size_t i = 1; i <= zeros; ++i) {
    total += Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(i));
  }
  return total;
}

std::string catalog_report(const PseudoBooleanProblem& problem,
                           const PseudoBooleanCatalog& catalog) {
  const auto line = [](const std::vector<PbSolution>& set) {
    std::string s;
    for (const auto& sol : set) {
      if (!s.empty()) s += ' ';
      s += sol.x.to_string();
    }
    return s;
  };
  const auto front_size = [](const std::vector<PbSolution>& set, auto key) {
    std::set<ObjectiveVector> f;
    for (const auto& sol : set) f.insert(key(sol.f));
    return f.size();
  };
  std::string out = fmt::format("problem {} n={}\n", problem.name(), problem.n());
  for (std::size_t m = 0; m < catalog.party_sets.size(); ++m) {
    const auto& set = catalog.party_sets[m];
    out += fmt::format("party {} pareto_set_size={} front_size={}\n", m + 1, set.size(),
                       front_size(set, [m](const MultiPartyObjectives& f) { return f.party(m); }));
  }
  out += fmt::format("joint pareto_set_size={} front_size={}\n", catalog.joint.size(),
                     front_size(catalog.joint,
                                [](const MultiPartyObjectives& f) { return f.flatten(); }));
  out += fmt::format("common size={} members={}\n", catalog.common.size(), line(catalog.common));
  return out;
}

std::string catalog_report(const PathCatalog& catalog) {
  std::string out;
  for (const auto& [v, e] : catalog) {
    out += fmt::format("endpoint {}\n", v);
    out += fmt::format("  party1 {}\n", members_line(e.party1));
    out += fmt::format("  party2 {}\n", members_line(e.party2));
    out += fmt::format("  joint {}\n", members_line(e.joint));
    out += fmt::format("  common {}\n", members_line(e.common));
  }
  return out;
}

}  // namespace mpmo::oracle
