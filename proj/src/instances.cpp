#include "mpmo/instances.hpp"

#include "mpmo/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <optional>
#include <charconv>
#include <cmath>
#include <deque>
#include <random>
#include <set>

namespace mpmo::instances {

namespace {

using sp::Vertex;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t to_int(std::string_view token, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, fmt::format("'{}' is not an integer", token));
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

MultiPartyObjectives weights(std::initializer_list<Objective> p1,
                             std::initializer_list<Objective> p2) {
  return MultiPartyObjectives{ObjectiveVector(p1), ObjectiveVector(p2)};
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}", line, message) : message),
      line_(line) {}

sp::WeightedDigraph fixture_graph() {
  sp::WeightedDigraph g(5, {2, 2});
  g.add_edge(1, 2, weights({1, 2}, {2, 4}));
  g.add_edge(1, 3, weights({3, 2}, {3, 5}));
  g.add_edge(2, 3, weights({3, 3}, {2, 1}));
  g.add_edge(2, 5, weights({9, 2}, {6, 1}));
  g.add_edge(3, 4, weights({2, 1}, {1, 1}));
  g.add_edge(3, 5, weights({1, 3}, {4, 3}));
  g.add_edge(4, 5, weights({2, 1}, {1, 1}));
  return g;
}

std::string PlantedSpec::describe() const {
  return fmt::format(
      "kind=planted n={} seed={} neighbors={} hover_points={} density_blobs={} jitter={}", n, seed,
      neighbors, hover_points, density_blobs, jitter);
}

PlantedSpec parse_planted_spec(std::string_view text) {
  PlantedSpec spec;
  std::string normalized(text);
  std::ranges::replace(normalized, ':', ' ');
  for (auto token : split_ws(normalized)) {
    if (token == "planted" || token == "kind=planted") continue;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError(fmt::format("planted setting '{}' lacks '='", token));
    }
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    const auto as_int = [&] {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || ptr != value.data() + value.size() || v < 0) {
        throw ParameterError(fmt::format("planted setting {} has invalid value '{}'", key, value));
      }
      return v;
    };
    if (key == "n") {
      spec.n = static_cast<std::size_t>(as_int());
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(as_int());
    } else if (key == "neighbors") {
      spec.neighbors = static_cast<std::size_t>(as_int());
    } else if (key == "hover_points") {
      spec.hover_points = static_cast<std::size_t>(as_int());
    } else if (key == "density_blobs") {
      spec.density_blobs = static_cast<std::size_t>(as_int());
    } else if (key == "jitter") {
      spec.jitter = as_int();
    } else {
      throw ParameterError(fmt::format("unknown planted setting '{}'", key));
    }
  }
  return spec;
}

PlantedInstance generate_planted_uav(const PlantedSpec& spec) {
  if (spec.n < 2) throw ParameterError("planted instances need at least two vertices");
  if (spec.neighbors < 1) throw ParameterError("planted instances need at least one neighbour");
  if (spec.jitter < 0) throw ParameterError("jitter amplitude must be non-negative");
  const std::size_t n = spec.n;
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t attempt = 0; attempt < spec.max_retries; ++attempt) {
    std::vector<Point> points(n + 1);
    for (std::size_t v = 1; v <= n; ++v) points[v] = {unit(rng), unit(rng)};
    std::vector<Point> hover(std::max<std::size_t>(spec.hover_points, 1));
    for (auto& h : hover) h = {unit(rng), unit(rng)};
    struct Blob {
      Point centre;
      double amplitude;
    };
    std::vector<Blob> blobs(spec.density_blobs);
    for (auto& b : blobs) b = {{unit(rng), unit(rng)}, 0.5 + unit(rng)};
    const auto density = [&](Point p) {
      double d = 0.0;
      for (const auto& b : blobs) {
        const double r = distance(p, b.centre);
        d += b.amplitude * std::exp(-r * r / (2 * 0.2 * 0.2));
      }
      return d;
    };

    std::set<std::pair<Vertex, Vertex>> arcs;
    for (Vertex u = 1; u <= n; ++u) {
      std::vector<Vertex> others;
      for (Vertex v = 1; v <= n; ++v) {
        if (v != u) others.push_back(v);
      }
      std::ranges::stable_sort(others, [&](Vertex a, Vertex b) {
        return distance(points[u], points[a]) < distance(points[u], points[b]);
      });
      for (std::size_t j = 0; j < std::min(spec.neighbors, others.size()); ++j) {
        arcs.emplace(u, others[j]);
        arcs.emplace(others[j], u);
      }
    }

    std::vector<std::vector<Vertex>> adjacency(n + 1);
    for (const auto& [u, v] : arcs) adjacency[u].push_back(v);
    std::vector<Vertex> parent(n + 1, 0);
    std::vector<bool> seen(n + 1, false);
    std::deque<Vertex> queue{sp::kSource};
    seen[sp::kSource] = true;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex v : adjacency[u]) {
        if (!seen[v]) {
          seen[v] = true;
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (std::ranges::count(seen.begin() + 1, seen.end(), false) > 0) continue;

    // Raw objective values per arc: path length, distance to the mission's
    // hover points, ground fatality risk and an ecological cost.
    std::lognormal_distribution<double> eco(spec.eco_log_mean, spec.eco_log_sigma);
    std::vector<std::array<double, 4>> raw;
    raw.reserve(arcs.size());
    for (const auto& [u, v] : arcs) {
      const double length = distance(points[u], points[v]);
      const Point mid{(points[u].x + points[v].x) / 2, (points[u].y + points[v].y) / 2};
      double nearest = 1e9;
      for (const auto& h : hover) nearest = std::min(nearest, distance(points[v], h));
      const double fatal = spec.crash_probability * spec.shelter_factor * density(mid) *
                           spec.fatality_factor * length;
      raw.push_back({length, length * (1.0 + nearest), fatal, eco(rng) * length});
    }
    std::array<double, 4> peak{};
    for (const auto& r : raw) {
      for (std::size_t k = 0; k < 4; ++k) peak[k] = std::max(peak[k], r[k]);
    }

    sp::WeightedDigraph g(n, {2, 2});
    std::size_t i = 0;
    for (const auto& [u, v] : arcs) {
      std::array<Objective, 4> w{1, 1, 1, 1};
      if (parent[v] != u) {
        for (std::size_t k = 0; k < 4; ++k) {
          const double scaled = peak[k] > 0 ? 2.0 + 8.0 * raw[i][k] / peak[k] : 2.0;
          w[k] = std::max<Objective>(2, static_cast<Objective>(std::ceil(scaled)));
          if (spec.jitter > 0) {
            w[k] += std::uniform_int_distribution<Objective>(0, spec.jitter)(rng);
          }
        }
      }
      g.add_edge(u, v, weights({w[0], w[1]}, {w[2], w[3]}));
      ++i;
    }
    if (!g.unreachable_vertices().empty()) continue;

    PlantedInstance inst{std::move(g), {}, {}, spec};
    for (Vertex v = sp::kSource + 1; v <= n; ++v) {
      std::vector<Vertex> seq{v};
      while (seq.back() != sp::kSource) seq.push_back(parent[seq.back()]);
      std::ranges::reverse(seq);
      sp::Path path(std::move(seq));
      inst.fronts[v] = {sp::eval_path(inst.graph, path)};
      inst.tree_paths.emplace(v, std::move(path));
    }
    return inst;
  }
  throw StructuralError(fmt::format("no connected planted instance after {} attempts ({})",
                                    spec.max_retries, spec.describe()));
}

std::string write_instance(const sp::WeightedDigraph& g, std::string_view comment) {
  std::string out = "bpmosp v1\n";
  while (!comment.empty()) {
    const auto nl = comment.find('\n');
    out += fmt::format("# {}\n", comment.substr(0, nl));
    if (nl == std::string_view::npos) break;
    comment.remove_prefix(nl + 1);
  }
  out += fmt::format("{} {}", g.vertex_count(), g.party_count());
  for (auto k : g.objective_counts()) out += fmt::format(" {}", k);
  out += '\n';
  for (Vertex u = 1; u <= g.vertex_count(); ++u) {
    for (const auto& e : g.successors(u)) {
      out += fmt::format("{} {}", u, e.to);
      for (std::size_t m = 0; m < e.weight.party_count(); ++m) {
        if (m > 0) out += " |";
        for (auto w : e.weight.party(m).values()) out += fmt::format(" {}", w);
      }
      out += '\n';
    }
  }
  return out;
}

sp::WeightedDigraph parse_instance(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty() || trim(lines[0]) != "bpmosp v1") {
    throw ParseError(1, "expected version line 'bpmosp v1'");
  }

  std::optional<sp::WeightedDigraph> g;
  std::size_t header_line = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t no = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = split_ws(line);

    if (!g) {
      if (tokens.size() < 2) throw ParseError(no, "expected header 'n M k_1 ... k_M'");
      const auto n = to_int(tokens[0], no);
      const auto parties = to_int(tokens[1], no);
      if (n < 1) throw ParseError(no, "vertex count must be positive");
      if (parties != 2) throw ParseError(no, fmt::format("expected 2 parties, got {}", parties));
      if (tokens.size() != 2 + static_cast<std::size_t>(parties)) {
        throw ParseError(no, "header needs one objective count per party");
      }
      std::vector<std::size_t> counts;
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        const auto k = to_int(tokens[t], no);
        if (k < 1) throw ParseError(no, "objective counts must be positive");
        counts.push_back(static_cast<std::size_t>(k));
      }
      g.emplace(static_cast<std::size_t>(n), counts);
      header_line = no;
      continue;
    }

    const auto& counts = g->objective_counts();
    std::size_t expected = 2 + counts.size() - 1;
    for (auto k : counts) expected += k;
    if (tokens.size() != expected) {
      throw ParseError(no, fmt::format("edge line needs {} tokens, got {}", expected, tokens.size()));
    }
    const auto u = to_int(tokens[0], no);
    const auto v = to_int(tokens[1], no);
    if (u < 1 || v < 1 || u > static_cast<std::int64_t>(g->vertex_count()) ||
        v > static_cast<std::int64_t>(g->vertex_count())) {
      throw ParseError(no, fmt::format("edge ({},{}) leaves the vertex range", u, v));
    }
    std::vector<ObjectiveVector> parties;
    std::size_t t = 2;
    for (std::size_t m = 0; m < counts.size(); ++m) {
      if (m > 0) {
        if (tokens[t] != "|") throw ParseError(no, "expected '|' between parties");
        ++t;
      }
      std::vector<Objective> w;
      for (std::size_t k = 0; k < counts[m]; ++k, ++t) {
        const auto value = to_int(tokens[t], no);
        if (value <= 0) throw ParseError(no, fmt::format("weight {} is not positive", value));
        w.push_back(value);
      }
      parties.emplace_back(std::move(w));
    }
    try {
      g->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v),
                  MultiPartyObjectives(std::move(parties)));
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
  }

  if (!g) throw ParseError(0, "missing header line 'n M k_1 ... k_M'");
  const auto missing = g->unreachable_vertices();
  if (!missing.empty()) {
    std::string list;
    for (auto v : missing) list += fmt::format("{}{}", list.empty() ? "" : ",", v);
    throw ParseError(header_line, fmt::format("vertices unreachable from the source: {}", list));
  }
  return *std::move(g);
}

}  // namespace mpmo::instances
