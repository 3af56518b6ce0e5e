#include "mpmo/harness.hpp"

#include "mpmo/instances.hpp"
#include "mpmo/oracles.hpp"
#include "mpmo/pseudoboolean_optimizers.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace mpmo::harness {

namespace {

std::string fmt_double(double v) { return fmt::format("{}", v); }

std::string fmt_opt(const std::optional<std::uint64_t>& v) {
  return v ? fmt::format("{}", *v) : std::string{};
}

std::string sanitize(std::string s) {
  for (auto& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  while (true) {
    const auto pos = s.find(sep);
    out.emplace_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::uint64_t to_u64(std::string_view s, std::string_view what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(std::string(s), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-') {
    throw ParameterError(fmt::format("{} '{}' is not a non-negative integer", what, s));
  }
  return v;
}

double to_double(std::string_view s, std::string_view what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(std::string(s), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ParameterError(fmt::format("{} '{}' is not a number", what, s));
  }
  return v;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Identity of a run without its seed (and optionally without n).
std::string group_key(const RunSpec& s, bool with_n) {
  RunSpec k = s;
  k.seed = 0;
  if (!with_n) k.n = 0;
  return k.canonical();
}

std::string key_columns(const RunSpec& s, bool with_n) {
  const bool path = is_path_algorithm(s.algorithm);
  return fmt::format("{},{},{},{},{},{},{},{}", to_string(s.algorithm), s.problem, s.instance,
                     with_n ? fmt::format("{}", s.n) : std::string{},
                     s.phi ? fmt_double(*s.phi) : std::string{},
                     path ? fmt_double(s.eps1) : std::string{},
                     path ? fmt_double(s.eps2) : std::string{},
                     path ? fmt_double(s.eps2max) : std::string{});
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Semo: return "semo";
    case Algorithm::EmpmoSimple: return "empmo-simple";
    case Algorithm::EmpmoRandom: return "empmo-random";
    case Algorithm::EmpmoPayoff: return "empmo-payoff";
    case Algorithm::EmpmoSimpleSp: return "empmo-simple-sp";
    case Algorithm::EmpmoConsSp: return "empmo-cons-sp";
    case Algorithm::DemoSp: return "demo-sp";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view id) {
  for (auto a : {Algorithm::Semo, Algorithm::EmpmoSimple, Algorithm::EmpmoRandom,
                 Algorithm::EmpmoPayoff, Algorithm::EmpmoSimpleSp, Algorithm::EmpmoConsSp,
                 Algorithm::DemoSp}) {
    if (to_string(a) == id) return a;
  }
  return std::nullopt;
}

bool is_path_algorithm(Algorithm a) {
  return a == Algorithm::EmpmoSimpleSp || a == Algorithm::EmpmoConsSp || a == Algorithm::DemoSp;
}

void RunSpec::resolve() {
  if (is_path_algorithm(algorithm)) {
    if (problem.empty()) problem = "bpmosp";
    if (problem != "bpmosp") {
      throw ParameterError(fmt::format("{} runs on bpmosp instances, not '{}'",
                                       to_string(algorithm), problem));
    }
    if (instance.empty() || instance == "random" || instance == "zeros") instance = "fixture";
    phi.reset();
    sp::ApproxParams{eps1, eps2, eps2max}.validate();
    if (budget == 0) budget = kDefaultPathBudget;
    return;
  }
  if (problem.empty()) problem = "bpaoaz";
  const auto kind = parse_problem_kind(problem);
  if (!kind) throw ParameterError(fmt::format("unknown problem '{}'", problem));
  if (algorithm != Algorithm::Semo && *kind != ProblemKind::Bpaoaz) {
    throw ParameterError(
        fmt::format("{} needs the two-party problem bpaoaz, not '{}'", to_string(algorithm), problem));
  }
  if (n < 4 || n % 2 != 0) {
    throw ParameterError(fmt::format("bit-string length must be even and >= 4, got {}", n));
  }
  if (instance.empty()) instance = "random";
  if (instance != "random" && instance != "zeros") {
    throw ParameterError(fmt::format("bit-string start must be 'random' or 'zeros', got '{}'",
                                     instance));
  }
  if (algorithm == Algorithm::EmpmoRandom) {
    if (!phi) phi = 0.5;
  } else {
    phi.reset();
  }
  eps1 = eps2 = 1.0;
  eps2max = 2.0;
  if (budget == 0) budget = kDefaultBitBudget;
}

std::string RunSpec::canonical() const {
  return fmt::format("alg={}|problem={}|instance={}|n={}|phi={}|eps1={}|eps2={}|eps2max={}|seed={}|budget={}",
                     to_string(algorithm), problem, instance, n,
                     phi ? fmt_double(*phi) : std::string{}, fmt_double(eps1), fmt_double(eps2),
                     fmt_double(eps2max), seed, budget);
}

std::string RunSpec::run_id() const { return fmt::format("{:016x}", fnv1a(canonical())); }

PathInstance load_path_instance(std::string_view instance) {
  if (instance == "fixture") {
    auto g = instances::fixture_graph();
    auto fronts = oracle::common_fronts(oracle::exact_path_catalog(g));
    return {std::move(g), std::move(fronts)};
  }
  if (instance.starts_with("planted")) {
    auto planted = instances::generate_planted_uav(instances::parse_planted_spec(instance));
    return {std::move(planted.graph), std::move(planted.fronts)};
  }
  std::ifstream in{std::string(instance)};
  if (!in) throw std::runtime_error(fmt::format("cannot open instance file '{}'", instance));
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  PathInstance out{instances::parse_instance(text), std::nullopt};

  // A generator sidecar line lets planted files reuse their known fronts.
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const std::string_view prefix = "# spec:";
    if (!line.starts_with(prefix)) continue;
    try {
      auto planted = instances::generate_planted_uav(
          instances::parse_planted_spec(std::string_view(line).substr(prefix.size())));
      if (planted.graph == out.graph) out.fronts = std::move(planted.fronts);
    } catch (const std::exception&) {
      // Not a planted sidecar; fall through to the exact catalog.
    }
    break;
  }
  if (!out.fronts && out.graph.vertex_count() <= oracle::kMaxGraphVertices) {
    out.fronts = oracle::common_fronts(oracle::exact_path_catalog(out.graph));
  }
  return out;
}

RunRecord execute(RunSpec spec) {
  RunRecord rec;
  const auto start = std::chrono::steady_clock::now();
  try {
    spec.resolve();
    rec.spec = spec;
    if (!is_path_algorithm(spec.algorithm)) {
      const PseudoBooleanProblem problem(*parse_problem_kind(spec.problem), spec.n);
      RunOptions options;
      options.seed = spec.seed;
      options.stop = StopRule{spec.budget, true};
      if (spec.instance == "zeros") options.initial = BitString::zeros(spec.n);
      RunTrace trace;
      switch (spec.algorithm) {
        case Algorithm::Semo: trace = run_semo(problem, options); break;
        case Algorithm::EmpmoSimple: trace = run_empmo_simple(problem, options); break;
        case Algorithm::EmpmoRandom: trace = run_empmo_random(problem, *spec.phi, options); break;
        default: trace = run_empmo_payoff(problem, options); break;
      }
      rec.evaluations = trace.evaluations;
      rec.generations = trace.iterations;
      rec.hit_time = trace.hit_time;
    } else {
      auto inst = load_path_instance(spec.instance);
      spec.n = inst.graph.vertex_count();
      rec.spec = spec;
      const sp::ApproxParams params{spec.eps1, spec.eps2, spec.eps2max};
      sp::SpRunOptions options;
      options.seed = spec.seed;
      options.budget = spec.budget;
      options.cadence = spec.cadence;
      options.fronts = inst.fronts ? &*inst.fronts : nullptr;
      sp::SpTrace trace;
      switch (spec.algorithm) {
        case Algorithm::EmpmoConsSp: trace = sp::run_empmo_cons_sp(inst.graph, params, options); break;
        case Algorithm::DemoSp:
          trace = sp::run_demo_sp(inst.graph, sp::path_box_base(spec.n, params.eps_min()), options);
          break;
        default: trace = sp::run_empmo_simple_sp(inst.graph, params, options).trace; break;
      }
      rec.evaluations = trace.evaluations;
      rec.generations = trace.generations;
      rec.hit_time = trace.hit_time;
      rec.metrics = std::move(trace.metrics);
    }
  } catch (const std::exception& e) {
    rec.spec = spec;
    rec.error = sanitize(e.what());
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

std::string summary_header() {
  return "run_id,algorithm,problem,instance,n,phi,eps1,eps2,eps2max,seed,budget,evaluations,"
         "generations,hit_time,error";
}

std::string summary_row(const RunRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{}", r.spec.run_id(), key_columns(r.spec, true),
                     r.spec.seed, r.spec.budget, r.evaluations, r.generations,
                     fmt_opt(r.hit_time), r.error);
}

std::string metric_header() {
  return "run_id,generation,evaluations,max_eps,mean_eps_members,mean_eps_endpoints";
}

std::string metric_rows(const RunRecord& r) {
  std::string out;
  const auto id = r.spec.run_id();
  for (const auto& m : r.metrics) {
    out += fmt::format("{},{},{},{},{},{}\n", id, m.generation, m.evaluations,
                       fmt_double(m.max_eps), fmt_double(m.mean_eps_members),
                       fmt_double(m.mean_eps_endpoints));
  }
  return out;
}

RunSpec spec_from_summary(const std::map<std::string, std::string>& row) {
  const auto field = [&](const std::string& key) -> const std::string& {
    auto it = row.find(key);
    if (it == row.end()) throw ParameterError(fmt::format("summary row lacks column '{}'", key));
    return it->second;
  };
  RunSpec spec;
  const auto alg = parse_algorithm(field("algorithm"));
  if (!alg) throw ParameterError(fmt::format("unknown algorithm '{}'", field("algorithm")));
  spec.algorithm = *alg;
  spec.problem = field("problem");
  spec.instance = field("instance");
  spec.n = static_cast<std::size_t>(to_u64(field("n"), "n"));
  if (!field("phi").empty()) spec.phi = to_double(field("phi"), "phi");
  if (!field("eps1").empty()) spec.eps1 = to_double(field("eps1"), "eps1");
  if (!field("eps2").empty()) spec.eps2 = to_double(field("eps2"), "eps2");
  if (!field("eps2max").empty()) spec.eps2max = to_double(field("eps2max"), "eps2max");
  spec.seed = to_u64(field("seed"), "seed");
  spec.budget = to_u64(field("budget"), "budget");
  return spec;
}

std::vector<std::map<std::string, std::string>> read_csv(std::string_view text) {
  std::vector<std::map<std::string, std::string>> rows;
  std::vector<std::string> header;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) {
      throw ParameterError(fmt::format("CSV row has {} cells, header has {}", cells.size(),
                                       header.size()));
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepConfig parse_sweep_config(std::string_view text) {
  std::map<std::string, std::vector<std::string>> values;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto hash = line.find('#');
    const auto body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError(fmt::format("config line {}: expected key=value", line_no));
    }
    const std::string key(trim(body.substr(0, eq)));
    static const std::set<std::string> known{"algorithm", "problem", "instance", "n",
                                             "phi",       "eps",     "eps1",     "eps2",
                                             "eps2max",   "seeds",   "budget",   "cadence"};
    if (!known.contains(key)) {
      throw ParameterError(fmt::format("config line {}: unknown key '{}'", line_no, key));
    }
    if (values.contains(key)) {
      throw ParameterError(fmt::format("config line {}: key '{}' repeated", line_no, key));
    }
    values[key] = split(body.substr(eq + 1), ',');
  }
  if (values.contains("eps") && (values.contains("eps1") || values.contains("eps2"))) {
    throw ParameterError("config sets both eps and eps1/eps2");
  }
  const auto list = [&](const std::string& key, std::vector<std::string> fallback) {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  };
  if (!values.contains("algorithm")) throw ParameterError("config needs an algorithm");

  std::vector<std::uint64_t> seeds;
  for (const auto& s : list("seeds", {"0"})) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(to_u64(s, "seed"));
      continue;
    }
    const auto lo = to_u64(s.substr(0, dots), "seed");
    const auto hi = to_u64(s.substr(dots + 2), "seed");
    if (hi < lo) throw ParameterError(fmt::format("empty seed range '{}'", s));
    for (auto v = lo; v <= hi; ++v) seeds.push_back(v);
  }
  const auto cadence_list = list("cadence", {"100"});
  if (cadence_list.size() != 1) throw ParameterError("cadence takes a single value");
  const auto cadence = to_u64(cadence_list.front(), "cadence");
  const auto eps1s = values.contains("eps") ? values["eps"] : list("eps1", {"1"});
  const bool joint_eps = values.contains("eps");

  SweepConfig config;
  std::set<std::string> seen;
  for (const auto& alg_id : values["algorithm"]) {
    const auto alg = parse_algorithm(alg_id);
    if (!alg) throw ParameterError(fmt::format("unknown algorithm '{}'", alg_id));
    const bool path = is_path_algorithm(*alg);
    for (const auto& problem : list("problem", {path ? "bpmosp" : "bpaoaz"})) {
      for (const auto& instance : list("instance", {path ? "fixture" : "random"})) {
        for (const auto& n : list("n", {"0"})) {
          for (const auto& phi : list("phi", {""})) {
            for (const auto& e1 : eps1s) {
              for (const auto& e2 : joint_eps ? std::vector<std::string>{e1} : list("eps2", {"1"})) {
                for (const auto& emax : list("eps2max", {"2"})) {
                  for (const auto& budget : list("budget", {"0"})) {
                    for (auto seed : seeds) {
                      RunSpec spec;
                      spec.algorithm = *alg;
                      spec.problem = problem;
                      spec.instance = instance;
                      spec.n = static_cast<std::size_t>(to_u64(n, "n"));
                      if (!phi.empty()) spec.phi = to_double(phi, "phi");
                      spec.eps1 = to_double(e1, "eps1");
                      spec.eps2 = to_double(e2, "eps2");
                      spec.eps2max = to_double(emax, "eps2max");
                      spec.budget = to_u64(budget, "budget");
                      spec.seed = seed;
                      spec.cadence = cadence;
                      spec.resolve();
                      // Parameters an algorithm ignores collapse onto one run.
                      if (seen.insert(spec.canonical()).second) config.runs.push_back(spec);
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return config;
}

std::vector<RunRecord> run_sweep(const SweepConfig& config, std::size_t jobs) {
  std::vector<RunRecord> records(config.runs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < config.runs.size(); i = next++) {
      records[i] = execute(config.runs[i]);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, config.runs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

std::vector<Aggregate> summarize(const std::vector<RunRecord>& records) {
  std::vector<Aggregate> out;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<double>> samples;
  for (const auto& r : records) {
    const auto key = group_key(r.spec, true);
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) {
      Aggregate a;
      a.key = r.spec;
      a.key.seed = 0;
      out.push_back(a);
      samples.emplace_back();
    }
    auto& a = out[it->second];
    ++a.runs;
    if (!r.error.empty()) {
      ++a.failures;
      continue;
    }
    if (r.hit_time) ++a.hits;
    samples[it->second].push_back(static_cast<double>(r.evaluations));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& xs = samples[i];
    if (xs.empty()) continue;
    auto& a = out[i];
    double sum = 0.0;
    for (double x : xs) sum += x;
    a.mean_evaluations = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean_evaluations) * (x - a.mean_evaluations);
    a.std_evaluations = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    a.min_evaluations = *std::ranges::min_element(xs);
    a.max_evaluations = *std::ranges::max_element(xs);
  }
  return out;
}

std::string aggregate_header() {
  return "algorithm,problem,instance,n,phi,eps1,eps2,eps2max,budget,runs,hits,failures,"
         "mean_evaluations,std_evaluations,min_evaluations,max_evaluations";
}

std::string aggregate_row(const Aggregate& a) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", key_columns(a.key, true), a.key.budget, a.runs,
                     a.hits, a.failures, fmt_double(a.mean_evaluations),
                     fmt_double(a.std_evaluations), fmt_double(a.min_evaluations),
                     fmt_double(a.max_evaluations));
}

std::vector<SlopeFit> fit_slopes(const std::vector<Aggregate>& aggregates) {
  std::vector<SlopeFit> out;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::pair<double, double>>> points;
  for (const auto& a : aggregates) {
    if (a.runs == a.failures || a.mean_evaluations <= 0.0 || a.key.n == 0) continue;
    auto [it, inserted] = index.try_emplace(group_key(a.key, false), out.size());
    if (inserted) {
      SlopeFit s;
      s.key = a.key;
      s.key.n = 0;
      out.push_back(s);
      points.emplace_back();
    }
    points[it->second].emplace_back(std::log(static_cast<double>(a.key.n)),
                                    std::log(a.mean_evaluations));
  }
  std::vector<SlopeFit> fitted;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& p = points[i];
    const double m = static_cast<double>(p.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : p) {
      sx += x;
      sy += y;
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : p) {
      sxx += (x - mx) * (x - mx);
      sxy += (x - mx) * (y - my);
    }
    if (p.size() < 2 || sxx <= 1e-12) continue;
    auto s = out[i];
    s.points = p.size();
    s.slope = sxy / sxx;
    s.intercept = my - s.slope * mx;
    for (const auto& [x, y] : p) {
      s.max_abs_residual = std::max(s.max_abs_residual, std::abs(y - (s.intercept + s.slope * x)));
    }
    fitted.push_back(s);
  }
  return fitted;
}

std::string slope_header() {
  return "algorithm,problem,instance,n,phi,eps1,eps2,eps2max,points,slope,intercept,"
         "max_abs_residual";
}

std::string slope_row(const SlopeFit& s) {
  return fmt::format("{},{},{},{},{}", key_columns(s.key, false), s.points, fmt_double(s.slope),
                     fmt_double(s.intercept), fmt_double(s.max_abs_residual));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += fmt::format(".tmp.{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mpmo::harness
