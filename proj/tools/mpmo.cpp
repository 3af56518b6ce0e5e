// mpmo: run, sweep, oracle, gen, validate and replay.
//
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 runtime failure.

#include "mpmo/harness.hpp"
#include "mpmo/instances.hpp"
#include "mpmo/oracles.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mpmo;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kRuntime = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string default_out_dir(const std::string& flag, const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MPMO_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return fallback;
}

constexpr std::size_t kDefaultBitLength = 20;

struct RunFlags {
  std::string alg = "empmo-payoff";
  std::string problem;
  std::string instance;
  std::size_t n = 0;
  std::optional<double> phi;
  std::optional<double> eps;
  double eps1 = 1.0;
  double eps2 = 1.0;
  double eps2max = 2.0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint64_t cadence = 100;
  std::string out;
};

harness::RunSpec to_spec(const RunFlags& f) {
  harness::RunSpec spec;
  const auto alg = harness::parse_algorithm(f.alg);
  if (!alg) throw ParameterError(fmt::format("unknown algorithm '{}'", f.alg));
  spec.algorithm = *alg;
  spec.problem = f.problem;
  spec.instance = f.instance;
  spec.n = f.n == 0 && !harness::is_path_algorithm(*alg) ? kDefaultBitLength : f.n;
  spec.phi = f.phi;
  spec.eps1 = f.eps ? *f.eps : f.eps1;
  spec.eps2 = f.eps ? *f.eps : f.eps2;
  spec.eps2max = f.eps2max;
  spec.seed = f.seed;
  spec.budget = f.budget;
  spec.cadence = f.cadence;
  spec.resolve();
  return spec;
}

int cmd_run(const RunFlags& flags) {
  const auto record = harness::execute(to_spec(flags));
  const auto header = harness::summary_header();
  const auto row = harness::summary_row(record);
  fmt::print("{}\n{}\n", header, row);
  const auto dir = default_out_dir(flags.out, "");
  if (!dir.empty()) {
    const std::filesystem::path base(dir);
    const auto id = record.spec.run_id();
    harness::write_file_atomic(base / (id + ".summary.csv"), header + "\n" + row + "\n");
    if (harness::is_path_algorithm(record.spec.algorithm)) {
      harness::write_file_atomic(base / (id + ".metrics.csv"),
                                 harness::metric_header() + "\n" + harness::metric_rows(record));
    }
  }
  if (!record.error.empty()) {
    fmt::print(stderr, "run failed: {}\n", record.error);
    return kRuntime;
  }
  return kOk;
}

int cmd_sweep(const std::string& config_path, std::size_t jobs, const std::string& out) {
  const auto config = harness::parse_sweep_config(read_file(config_path));
  const auto records = harness::run_sweep(config, jobs);
  const auto aggregates = harness::summarize(records);
  const auto slopes = harness::fit_slopes(aggregates);

  std::string summary = harness::summary_header() + "\n";
  std::string metrics = harness::metric_header() + "\n";
  std::string timings = "run_id,wall_ms\n";
  std::size_t failures = 0;
  for (const auto& r : records) {
    summary += harness::summary_row(r) + "\n";
    metrics += harness::metric_rows(r);
    timings += fmt::format("{},{:.3f}\n", r.spec.run_id(), r.wall_ms);
    if (!r.error.empty()) ++failures;
  }
  std::string aggregate = harness::aggregate_header() + "\n";
  for (const auto& a : aggregates) aggregate += harness::aggregate_row(a) + "\n";
  std::string slope = harness::slope_header() + "\n";
  for (const auto& s : slopes) slope += harness::slope_row(s) + "\n";

  const std::filesystem::path dir(default_out_dir(out, "results"));
  harness::write_file_atomic(dir / "summary.csv", summary);
  harness::write_file_atomic(dir / "aggregate.csv", aggregate);
  harness::write_file_atomic(dir / "slopes.csv", slope);
  harness::write_file_atomic(dir / "metrics.csv", metrics);
  harness::write_file_atomic(dir / "timings.csv", timings);
  fmt::print("{}{}", aggregate, slopes.empty() ? "" : "\n" + slope);
  fmt::print(stderr, "{} runs, {} failed, written to {}\n", records.size(), failures, dir.string());
  return failures == 0 ? kOk : kRuntime;
}

int cmd_oracle(const std::string& problem, std::size_t n, const std::string& instance,
               const std::string& path, std::optional<std::size_t> zeros) {
  if (zeros) {
    const auto value = oracle::payoff_runtime_predictor(n, *zeros);
    fmt::print("expected_evaluations n={} zeros={} exact={} approx={:.6f}\n", n, *zeros,
               value.str(), value.convert_to<double>());
    return kOk;
  }
  if (!instance.empty()) {
    const auto inst = harness::load_path_instance(instance);
    const auto catalog = oracle::exact_path_catalog(inst.graph);
    if (path.empty()) {
      fmt::print("{}", oracle::catalog_report(catalog));
      return kOk;
    }
    const auto p = sp::parse_path(path);
    if (!sp::is_valid_path(inst.graph, p)) throw ParameterError(fmt::format("{} is not a path", path));
    const auto f = sp::eval_path(inst.graph, p);
    const auto it = catalog.find(p.endpoint());
    if (it == catalog.end()) throw ParameterError("the path must end away from the source");
    std::vector<MultiPartyObjectives> front;
    for (const auto& m : it->second.common) front.push_back(m.objectives);
    const auto eps = oracle::epsilon_of_solution(f, front);
    fmt::print("path {} objectives {} epsilon={} ({:.9f}) bisection={:.9f}\n", p.to_string(),
               f.to_string(), eps.str(), eps.convert_to<double>(),
               oracle::epsilon_by_bisection(f, front));
    return kOk;
  }
  const auto kind = parse_problem_kind(problem);
  if (!kind) throw ParameterError(fmt::format("unknown problem '{}'", problem));
  const PseudoBooleanProblem p(*kind, n);
  fmt::print("{}", oracle::catalog_report(p, oracle::brute_force_pseudoboolean(p)));
  return kOk;
}

int cmd_gen(const instances::PlantedSpec& spec, bool fixture, const std::string& out) {
  std::string text;
  if (fixture) {
    text = instances::write_instance(instances::fixture_graph(), "spec: kind=fixture");
  } else {
    const auto inst = instances::generate_planted_uav(spec);
    text = instances::write_instance(inst.graph, "spec: " + spec.describe());
  }
  if (out.empty() || out == "-") {
    fmt::print("{}", text);
  } else {
    harness::write_file_atomic(out, text);
  }
  return kOk;
}

int cmd_validate(const std::vector<std::string>& files) {
  int status = kOk;
  for (const auto& file : files) {
    try {
      const auto g = instances::parse_instance(read_file(file));
      fmt::print("ok {} n={} edges={}\n", file, g.vertex_count(), g.edge_count());
    } catch (const instances::ParseError& e) {
      fmt::print(stderr, "invalid {}: {}\n", file, e.what());
      status = kValidation;
    }
  }
  return status;
}

int cmd_replay(const std::string& summary_path, const std::vector<std::string>& ids) {
  std::istringstream in(read_file(summary_path));
  std::string header;
  std::getline(in, header);
  if (header != harness::summary_header()) {
    throw ParameterError(fmt::format("'{}' is not a summary CSV", summary_path));
  }
  std::size_t checked = 0;
  std::size_t mismatched = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto rows = harness::read_csv(header + "\n" + line + "\n");
    const auto& row = rows.front();
    if (!ids.empty() && std::ranges::find(ids, row.at("run_id")) == ids.end()) continue;
    const auto replayed = harness::summary_row(harness::execute(harness::spec_from_summary(row)));
    ++checked;
    if (replayed == line) {
      fmt::print("match {}\n", row.at("run_id"));
    } else {
      ++mismatched;
      fmt::print("mismatch {}\n  recorded {}\n  replayed {}\n", row.at("run_id"), line, replayed);
    }
  }
  if (checked == 0) {
    fmt::print(stderr, "no rows selected\n");
    return kValidation;
  }
  return mismatched == 0 ? kOk : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary multi-party multi-objective optimization laboratory", "mpmo"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Execute one seeded run and print its summary row");
  run->add_option("--alg", run_flags.alg, "Algorithm id")
      ->check(CLI::IsMember({"semo", "empmo-simple", "empmo-random", "empmo-payoff",
                             "empmo-simple-sp", "empmo-cons-sp", "demo-sp"}))
      ->capture_default_str();
  run->add_option("--problem", run_flags.problem,
                  "aorz, aofz, bpaoaz, aoaz or bpmosp (default by algorithm)");
  run->add_option("--instance", run_flags.instance,
                  "random|zeros start, or fixture|planted:n=..:seed=..|FILE");
  run->add_option("--n", run_flags.n, "Bit-string length (default 20; ignored by path algorithms)");
  run->add_option("--phi", run_flags.phi, "Party-1 probability for empmo-random (default 0.5)");
  run->add_option("--eps", run_flags.eps, "Sets eps1 and eps2 together");
  run->add_option("--eps1", run_flags.eps1, "Party-1 approximation slack")->capture_default_str();
  run->add_option("--eps2", run_flags.eps2, "Party-2 approximation slack")->capture_default_str();
  run->add_option("--eps2max", run_flags.eps2max, "Party-2 relaxation ceiling")
      ->capture_default_str();
  run->add_option("--seed", run_flags.seed, "RNG seed")->capture_default_str();
  run->add_option("--budget", run_flags.budget,
                  "Evaluations (bit strings) or generations (paths); 0 = default");
  run->add_option("--cadence", run_flags.cadence, "Generations between metric samples")
      ->capture_default_str();
  run->add_option("--out", run_flags.out, "Directory for CSV files (default $MPMO_OUT_DIR)");

  std::string config;
  std::size_t jobs = 1;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Execute every run of a sweep config");
  sweep->add_option("config", config, "key=value sweep file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--jobs", jobs, "Concurrent runs")->capture_default_str();
  sweep->add_option("--out", sweep_out, "Output directory (default $MPMO_OUT_DIR or results)");

  std::string oracle_problem = "bpaoaz";
  std::size_t oracle_n = 8;
  std::string oracle_instance;
  std::string oracle_path;
  std::optional<std::size_t> oracle_zeros;
  auto* oracle_cmd = app.add_subcommand("oracle", "Print exact Pareto catalogs and reference values");
  oracle_cmd->add_option("--problem", oracle_problem, "Bit-string problem")->capture_default_str();
  oracle_cmd->add_option("--n", oracle_n, "Bit-string length")->capture_default_str();
  oracle_cmd->add_option("--instance", oracle_instance, "Path instance: fixture|planted:..|FILE");
  oracle_cmd->add_option("--path", oracle_path, "With --instance: approximation degree of this path");
  oracle_cmd->add_option("--zeros", oracle_zeros,
                         "Expected payoff-search evaluations from this many zeros at length --n");

  instances::PlantedSpec gen_spec;
  bool gen_fixture = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a planted instance (or the fixture)");
  gen->add_option("--n", gen_spec.n, "Vertex count")->capture_default_str();
  gen->add_option("--seed", gen_spec.seed, "Generator seed")->capture_default_str();
  gen->add_option("--neighbors", gen_spec.neighbors, "Nearest neighbours per vertex")
      ->capture_default_str();
  gen->add_option("--hover", gen_spec.hover_points, "Hover points")->capture_default_str();
  gen->add_option("--jitter", gen_spec.jitter, "Off-tree weight jitter amplitude")
      ->capture_default_str();
  gen->add_flag("--fixture", gen_fixture, "Write the 5-vertex fixture instead");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate", "Check instance files");
  validate->add_option("files", files, "Instance files")->required();

  std::string replay_file;
  std::vector<std::string> replay_ids;
  auto* replay = app.add_subcommand("replay", "Re-execute summary rows and compare byte for byte");
  replay->add_option("summary", replay_file, "Summary CSV")->required()->check(CLI::ExistingFile);
  replay->add_option("--run-id", replay_ids, "Only these run ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*sweep) return cmd_sweep(config, jobs, sweep_out);
    if (*oracle_cmd) {
      return cmd_oracle(oracle_problem, oracle_n, oracle_instance, oracle_path, oracle_zeros);
    }
    if (*gen) return cmd_gen(gen_spec, gen_fixture, gen_out);
    if (*validate) return cmd_validate(files);
    if (*replay) return cmd_replay(replay_file, replay_ids);
  } catch (const instances::ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kValidation;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kValidation;
  } catch (const std::domain_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kRuntime;
  }
  return kUsage;
}
