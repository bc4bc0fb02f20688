#include "lopart/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lopart/bench.hpp"

namespace lopart::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceOptions {
  std::string input;
  std::optional<std::size_t> n;
  std::string dist = "uniform-int";
  std::uint64_t seed = 1;
  std::optional<double> lo;
  std::optional<double> hi;
  std::string mode = "auto";
};

struct CapOptions {
  std::size_t bf = kDefaultBruteForceCap;
  std::size_t hs = kDefaultHsCap;
  std::uint64_t dp_work = DpOptions{}.work_budget_bits;
  std::uint64_t dp_memory = DpOptions{}.memory_budget_bits;

  Caps caps() const { return Caps{bf, hs, DpOptions{dp_work, dp_memory}}; }
};

const std::vector<std::string> kDistNames = {"uniform-int", "uniform-real", "mixed-sign-int",
                                             "high-precision-real"};

std::vector<std::string> algorithm_names() {
  std::vector<std::string> names;
  for (Algorithm a : kAllAlgorithms) names.emplace_back(to_string(a));
  return names;
}

void add_source_options(CLI::App* cmd, SourceOptions& s, bool with_mode = true) {
  cmd->add_option("--input", s.input, "Instance file (one value per line, '#' comments)");
  cmd->add_option("--n", s.n, "Generate an instance of this size instead of reading one");
  cmd->add_option("--dist", s.dist, "Generator distribution")->check(CLI::IsMember(kDistNames));
  cmd->add_option("--seed", s.seed, "Generator seed");
  cmd->add_option("--lo", s.lo, "Generator lower bound");
  cmd->add_option("--hi", s.hi, "Generator upper bound");
  if (with_mode) {
    cmd->add_option("--mode", s.mode, "Arithmetic mode")
        ->check(CLI::IsMember({"int", "float", "auto"}));
  }
}

void add_cap_options(CLI::App* cmd, CapOptions& c) {
  cmd->add_option("--bf-cap", c.bf, "Largest n for brute force");
  cmd->add_option("--hs-cap", c.hs, "Largest n for Horowitz-Sahni");
  cmd->add_option("--dp-budget", c.dp_work, "DP work budget, n*(S+1) bits");
  cmd->add_option("--dp-memory", c.dp_memory, "DP memory budget for reconstruction, bits");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GenSpec gen_spec(const SourceOptions& s) {
  const Distribution d = *parse_distribution(s.dist);
  GenSpec spec = default_spec(d, *s.n, s.seed);
  if (s.lo) spec.lo = *s.lo;
  if (s.hi) spec.hi = *s.hi;
  return spec;
}

AnyInstance load_instance(const SourceOptions& s) {
  if (!s.input.empty() && s.n) throw UsageError("use either --input or --n, not both");
  if (s.input.empty() && !s.n) throw UsageError("an instance is required: pass --input or --n");
  if (!s.input.empty()) {
    const ModeRequest req = s.mode == "int"     ? ModeRequest::integer
                            : s.mode == "float" ? ModeRequest::real
                                                : ModeRequest::automatic;
    return parse_instance(read_file(s.input), req);
  }
  AnyInstance inst = generate(gen_spec(s));
  if (s.mode == "float") {
    if (const auto* i = std::get_if<IntInstance>(&inst)) {
      std::vector<double> values(i->values().begin(), i->values().end());
      return RealInstance(std::move(values));
    }
  } else if (s.mode == "int" && std::holds_alternative<RealInstance>(inst)) {
    throw InputError("--mode int cannot be used with a real-valued distribution");
  }
  return inst;
}

// Writes to --out when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

int cmd_solve(const SourceOptions& src, const CapOptions& caps, const std::string& alg_name,
              bool with_trace, bool check, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const Algorithm alg = *parse_algorithm(alg_name);
  const AnyInstance instance = load_instance(src);
  return std::visit(
      [&](const auto& inst) -> int {
        const auto r = run_algorithm(alg, inst, caps.caps());
        if (!r.partition) {
          err << "error: dp found diff " << r.report.objective.diff
              << " but the assignment exceeds the memory budget (raise --dp-memory)\n";
          return kCapExceeded;
        }
        Sink sink(out_path, out);
        sink.stream() << serialize_result(r.report, *r.partition,
                                          with_trace && r.trace ? &*r.trace : nullptr);
        if (!check) return kOk;
        const auto [s1, s2] = partition_sums(inst, std::span<const Side>(r.partition->sides));
        if (s1 != r.partition->s1 || s2 != r.partition->s2) {
          err << "verification failed: side sums do not match the assignment\n";
          return kVerificationFailed;
        }
        const bool must_be_local = alg == Algorithm::v1 || alg == Algorithm::v2;
        if (must_be_local && !is_locally_optimal(inst, *r.partition)) {
          err << "verification failed: result is not locally optimal\n";
          return kVerificationFailed;
        }
        return kOk;
      },
      instance);
}

int cmd_check(const SourceOptions& src, const std::string& assignment_path,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  const AnyInstance instance = load_instance(src);
  const std::vector<std::int64_t> raw = parse_assignment(read_file(assignment_path));
  return std::visit(
      [&](const auto& inst) -> int {
        const auto partition = make_partition(inst, to_sides(inst.size(), raw));
        const std::vector<std::size_t> violations = local_optimality_violations(inst, partition);
        nlohmann::ordered_json doc;
        doc["n"] = inst.size();
        doc["s1"] = partition.s1;
        doc["s2"] = partition.s2;
        doc["diff"] = objective(partition).diff;
        doc["locally_optimal"] = violations.empty();
        doc["violations"] = nlohmann::ordered_json::array();
        for (std::size_t i : violations) doc["violations"].push_back(i + 1);
        Sink sink(out_path, out);
        sink.stream() << doc.dump(2) << '\n';
        if (!violations.empty()) {
          err << "not locally optimal: " << violations.size() << " improving transfer(s)\n";
          return kVerificationFailed;
        }
        return kOk;
      },
      instance);
}

std::vector<Algorithm> to_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> algs;
  for (const std::string& n : names) algs.push_back(*parse_algorithm(n));
  return algs;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally optimal two-way number partitioning", "lopart"};
  app.require_subcommand(1);

  SourceOptions src;
  CapOptions caps;
  std::string out_path;
  std::string format = "csv";

  auto* solve = app.add_subcommand("solve", "Solve one instance and print the result JSON");
  std::string alg = "v2";
  bool with_trace = false;
  bool check = false;
  add_source_options(solve, src);
  add_cap_options(solve, caps);
  solve->add_option("--alg", alg, "Algorithm")->check(CLI::IsMember(algorithm_names()));
  solve->add_flag("--trace", with_trace, "Include the transfer trace (v1, v2)");
  solve->add_flag("--check", check, "Exit 1 unless the result verifies");
  solve->add_option("--out", out_path, "Write output to a file");

  auto* chk = app.add_subcommand("check", "Certify local optimality of an assignment");
  std::string assignment_path;
  add_source_options(chk, src);
  chk->add_option("--assignment", assignment_path, "JSON array of 1/2, or a result JSON")
      ->required();
  chk->add_option("--out", out_path, "Write output to a file");

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  add_source_options(gen, src, false);
  gen->add_option("--out", out_path, "Write output to a file");

  auto* bench = app.add_subcommand("bench", "Run a benchmark grid and print CSV rows");
  std::vector<std::string> bench_algs;
  std::vector<std::size_t> bench_ns;
  std::vector<std::string> bench_dists;
  std::uint64_t bench_seed = 1;
  std::size_t bench_seeds = 1;
  std::size_t threads = 1;
  bool no_oracle = false;
  bool no_summary = false;
  std::optional<double> bench_lo;
  std::optional<double> bench_hi;
  bench->add_option("--alg", bench_algs, "Algorithms (repeat or comma-separate)")
      ->delimiter(',')
      ->check(CLI::IsMember(algorithm_names()));
  bench->add_option("--n", bench_ns, "Instance sizes")->delimiter(',')->required();
  bench->add_option("--dist", bench_dists, "Distributions")
      ->delimiter(',')
      ->check(CLI::IsMember(kDistNames));
  bench->add_option("--seed", bench_seed, "First seed");
  bench->add_option("--seeds", bench_seeds, "Seeds per cell");
  bench->add_option("--lo", bench_lo, "Generator lower bound");
  bench->add_option("--hi", bench_hi, "Generator upper bound");
  bench->add_option("--threads", threads, "Worker threads");
  bench->add_flag("--no-oracle", no_oracle, "Skip optimal-diff computation");
  bench->add_flag("--no-summary", no_summary, "Omit the summary lines");
  bench->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", out_path, "Write output to a file");
  add_cap_options(bench, caps);

  auto* cmp = app.add_subcommand("compare", "Run every algorithm on one instance");
  std::vector<std::string> cmp_algs;
  add_source_options(cmp, src);
  add_cap_options(cmp, caps);
  cmp->add_option("--alg", cmp_algs, "Algorithms (default: all)")
      ->delimiter(',')
      ->check(CLI::IsMember(algorithm_names()));
  cmp->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  cmp->add_option("--out", out_path, "Write output to a file");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(src, caps, alg, with_trace, check, out_path, out, err);
    }
    if (chk->parsed()) return cmd_check(src, assignment_path, out_path, out, err);
    if (gen->parsed()) {
      if (!src.n) throw UsageError("gen needs --n");
      const AnyInstance inst = generate(gen_spec(src));
      Sink sink(out_path, out);
      sink.stream() << serialize_instance(inst);
      return kOk;
    }
    if (bench->parsed()) {
      BenchConfig config;
      if (!bench_algs.empty()) config.algorithms = to_algorithms(bench_algs);
      config.sizes = bench_ns;
      if (!bench_dists.empty()) {
        config.distributions.clear();
        for (const std::string& d : bench_dists) config.distributions.push_back(*parse_distribution(d));
      }
      config.base_seed = bench_seed;
      config.seeds = bench_seeds;
      config.lo = bench_lo;
      config.hi = bench_hi;
      config.caps = caps.caps();
      config.oracle = !no_oracle;
      config.threads = threads;
      const std::vector<BenchRow> rows = run_bench(config);
      Sink sink(out_path, out);
      if (format == "json") {
        write_json(sink.stream(), rows);
      } else {
        write_csv(sink.stream(), rows, !no_summary);
      }
      return kOk;
    }
    if (cmp->parsed()) {
      const std::vector<Algorithm> algs =
          cmp_algs.empty() ? std::vector<Algorithm>(kAllAlgorithms.begin(), kAllAlgorithms.end())
                           : to_algorithms(cmp_algs);
      const AnyInstance instance = load_instance(src);
      const std::vector<BenchRow> rows = std::visit(
          [&](const auto& inst) { return compare(inst, algs, caps.caps()); }, instance);
      Sink sink(out_path, out);
      if (format == "json") {
        write_json(sink.stream(), rows);
      } else {
        write_csv(sink.stream(), rows, false);
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kUsage;
}

}  // namespace lopart::cli
