#include "lopart/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <thread>

#include <json.hpp>

namespace lopart {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::v1:
      return "v1";
    case Algorithm::v2:
      return "v2";
    case Algorithm::greedy:
      return "greedy";
    case Algorithm::kk:
      return "kk";
    case Algorithm::dp:
      return "dp";
    case Algorithm::hs:
      return "hs";
    case Algorithm::bf:
      return "bf";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

template <Number T>
RunOutcome<T> run_algorithm(Algorithm algorithm, const Instance<T>& instance, const Caps& caps) {
  using Clock = std::chrono::steady_clock;
  constexpr bool kInteger = mode_of<T> == Mode::integer;
  if ((algorithm == Algorithm::dp || algorithm == Algorithm::hs) && !kInteger) {
    throw InputError(std::string(to_string(algorithm)) + " requires integer input");
  }

  RunOutcome<T> out;
  std::optional<T> diff_only;
  const auto start = Clock::now();
  switch (algorithm) {
    case Algorithm::v1:
    case Algorithm::v2: {
      SolveResult<T> r = algorithm == Algorithm::v1 ? solve_v1(instance) : solve_v2(instance);
      out.partition = std::move(r.partition);
      out.trace = std::move(r.trace);
      break;
    }
    case Algorithm::greedy:
      out.partition = greedy(instance);
      break;
    case Algorithm::kk:
      out.partition = kk(instance).partition;
      break;
    case Algorithm::dp:
    case Algorithm::hs:
      if constexpr (kInteger) {
        BaselineResult<T> r = algorithm == Algorithm::dp ? dp_optimal(instance, caps.dp)
                                                         : hs(instance, caps.hs);
        out.partition = std::move(r.partition);
        if (!out.partition) diff_only = r.diff;
      }
      break;
    case Algorithm::bf:
      out.partition = brute_force(instance, caps.bf).partition;
      break;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  const std::size_t transfers = out.trace ? out.trace->steps.size() : 0;

  if (out.partition) {
    out.report = make_report(std::string(to_string(algorithm)), instance, *out.partition, transfers,
                             elapsed);
  } else {
    // Diff-only DP: the side sums follow from S and the optimal difference.
    const T d = *diff_only;
    out.report.algorithm = to_string(algorithm);
    out.report.objective = {d, (instance.total() + d) / 2, (instance.total() - d) / 2};
    out.report.elapsed = elapsed;
  }
  return out;
}

template RunOutcome<std::int64_t> run_algorithm(Algorithm, const IntInstance&, const Caps&);
template RunOutcome<double> run_algorithm(Algorithm, const RealInstance&, const Caps&);

namespace {

std::string render_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <Number T>
std::optional<T> oracle_diff(const Instance<T>& instance, const Caps& caps) {
  try {
    if constexpr (mode_of<T> == Mode::integer) {
      if (instance.size() <= caps.hs) return hs(instance, caps.hs).diff;
      DpOptions diff_only = caps.dp;
      diff_only.memory_budget_bits = 0;
      return dp_optimal(instance, diff_only).diff;
    } else {
      if (instance.size() <= caps.bf) return brute_force(instance, caps.bf).diff;
    }
  } catch (const CapExceeded&) {
  }
  return std::nullopt;
}

template <Number T>
std::vector<BenchRow> rows_for(const Instance<T>& instance, const std::vector<Algorithm>& algorithms,
                               const Caps& caps, bool oracle, std::string_view dist,
                               std::optional<std::uint64_t> seed) {
  const std::optional<T> opt = oracle ? oracle_diff(instance, caps) : std::nullopt;
  std::vector<BenchRow> rows;
  for (Algorithm a : algorithms) {
    BenchRow row;
    row.algorithm = to_string(a);
    row.n = instance.size();
    row.dist = dist;
    row.seed = seed;
    if (opt) row.opt_diff = Scalar{*opt};
    try {
      const RunOutcome<T> r = run_algorithm(a, instance, caps);
      row.diff = Scalar{r.report.objective.diff};
      row.transfers = r.report.transfers;
      row.elapsed_ns = r.report.elapsed.count();
      if (opt) {
        const double opt_max = (static_cast<double>(instance.total()) + static_cast<double>(*opt)) / 2;
        if (opt_max > 0) row.ratio = static_cast<double>(r.report.objective.max_sum) / opt_max;
      }
    } catch (const CapExceeded&) {
      row.skipped = "cap_exceeded";
    } catch (const InputError&) {
      row.skipped = "needs_integer";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string render(const Scalar& v) {
  return std::visit(
      [](auto x) -> std::string {
        if constexpr (std::same_as<decltype(x), double>) {
          return render_double(x);
        } else {
          return std::to_string(x);
        }
      },
      v);
}

template <Number T>
std::vector<BenchRow> compare(const Instance<T>& instance, const std::vector<Algorithm>& algorithms,
                              const Caps& caps, bool oracle) {
  return rows_for(instance, algorithms, caps, oracle, "file", std::nullopt);
}

template std::vector<BenchRow> compare(const IntInstance&, const std::vector<Algorithm>&, const Caps&, bool);
template std::vector<BenchRow> compare(const RealInstance&, const std::vector<Algorithm>&, const Caps&, bool);

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  struct Job {
    Distribution dist;
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Distribution d : config.distributions) {
    for (std::size_t n : config.sizes) {
      for (std::size_t s = 0; s < config.seeds; ++s) jobs.push_back({d, n, config.base_seed + s});
    }
  }

  std::vector<std::vector<BenchRow>> results(jobs.size());
  const auto work = [&](std::size_t j) {
    const Job& job = jobs[j];
    GenSpec spec = default_spec(job.dist, job.n, job.seed);
    if (config.lo) spec.lo = *config.lo;
    if (config.hi) spec.hi = *config.hi;
    const AnyInstance instance = generate(spec);
    results[j] = std::visit(
        [&](const auto& inst) {
          return rows_for(inst, config.algorithms, config.caps, config.oracle, to_string(job.dist),
                          job.seed);
        },
        instance);
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, jobs.size()));
  if (threads == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) work(j);
      });
    }
  }

  // Emit by (distribution, n, algorithm, seed).
  std::vector<BenchRow> rows;
  const std::size_t per_cell = config.seeds;
  for (std::size_t cell = 0; cell * per_cell < jobs.size(); ++cell) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      for (std::size_t s = 0; s < per_cell; ++s) rows.push_back(results[cell * per_cell + s][a]);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool summary) {
  out << kCsvHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.algorithm << ',' << r.n << ',' << r.dist << ',';
    if (r.seed) out << *r.seed;
    out << ',' << (r.diff ? render(*r.diff) : r.skipped) << ',';
    if (r.opt_diff) out << render(*r.opt_diff);
    out << ',';
    if (r.ratio) out << render_double(*r.ratio);
    out << ',' << r.transfers << ',' << r.elapsed_ns << '\n';
  }
  if (!summary) return;

  struct Agg {
    std::vector<std::int64_t> elapsed;
    double ratio_sum = 0;
    std::size_t ratio_count = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Agg> groups;
  for (const BenchRow& r : rows) {
    if (!r.diff) continue;
    const std::string key = r.algorithm + ',' + std::to_string(r.n) + ',' + r.dist;
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.elapsed.push_back(r.elapsed_ns);
    if (r.ratio) {
      it->second.ratio_sum += *r.ratio;
      ++it->second.ratio_count;
    }
  }
  out << "# summary,algorithm,n,dist,cells,median_elapsed_ns,mean_ratio\n";
  for (const std::string& key : order) {
    Agg& g = groups[key];
    std::sort(g.elapsed.begin(), g.elapsed.end());
    out << "# summary," << key << ',' << g.elapsed.size() << ',' << g.elapsed[g.elapsed.size() / 2]
        << ',';
    if (g.ratio_count) out << render_double(g.ratio_sum / static_cast<double>(g.ratio_count));
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<BenchRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  const auto to_json = [](const Scalar& v) {
    return std::visit([](auto x) { return nlohmann::ordered_json(x); }, v);
  };
  for (const BenchRow& r : rows) {
    nlohmann::ordered_json o;
    o["algorithm"] = r.algorithm;
    o["n"] = r.n;
    o["dist"] = r.dist;
    o["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    o["diff"] = r.diff ? to_json(*r.diff) : nlohmann::ordered_json(nullptr);
    o["opt_diff"] = r.opt_diff ? to_json(*r.opt_diff) : nlohmann::ordered_json(nullptr);
    o["ratio"] = r.ratio ? nlohmann::ordered_json(*r.ratio) : nlohmann::ordered_json(nullptr);
    o["transfers"] = r.transfers;
    o["elapsed_ns"] = r.elapsed_ns;
    if (!r.skipped.empty()) o["skipped"] = r.skipped;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace lopart
