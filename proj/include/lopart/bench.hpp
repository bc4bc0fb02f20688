#pragma once

// Uniform entry point over every partitioner, plus the benchmark grid used by
// `lopart bench` and `lopart compare`.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lopart/baselines.hpp"
#include "lopart/core.hpp"
#include "lopart/instance_io.hpp"
#include "lopart/local_solvers.hpp"

namespace lopart {

enum class Algorithm { v1, v2, greedy, kk, dp, hs, bf };

inline constexpr std::array kAllAlgorithms = {Algorithm::v1, Algorithm::v2, Algorithm::greedy,
                                              Algorithm::kk, Algorithm::dp, Algorithm::hs,
                                              Algorithm::bf};

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct Caps {
  std::size_t bf = kDefaultBruteForceCap;
  std::size_t hs = kDefaultHsCap;
  DpOptions dp;
};

template <Number T>
struct RunOutcome {
  AlgoReport<T> report;
  std::optional<Partition<T>> partition;  // absent for diff-only DP
  std::optional<SolveTrace<T>> trace;     // v1 and v2 only
};

/// Runs one algorithm and times it. Throws InputError when the algorithm
/// needs integer input, CapExceeded when a cap is hit.
template <Number T>
RunOutcome<T> run_algorithm(Algorithm algorithm, const Instance<T>& instance, const Caps& caps = {});

using Scalar = std::variant<std::int64_t, double>;

std::string render(const Scalar& v);

struct BenchRow {
  std::string algorithm;
  std::size_t n = 0;
  std::string dist;
  std::optional<std::uint64_t> seed;
  std::optional<Scalar> diff;  // absent when the cell was skipped
  std::optional<Scalar> opt_diff;
  std::optional<double> ratio;  // max side sum over the optimal max side sum
  std::size_t transfers = 0;
  std::int64_t elapsed_ns = 0;
  std::string skipped;  // reason, empty when the cell ran
};

struct BenchConfig {
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<std::size_t> sizes;
  std::vector<Distribution> distributions{Distribution::uniform_int};
  std::uint64_t base_seed = 1;
  std::size_t seeds = 1;
  std::optional<double> lo;
  std::optional<double> hi;
  Caps caps;
  bool oracle = true;
  std::size_t threads = 1;
};

/// One row per (distribution, n, algorithm, seed) in that order, identical
/// regardless of the thread count apart from timings.
std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Rows for every algorithm on a single instance (`dist` = "file").
template <Number T>
std::vector<BenchRow> compare(const Instance<T>& instance, const std::vector<Algorithm>& algorithms,
                              const Caps& caps, bool oracle = true);

inline constexpr std::string_view kCsvHeader =
    "algorithm,n,dist,seed,diff,opt_diff,ratio,transfers,elapsed_ns";

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool summary);
void write_json(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace lopart
