#pragma once

// Instance generation, the plain-text instance format, and result JSON.
//
// Instance text: one numeric literal per line; '#' starts a comment; blank
// lines are ignored. Original indices follow the order of value lines.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lopart/core.hpp"
#include "lopart/local_solvers.hpp"

namespace lopart {

/// Parse failure; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class Distribution { uniform_int, uniform_real, mixed_sign_int, high_precision_real };

std::string_view to_string(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view name);

struct GenSpec {
  std::size_t n = 0;
  Distribution distribution = Distribution::uniform_int;
  double lo = 1;
  double hi = 1000;
  std::uint64_t seed = 0;
};

/// Default [lo, hi] for a distribution.
GenSpec default_spec(Distribution d, std::size_t n, std::uint64_t seed);

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the standard xor-shift-
/// multiply finaliser. The state starts at the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;
  /// Uniform integer in [lo, hi] by rejection sampling on the raw draw.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
  /// (draw >> 11) * 2^-53, uniform on [0, 1).
  double unit() noexcept;

 private:
  std::uint64_t state_;
};

/// Deterministic for a fixed spec. Integer distributions give an integer
/// instance; real distributions a real one. Throws InputError on a bad range.
AnyInstance generate(const GenSpec& spec);

enum class ModeRequest { automatic, integer, real };

/// Throws ParseError (with line number) on malformed literals or empty input,
/// InputError on integer overflow of the accumulator bound.
AnyInstance parse_instance(std::string_view text, ModeRequest mode = ModeRequest::automatic);

/// Integers in decimal, reals as shortest round-trip decimals.
std::string serialize_instance(const AnyInstance& instance);

/// Reads an assignment from either a bare JSON array of 1/2 or a result
/// object carrying an "assignment" array.
std::vector<std::int64_t> parse_assignment(std::string_view json_text);

/// Result JSON with a fixed field order:
/// algorithm, n, mode, s1, s2, diff, max_sum, min_sum, locally_optimal,
/// transfers, elapsed_ns, assignment[, trace]. Trace indices are 1-based.
template <Number T>
std::string serialize_result(const AlgoReport<T>& report, const Partition<T>& partition,
                             const SolveTrace<T>* trace = nullptr);

}  // namespace lopart
