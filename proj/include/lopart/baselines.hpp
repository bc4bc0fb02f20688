#pragma once

// Reference partitioners used for quality comparison: greedy (LPT), the
// Karmarkar-Karp differencing method, a subset-sum bitset DP, Horowitz-Sahni
// meet-in-the-middle, and exhaustive enumeration.
//
// All of them accept signed input by solving the absolute-value problem and
// mapping sides back through the original signs, so they share the solvers'
// input contract.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lopart/core.hpp"

namespace lopart {

template <Number T>
struct BaselineResult {
  T diff{};
  std::optional<Partition<T>> partition;  // absent only for diff-only DP runs
};

/// Largest first, each value to the side with the smaller running sum; ties
/// go to side 1.
template <Number T>
Partition<T> greedy(const Instance<T>& instance);

template <Number T>
struct KkResult {
  Partition<T> partition;
  T residual{};  // the last value left by the differencing loop
};

/// Differencing: pop the two largest, push their difference, then two-colour
/// the recorded "opposite sides" edges to recover the assignment.
template <Number T>
KkResult<T> kk(const Instance<T>& instance);

struct DpOptions {
  /// Cap on n * (S + 1), the bit operations of a full run.
  std::uint64_t work_budget_bits = std::uint64_t{1} << 36;
  /// Cap on the bits retained when every row is kept for reconstruction.
  std::uint64_t memory_budget_bits = std::uint64_t{1} << 28;
};

/// One row of the reachability table: bit c is set iff some subset of the
/// processed prefix sums to c.
class DPRow {
 public:
  explicit DPRow(std::uint64_t max_sum);

  bool test(std::uint64_t c) const noexcept { return (words_[c / 64] >> (c % 64)) & 1U; }
  void add(std::uint64_t x);  // row |= row << x
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }
  std::uint64_t max_sum() const noexcept { return max_sum_; }

 private:
  std::uint64_t max_sum_;
  std::vector<std::uint64_t> words_;
};

/// Exact optimum via the smallest reachable subset sum c >= S/2 (diff = 2c - S).
/// The assignment is reconstructed when all rows fit the memory budget.
/// Throws CapExceeded when the work budget is exceeded.
BaselineResult<std::int64_t> dp_optimal(const IntInstance& instance, const DpOptions& options = {});

struct HsList {
  std::vector<std::int64_t> sums;
  std::vector<std::uint32_t> masks;  // bit j = j-th member of the half
};

/// Scan state of the meet-in-the-middle search.
struct HSState {
  std::int64_t total = 0;    // S
  std::int64_t s_upper = 0;  // best max side sum found so far
  std::int64_t s_lower = 0;  // total - s_upper
  HsList list_a;             // ascending
  HsList list_b;             // descending

  /// Twice the perfect-partition sum S/2, kept integral.
  std::int64_t twice_s_star() const noexcept { return total; }
};

inline constexpr std::size_t kDefaultHsCap = 32;
inline constexpr std::size_t kDefaultBruteForceCap = 24;

/// Builds the sorted half lists and seeds the bounds from greedy.
HSState hs_prepare(const IntInstance& instance, std::size_t cap = kDefaultHsCap);

/// Horowitz-Sahni: sorted subset-sum lists of both halves scanned with two
/// pointers against the tightening bounds. Provably optimal.
BaselineResult<std::int64_t> hs(const IntInstance& instance, std::size_t cap = kDefaultHsCap);

/// Exhaustive search with element 1 fixed on side 1; ties resolve to the
/// lexicographically smallest assignment.
template <Number T>
BaselineResult<T> brute_force(const Instance<T>& instance, std::size_t cap = kDefaultBruteForceCap);

}  // namespace lopart
