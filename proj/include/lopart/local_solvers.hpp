#pragma once

// Near-linear-time solvers that return locally optimal two-way partitions.
//
// Both work on a signed working set: the absolute values of the non-zero
// inputs sorted ascending, where a value's sign encodes its current side
// (positive = side 1, negative = side 2). Everything starts on side 1 and
// each transfer flips one sign. The original signs are reapplied at the end
// so that arbitrary real inputs are supported.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "lopart/core.hpp"

namespace lopart {

template <Number T>
struct SignedWorkingSet {
  std::vector<T> tilde;             // ascending by |x|; sign = current side
  std::vector<std::int8_t> signs;   // sign of the original input, +1 or -1
  std::vector<std::size_t> perm;    // working position -> original index
  std::vector<std::uint8_t> alive;  // 1 until the position is transferred
  std::vector<std::size_t> zeros;   // original indices of zero inputs

  std::size_t size() const noexcept { return tilde.size(); }

  /// Current S1 - S2 of the working set, summed in working order.
  T diff() const noexcept {
    T d{};
    for (T v : tilde) d += v;
    return d;
  }
};

enum class StopReason { diff_nonpositive, zero_selected, no_candidate };

std::string_view to_string(StopReason reason);

template <Number T>
struct TraceStep {
  std::size_t index;  // original index, 0-based
  T value;            // the original (signed) input value that changed side
  T diff_after;       // S1 - S2 after the transfer
};

template <Number T>
struct SolveTrace {
  T initial_diff{};
  std::vector<TraceStep<T>> steps;
  StopReason stop_reason = StopReason::no_candidate;
};

template <Number T>
struct SolveResult {
  Partition<T> partition;
  SolveTrace<T> trace;
};

/// Sorts |x| ascending (stable), records original signs and the permutation,
/// and sets zero inputs aside.
template <Number T>
SignedWorkingSet<T> normalize(const Instance<T>& instance);

/// Maps a solved working set back to the original inputs: an element lands on
/// side 1 iff sign * tilde > 0. Zero inputs go to side 1.
template <Number T>
Partition<T> denormalize(const SignedWorkingSet<T>& ws, const Instance<T>& instance);

/// Largest-fitting-transfer iteration. Repeatedly moves the largest alive
/// value strictly below the current S1 - S2, stopping once the difference is
/// non-positive or nothing fits. One descending pass over the sorted values.
template <Number T>
SolveTrace<T> run_v1(SignedWorkingSet<T>& ws);

/// Best-transfer iteration. Repeatedly moves the alive value whose transfer
/// minimises |S1 - S2 - 2x|, competing against a virtual zero at index 0;
/// ties go to the smaller sorted position, and selecting the zero stops.
template <Number T>
SolveTrace<T> run_v2(SignedWorkingSet<T>& ws);

template <Number T>
SolveResult<T> solve_v1(const Instance<T>& instance);

template <Number T>
SolveResult<T> solve_v2(const Instance<T>& instance);

}  // namespace lopart
