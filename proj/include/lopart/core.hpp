#pragma once

// Domain types for two-way number partitioning: instances, side assignments,
// the objective, and the single-transfer local-optimality certificate.

#include <chrono>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lopart {

/// Arithmetic used for sums and comparisons. Integer mode is exact; real mode
/// is IEEE double with a fixed ascending-index summation order.
enum class Mode { integer, real };

template <class T>
concept Number = std::same_as<T, std::int64_t> || std::same_as<T, double>;

template <Number T>
inline constexpr Mode mode_of = std::same_as<T, std::int64_t> ? Mode::integer : Mode::real;

std::string_view to_string(Mode mode);

/// Malformed or out-of-contract input (bad values, bad assignments, parse errors).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource cap (enumeration size, DP budget) would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The multiset to partition. Position in `values()` is the original index.
///
/// Construction rejects empty input. In integer mode it also rejects any
/// multiset whose doubled absolute sum would not fit in int64, so every
/// downstream difference `d - 2x` is overflow-free. In real mode every value
/// must be finite.
template <Number T>
class Instance {
 public:
  explicit Instance(std::vector<T> values);

  static constexpr Mode mode = mode_of<T>;

  std::span<const T> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  T operator[](std::size_t i) const { return values_[i]; }

  /// Sum of all values, accumulated in ascending index order.
  T total() const noexcept { return total_; }

 private:
  std::vector<T> values_;
  T total_{};
};

using IntInstance = Instance<std::int64_t>;
using RealInstance = Instance<double>;
using AnyInstance = std::variant<IntInstance, RealInstance>;

enum class Side : std::uint8_t { first = 1, second = 2 };

constexpr Side other(Side s) noexcept {
  return s == Side::first ? Side::second : Side::first;
}

template <Number T>
struct Partition {
  std::vector<Side> sides;  // indexed by original position
  T s1{};
  T s2{};
};

/// Sums of each side, accumulated in ascending index order.
/// Throws InputError on a length mismatch or a side outside {1, 2}.
template <Number T>
std::pair<T, T> partition_sums(const Instance<T>& instance, std::span<const Side> sides);

/// Builds a Partition with sums recomputed from the instance.
template <Number T>
Partition<T> make_partition(const Instance<T>& instance, std::vector<Side> sides);

template <Number T>
struct Objective {
  T diff{};
  T max_sum{};
  T min_sum{};
};

template <Number T>
constexpr Objective<T> objective(T s1, T s2) noexcept {
  return s1 >= s2 ? Objective<T>{s1 - s2, s1, s2} : Objective<T>{s2 - s1, s2, s1};
}

template <Number T>
constexpr Objective<T> objective(const Partition<T>& p) noexcept {
  return objective(p.s1, p.s2);
}

/// Original indices (0-based, ascending) whose single transfer to the other
/// side strictly decreases |s1 - s2|, evaluated in the instance's arithmetic.
/// An empty result certifies local optimality.
template <Number T>
std::vector<std::size_t> local_optimality_violations(const Instance<T>& instance,
                                                     const Partition<T>& partition);

template <Number T>
bool is_locally_optimal(const Instance<T>& instance, const Partition<T>& partition) {
  return local_optimality_violations(instance, partition).empty();
}

struct PartitionCheck {
  bool valid = true;
  std::optional<std::size_t> bad_index;  // 0-based; absent for a length mismatch
  std::string reason;
};

/// Validates a raw assignment (entries must be 1 or 2) against an instance size.
PartitionCheck check_partition(std::size_t n, std::span<const std::int64_t> assignment);

/// Converts a raw 1/2 assignment to sides, throwing InputError if invalid.
std::vector<Side> to_sides(std::size_t n, std::span<const std::int64_t> assignment);

template <Number T>
struct AlgoReport {
  std::string algorithm;
  Objective<T> objective;
  bool locally_optimal = false;
  std::size_t transfers = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Report for a finished solve. Local optimality is always recomputed here.
template <Number T>
AlgoReport<T> make_report(std::string algorithm, const Instance<T>& instance,
                          const Partition<T>& partition, std::size_t transfers,
                          std::chrono::nanoseconds elapsed);

}  // namespace lopart
