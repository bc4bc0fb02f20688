#include "lopart/core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lopart/kernels.hpp"

namespace lopart {

std::string_view to_string(Mode mode) { return mode == Mode::integer ? "int" : "float"; }

namespace {

std::int64_t checked_magnitude_total(std::span<const std::int64_t> values) {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::int64_t v = values[i];
    if (v == std::numeric_limits<std::int64_t>::min() ||
        __builtin_add_overflow(acc, v < 0 ? -v : v, &acc) || acc > kMax / 2) {
      throw InputError("integer instance too large: twice the absolute sum overflows int64 at index " +
                       std::to_string(i + 1));
    }
  }
  return acc;
}

}  // namespace

template <Number T>
Instance<T>::Instance(std::vector<T> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("instance must contain at least one value");
  if constexpr (mode == Mode::integer) {
    checked_magnitude_total(values_);
  } else {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw InputError("non-finite value at index " + std::to_string(i + 1));
      }
    }
  }
  for (T v : values_) total_ += v;
}

template <Number T>
std::pair<T, T> partition_sums(const Instance<T>& instance, std::span<const Side> sides) {
  if (sides.size() != instance.size()) {
    throw InputError("assignment length " + std::to_string(sides.size()) +
                     " does not match instance size " + std::to_string(instance.size()));
  }
  T s1{};
  T s2{};
  for (std::size_t i = 0; i < sides.size(); ++i) {
    switch (sides[i]) {
      case Side::first:
        s1 += instance[i];
        break;
      case Side::second:
        s2 += instance[i];
        break;
      default:
        throw InputError("invalid side at index " + std::to_string(i + 1));
    }
  }
  return {s1, s2};
}

template <Number T>
Partition<T> make_partition(const Instance<T>& instance, std::vector<Side> sides) {
  const auto [s1, s2] = partition_sums(instance, std::span<const Side>(sides));
  return Partition<T>{std::move(sides), s1, s2};
}

template <Number T>
std::vector<std::size_t> local_optimality_violations(const Instance<T>& instance,
                                                     const Partition<T>& partition) {
  const auto [s1, s2] = partition_sums(instance, std::span<const Side>(partition.sides));
  const std::size_t n = instance.size();
  // Transferring element i changes s1 - s2 by -2 * signed[i].
  std::vector<T> signed_values(n);
  for (std::size_t i = 0; i < n; ++i) {
    signed_values[i] = partition.sides[i] == Side::first ? instance[i] : -instance[i];
  }
  const auto& k = kernels::active();
  std::vector<std::uint8_t> flags(n);
  if constexpr (mode_of<T> == Mode::integer) {
    k.improving_i64(signed_values, s1 - s2, flags);
  } else {
    k.improving_f64(signed_values, s1 - s2, flags);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (flags[i]) out.push_back(i);
  }
  return out;
}

PartitionCheck check_partition(std::size_t n, std::span<const std::int64_t> assignment) {
  if (assignment.size() != n) {
    return {false, std::nullopt,
            "length mismatch: assignment has " + std::to_string(assignment.size()) +
                " entries, instance has " + std::to_string(n)};
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (assignment[i] != 1 && assignment[i] != 2) {
      return {false, i,
              "bad side " + std::to_string(assignment[i]) + " at index " + std::to_string(i + 1)};
    }
  }
  return {};
}

std::vector<Side> to_sides(std::size_t n, std::span<const std::int64_t> assignment) {
  const PartitionCheck check = check_partition(n, assignment);
  if (!check.valid) throw InputError(check.reason);
  std::vector<Side> sides(n);
  for (std::size_t i = 0; i < n; ++i) sides[i] = static_cast<Side>(assignment[i]);
  return sides;
}

template <Number T>
AlgoReport<T> make_report(std::string algorithm, const Instance<T>& instance,
                          const Partition<T>& partition, std::size_t transfers,
                          std::chrono::nanoseconds elapsed) {
  AlgoReport<T> report;
  report.algorithm = std::move(algorithm);
  report.objective = objective(partition);
  report.locally_optimal = is_locally_optimal(instance, partition);
  report.transfers = transfers;
  report.elapsed = elapsed;
  return report;
}

#define LOPART_INSTANTIATE(T)                                                               \
  template class Instance<T>;                                                               \
  template std::pair<T, T> partition_sums(const Instance<T>&, std::span<const Side>);       \
  template Partition<T> make_partition(const Instance<T>&, std::vector<Side>);              \
  template std::vector<std::size_t> local_optimality_violations(const Instance<T>&,         \
                                                                const Partition<T>&);       \
  template AlgoReport<T> make_report(std::string, const Instance<T>&, const Partition<T>&,  \
                                     std::size_t, std::chrono::nanoseconds);

LOPART_INSTANTIATE(std::int64_t)
LOPART_INSTANTIATE(double)

#undef LOPART_INSTANTIATE

}  // namespace lopart
