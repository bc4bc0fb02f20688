#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; SIMD variants must produce bit-identical results and are
// selected once at runtime from the CPU's feature set.
//
// Set LOPART_ISA=scalar in the environment to force the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lopart::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  /// Wrapping sum. Callers guarantee the true sum fits.
  std::int64_t (*sum_i64)(std::span<const std::int64_t> values);

  /// flags[i] = |diff - 2 * signed_values[i]| < |diff|.
  void (*improving_i64)(std::span<const std::int64_t> signed_values, std::int64_t diff,
                        std::span<std::uint8_t> flags);
  void (*improving_f64)(std::span<const double> signed_values, double diff,
                        std::span<std::uint8_t> flags);

  /// dst = src | (src << shift) over a little-endian bitset of 64-bit words;
  /// bits shifted past the top word are dropped. dst may alias src.
  void (*shift_or)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                   std::size_t shift);

  /// dst[i] = src[i] + offset.
  void (*offset_i64)(std::span<std::int64_t> dst, std::span<const std::int64_t> src,
                     std::int64_t offset);
};

const KernelTable& scalar_table() noexcept;

/// Null when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* table_for(Isa isa) noexcept;

/// The table used by the solvers; resolved on first use.
const KernelTable& active() noexcept;

namespace detail {
#if defined(LOPART_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
}  // namespace detail

}  // namespace lopart::kernels
