#include <cmath>
#include <cstdlib>

#include "lopart/kernels.hpp"

namespace lopart::kernels {
namespace {

std::int64_t sum_i64(std::span<const std::int64_t> values) {
  std::uint64_t acc = 0;
  for (std::int64_t v : values) acc += static_cast<std::uint64_t>(v);
  return static_cast<std::int64_t>(acc);
}

void improving_i64(std::span<const std::int64_t> signed_values, std::int64_t diff,
                   std::span<std::uint8_t> flags) {
  const std::int64_t ref = std::llabs(diff);
  for (std::size_t i = 0; i < signed_values.size(); ++i) {
    flags[i] = std::llabs(diff - 2 * signed_values[i]) < ref;
  }
}

void improving_f64(std::span<const double> signed_values, double diff,
                   std::span<std::uint8_t> flags) {
  const double ref = std::fabs(diff);
  for (std::size_t i = 0; i < signed_values.size(); ++i) {
    flags[i] = std::fabs(diff - 2.0 * signed_values[i]) < ref;
  }
}

void shift_or(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
              std::size_t shift) {
  const std::size_t n = src.size();
  const std::size_t words = shift / 64;
  const unsigned bits = static_cast<unsigned>(shift % 64);
  // Descending so that dst may alias src: word i only reads words <= i.
  for (std::size_t i = n; i-- > 0;) {
    std::uint64_t moved = 0;
    if (i >= words) {
      moved = src[i - words] << bits;
      if (bits != 0 && i >= words + 1) moved |= src[i - words - 1] >> (64 - bits);
    }
    dst[i] = src[i] | moved;
  }
}

void offset_i64(std::span<std::int64_t> dst, std::span<const std::int64_t> src,
                std::int64_t offset) {
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] + offset;
}

constexpr KernelTable kScalar{
    Isa::scalar, sum_i64, improving_i64, improving_f64, shift_or, offset_i64,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace lopart::kernels
