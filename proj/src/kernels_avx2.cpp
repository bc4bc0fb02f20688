// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "lopart/kernels.hpp"

namespace lopart::kernels {
namespace {

const KernelTable& scalar() { return scalar_table(); }

std::int64_t sum_i64(std::span<const std::int64_t> values) {
  const std::size_t n = values.size();
  const std::int64_t* p = values.data();
  __m256i acc0 = _mm256_setzero_si256();
  __m256i acc1 = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_epi64(acc0, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i)));
    acc1 = _mm256_add_epi64(acc1, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i + 4)));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), _mm256_add_epi64(acc0, acc1));
  std::uint64_t acc = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) acc += static_cast<std::uint64_t>(p[i]);
  return static_cast<std::int64_t>(acc);
}

// Packs the sign bits of four 64-bit lanes into four 0/1 bytes.
inline void store_flags(std::uint8_t* out, __m256i mask) {
  const int bits = _mm256_movemask_pd(_mm256_castsi256_pd(mask));
  out[0] = static_cast<std::uint8_t>(bits & 1);
  out[1] = static_cast<std::uint8_t>((bits >> 1) & 1);
  out[2] = static_cast<std::uint8_t>((bits >> 2) & 1);
  out[3] = static_cast<std::uint8_t>((bits >> 3) & 1);
}

// For exact integers |d - 2t| < |d| holds iff t lies strictly between 0 and d.
void improving_i64(std::span<const std::int64_t> signed_values, std::int64_t diff,
                   std::span<std::uint8_t> flags) {
  const std::size_t n = signed_values.size();
  const std::int64_t* p = signed_values.data();
  if (diff == 0) {
    for (std::size_t i = 0; i < n; ++i) flags[i] = 0;
    return;
  }
  const __m256i zero = _mm256_setzero_si256();
  const __m256i d = _mm256_set1_epi64x(diff);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i t = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    __m256i m;
    if (diff > 0) {
      m = _mm256_and_si256(_mm256_cmpgt_epi64(t, zero), _mm256_cmpgt_epi64(d, t));
    } else {
      m = _mm256_and_si256(_mm256_cmpgt_epi64(zero, t), _mm256_cmpgt_epi64(t, d));
    }
    store_flags(flags.data() + i, m);
  }
  if (i < n) scalar().improving_i64(signed_values.subspan(i), diff, flags.subspan(i));
}

void improving_f64(std::span<const double> signed_values, double diff,
                   std::span<std::uint8_t> flags) {
  const std::size_t n = signed_values.size();
  const double* p = signed_values.data();
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d d = _mm256_set1_pd(diff);
  const __m256d ref = _mm256_and_pd(d, abs_mask);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(p + i);
    const __m256d moved = _mm256_sub_pd(d, _mm256_add_pd(t, t));
    const __m256d m = _mm256_cmp_pd(_mm256_and_pd(moved, abs_mask), ref, _CMP_LT_OQ);
    store_flags(flags.data() + i, _mm256_castpd_si256(m));
  }
  if (i < n) scalar().improving_f64(signed_values.subspan(i), diff, flags.subspan(i));
}

void shift_or(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
              std::size_t shift) {
  const std::size_t n = src.size();
  const std::size_t words = shift / 64;
  const __m128i left = _mm_cvtsi64_si128(static_cast<long long>(shift % 64));
  const __m128i right = _mm_cvtsi64_si128(static_cast<long long>(64 - shift % 64));
  // Full blocks whose carry word src[b - words - 1] exists, top-down so that
  // in-place updates only ever read words not yet written.
  std::size_t top = n;
  while (top >= 4 && top - 4 >= words + 1) {
    const std::size_t b = top - 4;
    const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + b));
    const __m256i hi =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + b - words));
    const __m256i lo =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + b - words - 1));
    // A right shift by 64 yields zero, which covers shift % 64 == 0.
    const __m256i moved = _mm256_or_si256(_mm256_sll_epi64(hi, left), _mm256_srl_epi64(lo, right));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + b), _mm256_or_si256(cur, moved));
    top = b;
  }
  if (top > 0) scalar().shift_or(dst.first(top), src.first(top), shift);
}

void offset_i64(std::span<std::int64_t> dst, std::span<const std::int64_t> src,
                std::int64_t offset) {
  const std::size_t n = src.size();
  const __m256i o = _mm256_set1_epi64x(offset);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), _mm256_add_epi64(v, o));
  }
  for (; i < n; ++i) dst[i] = src[i] + offset;
}

constexpr KernelTable kAvx2{
    Isa::avx2, sum_i64, improving_i64, improving_f64, shift_or, offset_i64,
};

}  // namespace

namespace detail {
const KernelTable& avx2_table() noexcept { return kAvx2; }
}  // namespace detail

}  // namespace lopart::kernels
