#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "lopart/kernels.hpp"

using namespace lopart::kernels;

namespace {

// Every compiled-in, CPU-supported variant other than the reference.
std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> out;
  if (const KernelTable* t = table_for(Isa::avx2)) out.push_back(t);
  return out;
}

const std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 9, 31, 64, 257, 1000};

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(table_for(Isa::scalar) == &scalar_table());
  CHECK(scalar_table().isa == Isa::scalar);
  MESSAGE("active kernels: " << to_string(active().isa));
  if (variants().empty()) MESSAGE("no SIMD variant available; equivalence tests are vacuous");
}

TEST_CASE("sum_i64 variants match the reference") {
  std::mt19937_64 rng(1);
  for (const KernelTable* k : variants()) {
    for (std::size_t n : kLengths) {
      std::vector<std::int64_t> v(n);
      for (auto& x : v) x = static_cast<std::int64_t>(rng() >> 8) - (std::int64_t{1} << 55);
      CHECK(k->sum_i64(v) == scalar_table().sum_i64(v));
    }
  }
}

TEST_CASE("improving_i64 variants match the reference") {
  std::mt19937_64 rng(2);
  for (const KernelTable* k : variants()) {
    for (std::size_t n : kLengths) {
      for (std::int64_t diff : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1}, std::int64_t{37},
                                std::int64_t{-37}, std::int64_t{1} << 40}) {
        std::vector<std::int64_t> v(n);
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % 101) - 50;
        // Boundary values: 0, +-diff.
        if (n >= 3) {
          v[0] = 0;
          v[1] = diff;
          v[2] = -diff;
        }
        std::vector<std::uint8_t> a(n, 7), b(n, 9);
        scalar_table().improving_i64(v, diff, a);
        k->improving_i64(v, diff, b);
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("improving_f64 variants match the reference bit for bit") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const KernelTable* k : variants()) {
    for (std::size_t n : kLengths) {
      for (double diff : {0.0, -0.0, 1e-300, 3.75, -3.75, 1e17, 0.1 + 0.2}) {
        std::vector<double> v(n);
        for (auto& x : v) x = u(rng);
        if (n >= 4) {
          v[0] = diff;
          v[1] = -diff;
          v[2] = diff / 2;
          v[3] = std::nextafter(diff, 0.0);
        }
        std::vector<std::uint8_t> a(n, 7), b(n, 9);
        scalar_table().improving_f64(v, diff, a);
        k->improving_f64(v, diff, b);
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("shift_or reference matches a per-bit model") {
  std::mt19937_64 rng(4);
  for (std::size_t words : {1u, 2u, 5u, 9u}) {
    for (std::size_t shift : {0u, 1u, 63u, 64u, 65u, 127u, 128u, 200u, 1000u}) {
      std::vector<std::uint64_t> src(words);
      for (auto& w : src) w = rng() & rng();
      const std::size_t bits = words * 64;
      std::vector<std::uint64_t> expect = src;
      for (std::size_t b = 0; b + shift < bits; ++b) {
        if ((src[b / 64] >> (b % 64)) & 1U) expect[(b + shift) / 64] |= std::uint64_t{1} << ((b + shift) % 64);
      }
      std::vector<std::uint64_t> dst(words);
      scalar_table().shift_or(dst, src, shift);
      CHECK(dst == expect);
      std::vector<std::uint64_t> inplace = src;
      scalar_table().shift_or(inplace, inplace, shift);
      CHECK(inplace == expect);
    }
  }
}

TEST_CASE("shift_or variants match the reference, including in place") {
  std::mt19937_64 rng(5);
  for (const KernelTable* k : variants()) {
    for (std::size_t words : {1u, 3u, 4u, 5u, 8u, 13u, 64u, 101u}) {
      for (std::size_t shift : {0u, 1u, 5u, 63u, 64u, 65u, 191u, 256u, 300u, 4000u, 7000u}) {
        std::vector<std::uint64_t> src(words);
        for (auto& w : src) w = rng();
        std::vector<std::uint64_t> a(words), b(words);
        scalar_table().shift_or(a, src, shift);
        k->shift_or(b, src, shift);
        CHECK(a == b);
        std::vector<std::uint64_t> c = src;
        k->shift_or(c, c, shift);
        CHECK(a == c);
      }
    }
  }
}

TEST_CASE("offset_i64 variants match the reference") {
  std::mt19937_64 rng(6);
  for (const KernelTable* k : variants()) {
    for (std::size_t n : kLengths) {
      std::vector<std::int64_t> src(n);
      for (auto& x : src) x = static_cast<std::int64_t>(rng() % 1000000);
      std::vector<std::int64_t> a(n), b(n);
      scalar_table().offset_i64(a, src, 12345);
      k->offset_i64(b, src, 12345);
      CHECK(a == b);
    }
  }
}
