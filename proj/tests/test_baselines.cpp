#include <doctest.h>

#include <random>

#include "lopart/baselines.hpp"
#include "oracles.hpp"

using namespace lopart;

namespace {

const std::vector<std::int64_t> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

std::int64_t diff_of(const Partition<std::int64_t>& p) { return objective(p).diff; }

void check_consistent(const IntInstance& inst, const BaselineResult<std::int64_t>& r) {
  REQUIRE(r.partition.has_value());
  const auto [s1, s2] = partition_sums(inst, r.partition->sides);
  CHECK(s1 == r.partition->s1);
  CHECK(s2 == r.partition->s2);
  CHECK(diff_of(*r.partition) == r.diff);
}

}  // namespace

TEST_CASE("greedy") {
  const IntInstance primes(kPrimes);
  const auto p = greedy(primes);
  CHECK(objective(p).max_sum == 65);
  CHECK(diff_of(p) == 1);
  CHECK(diff_of(greedy(IntInstance({8, 7, 6, 5}))) == 0);
  const auto one = greedy(IntInstance({7}));
  CHECK(one.sides == std::vector<Side>{Side::first});
  CHECK(diff_of(one) == 7);
  // Equal running sums (the first placement) go to side 1.
  CHECK(greedy(IntInstance({3, 5, 2})).sides == std::vector<Side>{Side::second, Side::first, Side::second});
}

TEST_CASE("kk") {
  const auto r = kk(IntInstance(kPrimes));
  CHECK(r.residual == 1);
  CHECK(diff_of(r.partition) == 1);
  CHECK(kk(IntInstance({4, 4})).residual == 0);
  const auto r3 = kk(IntInstance({5, 6, 10}));
  CHECK(r3.residual == 1);
  CHECK(diff_of(r3.partition) == 1);

  // The reconstructed partition always realises the residual.
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const auto xs = oracle::random_ints(rng, 1 + rng() % 80, -1000, 1000);
    const IntInstance inst(xs);
    const auto k = kk(inst);
    CHECK(diff_of(k.partition) == k.residual);
    const auto [s1, s2] = partition_sums(inst, k.partition.sides);
    CHECK(s1 == k.partition.s1);
    CHECK(s2 == k.partition.s2);
  }
}

TEST_CASE("dp_optimal") {
  const IntInstance primes(kPrimes);
  const auto r = dp_optimal(primes);
  CHECK(r.diff == 1);
  check_consistent(primes, r);
  CHECK(dp_optimal(IntInstance({1, 2, 3})).diff == 0);
  CHECK(dp_optimal(IntInstance({1, 1, 3})).diff == 1);
  CHECK(dp_optimal(IntInstance({0, 0})).diff == 0);
  CHECK(dp_optimal(IntInstance({-4, 1, 2})).diff == 1);

  SUBCASE("diff-only when rows do not fit") {
    DpOptions o;
    o.memory_budget_bits = 0;
    const auto d = dp_optimal(primes, o);
    CHECK(d.diff == 1);
    CHECK_FALSE(d.partition.has_value());
  }
  SUBCASE("work budget") {
    DpOptions o;
    o.work_budget_bits = 100;
    CHECK_THROWS_AS(dp_optimal(primes, o), CapExceeded);
  }
}

TEST_CASE("DPRow") {
  DPRow row(20);
  CHECK(row.test(0));
  CHECK_FALSE(row.test(5));
  row.add(5);
  row.add(7);
  for (std::uint64_t c = 0; c <= 20; ++c) {
    CHECK(row.test(c) == (c == 0 || c == 5 || c == 7 || c == 12));
  }
}

TEST_CASE("hs") {
  const IntInstance primes(kPrimes);
  const auto r = hs(primes);
  CHECK(r.diff == 1);
  check_consistent(primes, r);
  CHECK(hs(IntInstance({2, 3, 5})).diff == 0);
  CHECK(hs(IntInstance({10, 4})).diff == 6);
  CHECK(hs(IntInstance({9})).diff == 9);
  CHECK_THROWS_AS(hs(IntInstance(std::vector<std::int64_t>(10, 1)), 8), CapExceeded);

  SUBCASE("prepared state") {
    const HSState s = hs_prepare(primes);
    CHECK(s.total == 129);
    CHECK(s.twice_s_star() == 129);
    CHECK(s.s_upper == 65);  // greedy seed
    CHECK(s.s_lower == 64);
    CHECK(s.list_a.sums.size() == 32);
    CHECK(s.list_b.sums.size() == 32);
    CHECK(std::is_sorted(s.list_a.sums.begin(), s.list_a.sums.end()));
    CHECK(std::is_sorted(s.list_b.sums.rbegin(), s.list_b.sums.rend()));
    CHECK(s.list_a.sums.size() == s.list_a.masks.size());
  }
}

TEST_CASE("brute_force") {
  CHECK(brute_force(IntInstance({2, 3, 5})).diff == 0);
  const auto r = brute_force(IntInstance({5, 6, 10}));
  CHECK(r.diff == 1);
  REQUIRE(r.partition.has_value());
  CHECK(r.partition->sides == std::vector<Side>{Side::first, Side::first, Side::second});
  CHECK(brute_force(IntInstance(kPrimes)).diff == 1);
  CHECK_THROWS_AS(brute_force(IntInstance(std::vector<std::int64_t>(6, 1)), 5), CapExceeded);

  const auto f = brute_force(RealInstance({0.5, 0.25, 0.25, 1.0}));
  CHECK(f.diff == 0.0);
  REQUIRE(f.partition.has_value());
  CHECK(f.partition->sides[0] == Side::first);
}

TEST_CASE("exact methods agree with enumeration") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 14;
    const auto xs = oracle::random_ints(rng, n, t % 2 ? -200 : 1, 200);
    const IntInstance inst(xs);
    const std::int64_t opt = oracle::optimum(xs);
    const auto b = brute_force(inst);
    const auto d = dp_optimal(inst);
    const auto h = hs(inst);
    CHECK(b.diff == opt);
    CHECK(d.diff == opt);
    CHECK(h.diff == opt);
    check_consistent(inst, b);
    check_consistent(inst, d);
    check_consistent(inst, h);
    CHECK(b.partition->sides[0] == Side::first);
    CHECK(diff_of(greedy(inst)) >= opt);
    CHECK(kk(inst).residual >= opt);
  }
}

TEST_CASE("greedy quality on positive inputs") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 14;
    const auto xs = oracle::random_ints(rng, n, 1, 500);
    const IntInstance inst(xs);
    const std::int64_t opt = oracle::optimum(xs);
    const auto g = objective(greedy(inst));
    const std::int64_t opt_max = (inst.total() + opt) / 2;
    CHECK(3 * g.max_sum <= 4 * opt_max);
    if (n <= 4) CHECK(g.diff == opt);
  }
}
