#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <random>

#include "lopart/instance_io.hpp"
#include "lopart/local_solvers.hpp"

using namespace lopart;

TEST_CASE("SplitMix64 reference stream") {
  // First outputs for seed 0 of the published reference implementation.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("generate") {
  SUBCASE("deterministic per seed") {
    const auto spec = default_spec(Distribution::uniform_int, 50, 9);
    CHECK(serialize_instance(generate(spec)) == serialize_instance(generate(spec)));
    auto other = spec;
    other.seed = 10;
    CHECK(serialize_instance(generate(spec)) != serialize_instance(generate(other)));
  }
  SUBCASE("ranges and modes") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto ui = std::get<IntInstance>(generate(default_spec(Distribution::uniform_int, 100, seed)));
      for (auto v : ui.values()) CHECK((v >= 1 && v <= 1000));
      const auto ms = std::get<IntInstance>(generate(default_spec(Distribution::mixed_sign_int, 100, seed)));
      for (auto v : ms.values()) CHECK((v >= -1000 && v <= 1000));
      const auto ur = std::get<RealInstance>(generate(default_spec(Distribution::uniform_real, 100, seed)));
      for (auto v : ur.values()) {
        CHECK((v >= 0.0 && v <= 1.0));
        CHECK(std::round(v * 1e6) / 1e6 == v);
      }
      const auto hp =
          std::get<RealInstance>(generate(default_spec(Distribution::high_precision_real, 100, seed)));
      for (auto v : hp.values()) CHECK((v >= 0.0 && v < 1.0));
    }
  }
  SUBCASE("custom bounds") {
    GenSpec s{200, Distribution::uniform_int, 5, 5, 1};
    const auto inst = std::get<IntInstance>(generate(s));
    for (auto v : inst.values()) CHECK(v == 5);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(generate({0, Distribution::uniform_int, 1, 10, 0}), InputError);
    CHECK_THROWS_AS(generate({5, Distribution::uniform_int, 10, 1, 0}), InputError);
    CHECK_THROWS_AS(generate({5, Distribution::uniform_int, 0.5, 10, 0}), InputError);
    CHECK_THROWS_AS(generate({5, Distribution::mixed_sign_int, 1, 10, 0}), InputError);
  }
  CHECK(parse_distribution("mixed-sign-int") == Distribution::mixed_sign_int);
  CHECK_FALSE(parse_distribution("normal").has_value());
}

TEST_CASE("parse_instance") {
  SUBCASE("integers with comments and blanks") {
    const auto any = parse_instance("# primes\n2\n\n3  # odd\n+5\n-7\n");
    const auto& inst = std::get<IntInstance>(any);
    CHECK(std::vector<std::int64_t>(inst.values().begin(), inst.values().end()) ==
          std::vector<std::int64_t>{2, 3, 5, -7});
  }
  SUBCASE("one real literal switches to real mode") {
    const auto any = parse_instance("1\n2.5\n-3e-1\n");
    const auto& inst = std::get<RealInstance>(any);
    CHECK(inst[1] == 2.5);
    CHECK(inst[2] == -0.3);
  }
  SUBCASE("forced modes") {
    CHECK(std::holds_alternative<RealInstance>(parse_instance("1\n2\n", ModeRequest::real)));
    CHECK_THROWS_AS(parse_instance("1\n2.5\n", ModeRequest::integer), ParseError);
  }
  SUBCASE("errors carry line numbers") {
    try {
      parse_instance("abc\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    try {
      parse_instance("1\n# c\n2 3\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_instance("# nothing\n\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("99999999999999999999\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("nan\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("1e999\n"), ParseError);
  }
}

TEST_CASE("serialize_instance round trip") {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Distribution d : {Distribution::uniform_int, Distribution::mixed_sign_int,
                           Distribution::uniform_real, Distribution::high_precision_real}) {
      const AnyInstance a = generate(default_spec(d, 1 + rng() % 50, seed));
      const std::string text = serialize_instance(a);
      const AnyInstance b = parse_instance(text);
      CHECK(a.index() == b.index());
      CHECK(serialize_instance(b) == text);
      std::visit(
          [&](const auto& x) {
            using I = std::decay_t<decltype(x)>;
            const auto& y = std::get<I>(b);
            REQUIRE(x.size() == y.size());
            for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == y[i]);
          },
          a);
    }
  }
}

TEST_CASE("parse_assignment") {
  CHECK(parse_assignment("[1,2,1]") == std::vector<std::int64_t>{1, 2, 1});
  CHECK(parse_assignment(R"({"diff": 3, "assignment": [2, 1]})") == std::vector<std::int64_t>{2, 1});
  CHECK_THROWS_AS(parse_assignment("[1,"), InputError);
  CHECK_THROWS_AS(parse_assignment(R"({"x": 1})"), InputError);
  CHECK_THROWS_AS(parse_assignment("[1, \"2\"]"), InputError);
  CHECK_THROWS_AS(parse_assignment("7"), InputError);
}

TEST_CASE("serialize_result") {
  const IntInstance inst({2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  const auto r = solve_v1(inst);
  const auto report = make_report("v1", inst, r.partition, r.trace.steps.size(), std::chrono::nanoseconds{42});
  const std::string text = serialize_result(report, r.partition, &r.trace);
  const auto j = nlohmann::ordered_json::parse(text);

  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"algorithm", "n", "mode", "s1", "s2", "diff", "max_sum", "min_sum",
                                         "locally_optimal", "transfers", "elapsed_ns", "assignment", "trace"});
  CHECK(j["algorithm"] == "v1");
  CHECK(j["mode"] == "int");
  CHECK(j["s1"] == 58);
  CHECK(j["s2"] == 71);
  CHECK(j["diff"] == 13);
  CHECK(j["locally_optimal"] == true);
  CHECK(j["elapsed_ns"] == 42);
  CHECK(j["assignment"] == nlohmann::json::array({1, 1, 1, 1, 1, 1, 1, 2, 2, 2}));
  REQUIRE(j["trace"].size() == 3);
  CHECK(j["trace"][0]["index"] == 10);
  CHECK(j["trace"][0]["value"] == 29);
  CHECK(j["trace"][2]["diff_after"] == -13);
  CHECK(parse_assignment(text) == std::vector<std::int64_t>{1, 1, 1, 1, 1, 1, 1, 2, 2, 2});

  const std::string no_trace = serialize_result(report, r.partition);
  CHECK_FALSE(nlohmann::json::parse(no_trace).contains("trace"));

  const RealInstance real({0.1, 0.2});
  const auto rr = solve_v2(real);
  const auto rj = nlohmann::json::parse(
      serialize_result(make_report("v2", real, rr.partition, 0, std::chrono::nanoseconds{0}), rr.partition));
  CHECK(rj["mode"] == "float");
  CHECK(rj["s1"].get<double>() + rj["s2"].get<double>() == doctest::Approx(0.3));
}
