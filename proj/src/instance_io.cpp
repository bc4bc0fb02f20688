#include "lopart/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace lopart {

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform_int:
      return "uniform-int";
    case Distribution::uniform_real:
      return "uniform-real";
    case Distribution::mixed_sign_int:
      return "mixed-sign-int";
    case Distribution::high_precision_real:
      return "high-precision-real";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  for (Distribution d : {Distribution::uniform_int, Distribution::uniform_real,
                         Distribution::mixed_sign_int, Distribution::high_precision_real}) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

GenSpec default_spec(Distribution d, std::size_t n, std::uint64_t seed) {
  GenSpec spec{n, d, 1, 1000, seed};
  switch (d) {
    case Distribution::uniform_int:
      break;
    case Distribution::mixed_sign_int:
      spec.lo = -1000;
      spec.hi = 1000;
      break;
    case Distribution::uniform_real:
    case Distribution::high_precision_real:
      spec.lo = 0;
      spec.hi = 1;
      break;
  }
  return spec;
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  // Reject the low 2^64 mod span draws so the remainder is unbiased.
  const std::uint64_t threshold = (0 - span) % span;
  std::uint64_t r = next();
  while (r < threshold) r = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + r % span);
}

double SplitMix64::unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

std::int64_t integral_bound(double v, const char* name) {
  constexpr double kLimit = 9007199254740992.0;  // 2^53
  if (!std::isfinite(v) || std::trunc(v) != v || std::fabs(v) > kLimit) {
    throw InputError(std::string("integer distribution needs an integral ") + name +
                     " with magnitude at most 2^53");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

AnyInstance generate(const GenSpec& spec) {
  if (spec.n == 0) throw InputError("n must be at least 1");
  if (!(spec.lo <= spec.hi)) throw InputError("invalid range: lo must not exceed hi");
  SplitMix64 rng(spec.seed);
  switch (spec.distribution) {
    case Distribution::uniform_int:
    case Distribution::mixed_sign_int: {
      const std::int64_t lo = integral_bound(spec.lo, "lo");
      const std::int64_t hi = integral_bound(spec.hi, "hi");
      if (spec.distribution == Distribution::mixed_sign_int && !(lo < 0 && hi > 0)) {
        throw InputError("invalid range: mixed-sign-int needs lo < 0 < hi");
      }
      std::vector<std::int64_t> values(spec.n);
      for (auto& v : values) v = rng.uniform_int(lo, hi);
      return IntInstance(std::move(values));
    }
    case Distribution::uniform_real:
    case Distribution::high_precision_real: {
      if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi)) throw InputError("invalid range");
      const bool rounded = spec.distribution == Distribution::uniform_real;
      std::vector<double> values(spec.n);
      for (auto& v : values) {
        v = spec.lo + (spec.hi - spec.lo) * rng.unit();
        // uniform-real keeps six decimals so instance files stay short.
        if (rounded) v = std::round(v * 1e6) / 1e6;
      }
      return RealInstance(std::move(values));
    }
  }
  throw InputError("unknown distribution");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view strip_plus(std::string_view s) {
  if (s.size() > 1 && s.front() == '+' && s[1] != '-' && s[1] != '+') s.remove_prefix(1);
  return s;
}

bool looks_integral(std::string_view s) {
  s = strip_plus(s);
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::int64_t parse_int_literal(std::string_view s, std::size_t line) {
  s = strip_plus(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line, "integer literal '" + std::string(s) + "' overflows int64");
  }
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "malformed integer literal '" + std::string(s) + "'");
  }
  return v;
}

double parse_real_literal(std::string_view s, std::size_t line) {
  s = strip_plus(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(line, "malformed numeric literal '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

AnyInstance parse_instance(std::string_view text, ModeRequest mode) {
  struct Token {
    std::string_view literal;
    std::size_t line;
  };
  std::vector<Token> tokens;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) tokens.push_back({line, line_no});
  }
  if (tokens.empty()) throw ParseError(0, "empty instance: no values found");

  bool integral = mode == ModeRequest::integer;
  if (mode == ModeRequest::automatic) {
    integral = true;
    for (const Token& t : tokens) {
      if (!looks_integral(t.literal)) {
        parse_real_literal(t.literal, t.line);  // reports malformed literals
        integral = false;
      }
    }
  }
  if (integral) {
    std::vector<std::int64_t> values;
    values.reserve(tokens.size());
    for (const Token& t : tokens) values.push_back(parse_int_literal(t.literal, t.line));
    return IntInstance(std::move(values));
  }
  std::vector<double> values;
  values.reserve(tokens.size());
  for (const Token& t : tokens) values.push_back(parse_real_literal(t.literal, t.line));
  return RealInstance(std::move(values));
}

namespace {

void append_number(std::string& out, std::int64_t v) { out += std::to_string(v); }

void append_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

std::string serialize_instance(const AnyInstance& instance) {
  std::string out;
  std::visit(
      [&](const auto& inst) {
        for (auto v : inst.values()) {
          append_number(out, v);
          out += '\n';
        }
      },
      instance);
  return out;
}

std::vector<std::int64_t> parse_assignment(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("assignment is not valid JSON: ") + e.what());
  }
  const nlohmann::json* arr = &doc;
  if (doc.is_object()) {
    const auto it = doc.find("assignment");
    if (it == doc.end()) throw InputError("assignment object has no \"assignment\" field");
    arr = &*it;
  }
  if (!arr->is_array()) throw InputError("assignment must be a JSON array of 1/2 entries");
  std::vector<std::int64_t> out;
  out.reserve(arr->size());
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const auto& e = (*arr)[i];
    if (!e.is_number_integer()) {
      throw InputError("assignment entry " + std::to_string(i + 1) + " is not an integer");
    }
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

namespace {

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

template <Number T>
std::string serialize_result(const AlgoReport<T>& report, const Partition<T>& partition,
                             const SolveTrace<T>* trace) {
  std::string out = "{\n";
  const auto field = [&](std::string_view key) {
    out += "  ";
    out += json_string(key);
    out += ": ";
  };
  const auto number = [&](std::string_view key, T v) {
    field(key);
    append_number(out, v);
    out += ",\n";
  };
  field("algorithm");
  out += json_string(report.algorithm) + ",\n";
  field("n");
  out += std::to_string(partition.sides.size()) + ",\n";
  field("mode");
  out += json_string(to_string(mode_of<T>)) + ",\n";
  number("s1", partition.s1);
  number("s2", partition.s2);
  number("diff", report.objective.diff);
  number("max_sum", report.objective.max_sum);
  number("min_sum", report.objective.min_sum);
  field("locally_optimal");
  out += report.locally_optimal ? "true,\n" : "false,\n";
  field("transfers");
  out += std::to_string(report.transfers) + ",\n";
  field("elapsed_ns");
  out += std::to_string(report.elapsed.count()) + ",\n";
  field("assignment");
  out += '[';
  for (std::size_t i = 0; i < partition.sides.size(); ++i) {
    if (i) out += ',';
    out += partition.sides[i] == Side::first ? '1' : '2';
  }
  out += ']';
  if (trace != nullptr) {
    out += ",\n";
    field("trace");
    out += '[';
    for (std::size_t i = 0; i < trace->steps.size(); ++i) {
      const TraceStep<T>& s = trace->steps[i];
      out += i ? ",\n    " : "\n    ";
      out += "{\"index\": " + std::to_string(s.index + 1) + ", \"value\": ";
      append_number(out, s.value);
      out += ", \"diff_after\": ";
      append_number(out, s.diff_after);
      out += '}';
    }
    out += trace->steps.empty() ? "]" : "\n  ]";
  }
  out += "\n}\n";
  return out;
}

template std::string serialize_result(const AlgoReport<std::int64_t>&, const Partition<std::int64_t>&,
                                      const SolveTrace<std::int64_t>*);
template std::string serialize_result(const AlgoReport<double>&, const Partition<double>&,
                                      const SolveTrace<double>*);

}  // namespace lopart
