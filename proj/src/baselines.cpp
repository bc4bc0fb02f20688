#include "lopart/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "lopart/kernels.hpp"
#include "lopart/local_solvers.hpp"

namespace lopart {
namespace {

template <Number T>
T magnitude(T v) noexcept {
  if constexpr (mode_of<T> == Mode::integer) {
    return v < 0 ? -v : v;
  } else {
    return std::fabs(v);
  }
}

// Puts working position k on `side` (tilde sign encodes the side).
template <Number T>
void place(SignedWorkingSet<T>& ws, std::size_t k, Side side) {
  const T m = magnitude(ws.tilde[k]);
  ws.tilde[k] = side == Side::first ? m : -m;
}

// Greedy over the working set; returns the larger side sum.
template <Number T>
T greedy_working(SignedWorkingSet<T>& ws) {
  T s1{};
  T s2{};
  for (std::size_t k = ws.size(); k-- > 0;) {
    const T x = magnitude(ws.tilde[k]);
    if (s1 <= s2) {
      s1 += x;
      place(ws, k, Side::first);
    } else {
      s2 += x;
      place(ws, k, Side::second);
    }
  }
  return std::max(s1, s2);
}

}  // namespace

template <Number T>
Partition<T> greedy(const Instance<T>& instance) {
  SignedWorkingSet<T> ws = normalize(instance);
  greedy_working(ws);
  return denormalize(ws, instance);
}

template <Number T>
KkResult<T> kk(const Instance<T>& instance) {
  SignedWorkingSet<T> ws = normalize(instance);
  const std::size_t m = ws.size();
  KkResult<T> result;
  if (m == 0) {
    result.partition = denormalize(ws, instance);
    return result;
  }

  struct Entry {
    T value;
    std::size_t rep;  // working position whose side the value is measured from
    bool operator<(const Entry& o) const {
      return value != o.value ? value < o.value : rep < o.rep;
    }
  };
  std::priority_queue<Entry> heap;
  for (std::size_t k = 0; k < m; ++k) heap.push({ws.tilde[k], k});

  std::vector<std::vector<std::size_t>> opposite(m);
  while (heap.size() > 1) {
    const Entry a = heap.top();
    heap.pop();
    const Entry b = heap.top();
    heap.pop();
    opposite[a.rep].push_back(b.rep);
    opposite[b.rep].push_back(a.rep);
    heap.push({a.value - b.value, a.rep});
  }
  const Entry last = heap.top();
  result.residual = last.value;

  // The edges form a spanning tree; colour it from the surviving
  // representative so that side 1 carries the residual.
  std::vector<std::uint8_t> seen(m, 0);
  std::vector<std::size_t> stack{last.rep};
  seen[last.rep] = 1;
  place(ws, last.rep, Side::first);
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    const Side su = ws.tilde[u] > T{0} ? Side::first : Side::second;
    for (std::size_t v : opposite[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      place(ws, v, other(su));
      stack.push_back(v);
    }
  }
  result.partition = denormalize(ws, instance);
  return result;
}

DPRow::DPRow(std::uint64_t max_sum) : max_sum_(max_sum), words_(max_sum / 64 + 1, 0) {
  words_[0] = 1;
}

void DPRow::add(std::uint64_t x) {
  if (x > max_sum_) return;
  kernels::active().shift_or(words_, words_, static_cast<std::size_t>(x));
}

BaselineResult<std::int64_t> dp_optimal(const IntInstance& instance, const DpOptions& options) {
  SignedWorkingSet<std::int64_t> ws = normalize(instance);
  const std::size_t m = ws.size();
  const std::uint64_t total = static_cast<std::uint64_t>(ws.diff());

  std::uint64_t work = 0;
  if (__builtin_mul_overflow(static_cast<std::uint64_t>(m), total + 1, &work) ||
      work > options.work_budget_bits) {
    throw CapExceeded("dp: n*(S+1) exceeds the work budget of " +
                      std::to_string(options.work_budget_bits) + " bits");
  }
  const std::uint64_t row_bits = (total / 64 + 1) * 64;
  std::uint64_t all_rows = 0;
  const bool keep_rows = !__builtin_mul_overflow(static_cast<std::uint64_t>(m + 1), row_bits, &all_rows) &&
                         all_rows <= options.memory_budget_bits;

  // Rows follow the values in descending order.
  std::vector<DPRow> rows;
  DPRow row(total);
  if (keep_rows) {
    rows.reserve(m + 1);
    rows.push_back(row);
  }
  for (std::size_t k = m; k-- > 0;) {
    row.add(static_cast<std::uint64_t>(ws.tilde[k]));
    if (keep_rows) rows.push_back(row);
  }

  std::uint64_t c = (total + 1) / 2;
  while (!row.test(c)) ++c;  // c == total is always reachable

  BaselineResult<std::int64_t> result;
  result.diff = static_cast<std::int64_t>(2 * c - total);
  if (!keep_rows) return result;

  // Row r holds the r largest values; value r is working position m - r.
  std::uint64_t rem = c;
  for (std::size_t r = m; r >= 1; --r) {
    const std::size_t k = m - r;
    if (rows[r - 1].test(rem)) {
      place(ws, k, Side::second);
    } else {
      place(ws, k, Side::first);
      rem -= static_cast<std::uint64_t>(ws.tilde[k]);
    }
  }
  result.partition = denormalize(ws, instance);
  return result;
}

namespace {

HsList subset_sums(std::span<const std::int64_t> members) {
  const auto& k = kernels::active();
  HsList list;
  list.sums.assign(std::size_t{1} << members.size(), 0);
  list.masks.assign(list.sums.size(), 0);
  std::size_t size = 1;
  for (std::size_t j = 0; j < members.size(); ++j) {
    const std::span<std::int64_t> sums(list.sums);
    k.offset_i64(sums.subspan(size, size), sums.first(size), members[j]);
    for (std::size_t i = 0; i < size; ++i) list.masks[size + i] = list.masks[i] | (std::uint32_t{1} << j);
    size *= 2;
  }
  return list;
}

void sort_list(HsList& list, bool ascending) {
  std::vector<std::size_t> order(list.sums.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (list.sums[a] != list.sums[b]) {
      return ascending ? list.sums[a] < list.sums[b] : list.sums[a] > list.sums[b];
    }
    return list.masks[a] < list.masks[b];
  });
  HsList sorted;
  sorted.sums.reserve(order.size());
  sorted.masks.reserve(order.size());
  for (std::size_t i : order) {
    sorted.sums.push_back(list.sums[i]);
    sorted.masks.push_back(list.masks[i]);
  }
  list = std::move(sorted);
}

void require_hs_cap(const IntInstance& instance, std::size_t cap) {
  if (instance.size() > cap) {
    throw CapExceeded("hs: n = " + std::to_string(instance.size()) + " exceeds the cap of " +
                      std::to_string(cap));
  }
  if (cap > 62) throw CapExceeded("hs: cap above 62 is not supported");
}

// Working values largest first, split into halves A (first ceil(m/2)) and B.
struct Halves {
  std::vector<std::size_t> pos_a;
  std::vector<std::size_t> pos_b;
  std::vector<std::int64_t> val_a;
  std::vector<std::int64_t> val_b;
};

Halves split_halves(const SignedWorkingSet<std::int64_t>& ws) {
  Halves h;
  const std::size_t m = ws.size();
  const std::size_t half = (m + 1) / 2;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t k = m - 1 - r;
    auto& pos = r < half ? h.pos_a : h.pos_b;
    auto& val = r < half ? h.val_a : h.val_b;
    pos.push_back(k);
    val.push_back(ws.tilde[k]);
  }
  return h;
}

}  // namespace

HSState hs_prepare(const IntInstance& instance, std::size_t cap) {
  require_hs_cap(instance, cap);
  SignedWorkingSet<std::int64_t> ws = normalize(instance);
  HSState state;
  state.total = ws.diff();
  const Halves h = split_halves(ws);
  state.list_a = subset_sums(h.val_a);
  state.list_b = subset_sums(h.val_b);
  sort_list(state.list_a, true);
  sort_list(state.list_b, false);
  state.s_upper = greedy_working(ws);
  state.s_lower = state.total - state.s_upper;
  return state;
}

BaselineResult<std::int64_t> hs(const IntInstance& instance, std::size_t cap) {
  require_hs_cap(instance, cap);
  SignedWorkingSet<std::int64_t> ws = normalize(instance);
  const Halves h = split_halves(ws);
  HSState state = hs_prepare(instance, cap);
  const std::int64_t total = state.total;
  const std::int64_t target2 = state.twice_s_star();

  // Best so far: greedy's partition unless the scan finds something better.
  std::int64_t best_diff = 2 * state.s_upper - total;
  std::optional<std::pair<std::size_t, std::size_t>> best_pair;
  const auto record = [&](std::size_t i, std::size_t j, std::int64_t t) {
    const std::int64_t d = 2 * t - total;
    const std::int64_t ad = d < 0 ? -d : d;
    if (ad < best_diff) {
      best_diff = ad;
      best_pair = {i, j};
    }
  };

  const auto& a = state.list_a.sums;
  const auto& b = state.list_b.sums;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const std::int64_t t = a[i] + b[j];
    if (t < state.s_lower) {
      ++i;
    } else if (2 * t < target2) {
      state.s_lower = t;
      state.s_upper = total - t;
      record(i, j, t);
      ++i;
    } else if (2 * t == target2) {
      record(i, j, t);
      break;
    } else if (t <= state.s_upper) {
      state.s_upper = t;
      state.s_lower = total - t;
      record(i, j, t);
      ++j;
    } else {
      ++j;
    }
  }

  BaselineResult<std::int64_t> result;
  result.diff = best_diff;
  if (best_pair) {
    for (std::size_t k = 0; k < ws.size(); ++k) place(ws, k, Side::second);
    const std::uint32_t mask_a = state.list_a.masks[best_pair->first];
    const std::uint32_t mask_b = state.list_b.masks[best_pair->second];
    for (std::size_t q = 0; q < h.pos_a.size(); ++q) {
      if ((mask_a >> q) & 1U) place(ws, h.pos_a[q], Side::first);
    }
    for (std::size_t q = 0; q < h.pos_b.size(); ++q) {
      if ((mask_b >> q) & 1U) place(ws, h.pos_b[q], Side::first);
    }
  } else {
    greedy_working(ws);
  }
  result.partition = denormalize(ws, instance);
  return result;
}

template <Number T>
BaselineResult<T> brute_force(const Instance<T>& instance, std::size_t cap) {
  const std::size_t n = instance.size();
  if (n > cap) {
    throw CapExceeded("bf: n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
  }
  if (cap > 40) throw CapExceeded("bf: cap above 40 is not supported");
  // Bit (n - 1 - i) set means element i is on side 2, so ascending masks are
  // in lexicographic order of the assignment.
  const std::size_t free_count = n - 1;
  const std::uint64_t count = std::uint64_t{1} << free_count;
  const auto bit_of = [&](std::size_t i) { return std::uint64_t{1} << (n - 1 - i); };

  std::uint64_t best_mask = 0;
  T best{};
  if constexpr (mode_of<T> == Mode::integer) {
    // Gray-code walk: one element changes side per step.
    std::int64_t d = instance.total();
    best = magnitude(d);
    for (std::uint64_t k = 1; k < count; ++k) {
      const unsigned flipped = static_cast<unsigned>(std::countr_zero(k));
      const std::uint64_t gray = k ^ (k >> 1);
      const std::int64_t x = instance[n - 1 - flipped];
      d += ((gray >> flipped) & 1U) ? -2 * x : 2 * x;
      const std::int64_t ad = magnitude(d);
      if (ad < best || (ad == best && gray < best_mask)) {
        best = ad;
        best_mask = gray;
      }
    }
  } else {
    // Sums recomputed per subset in index order, matching partition_sums.
    best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      double s1 = 0.0;
      double s2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & bit_of(i)) {
          s2 += instance[i];
        } else {
          s1 += instance[i];
        }
      }
      if (const double ad = std::fabs(s1 - s2); ad < best) {
        best = ad;
        best_mask = mask;
      }
    }
  }

  std::vector<Side> sides(n, Side::first);
  for (std::size_t i = 1; i < n; ++i) {
    if (best_mask & bit_of(i)) sides[i] = Side::second;
  }
  BaselineResult<T> result;
  result.partition = make_partition(instance, std::move(sides));
  result.diff = objective(*result.partition).diff;
  return result;
}

#define LOPART_INSTANTIATE(T)                                             \
  template Partition<T> greedy(const Instance<T>&);                       \
  template KkResult<T> kk(const Instance<T>&);                            \
  template BaselineResult<T> brute_force(const Instance<T>&, std::size_t);

LOPART_INSTANTIATE(std::int64_t)
LOPART_INSTANTIATE(double)

#undef LOPART_INSTANTIATE

}  // namespace lopart
