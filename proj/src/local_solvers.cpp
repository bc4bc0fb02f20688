#include "lopart/local_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lopart {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::diff_nonpositive:
      return "diff_nonpositive";
    case StopReason::zero_selected:
      return "zero_selected";
    case StopReason::no_candidate:
      return "no_candidate";
  }
  return "unknown";
}

namespace {

template <Number T>
T magnitude(T v) noexcept {
  if constexpr (mode_of<T> == Mode::integer) {
    return v < 0 ? -v : v;
  } else {
    return std::fabs(v);
  }
}

template <Number T>
std::vector<T> magnitudes(const SignedWorkingSet<T>& ws) {
  std::vector<T> mag(ws.size());
  std::transform(ws.tilde.begin(), ws.tilde.end(), mag.begin(), magnitude<T>);
  return mag;
}

template <Number T>
void transfer(SignedWorkingSet<T>& ws, std::size_t k, T& diff, SolveTrace<T>& trace) {
  const T x = ws.tilde[k];
  diff -= x + x;
  ws.tilde[k] = -x;
  ws.alive[k] = 0;
  trace.steps.push_back({ws.perm[k], static_cast<T>(ws.signs[k]) * magnitude(x), diff});
}

// Nearest alive position at or after / at or before a query, with path
// halving over dead positions. Positions are 1-based; 0 is the virtual zero
// and m + 1 means "none".
class AliveLinks {
 public:
  explicit AliveLinks(std::span<const std::uint8_t> alive)
      : next_(alive.size() + 2), prev_(alive.size() + 1) {
    const std::size_t m = alive.size();
    for (std::size_t p = 0; p <= m + 1; ++p) {
      next_[p] = (p >= 1 && p <= m && !alive[p - 1]) ? p + 1 : p;
    }
    for (std::size_t p = 0; p <= m; ++p) {
      prev_[p] = (p >= 1 && !alive[p - 1]) ? p - 1 : p;
    }
  }

  std::size_t next(std::size_t p) {
    while (next_[p] != p) {
      next_[p] = next_[next_[p]];
      p = next_[p];
    }
    return p;
  }

  std::size_t prev(std::size_t p) {
    while (prev_[p] != p) {
      prev_[p] = prev_[prev_[p]];
      p = prev_[p];
    }
    return p;
  }

  void remove(std::size_t p) {
    next_[p] = p + 1;
    prev_[p] = p - 1;
  }

 private:
  std::vector<std::size_t> next_;
  std::vector<std::size_t> prev_;
};

}  // namespace

template <Number T>
SignedWorkingSet<T> normalize(const Instance<T>& instance) {
  SignedWorkingSet<T> ws;
  std::vector<std::size_t> order;
  order.reserve(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance[i] == T{0}) {
      ws.zeros.push_back(i);
    } else {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return magnitude(instance[a]) < magnitude(instance[b]);
  });
  const std::size_t m = order.size();
  ws.tilde.resize(m);
  ws.signs.resize(m);
  ws.alive.assign(m, 1);
  ws.perm = std::move(order);
  for (std::size_t k = 0; k < m; ++k) {
    const T x = instance[ws.perm[k]];
    ws.tilde[k] = magnitude(x);
    ws.signs[k] = x < T{0} ? -1 : 1;
  }
  return ws;
}

template <Number T>
Partition<T> denormalize(const SignedWorkingSet<T>& ws, const Instance<T>& instance) {
  std::vector<Side> sides(instance.size(), Side::first);
  for (std::size_t k = 0; k < ws.size(); ++k) {
    sides[ws.perm[k]] = static_cast<T>(ws.signs[k]) * ws.tilde[k] > T{0} ? Side::first : Side::second;
  }
  return make_partition(instance, std::move(sides));
}

template <Number T>
SolveTrace<T> run_v1(SignedWorkingSet<T>& ws) {
  SolveTrace<T> trace;
  T diff = ws.diff();
  trace.initial_diff = diff;
  // Transfers are nonincreasing and the difference only shrinks, so anything
  // the cursor has passed can never become a candidate again.
  std::size_t cursor = ws.size();
  for (;;) {
    while (cursor > 0 && (!ws.alive[cursor - 1] || !(ws.tilde[cursor - 1] < diff))) --cursor;
    if (cursor == 0) {
      trace.stop_reason = StopReason::no_candidate;
      break;
    }
    --cursor;
    transfer(ws, cursor, diff, trace);
    if (diff <= T{0}) {
      trace.stop_reason = StopReason::diff_nonpositive;
      break;
    }
  }
  return trace;
}

template <Number T>
SolveTrace<T> run_v2(SignedWorkingSet<T>& ws) {
  SolveTrace<T> trace;
  T diff = ws.diff();
  trace.initial_diff = diff;
  const std::vector<T> mag = magnitudes(ws);
  const std::size_t m = mag.size();
  AliveLinks links(ws.alive);

  for (;;) {
    const auto cost = [&](T x) { return magnitude(diff - (x + x)); };
    // First sorted position whose transfer would overshoot zero; cost falls
    // towards it from the left and rises after it.
    const auto split = std::partition_point(mag.begin(), mag.end(),
                                            [&](T x) { return x + x < diff; });
    const std::size_t p = static_cast<std::size_t>(split - mag.begin()) + 1;

    std::size_t best = 0;
    T best_cost = magnitude(diff);

    if (const std::size_t left = links.prev(p - 1); left > 0) {
      // Smallest alive position sharing the left side's minimal cost.
      const T c = cost(mag[left - 1]);
      const auto first = std::partition_point(mag.begin(), mag.begin() + static_cast<std::ptrdiff_t>(left),
                                              [&](T x) { return cost(x) > c; });
      const std::size_t q = links.next(static_cast<std::size_t>(first - mag.begin()) + 1);
      if (c < best_cost) {
        best = q;
        best_cost = c;
      }
    }
    if (const std::size_t right = links.next(p); right <= m) {
      if (const T c = cost(mag[right - 1]); c < best_cost) {
        best = right;
        best_cost = c;
      }
    }

    if (best == 0) {
      trace.stop_reason = StopReason::zero_selected;
      break;
    }
    transfer(ws, best - 1, diff, trace);
    links.remove(best);
  }
  return trace;
}

template <Number T>
SolveResult<T> solve_v1(const Instance<T>& instance) {
  SignedWorkingSet<T> ws = normalize(instance);
  SolveTrace<T> trace = run_v1(ws);
  return {denormalize(ws, instance), std::move(trace)};
}

template <Number T>
SolveResult<T> solve_v2(const Instance<T>& instance) {
  SignedWorkingSet<T> ws = normalize(instance);
  SolveTrace<T> trace = run_v2(ws);
  return {denormalize(ws, instance), std::move(trace)};
}

#define LOPART_INSTANTIATE(T)                                                             \
  template SignedWorkingSet<T> normalize(const Instance<T>&);                             \
  template Partition<T> denormalize(const SignedWorkingSet<T>&, const Instance<T>&);      \
  template SolveTrace<T> run_v1(SignedWorkingSet<T>&);                                    \
  template SolveTrace<T> run_v2(SignedWorkingSet<T>&);                                    \
  template SolveResult<T> solve_v1(const Instance<T>&);                                   \
  template SolveResult<T> solve_v2(const Instance<T>&);

LOPART_INSTANTIATE(std::int64_t)
LOPART_INSTANTIATE(double)

#undef LOPART_INSTANTIATE

}  // namespace lopart
