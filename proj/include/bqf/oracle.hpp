#ifndef BQF_ORACLE_HPP
#define BQF_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bqf/forms.hpp"

/*
 * Brute-force reference implementations used by the test suite and the
 * `selftest` command.  Nothing here calls into the reduction or nesting
 * code paths it is meant to check: the search runs on plain 64-bit triples
 * with its own arithmetic helpers, and the duplication is deliberate.
 */
namespace bqf::oracle {

namespace detail {

inline std::int64_t to_i64(const Int& v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
      v < std::numeric_limits<std::int64_t>::min() / 4)
    throw precondition_error(what);
  return v.convert_to<std::int64_t>();
}

inline std::int64_t mod_floor64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_odd_prime64(std::int64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::int64_t p = 3; p * p <= n; p += 2)
    if (n % p == 0) return false;
  return true;
}

using Triple = std::array<std::int64_t, 3>;

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : t) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

inline Triple to_triple(const Form& q) {
  return {to_i64(q.a(), "coefficient out of oracle range"),
          to_i64(q.b(), "coefficient out of oracle range"),
          to_i64(q.c(), "coefficient out of oracle range")};
}

inline std::int64_t max_abs(const Triple& t) {
  return std::max({std::llabs(t[0]), std::llabs(t[1]), std::llabs(t[2])});
}

}  // namespace detail

struct OrbitBudget {
  std::int64_t max_coefficient;
  std::int64_t max_steps;

  OrbitBudget(std::int64_t coeff, std::int64_t steps)
      : max_coefficient(coeff), max_steps(steps) {
    if (coeff <= 0 || steps <= 0)
      throw precondition_error("orbit budget must be positive");
    if (coeff > (std::int64_t{1} << 59))
      throw precondition_error("orbit budget too large");
  }
};

/* 64 times the largest input coefficient, one million steps. */
inline OrbitBudget default_budget(const Form& q1, const Form& q2) {
  std::int64_t m = std::max(detail::max_abs(detail::to_triple(q1)),
                            detail::max_abs(detail::to_triple(q2)));
  return OrbitBudget(64 * std::max<std::int64_t>(m, 1), 1'000'000);
}

enum class OrbitAnswer { equivalent, inequivalent, inconclusive };

/*
 * Breadth-first search over the orbit of q1 under the generators
 * (a,b,c) -> (c,-b,a) and (a,b,c) -> (a, b±2a, c±b+a), pruning any form
 * whose largest coefficient exceeds the budget.  A reduction path never
 * increases the largest coefficient, so two equivalent forms inside the
 * bound are always connected inside the bound: exhausting the frontier
 * without reaching q2 certifies inequivalence as long as q2 itself lies
 * within the bound.  Exceeding max_steps is inconclusive.
 */
inline OrbitAnswer orbit_equivalent(const Form& q1, const Form& q2,
                                    const OrbitBudget& budget) {
  Int d1 = q1.discriminant().value();
  Int d2 = q2.discriminant().value();
  if (d1 >= 0 || d2 >= 0)
    throw precondition_error("negative discriminants required");
  if (d1 != d2) throw precondition_error("discriminant mismatch");

  using detail::Triple;
  const Triple start = detail::to_triple(q1);
  const Triple target = detail::to_triple(q2);
  auto outside = [&](const Triple& t) {
    return detail::max_abs(t) > budget.max_coefficient;
  };
  if (outside(start)) return OrbitAnswer::inconclusive;

  std::unordered_set<Triple, detail::TripleHash> seen{start};
  std::deque<Triple> frontier{start};
  std::int64_t steps = 0;
  while (!frontier.empty()) {
    if (++steps > budget.max_steps) return OrbitAnswer::inconclusive;
    Triple cur = frontier.front();
    frontier.pop_front();
    if (cur == target) return OrbitAnswer::equivalent;
    const std::int64_t a = cur[0], b = cur[1], c = cur[2];
    const Triple next[3] = {{c, -b, a},
                            {a, b + 2 * a, c + b + a},
                            {a, b - 2 * a, c - b + a}};
    for (const Triple& n : next) {
      if (outside(n)) continue;
      if (seen.insert(n).second) frontier.push_back(n);
    }
  }
  return outside(target) ? OrbitAnswer::inconclusive
                         : OrbitAnswer::inequivalent;
}

/*
 * Counts reduced primitive forms of discriminant D by scanning whole
 * (a, b, c) boxes and testing b² - 4ac == D directly.
 */
inline Int exhaustive_class_count(const Discriminant& d) {
  if (d.value() >= 0)
    throw precondition_error("negative discriminant required");
  if (d.value() < -1'000'000'000'000LL)
    throw precondition_error("discriminant out of oracle range");
  const std::int64_t D = d.value().convert_to<std::int64_t>();
  std::int64_t count = 0;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a)
    for (std::int64_t b = -a; b <= a; ++b)
      for (std::int64_t c = a; 4 * a * c <= b * b - D; ++c) {
        if (b * b - 4 * a * c != D) continue;
        if (b < 0 && (b == -a || a == c)) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        ++count;
      }
  return count;
}

struct FiberGrouping {
  std::vector<std::vector<Int>> groups;  /* lift indices, grouped by class */
  bool conclusive;  /* false when some orbit search ran out of budget */
};

/*
 * Classifies the primitive lifts of q pairwise with orbit_equivalent and
 * reports the resulting groups of indices.  The lifts are recomputed here
 * from the coefficient formulas rather than taken from the nesting module.
 * An inconclusive orbit search is flagged; rerun with a larger budget.
 */
inline FiberGrouping exhaustive_fiber_check(
    const Form& q, const Int& f,
    std::optional<OrbitBudget> budget = std::nullopt) {
  if (q.discriminant().value() >= 0)
    throw precondition_error("negative discriminant required");
  const std::int64_t a = detail::to_i64(q.a(), "coefficient out of oracle range");
  const std::int64_t b = detail::to_i64(q.b(), "coefficient out of oracle range");
  const std::int64_t c = detail::to_i64(q.c(), "coefficient out of oracle range");
  const std::int64_t ff = detail::to_i64(f, "conductor out of oracle range");
  if (!detail::is_odd_prime64(ff))
    throw precondition_error("conductor must be an odd prime");
  if (ff > 1000 || std::max({std::llabs(a), std::llabs(b), std::llabs(c)}) >
                       10'000'000'000LL)
    throw precondition_error("input out of oracle range");
  if (std::gcd(std::gcd(a, b), c) != 1)
    throw precondition_error("form must be primitive");
  if (std::gcd(a, ff) != 1)
    throw precondition_error("leading coefficient not coprime");

  std::vector<std::pair<std::int64_t, Form>> lifts;
  for (std::int64_t g = 0; g < ff; ++g) {
    const std::int64_t last = a * g * g + b * g + c;
    if (detail::mod_floor64(last, ff) == 0) continue;
    lifts.emplace_back(g, Form(ff * ff * a, ff * (2 * a * g + b), last));
  }
  lifts.emplace_back(ff, Form(a, ff * b, ff * ff * c));

  FiberGrouping out;
  out.conclusive = true;
  std::vector<Form> reps;
  for (const auto& [g, lift] : lifts) {
    bool placed = false;
    for (std::size_t i = 0; i < reps.size() && !placed; ++i) {
      OrbitBudget bd = budget ? *budget : default_budget(reps[i], lift);
      OrbitAnswer ans = orbit_equivalent(reps[i], lift, bd);
      if (ans == OrbitAnswer::inconclusive) out.conclusive = false;
      if (ans == OrbitAnswer::equivalent) {
        out.groups[i].push_back(g);
        placed = true;
      }
    }
    if (!placed) {
      reps.push_back(lift);
      out.groups.push_back({Int(g)});
    }
  }
  return out;
}

}  // namespace bqf::oracle

#endif /* BQF_ORACLE_HPP */
