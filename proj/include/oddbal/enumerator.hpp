#pragma once

// Brute-force generation of odd-balanced unimodal sequences: an even peak,
// distinct smaller even parts on either side, and a multiset of odd parts that
// appears identically on both sides. This is the combinatorial oracle the
// generating-function expansion is checked against.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "oddbal/rings.hpp"
#include "oddbal/unimodal_gf.hpp"

namespace oddbal {

struct OddBalancedSequence {
  int peak = 2;
  std::vector<int> left_evens;   // strictly increasing
  std::vector<int> right_evens;  // strictly decreasing
  std::vector<int> side_odds;    // non-decreasing; each value appears on both sides

  int size() const {
    const auto sum = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); };
    return peak + sum(left_evens) + sum(right_evens) + 2 * sum(side_odds);
  }

  int rank() const { return static_cast<int>(right_evens.size()) - static_cast<int>(left_evens.size()); }

  /// Left side ascending, the peak, right side descending.
  std::vector<int> flatten() const {
    std::vector<int> left;
    std::merge(left_evens.begin(), left_evens.end(), side_odds.begin(), side_odds.end(), std::back_inserter(left));
    std::vector<int> right;
    std::merge(right_evens.begin(), right_evens.end(), side_odds.rbegin(), side_odds.rend(),
               std::back_inserter(right), std::greater<>());
    std::vector<int> out = std::move(left);
    out.push_back(peak);
    out.insert(out.end(), right.begin(), right.end());
    return out;
  }

  friend bool operator==(const OddBalancedSequence&, const OddBalancedSequence&) = default;
};

/// Rank of a flattened sequence given the position of its peak.
inline int rank_of(const OddBalancedSequence& seq) { return seq.rank(); }

/// Checks the structural constraints and the unimodality chain of the flattening.
inline bool is_valid(const OddBalancedSequence& seq) {
  if (seq.peak < 2 || seq.peak % 2 != 0) return false;
  for (std::size_t i = 0; i < seq.left_evens.size(); ++i) {
    const int e = seq.left_evens[i];
    if (e <= 0 || e % 2 != 0 || e >= seq.peak) return false;
    if (i > 0 && e <= seq.left_evens[i - 1]) return false;
  }
  for (std::size_t i = 0; i < seq.right_evens.size(); ++i) {
    const int e = seq.right_evens[i];
    if (e <= 0 || e % 2 != 0 || e >= seq.peak) return false;
    if (i > 0 && e >= seq.right_evens[i - 1]) return false;
  }
  for (std::size_t i = 0; i < seq.side_odds.size(); ++i) {
    const int o = seq.side_odds[i];
    if (o <= 0 || o % 2 == 0 || o >= seq.peak) return false;
    if (i > 0 && o < seq.side_odds[i - 1]) return false;
  }
  const auto flat = seq.flatten();
  const auto peak_at = seq.left_evens.size() + seq.side_odds.size();
  for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
    const int a = flat[i];
    const int b = flat[i + 1];
    const bool strict = (a % 2 == 0 && b % 2 == 0) || i == peak_at || i + 1 == peak_at;
    if (i < peak_at) {
      if (strict ? !(a < b) : !(a <= b)) return false;
    } else {
      if (strict ? !(a > b) : !(a >= b)) return false;
    }
  }
  return true;
}

namespace detail {
// Calls f for every set of distinct even parts from {2, ..., below-2} summing to at most budget.
inline void for_each_even_set(int below, int budget, std::vector<int>& chosen, int next,
                              const std::function<void(int)>& f) {
  f(budget);
  for (int e = next; e < below && e <= budget; e += 2) {
    chosen.push_back(e);
    for_each_even_set(below, budget - e, chosen, e + 2, f);
    chosen.pop_back();
  }
}

// Calls f for every multiset of odd parts < below summing exactly to target (non-decreasing).
inline void for_each_odd_partition(int below, int target, std::vector<int>& chosen, int min_part,
                                   const std::function<void()>& f) {
  if (target == 0) {
    f();
    return;
  }
  for (int o = min_part; o < below && o <= target; o += 2) {
    chosen.push_back(o);
    for_each_odd_partition(below, target - o, chosen, o, f);
    chosen.pop_back();
  }
}
}  // namespace detail

/// Every odd-balanced sequence of size 2n+2, each exactly once.
inline std::vector<OddBalancedSequence> enumerate_sequences(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_sequences: n must be >= 0");
  const int size = 2 * n + 2;
  std::vector<OddBalancedSequence> out;
  for (int peak = 2; peak <= size; peak += 2) {
    std::vector<int> left;
    detail::for_each_even_set(peak, size - peak, left, 2, [&](int after_left) {
      std::vector<int> right;
      detail::for_each_even_set(peak, after_left, right, 2, [&](int after_right) {
        // after_right is even; the odds fill half of it on each side
        std::vector<int> odds;
        detail::for_each_odd_partition(peak, after_right / 2, odds, 1, [&] {
          OddBalancedSequence s;
          s.peak = peak;
          s.left_evens = left;
          s.right_evens.assign(right.rbegin(), right.rend());
          s.side_odds = odds;
          out.push_back(std::move(s));
        });
      });
    });
  }
  return out;
}

/// v(m,n) for all n <= n_max by enumeration.
inline RankTable count_rank_table(int n_max) {
  if (n_max < 0) throw std::invalid_argument("count_rank_table: n_max must be >= 0");
  std::vector<std::vector<BigInt>> rows;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<BigInt> row(static_cast<std::size_t>(2 * n + 3), BigInt(0));
    for (const auto& s : enumerate_sequences(n)) row[static_cast<std::size_t>(s.rank() + n + 1)] += 1;
    rows.push_back(std::move(row));
  }
  return RankTable(std::move(rows));
}

inline nlohmann::ordered_json to_json(const OddBalancedSequence& s) {
  return {{"size", s.size()},       {"rank", s.rank()},         {"sequence", s.flatten()},
          {"peak", s.peak},         {"left_evens", s.left_evens}, {"right_evens", s.right_evens},
          {"side_odds", s.side_odds}};
}

}  // namespace oddbal
