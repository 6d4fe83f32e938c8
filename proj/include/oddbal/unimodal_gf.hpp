#pragma once

// Exact expansions of the odd-balanced unimodal generating function
//
//   V(w;q) = sum_{n>=0} (-wq, -q/w; q)_n q^n / (q; q^2)_{n+1} = sum v(m,n) w^m q^n
//
// and of the partition / overpartition generating functions it is compared with.

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddbal/rings.hpp"
#include "oddbal/series.hpp"

namespace oddbal {

/// V(w;q) over any ring, given w and its inverse as ring elements.
///
/// Successive outer terms differ by the factor q(1 + w q^n)(1 + q^n/w)/(1 - q^{2n+1}),
/// so each is produced from the previous one with three sparse passes, and the
/// n-th term is O(q^n): only n <= N contributes.
template <class R>
TruncatedSeries<R> expand_V(const R& w, const R& w_inv, std::size_t order) {
  using traits = ring_traits<R>;
  const R one = traits::one_like(w);
  TruncatedSeries<R> term(order, w);
  for (std::size_t k = 0; k <= order; ++k) term[k] = one;  // 1/(1-q)
  TruncatedSeries<R> total = term;
  for (std::size_t n = 1; n <= order; ++n) {
    shift_up_inplace(term, 1);
    mul_binomial_inplace(term, n, w);
    mul_binomial_inplace(term, n, w_inv);
    div_one_minus_inplace(term, 2 * n + 1, one);
    for (std::size_t k = n; k <= order; ++k) {
      if (!traits::is_zero(term[k])) total[k] += term[k];
    }
  }
  return total;
}

/// Exact table of v(m,n) for 0 <= n <= max_n.
class RankTable {
 public:
  /// rows[n] holds v(m,n) for m = -(n+1)..(n+1), i.e. 2n+3 entries.
  explicit RankTable(std::vector<std::vector<BigInt>> rows) : rows_(std::move(rows)) {
    for (std::size_t n = 0; n < rows_.size(); ++n) {
      if (rows_[n].size() != 2 * n + 3) throw std::invalid_argument("RankTable: row " + std::to_string(n) + " has wrong width");
    }
    if (rows_.empty()) throw std::invalid_argument("RankTable: empty");
  }

  static RankTable from_series(const TruncatedSeries<Laurent<BigInt>>& v) {
    std::vector<std::vector<BigInt>> rows;
    rows.reserve(v.order() + 1);
    for (std::size_t n = 0; n <= v.order(); ++n) {
      const auto& poly = v[n];
      const int bound = static_cast<int>(n) + 1;
      if (!poly.is_zero() && (poly.min_exponent() < -bound || poly.max_exponent() > bound)) {
        throw std::logic_error("rank outside |m| <= n+1 at n=" + std::to_string(n));
      }
      std::vector<BigInt> row(2 * n + 3);
      for (int m = -bound; m <= bound; ++m) row[static_cast<std::size_t>(m + bound)] = poly.coeff(m);
      rows.push_back(std::move(row));
    }
    return RankTable(std::move(rows));
  }

  std::size_t max_n() const { return rows_.size() - 1; }
  static int rank_bound(std::size_t n) { return static_cast<int>(n) + 1; }

  /// v(m,n); zero outside |m| <= n+1.
  BigInt count(int m, std::size_t n) const {
    check_n(n);
    const int bound = rank_bound(n);
    if (m < -bound || m > bound) return 0;
    return rows_[n][static_cast<std::size_t>(m + bound)];
  }

  /// v(n) = sum_m v(m,n)
  BigInt total(std::size_t n) const {
    check_n(n);
    BigInt acc = 0;
    for (const auto& x : rows_[n]) acc += x;
    return acc;
  }

  /// v(a,c;n) = sum_{m = a mod c} v(m,n)
  BigInt residue_count(int a, int c, std::size_t n) const {
    if (c < 1) throw std::invalid_argument("residue_count: modulus must be >= 1");
    check_n(n);
    const int bound = rank_bound(n);
    BigInt acc = 0;
    for (int m = -bound; m <= bound; ++m) {
      if (((m - a) % c + c) % c == 0) acc += rows_[n][static_cast<std::size_t>(m + bound)];
    }
    return acc;
  }

  friend bool operator==(const RankTable& a, const RankTable& b) { return a.rows_ == b.rows_; }

 private:
  void check_n(std::size_t n) const {
    if (n > max_n()) throw index_out_of_range("n=" + std::to_string(n) + " beyond table max " + std::to_string(max_n()));
  }
  std::vector<std::vector<BigInt>> rows_;
};

/// V(w;q) with w tracked as a Laurent variable; one expansion serves every modulus.
inline RankTable expand_V_rank(std::size_t order) {
  using L = Laurent<BigInt>;
  return RankTable::from_series(expand_V(L::monomial(1, 1), L::monomial(1, -1), order));
}

/// Coefficients of V(1;q).
inline std::vector<BigInt> expand_V_scalar(std::size_t order) {
  return expand_V(BigInt(1), BigInt(1), order).coefficients();
}

/// V(w;q) at a numeric w.
inline TruncatedSeries<Complex> expand_V_complex(Complex w, std::size_t order) {
  return expand_V(w, 1.0 / w, order);
}

namespace detail {
inline void check_root(int j, int c) {
  if (c < 1) throw std::invalid_argument("modulus c must be >= 1");
  if (j < 0 || j >= c) throw std::invalid_argument("root index j must satisfy 0 <= j < c");
}
}  // namespace detail

/// V(zeta_c^j; q) expanded directly over the cyclotomic ring.
inline TruncatedSeries<Cyclotomic> expand_V_at_root(int j, int c, std::size_t order) {
  detail::check_root(j, c);
  return expand_V(Cyclotomic::zeta_power(c, j), Cyclotomic::zeta_power(c, -j), order);
}

/// Image of a rank table under w -> zeta_c^j.
inline TruncatedSeries<Cyclotomic> substitute_root(const RankTable& table, int j, int c) {
  detail::check_root(j, c);
  TruncatedSeries<Cyclotomic> out(table.max_n(), Cyclotomic(c));
  for (std::size_t n = 0; n <= table.max_n(); ++n) {
    const int bound = RankTable::rank_bound(n);
    Cyclotomic acc(c);
    for (int m = -bound; m <= bound; ++m) {
      const BigInt v = table.count(m, n);
      if (v.is_zero()) continue;
      acc += Cyclotomic::integer(c, v).rotated(static_cast<long>(j) * m);
    }
    out[n] = std::move(acc);
  }
  return out;
}

/// v(a,c;n) for n <= max_n by bucketing ranks.
inline std::vector<BigInt> residue_twist(int a, int c, const RankTable& table) {
  if (c < 1) throw std::invalid_argument("residue_twist: modulus must be >= 1");
  if (a < 0 || a >= c) throw std::invalid_argument("residue_twist: need 0 <= a < c");
  std::vector<BigInt> out;
  out.reserve(table.max_n() + 1);
  for (std::size_t n = 0; n <= table.max_n(); ++n) out.push_back(table.residue_count(a, c, n));
  return out;
}

/// v(a,c;n) via (1/c) sum_j zeta_c^{-aj} V(zeta_c^j; q) evaluated in Z[zeta_c].
/// Throws if some coefficient fails to be a rational integer divisible by c.
inline std::vector<BigInt> residue_twist_orthogonality(int a, int c, std::size_t order) {
  if (c < 1) throw std::invalid_argument("residue_twist: modulus must be >= 1");
  if (a < 0 || a >= c) throw std::invalid_argument("residue_twist: need 0 <= a < c");
  TruncatedSeries<Cyclotomic> sum(order, Cyclotomic(c));
  for (int j = 0; j < c; ++j) {
    const auto vj = expand_V_at_root(j, c, order);
    for (std::size_t n = 0; n <= order; ++n) sum[n] += vj[n].rotated(-static_cast<long>(a) * j);
  }
  std::vector<BigInt> out;
  out.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    const auto value = sum[n].as_integer();
    if (!value) throw std::logic_error("orthogonality sum is not a rational integer at n=" + std::to_string(n));
    if (*value % c != 0) throw std::logic_error("orthogonality sum not divisible by c at n=" + std::to_string(n));
    out.push_back(*value / c);
  }
  return out;
}

/// p(n) from 1/(q;q)_inf.
inline std::vector<BigInt> expand_partition(std::size_t order) {
  const auto euler = pochhammer(QMonomial<BigInt>{1, 1}, kInfinite, order);
  return series_inv(euler).coefficients();
}

/// Overpartition counts from (-q;q)_inf / (q;q)_inf.
inline std::vector<BigInt> expand_overpartition(std::size_t order) {
  const auto num = pochhammer(QMonomial<BigInt>{-1, 1}, kInfinite, order);
  const auto den = pochhammer(QMonomial<BigInt>{1, 1}, kInfinite, order);
  return series_mul(num, series_inv(den)).coefficients();
}

// ---------------------------------------------------------------------------
// Serialisation.

inline void write_rank_table_csv(std::ostream& os, const RankTable& table, bool include_zeros = false) {
  os << "n,m,count\n";
  for (std::size_t n = 0; n <= table.max_n(); ++n) {
    const int bound = RankTable::rank_bound(n);
    for (int m = -bound; m <= bound; ++m) {
      const BigInt v = table.count(m, n);
      if (v.is_zero() && !include_zeros) continue;
      os << n << ',' << m << ',' << v.str() << '\n';
    }
  }
}

/// {"max_n": N, "rows": [{"n": n, "counts": {"m": "count", ...}}, ...]}; counts are decimal strings.
inline nlohmann::ordered_json rank_table_json(const RankTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n <= table.max_n(); ++n) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    const int bound = RankTable::rank_bound(n);
    for (int m = -bound; m <= bound; ++m) {
      const BigInt v = table.count(m, n);
      if (!v.is_zero()) counts[std::to_string(m)] = v.str();
    }
    rows.push_back({{"n", n}, {"total", table.total(n).str()}, {"counts", counts}});
  }
  return {{"max_n", table.max_n()}, {"rows", rows}};
}

}  // namespace oddbal
