#pragma once

// Main terms for the coefficient growth of V and its rank residue classes,
// the exponent bookkeeping behind equidistribution, and the empirical reports
// (ratio tables, equidistribution statistic, log-concavity scan, lemma ratios).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oddbal/decomposition.hpp"
#include "oddbal/error.hpp"
#include "oddbal/modular.hpp"
#include "oddbal/rings.hpp"
#include "oddbal/unimodal_gf.hpp"

namespace oddbal {

using HighReal = boost::multiprecision::cpp_bin_float_50;

inline HighReal high_pi() { return boost::math::constants::pi<HighReal>(); }

inline HighReal to_high(const BigInt& v) { return HighReal(v); }

/// lambda A^{alpha/2 + 1/4} / (2 sqrt(pi) n^{alpha/2 + 3/4}) e^{2 sqrt(A n)}
inline HighReal tauberian_apply(const HighReal& lambda, const HighReal& alpha, const HighReal& A, long n) {
  if (!(A > 0)) throw std::invalid_argument("tauberian_apply: A must be positive");
  if (n < 1) throw std::invalid_argument("tauberian_apply: n must be >= 1");
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const HighReal nn(n);
  const HighReal quarter = HighReal(1) / 4;
  return lambda * pow(A, alpha / 2 + quarter) / (2 * sqrt(high_pi()) * pow(nn, alpha / 2 + 3 * quarter)) *
         exp(2 * sqrt(A * nn));
}

/// e^{pi sqrt n} / (16 n^{3/4})
inline HighReal main_term_v(long n) {
  if (n < 1) throw std::invalid_argument("main_term_v: n must be >= 1");
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const HighReal nn(n);
  return exp(high_pi() * sqrt(nn)) / (16 * pow(nn, HighReal(3) / 4));
}

/// main_term_v(n)/c, for odd c > 1.
inline HighReal main_term_v_mod(int a, int c, long n) {
  (void)a;  // the main term does not depend on the residue
  if (c <= 1 || c % 2 == 0) throw std::invalid_argument("main_term_v_mod: c must be odd and > 1");
  return main_term_v(n) / c;
}

/// p(n) ~ e^{pi sqrt(2n/3)} / (4 sqrt(3) n)
inline HighReal hardy_ramanujan_p(long n) {
  if (n < 1) throw std::invalid_argument("hardy_ramanujan_p: n must be >= 1");
  using boost::multiprecision::exp;
  using boost::multiprecision::sqrt;
  const HighReal nn(n);
  return exp(high_pi() * sqrt(2 * nn / 3)) / (4 * sqrt(HighReal(3)) * nn);
}

/// overpartition count ~ e^{pi sqrt n} / (8n)
inline HighReal overpartition_asym(long n) {
  if (n < 1) throw std::invalid_argument("overpartition_asym: n must be >= 1");
  using boost::multiprecision::exp;
  using boost::multiprecision::sqrt;
  const HighReal nn(n);
  return exp(high_pi() * sqrt(nn)) / (8 * nn);
}

// ---------------------------------------------------------------------------
// Exponent polynomials.

/// c0 + c1 z + c2 z^2 on the open interval (lo, hi).
struct ExponentPolynomial {
  Rational c0, c1, c2;
  Rational lo, hi;

  Rational operator()(const Rational& z) const { return c0 + c1 * z + c2 * z * z; }
  bool contains(const Rational& z) const { return lo < z && z < hi; }

  /// Infimum over the open interval: endpoint limits and the vertex when it lies inside.
  Rational infimum_on_interval() const {
    Rational best = std::min((*this)(lo), (*this)(hi));
    if (c2 != 0) {
      const Rational vertex = -c1 / (2 * c2);
      if (contains(vertex)) best = std::min(best, (*this)(vertex));
    }
    return best;
  }
};

/// The growth exponents (of q0) of V(e^{2 pi i z}; q) on the four quarter intervals.
inline std::vector<ExponentPolynomial> growth_exponents() {
  const Rational q(1, 4), h(1, 2), tq(3, 4), one(1);
  return {
      {Rational(-1, 16), 0, h, 0, q},
      {Rational(-1, 16), 0, h, q, h},
      {Rational(-1, 8), h, -h, h, tq},
      {Rational(7, 16), -1, h, tq, one},
  };
}

/// The critical exponent of the z = 0 term.
inline Rational critical_exponent() { return Rational(-1, 16); }

/// min over 1 <= j < c of (exponent at j/c) - (-1/16).
inline Rational exponent_gap(int c) {
  if (c <= 1 || c % 2 == 0) throw std::invalid_argument("exponent_gap: c must be odd and > 1");
  const auto polys = growth_exponents();
  std::optional<Rational> best;
  for (int j = 1; j < c; ++j) {
    const Rational z(j, c);
    for (const auto& p : polys) {
      if (!p.contains(z)) continue;
      const Rational gap = p(z) - critical_exponent();
      if (!best || gap < *best) best = gap;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Main terms of V at fixed z as tau -> 0.

enum class LemmaForm { printed, corrected };

/// Main term of V(e^{2 pi i z}; q) for z in (0,1) off {1/4, 1/2, 3/4}.
///
/// `printed`: the classical statements as they are usually quoted.
/// `corrected`: re-derived from the dominant piece of the decomposition,
/// keeping the exact q^{-1} factor; symmetric under z -> 1 - z like V itself.
inline Complex lemma_main_term(double z, Complex tau, LemmaForm form = LemmaForm::printed) {
  detail::require_upper(tau, "lemma_main_term");
  if (!(z > 0.0 && z < 1.0) || z == 0.25 || z == 0.5 || z == 0.75) {
    throw std::invalid_argument("lemma_main_term: z must lie in (0,1) away from 1/4, 1/2, 3/4");
  }
  const Complex pre = std::exp(-kI * kPi * z) / (1.0 + std::exp(-2.0 * kI * kPi * z));
  const Complex root = sqrt_minus_i_tau(tau);
  const double s2 = std::sqrt(2.0) / 4.0;
  if (form == LemmaForm::printed) {
    if (z < 0.25) return s2 * pre * q0pow(tau, z * z / 2 - 1.0 / 16) * mordell(2 * z, 2.0 * tau).value;
    if (z < 0.5) return -pre * s2 * mordell(0.75 - z, 2.0 * tau).value * q0pow(tau, z * z / 2 - 1.0 / 16);
    if (z < 0.75) return -pre / root * q0pow(tau, -z * z / 2 + z / 2 - 1.0 / 8);
    return -pre * mordell(z - 0.75, 2.0 * tau).value * s2 * q0pow(tau, z * z / 2 - z + 7.0 / 16);
  }
  const Complex q_inv = qpow(tau, -1.0);
  if (z < 0.25) return q_inv * s2 * pre * q0pow(tau, z * z / 2 - 1.0 / 16) * mordell(2 * z, 2.0 * tau).value;
  const double r = z - 0.5;
  if (z < 0.5) return q_inv * pre / (2.0 * root) * q0pow(tau, -r * r / 2);
  if (z < 0.75) return -q_inv * pre / (2.0 * root) * q0pow(tau, -r * r / 2);
  const double m = 1.0 - z;
  return -q_inv * s2 * pre * q0pow(tau, m * m / 2 - 1.0 / 16) * mordell(2.0 - 2.0 * z, 2.0 * tau).value;
}

struct LemmaRatio {
  double z = 0.0;
  double t = 0.0;
  Complex series;     // V(e^{2 pi i z}; e^{-2 pi t})
  double series_tail = 0.0;
  Complex main_term;
  double deviation = 0.0;  // |series/main_term - 1|
};

/// Compares V at tau = i t with its main term; V is summed to a relative tail below 1e-10.
inline LemmaRatio lemma_ratio(double z, double t, LemmaForm form) {
  const Complex tau(0.0, t);
  const auto v = series_V_adaptive(z, tau, 1e-10);
  LemmaRatio out;
  out.z = z;
  out.t = t;
  out.series = v.value;
  out.series_tail = v.truncation_bound;
  out.main_term = lemma_main_term(z, tau, form);
  out.deviation = std::abs(v.value / out.main_term - 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// Ratio reports.

struct AsymptoticRow {
  std::size_t n = 0;
  BigInt exact;
  std::optional<HighReal> main_term;  // absent for even c
  std::optional<HighReal> ratio;
  std::optional<double> equidistribution;  // max_a |c v(a,c;n)/v(n) - 1|, when c > 1
};

struct AsymptoticReport {
  int a = 0;
  int c = 1;
  std::string formula;
  std::vector<AsymptoticRow> rows;
};

/// max over residues a of |c v(a,c;n)/v(n) - 1|
inline double equidistribution_statistic(const RankTable& table, int c, std::size_t n) {
  if (c < 1) throw std::invalid_argument("equidistribution_statistic: c must be >= 1");
  const HighReal total = to_high(table.total(n));
  HighReal worst = 0;
  for (int a = 0; a < c; ++a) {
    const HighReal dev = abs(c * to_high(table.residue_count(a, c, n)) / total - 1);
    worst = std::max(worst, dev);
  }
  return worst.convert_to<double>();
}

/// Rows of exact v(a,c;n) against the main term at each checkpoint.
/// Even c is only accepted with allow_even, in which case the main-term column is empty.
inline AsymptoticReport asym_report(int a, int c, const std::vector<std::size_t>& checkpoints, const RankTable& table,
                                    bool allow_even = false) {
  if (c < 1) throw std::invalid_argument("asym_report: c must be >= 1");
  if (a < 0 || a >= c) throw std::invalid_argument("asym_report: need 0 <= a < c");
  const bool even = c % 2 == 0;
  if (even && !allow_even) throw std::invalid_argument("asym_report: even c needs the explicit override");
  AsymptoticReport rep;
  rep.a = a;
  rep.c = c;
  rep.formula = even ? "none (even modulus)" : c == 1 ? "exp(pi sqrt n)/(16 n^(3/4))" : "exp(pi sqrt n)/(16 c n^(3/4))";
  for (std::size_t n : checkpoints) {
    if (n > table.max_n()) throw index_out_of_range("asym_report: checkpoint " + std::to_string(n) + " beyond table");
    AsymptoticRow row;
    row.n = n;
    row.exact = c == 1 ? table.total(n) : table.residue_count(a, c, n);
    if (!even && n >= 1) {
      row.main_term = c == 1 ? main_term_v(static_cast<long>(n)) : main_term_v_mod(a, c, static_cast<long>(n));
      row.ratio = to_high(row.exact) / *row.main_term;
    }
    if (c > 1) row.equidistribution = equidistribution_statistic(table, c, n);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Same report for c = 1 from a plain coefficient list (cheaper to expand far out).
inline AsymptoticReport asym_report_totals(const std::vector<BigInt>& totals, const std::vector<std::size_t>& checkpoints) {
  AsymptoticReport rep;
  rep.formula = "exp(pi sqrt n)/(16 n^(3/4))";
  for (std::size_t n : checkpoints) {
    if (n >= totals.size()) throw index_out_of_range("asym_report: checkpoint " + std::to_string(n) + " beyond expansion");
    AsymptoticRow row;
    row.n = n;
    row.exact = totals[n];
    if (n >= 1) {
      row.main_term = main_term_v(static_cast<long>(n));
      row.ratio = to_high(row.exact) / *row.main_term;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// |exact/main - 1| at each n, for any main-term function.
template <class MainTerm>
std::vector<double> ratio_deviations(const std::vector<BigInt>& exact, const std::vector<std::size_t>& checkpoints,
                                     MainTerm main) {
  std::vector<double> out;
  for (std::size_t n : checkpoints) {
    if (n >= exact.size()) throw index_out_of_range("checkpoint " + std::to_string(n) + " beyond expansion");
    out.push_back(abs(to_high(exact[n]) / main(static_cast<long>(n)) - 1).template convert_to<double>());
  }
  return out;
}

inline bool strictly_decreasing(const std::vector<double>& xs) {
  return std::adjacent_find(xs.begin(), xs.end(), [](double a, double b) { return !(b < a); }) == xs.end();
}

// ---------------------------------------------------------------------------
// Log-concavity scan.

struct LogConcavityRow {
  std::size_t n = 0;
  bool squared = false;              // v(n)^2 <= v(n-1) v(n+1)
  std::optional<bool> doubled;       // v(2n) <= v(n-1) v(n+1), when 2n is in range
  bool overpartition_bound = false;  // v(n-1) v(n+1) < sqrt(n) pbar(n-1) pbar(n+1)
};

struct LogConcavityReport {
  int a = 0;
  int c = 1;
  std::size_t n_max = 0;
  std::vector<LogConcavityRow> rows;
  // Least N0 with the inequality true for every scanned n > N0; nullopt when it fails at the last scanned n.
  std::optional<std::size_t> n0_squared;
  std::optional<std::size_t> n0_doubled;
  std::optional<std::size_t> n0_bound;
  std::size_t failures_squared = 0;
};

namespace detail {
inline std::optional<std::size_t> threshold_after(const std::vector<LogConcavityRow>& rows,
                                                  const std::function<std::optional<bool>(const LogConcavityRow&)>& get) {
  std::size_t last_fail = 0;
  std::optional<std::size_t> last_n;
  for (const auto& r : rows) {
    const auto v = get(r);
    if (!v) continue;
    last_n = r.n;
    if (!*v) last_fail = r.n;
  }
  if (last_n && last_fail == *last_n) return std::nullopt;
  return last_fail;
}
}  // namespace detail

/// Scans n = 1..n_max-1 using v(a,c;.) from the table and overpartition counts pbar[0..n_max].
inline LogConcavityReport logconcavity_scan(int a, int c, const RankTable& table, const std::vector<BigInt>& pbar,
                                            std::size_t n_max) {
  if (c < 1 || a < 0 || a >= c) throw std::invalid_argument("logconcavity_scan: need c >= 1 and 0 <= a < c");
  if (n_max > table.max_n() || n_max >= pbar.size()) throw index_out_of_range("logconcavity_scan: n_max beyond data");
  const auto v = [&](std::size_t n) { return c == 1 ? table.total(n) : table.residue_count(a, c, n); };
  std::vector<BigInt> vals;
  for (std::size_t n = 0; n <= n_max; ++n) vals.push_back(v(n));
  LogConcavityReport rep;
  rep.a = a;
  rep.c = c;
  rep.n_max = n_max;
  for (std::size_t n = 1; n + 1 <= n_max; ++n) {
    LogConcavityRow row;
    row.n = n;
    const BigInt neighbours = vals[n - 1] * vals[n + 1];
    row.squared = vals[n] * vals[n] <= neighbours;
    if (2 * n <= n_max) row.doubled = vals[2 * n] <= neighbours;
    // compare squares: (v v)^2 < n (pbar pbar)^2
    const BigInt bound = pbar[n - 1] * pbar[n + 1];
    row.overpartition_bound = neighbours * neighbours < BigInt(n) * bound * bound;
    if (!row.squared) ++rep.failures_squared;
    rep.rows.push_back(row);
  }
  rep.n0_squared = detail::threshold_after(rep.rows, [](const LogConcavityRow& r) { return std::optional<bool>(r.squared); });
  rep.n0_doubled = detail::threshold_after(rep.rows, [](const LogConcavityRow& r) { return r.doubled; });
  rep.n0_bound =
      detail::threshold_after(rep.rows, [](const LogConcavityRow& r) { return std::optional<bool>(r.overpartition_bound); });
  return rep;
}

}  // namespace oddbal
