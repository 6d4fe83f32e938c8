#pragma once

// Truncated power series in q over a pluggable coefficient ring.
//
// A TruncatedSeries<R> of order N stores the coefficients of q^0..q^N. Binary
// operations truncate to the smaller order; nothing is ever silently extended.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "oddbal/error.hpp"
#include "oddbal/rings.hpp"

namespace oddbal {

/// Marks an infinite q-Pochhammer product.
inline constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

template <class R>
class TruncatedSeries {
 public:
  using traits = ring_traits<R>;

  /// The zero series of order N; `like` fixes the ring (e.g. cyclotomic order).
  TruncatedSeries(std::size_t order, const R& like) : coeffs_(order + 1, traits::zero_like(like)) {}

  /// Takes coefficients q^0..q^N; N = coeffs.size() - 1.
  explicit TruncatedSeries(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: need at least the q^0 coefficient");
  }

  static TruncatedSeries constant(std::size_t order, const R& value) {
    TruncatedSeries out(order, value);
    out.coeffs_[0] = value;
    return out;
  }
  static TruncatedSeries one(std::size_t order, const R& like) { return constant(order, traits::one_like(like)); }

  std::size_t order() const { return coeffs_.size() - 1; }
  const R& zero_element() const { return coeffs_[0]; }

  const R& operator[](std::size_t k) const { return coeffs_[k]; }
  R& operator[](std::size_t k) { return coeffs_[k]; }

  const R& at(std::size_t k) const {
    if (k > order()) {
      throw index_out_of_range("coefficient q^" + std::to_string(k) + " beyond truncation order " +
                               std::to_string(order()));
    }
    return coeffs_[k];
  }

  const std::vector<R>& coefficients() const { return coeffs_; }

  /// A copy truncated to order M <= N.
  TruncatedSeries truncated(std::size_t m) const {
    if (m > order()) throw index_out_of_range("cannot extend a truncated series");
    return TruncatedSeries(std::vector<R>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(m + 1)));
  }

  /// Equality on the common range of coefficients.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t k = 0; k <= n; ++k) {
      if (!(a.coeffs_[k] == b.coeffs_[k])) return false;
    }
    return true;
  }

 private:
  std::vector<R> coeffs_;
};

namespace detail {
template <class R>
void require_compatible(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  if (!ring_traits<R>::compatible(a.zero_element(), b.zero_element())) {
    throw ring_mismatch("series coefficients live in different rings");
  }
}
}  // namespace detail

template <class R>
TruncatedSeries<R> series_add(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  detail::require_compatible(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  TruncatedSeries<R> out(n, a.zero_element());
  for (std::size_t k = 0; k <= n; ++k) out[k] = a[k] + b[k];
  return out;
}

template <class R>
TruncatedSeries<R> series_sub(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  detail::require_compatible(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  TruncatedSeries<R> out(n, a.zero_element());
  for (std::size_t k = 0; k <= n; ++k) out[k] = a[k] - b[k];
  return out;
}

/// Schoolbook Cauchy product truncated at min(N_a, N_b).
template <class R>
TruncatedSeries<R> series_mul(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  detail::require_compatible(a, b);
  using traits = ring_traits<R>;
  const std::size_t n = std::min(a.order(), b.order());
  TruncatedSeries<R> out(n, a.zero_element());
  for (std::size_t i = 0; i <= n; ++i) {
    if (traits::is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j <= n; ++j) traits::add_product(out[i + j], a[i], b[j]);
  }
  return out;
}

/// Multiplicative inverse; the constant term must be a unit.
template <class R>
TruncatedSeries<R> series_inv(const TruncatedSeries<R>& a) {
  using traits = ring_traits<R>;
  const auto inv0 = traits::inverse(a[0]);
  if (!inv0) throw non_unit("series_inv: constant term is not a unit");
  const R minus_inv0 = traits::zero_like(a[0]) - *inv0;
  TruncatedSeries<R> out(a.order(), a.zero_element());
  out[0] = *inv0;
  for (std::size_t k = 1; k <= a.order(); ++k) {
    R acc = traits::zero_like(a[0]);
    for (std::size_t i = 1; i <= k; ++i) {
      if (!traits::is_zero(a[i])) traits::add_product(acc, a[i], out[k - i]);
    }
    R term = traits::zero_like(a[0]);
    traits::add_product(term, minus_inv0, acc);
    out[k] = std::move(term);
  }
  return out;
}

template <class R>
const R& coeff(const TruncatedSeries<R>& a, std::size_t k) {
  return a.at(k);
}

// ---------------------------------------------------------------------------
// Sparse in-place updates used by the generating-function expansions.

/// s <- s * (1 + scale * q^e)
template <class R>
void mul_binomial_inplace(TruncatedSeries<R>& s, std::size_t e, const R& scale) {
  if (e == 0) throw std::invalid_argument("mul_binomial_inplace: exponent must be positive");
  for (std::size_t k = s.order(); k >= e; --k) {
    if (!ring_traits<R>::is_zero(s[k - e])) ring_traits<R>::add_product(s[k], scale, s[k - e]);
    if (k == e) break;
  }
}

/// s <- s / (1 - scale * q^e)
template <class R>
void div_one_minus_inplace(TruncatedSeries<R>& s, std::size_t e, const R& scale) {
  if (e == 0) throw std::invalid_argument("div_one_minus_inplace: exponent must be positive");
  for (std::size_t k = e; k <= s.order(); ++k) {
    if (!ring_traits<R>::is_zero(s[k - e])) ring_traits<R>::add_product(s[k], scale, s[k - e]);
  }
}

/// s <- q^e * s (coefficients pushed past N are dropped)
template <class R>
void shift_up_inplace(TruncatedSeries<R>& s, std::size_t e) {
  if (e == 0) return;
  const R zero = ring_traits<R>::zero_like(s.zero_element());
  for (std::size_t k = s.order() + 1; k-- > 0;) s[k] = k >= e ? std::move(s[k - e]) : zero;
}

/// A ring element times a power of q: scalar * q^power.
template <class R>
struct QMonomial {
  R scalar;
  std::size_t q_power = 0;
};

/// (A;q)_n = prod_{k=0}^{n-1} (1 - A q^k) with A = scalar * q^m, truncated at N.
/// n may be kInfinite when m >= 1; factors with m + k > N are identically 1.
template <class R>
TruncatedSeries<R> pochhammer(const QMonomial<R>& a, std::size_t n, std::size_t order) {
  using traits = ring_traits<R>;
  auto out = TruncatedSeries<R>::one(order, a.scalar);
  if (n == kInfinite && a.q_power == 0) {
    throw nonconvergent("pochhammer: infinite product with A of q-order 0 does not truncate");
  }
  const R minus_scalar = traits::zero_like(a.scalar) - a.scalar;
  R constant_factor = traits::one_like(a.scalar);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t e = a.q_power + k;
    if (e > order) break;
    if (e == 0) {
      constant_factor = traits::one_like(a.scalar) - a.scalar;
      continue;
    }
    mul_binomial_inplace(out, e, minus_scalar);
  }
  if (!(constant_factor == traits::one_like(a.scalar))) {
    TruncatedSeries<R> scaled(order, a.scalar);
    for (std::size_t k = 0; k <= order; ++k) traits::add_product(scaled[k], constant_factor, out[k]);
    return scaled;
  }
  return out;
}

/// Horner evaluation of a complex series at a point q.
inline Complex evaluate(const TruncatedSeries<Complex>& s, Complex q) {
  Complex acc(0.0, 0.0);
  for (std::size_t k = s.order() + 1; k-- > 0;) acc = acc * q + s[k];
  return acc;
}

}  // namespace oddbal
