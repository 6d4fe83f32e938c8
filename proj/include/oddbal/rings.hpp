#pragma once

// Coefficient rings for truncated power series.
//
// Every ring element type R gets a ring_traits<R> specialisation that knows how
// to build 0 and 1 "like" an existing element (cyclotomic numbers carry their
// order at runtime), whether two elements share a ring, and how to invert units.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oddbal/error.hpp"

namespace oddbal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Converts an exact scalar into a numeric field element (double-backed types go
/// through convert_to).
template <class U, class T>
U scalar_cast(const T& x) {
  if constexpr ((std::is_same_v<T, BigInt> || std::is_same_v<T, Rational>) && std::is_same_v<U, Complex>) {
    return Complex(x.template convert_to<double>(), 0.0);
  } else {
    return U(x);
  }
}

template <class R>
struct ring_traits {
  static R zero_like(const R&) { return R(0); }
  static R one_like(const R&) { return R(1); }
  static bool compatible(const R&, const R&) { return true; }
  static bool is_zero(const R& x) { return x == R(0); }
  static std::optional<R> inverse(const R& x) {
    if (is_zero(x)) return std::nullopt;
    return R(1) / x;
  }
  /// acc += a * b
  static void add_product(R& acc, const R& a, const R& b) { acc += a * b; }
};

template <>
struct ring_traits<BigInt> {
  static BigInt zero_like(const BigInt&) { return 0; }
  static BigInt one_like(const BigInt&) { return 1; }
  static bool compatible(const BigInt&, const BigInt&) { return true; }
  static bool is_zero(const BigInt& x) { return x.is_zero(); }
  static std::optional<BigInt> inverse(const BigInt& x) {
    if (x == 1 || x == -1) return x;
    return std::nullopt;
  }
  static void add_product(BigInt& acc, const BigInt& a, const BigInt& b) {
    if (a == 1) {
      acc += b;
    } else if (a == -1) {
      acc -= b;
    } else if (!a.is_zero() && !b.is_zero()) {
      acc += a * b;
    }
  }
};

// ---------------------------------------------------------------------------
// Laurent polynomials in w.

template <class T>
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(T constant) {
    if (constant != T(0)) coeffs_.push_back(std::move(constant));
  }

  static Laurent monomial(T coeff, int exponent) {
    Laurent out;
    if (coeff != T(0)) {
      out.low_ = exponent;
      out.coeffs_.push_back(std::move(coeff));
    }
    return out;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_monomial() const { return coeffs_.size() == 1; }
  int min_exponent() const { return low_; }
  int max_exponent() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }

  T coeff(int exponent) const {
    const long idx = static_cast<long>(exponent) - low_;
    if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return T(0);
    return coeffs_[static_cast<std::size_t>(idx)];
  }

  /// this += scale * w^shift * src
  void add_shifted(const Laurent& src, int shift, const T& scale) {
    if (src.is_zero() || scale == T(0)) return;
    const int lo = src.low_ + shift;
    const int hi = src.max_exponent() + shift;
    reserve_range(lo, hi);
    for (std::size_t i = 0; i < src.coeffs_.size(); ++i) {
      T& slot = coeffs_[static_cast<std::size_t>(lo - low_) + i];
      if (scale == T(1)) {
        slot += src.coeffs_[i];
      } else if (scale == T(-1)) {
        slot -= src.coeffs_[i];
      } else {
        slot += scale * src.coeffs_[i];
      }
    }
    trim();
  }

  Laurent& operator+=(const Laurent& o) {
    add_shifted(o, 0, T(1));
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    add_shifted(o, 0, T(-1));
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) {
    Laurent out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    if (a.is_zero() || b.is_zero()) return out;
    out.low_ = a.low_ + b.low_;
    out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == T(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    out.trim();
    return out;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  /// Substitute a value for w (w must be invertible when negative powers occur).
  template <class U>
  U evaluate(const U& w) const {
    U acc(0);
    if (is_zero()) return acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + scalar_cast<U>(*it);
    U shift(1);
    const U base = low_ < 0 ? U(1) / w : w;
    for (int k = 0; k < std::abs(low_); ++k) shift *= base;
    return acc * shift;
  }

 private:
  void reserve_range(int lo, int hi) {
    if (coeffs_.empty()) {
      low_ = lo;
      coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), T(0));
      return;
    }
    if (lo < low_) {
      coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), T(0));
      low_ = lo;
    }
    if (hi > max_exponent()) coeffs_.resize(static_cast<std::size_t>(hi - low_ + 1), T(0));
  }
  void trim() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == T(0)) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1] == T(0)) --last;
    coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    low_ += static_cast<int>(first);
  }

  int low_ = 0;
  std::vector<T> coeffs_;
};

template <class T>
struct ring_traits<Laurent<T>> {
  using L = Laurent<T>;
  static L zero_like(const L&) { return L(); }
  static L one_like(const L&) { return L(T(1)); }
  static bool compatible(const L&, const L&) { return true; }
  static bool is_zero(const L& x) { return x.is_zero(); }
  static std::optional<L> inverse(const L& x) {
    if (!x.is_monomial()) return std::nullopt;
    const T c = x.coeff(x.min_exponent());
    if (c != T(1) && c != T(-1)) return std::nullopt;
    return L::monomial(c, -x.min_exponent());
  }
  static void add_product(L& acc, const L& a, const L& b) {
    if (a.is_monomial()) {
      acc.add_shifted(b, a.min_exponent(), a.coeff(a.min_exponent()));
    } else if (b.is_monomial()) {
      acc.add_shifted(a, b.min_exponent(), b.coeff(b.min_exponent()));
    } else {
      acc += a * b;
    }
  }
};

// ---------------------------------------------------------------------------
// Cyclotomic numbers: sum_j a_j zeta_c^j stored mod (x^c - 1).

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
inline std::vector<long long> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be >= 1");
  static std::map<int, std::vector<long long>> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 divided by every Phi_d with d | n, d < n.
  std::vector<long long> num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<long long> quot(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
      const long long c = num[k];
      quot[k - dd] = c;
      if (c == 0) continue;
      for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
    }
    num = std::move(quot);
  }
  std::lock_guard lock(cache_mutex);
  cache.emplace(n, num);
  return num;
}

class Cyclotomic {
 public:
  explicit Cyclotomic(int order) : coeffs_(checked(order), BigInt(0)) {}

  static Cyclotomic integer(int order, BigInt value) {
    Cyclotomic out(order);
    out.coeffs_[0] = std::move(value);
    return out;
  }
  /// zeta_c^k for any integer k.
  static Cyclotomic zeta_power(int order, long k) {
    Cyclotomic out(order);
    out.coeffs_[index(order, k)] = 1;
    return out;
  }

  int order() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  const BigInt& operator[](std::size_t j) const { return coeffs_[j]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c.is_zero(); });
  }
  /// Returns (sign, k) if this representative is +-zeta^k.
  std::optional<std::pair<int, int>> as_signed_monomial() const {
    std::optional<std::pair<int, int>> found;
    for (int j = 0; j < order(); ++j) {
      const BigInt& c = coeffs_[static_cast<std::size_t>(j)];
      if (c.is_zero()) continue;
      if (found || (c != 1 && c != -1)) return std::nullopt;
      found = std::pair{c == 1 ? 1 : -1, j};
    }
    return found;
  }

  /// Multiply by zeta^k.
  Cyclotomic rotated(long k) const {
    Cyclotomic out(order());
    for (int j = 0; j < order(); ++j) out.coeffs_[index(order(), j + k)] = coeffs_[static_cast<std::size_t>(j)];
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    require_same(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    require_same(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator-(Cyclotomic a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.require_same(b);
    const int c = a.order();
    Cyclotomic out(c);
    for (int i = 0; i < c; ++i) {
      const BigInt& ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (ai.is_zero()) continue;
      for (int j = 0; j < c; ++j) {
        const BigInt& bj = b.coeffs_[static_cast<std::size_t>(j)];
        if (bj.is_zero()) continue;
        out.coeffs_[static_cast<std::size_t>((i + j) % c)] += ai * bj;
      }
    }
    return out;
  }
  /// Representative equality (not equality in Z[zeta_c]; see equivalent()).
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.coeffs_ == b.coeffs_; }

  /// Canonical form: remainder mod Phi_c, phi(c) coefficients.
  std::vector<BigInt> canonical() const {
    const auto phi = cyclotomic_polynomial(order());
    const std::size_t deg = phi.size() - 1;
    std::vector<BigInt> rem = coeffs_;
    for (std::size_t k = rem.size(); k-- > deg;) {
      const BigInt lead = rem[k];
      if (lead.is_zero()) continue;
      for (std::size_t i = 0; i <= deg; ++i) {
        if (phi[i] != 0) rem[k - deg + i] -= lead * phi[i];
      }
    }
    rem.resize(deg);
    return rem;
  }
  bool equivalent(const Cyclotomic& o) const {
    require_same(o);
    return (*this - o).canonical() == std::vector<BigInt>(cyclotomic_polynomial(order()).size() - 1, BigInt(0));
  }
  /// The rational integer this number equals, if it is one.
  std::optional<BigInt> as_integer() const {
    const auto can = canonical();
    for (std::size_t j = 1; j < can.size(); ++j) {
      if (!can[j].is_zero()) return std::nullopt;
    }
    return can.empty() ? BigInt(0) : can[0];
  }

  Complex to_complex() const {
    Complex acc(0.0, 0.0);
    const double step = 2.0 * std::numbers::pi / order();
    for (int j = 0; j < order(); ++j) {
      acc += coeffs_[static_cast<std::size_t>(j)].convert_to<double>() * std::polar(1.0, step * j);
    }
    return acc;
  }

 private:
  static std::size_t checked(int order) {
    if (order < 1) throw std::invalid_argument("Cyclotomic: order must be >= 1");
    return static_cast<std::size_t>(order);
  }
  static std::size_t index(int order, long k) {
    long r = k % order;
    if (r < 0) r += order;
    return static_cast<std::size_t>(r);
  }
  void require_same(const Cyclotomic& o) const {
    if (o.order() != order()) {
      throw ring_mismatch("cyclotomic orders differ: " + std::to_string(order()) + " vs " +
                          std::to_string(o.order()));
    }
  }

  std::vector<BigInt> coeffs_;
};

template <>
struct ring_traits<Cyclotomic> {
  static Cyclotomic zero_like(const Cyclotomic& x) { return Cyclotomic(x.order()); }
  static Cyclotomic one_like(const Cyclotomic& x) { return Cyclotomic::integer(x.order(), 1); }
  static bool compatible(const Cyclotomic& a, const Cyclotomic& b) { return a.order() == b.order(); }
  static bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
  // Only +-zeta^k are recognised as units; that covers every constant term the
  // generating functions here produce.
  static std::optional<Cyclotomic> inverse(const Cyclotomic& x) {
    const auto m = x.as_signed_monomial();
    if (!m) return std::nullopt;
    auto out = Cyclotomic::zeta_power(x.order(), -m->second);
    return m->first > 0 ? out : -out;
  }
  static void add_product(Cyclotomic& acc, const Cyclotomic& a, const Cyclotomic& b) {
    if (const auto m = a.as_signed_monomial()) {
      if (m->first > 0) {
        acc += b.rotated(m->second);
      } else {
        acc -= b.rotated(m->second);
      }
      return;
    }
    acc += a * b;
  }
};

}  // namespace oddbal
