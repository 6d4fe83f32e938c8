#pragma once

// Double-precision evaluation of the Jacobi theta function, Dedekind eta,
// the Mordell integral, level-l Appell sums and the normalised Appell function mu.
//
// Conventions:
//   theta(z;tau) = sum_{n in 1/2 + Z} exp(pi i n^2 tau + 2 pi i n (z + 1/2))
//   h(z;tau)     = int_R exp(pi i tau x^2 - 2 pi z x) / cosh(pi x) dx
//   A_l(u,v;tau) = e^{pi i l u} sum_n (-1)^{l n} e^{2 pi i n v} q^{l n(n+1)/2} / (1 - e^{2 pi i u} q^n)
//   mu(u,v;tau)  = A_1(u,v;tau) / theta(v;tau)
// and sqrt(-i tau) is always the principal branch.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "oddbal/error.hpp"
#include "oddbal/rings.hpp"

namespace oddbal {

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// tau in the upper half-plane together with an elliptic variable z.
struct HalfPlanePoint {
  Complex tau;
  Complex z{0.0, 0.0};

  static HalfPlanePoint make(Complex tau, Complex z = {0.0, 0.0}) {
    if (!(tau.imag() > 0.0)) throw nonconvergent("tau must lie in the upper half-plane");
    return {tau, z};
  }
  Complex q() const { return std::exp(2.0 * kPi * kI * tau); }
  Complex q0() const { return std::exp(-2.0 * kPi * kI / tau); }
  Complex w() const { return std::exp(2.0 * kPi * kI * z); }
};

struct EvalResult {
  Complex value;
  double truncation_bound = 0.0;  // estimate of the discarded tail
};

/// q^alpha := e^{2 pi i alpha tau}
inline Complex qpow(Complex tau, double alpha) { return std::exp(2.0 * kPi * kI * alpha * tau); }

/// q0^alpha := e^{-2 pi i alpha / tau}
inline Complex q0pow(Complex tau, double alpha) { return std::exp(-2.0 * kPi * kI * alpha / tau); }

/// Principal sqrt(-i tau).
inline Complex sqrt_minus_i_tau(Complex tau) { return std::sqrt(-kI * tau); }

namespace detail {

inline void require_upper(Complex tau, const char* who) {
  if (!(tau.imag() > 0.0)) throw nonconvergent(std::string(who) + ": need Im(tau) > 0");
}

// Terms below exp(-kCutLog) of the largest one are dropped.
inline constexpr double kCutLog = 41.5;  // ~1e-18

struct ThetaSum {
  Complex value;
  double abs_sum = 0.0;
  double tail = 0.0;
};

inline ThetaSum theta_sum(Complex z, Complex tau) {
  require_upper(tau, "theta");
  const double t = tau.imag();
  const auto exponent = [&](double n) { return kI * kPi * n * n * tau + 2.0 * kPi * kI * n * (z + 0.5); };
  // |term| = exp(-pi t n^2 - 2 pi n Im z), maximal near n* = -Im z / t
  const double centre = -z.imag() / t;
  const long j0 = std::lround(centre - 0.5);
  ThetaSum out;
  double max_log = -std::numeric_limits<double>::infinity();
  const auto add = [&](long j) {
    const Complex e = exponent(static_cast<double>(j) + 0.5);
    max_log = std::max(max_log, e.real());
    const Complex term = std::exp(e);
    out.value += term;
    out.abs_sum += std::abs(term);
    return e.real();
  };
  add(j0);
  for (int dir : {1, -1}) {
    for (long j = j0 + dir;; j += dir) {
      const double lg = add(j);
      const double n = static_cast<double>(j) + 0.5;
      if ((n - centre) * dir > 0 && lg < max_log - kCutLog) {
        // successive ratios past this point are below exp(-pi t), giving a geometric tail
        const double ratio = std::exp(-kPi * t * (2.0 * std::abs(n - centre) + 1.0));
        out.tail += std::exp(lg) * ratio / (1.0 - ratio);
        break;
      }
      if (std::abs(j - j0) > 10'000'000) throw nonconvergent("theta: cutoff exceeded");
    }
  }
  return out;
}

}  // namespace detail

inline EvalResult theta(Complex z, Complex tau) {
  const auto s = detail::theta_sum(z, tau);
  return {s.value, s.tail};
}

/// eta(tau) = q^{1/24} prod_{k>=1} (1 - q^k)
inline EvalResult eta(Complex tau) {
  detail::require_upper(tau, "eta");
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  const double aq = std::abs(q);
  Complex prod(1.0, 0.0);
  Complex qk = q;
  double aqk = aq;
  int k = 1;
  for (; aqk >= 1e-18; ++k) {
    prod *= 1.0 - qk;
    qk *= q;
    aqk *= aq;
    if (k > 10'000'000) throw nonconvergent("eta: product did not settle");
  }
  const Complex value = qpow(tau, 1.0 / 24.0) * prod;
  return {value, std::abs(value) * aqk / (1.0 - aq)};
}

/// Mordell integral by the trapezoid rule on a window outside which the
/// integrand is below 1e-18 of its peak, halving the step until two passes
/// agree to 1e-12 of the integral of |f|.
inline EvalResult mordell(Complex z, Complex tau) {
  if (tau.imag() < 0.0) throw nonconvergent("mordell: need Im(tau) >= 0");
  if (tau.imag() == 0.0 && std::abs(z.real()) >= 0.5) {
    throw nonconvergent("mordell: divergent for |Re z| >= 1/2 when Im(tau) = 0");
  }
  const auto log_f = [&](double x) {
    const double y = kPi * std::abs(x);
    const double log_cosh = y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2;
    return kI * kPi * tau * x * x - 2.0 * kPi * z * x - log_cosh;
  };
  // Re log f is concave, so walk to the peak and then outwards.
  const double coarse = 0.25;
  double peak_x = 0.0;
  double peak = log_f(0.0).real();
  for (int dir : {1, -1}) {
    for (double x = dir * coarse;; x += dir * coarse) {
      const double v = log_f(x).real();
      if (v <= peak) break;
      peak = v;
      peak_x = x;
      if (std::abs(x) > 1e5) throw nonconvergent("mordell: integrand peak not found");
    }
  }
  const auto edge = [&](int dir) {
    double x = peak_x;
    while (log_f(x).real() > peak - detail::kCutLog) {
      x += dir * coarse;
      if (std::abs(x - peak_x) > 1e5) throw nonconvergent("mordell: integrand decays too slowly");
    }
    return x;
  };
  const double lo = edge(-1);
  const double hi = edge(1);

  double h = coarse;
  Complex sum(0.0, 0.0);
  double abs_sum = 0.0;
  for (double x = lo; x <= hi + 1e-12; x += h) {
    const Complex f = std::exp(log_f(x));
    sum += f;
    abs_sum += std::abs(f);
  }
  Complex estimate = h * sum;
  for (int level = 0; level < 22; ++level) {
    Complex mid(0.0, 0.0);
    double abs_mid = 0.0;
    for (double x = lo + 0.5 * h; x < hi; x += h) {
      const Complex f = std::exp(log_f(x));
      mid += f;
      abs_mid += std::abs(f);
    }
    sum += mid;
    abs_sum += abs_mid;
    h *= 0.5;
    const Complex refined = h * sum;
    const double diff = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 2 && diff <= 1e-12 * h * abs_sum) return {estimate, diff};
  }
  throw nonconvergent("mordell: quadrature did not converge");
}

/// Level-l Appell sum, summed outward from n = 0 in both directions until
/// terms fall below 1e-18 of the running magnitude.
inline EvalResult appell(int ell, Complex u, Complex v, Complex tau) {
  if (ell < 1) throw std::invalid_argument("appell: level must be positive");
  detail::require_upper(tau, "appell");
  const double l = ell;
  const auto term = [&](long n) {
    const double nn = static_cast<double>(n);
    // (-1)^{l n} e^{2 pi i n v} q^{l n (n+1)/2}
    const Complex num = kI * kPi * (l * nn * (nn + 1.0) * tau + 2.0 * nn * v + l * nn);
    const Complex den = 2.0 * kPi * kI * (u + nn * tau);
    Complex value;
    if (den.real() <= 0.0) {
      const Complex d = 1.0 - std::exp(den);
      if (std::abs(d) < 1e-13) throw pole_error("appell: denominator vanishes at n=" + std::to_string(n));
      value = std::exp(num) / d;
    } else {
      // 1/(1 - e^D) = -e^{-D} / (1 - e^{-D}) keeps large |e^D| out of the arithmetic
      const Complex d = 1.0 - std::exp(-den);
      if (std::abs(d) < 1e-13) throw pole_error("appell: denominator vanishes at n=" + std::to_string(n));
      value = -std::exp(num - den) / d;
    }
    return value;
  };
  Complex sum = term(0);
  double running = std::abs(sum);
  double tail = 0.0;
  for (int dir : {1, -1}) {
    int quiet = 0;
    double last = 0.0;
    for (long n = dir;; n += dir) {
      const Complex t = term(n);
      sum += t;
      const double at = std::abs(t);
      running = std::max(running, std::abs(sum));
      // the q-exponent is quadratic, so once terms shrink they keep shrinking
      if (at < 1e-18 * running && at <= last) {
        if (++quiet >= 3) {
          tail += at;
          break;
        }
      } else {
        quiet = 0;
      }
      last = at;
      if (std::abs(n) > 10'000'000) throw nonconvergent("appell: sum did not settle");
    }
  }
  return {std::exp(kI * kPi * l * u) * sum, tail};
}

/// mu(u,v;tau) = A_1(u,v;tau) / theta(v;tau)
inline EvalResult mu(Complex u, Complex v, Complex tau) {
  const auto th = detail::theta_sum(v, tau);
  if (std::abs(th.value) < 1e-13 * th.abs_sum) throw pole_error("mu: theta(v;tau) vanishes");
  const auto a = appell(1, u, v, tau);
  const Complex value = a.value / th.value;
  return {value, std::abs(value) * (a.truncation_bound / std::max(std::abs(a.value), 1e-300) +
                                    th.tail / std::abs(th.value))};
}

/// Leading behaviour as tau -> 0 of theta(alpha tau;tau), theta(1/k + alpha tau;tau) and eta(tau).
struct DecayMainTerms {
  Complex theta_lattice;                 // theta(alpha tau; tau)
  std::optional<Complex> theta_shifted;  // theta(1/k + alpha tau; tau), when k is given
  Complex eta;
};

inline DecayMainTerms theta_decay_mainterm(double alpha, std::optional<double> k, Complex tau) {
  detail::require_upper(tau, "theta_decay_mainterm");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("theta_decay_mainterm: alpha must lie in [0,1)");
  if (k && !(*k > 1.0)) throw std::invalid_argument("theta_decay_mainterm: k must exceed 1");
  const Complex root = sqrt_minus_i_tau(tau);
  const Complex q_shift = qpow(tau, -alpha * alpha / 2.0);
  DecayMainTerms out;
  out.theta_lattice = -2.0 * kI * std::sin(kPi * alpha) * q_shift * q0pow(tau, 1.0 / 8.0) / root;
  if (k) {
    const double kk = *k;
    const Complex phase = std::exp(kI * kPi * alpha * (1.0 - 2.0 / kk));
    out.theta_shifted = -q_shift * phase / root * q0pow(tau, 1.0 / (2.0 * kk * kk) - 1.0 / (2.0 * kk) + 1.0 / 8.0);
  }
  out.eta = q0pow(tau, 1.0 / 24.0) / root;
  return out;
}

}  // namespace oddbal
