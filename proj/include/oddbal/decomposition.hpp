#pragma once

// The three pieces T1, T, T2 whose signed sum reproduces (1 + 1/w) q V(w;q),
// and a numerical check of that identity.
//
// Half-integer powers: w^{1/2} = e^{pi i z}, q^a = e^{2 pi i a tau}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "oddbal/error.hpp"
#include "oddbal/modular.hpp"
#include "oddbal/series.hpp"
#include "oddbal/unimodal_gf.hpp"

namespace oddbal {

namespace detail {

inline Complex w_pow(Complex z, double power) { return std::exp(2.0 * kPi * kI * power * z); }

inline Complex theta_nonzero(Complex z, Complex tau, const char* what) {
  const auto s = theta_sum(z, tau);
  if (std::abs(s.value) < 1e-13 * s.abs_sum) throw pole_error(std::string(what) + " vanishes");
  return s.value;
}

// Scaled exponents of q in T1 and T, so the flip scan can perturb them.
struct PieceExponents {
  double t1 = 1.0 / 8.0;
  double t = -1.0 / 8.0;
};

inline Complex T1_with(Complex z, Complex tau, double q_exp) {
  return -kI * qpow(tau, q_exp) * w_pow(z, -0.5) * mu(z + 0.5, 0.5, tau).value;
}

inline Complex T_with(Complex z, Complex tau, double q_exp) {
  const Complex ratio = theta(0.5 + z, tau).value / theta_nonzero(tau, 2.0 * tau, "theta(tau;2tau)");
  return -qpow(tau, q_exp) * w_pow(z, -0.5) * ratio * mu(2.0 * z + 0.5, 0.5, 2.0 * tau).value;
}

// theta(4tau;12tau)^3 / theta(2tau;6tau)^3
inline Complex T2_modular_factor(Complex tau) {
  const Complex r = theta(4.0 * tau, 12.0 * tau).value / theta_nonzero(2.0 * tau, 6.0 * tau, "theta(2tau;6tau)");
  return r * r * r;
}

}  // namespace detail

/// T1(w;q) = -i q^{1/8} w^{-1/2} mu(z + 1/2, 1/2; tau)
inline Complex T1(Complex z, Complex tau) { return detail::T1_with(z, tau, 1.0 / 8.0); }

/// T(w;q) = -q^{-1/8} w^{-1/2} theta(1/2 + z;tau)/theta(tau;2tau) mu(2z + 1/2, 1/2; 2tau)
inline Complex T_mid(Complex z, Complex tau) { return detail::T_with(z, tau, -1.0 / 8.0); }

/// T2(w;q) = i q^{11/8} w^{-1/2} theta(4tau;12tau)^3/theta(2tau;6tau)^3 * theta(z;tau) theta(2z+tau;2tau)/theta(4z;4tau)
inline Complex T2(Complex z, Complex tau) {
  detail::require_upper(tau, "T2");
  const Complex den = detail::theta_nonzero(4.0 * z, 4.0 * tau, "theta(4z;4tau)");
  const Complex num = theta(z, tau).value * theta(2.0 * z + tau, 2.0 * tau).value;
  return kI * qpow(tau, 11.0 / 8.0) * detail::w_pow(z, -0.5) * detail::T2_modular_factor(tau) * num / den;
}

/// lim_{z->0} T2. Near z = 0, theta(z;tau) ~ -2 pi eta(tau)^3 z and
/// theta(4z;4tau) ~ -2 pi eta(4tau)^3 (4z), hence the factor 1/4.
inline Complex T2_limit_w1(Complex tau) {
  detail::require_upper(tau, "T2_limit_w1");
  const Complex e1 = eta(tau).value;
  const Complex e4 = eta(4.0 * tau).value;
  const Complex eta_ratio = (e1 * e1 * e1) / (e4 * e4 * e4);
  return kI * qpow(tau, 11.0 / 8.0) * detail::T2_modular_factor(tau) * eta_ratio * theta(tau, 2.0 * tau).value / 4.0;
}

/// The same limit with the chain-rule factor omitted.
inline Complex T2_limit_w1_unscaled(Complex tau) { return 4.0 * T2_limit_w1(tau); }

/// Numerical z -> 0 limit of T2 from direct evaluations at +-z1, +-z2: the
/// symmetrised values are even in z, so one Richardson step in z^2 removes the
/// leading error.
inline Complex T2_limit_numeric(Complex tau, double z1 = 1e-2, double z2 = 1e-3) {
  const auto even = [&](double z) { return 0.5 * (T2(z, tau) + T2(-z, tau)); };
  const double r = (z1 * z1) / (z2 * z2);
  return (r * even(z2) - even(z1)) / (r - 1.0);
}

/// V(w;q) at w = e^{2 pi i z}, q = e^{2 pi i tau} from the order-N expansion.
/// truncation_bound is |S_N - S_{N/2}|, which over-estimates the true tail.
inline EvalResult series_V(Complex z, Complex tau, std::size_t order) {
  detail::require_upper(tau, "series_V");
  if (order < 2) throw std::invalid_argument("series_V: order must be >= 2");
  const Complex w = std::exp(2.0 * kPi * kI * z);
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  const auto series = expand_V_complex(w, order);
  const Complex full = evaluate(series, q);
  const Complex half = evaluate(series.truncated(order / 2), q);
  return {full, std::abs(full - half)};
}

/// Doubles the order from `start` until the tail estimate is below rel_tol * |V|.
inline EvalResult series_V_adaptive(Complex z, Complex tau, double rel_tol = 1e-10, std::size_t start = 64,
                                    std::size_t max_order = 1u << 15) {
  for (std::size_t n = start; n <= max_order; n *= 2) {
    const auto r = series_V(z, tau, n);
    if (r.truncation_bound < rel_tol * std::abs(r.value)) return r;
  }
  throw nonconvergent("series_V: tail did not fall below tolerance by order " + std::to_string(max_order));
}

struct DecompositionSample {
  HalfPlanePoint point;
  std::size_t order = 0;
  Complex lhs;  // (1 + 1/w) q V(w;q)
  double lhs_tail = 0.0;
  Complex t1, t, t2;
  double residual = 0.0;          // |t1 + t - w t2 - lhs| / max(1, |lhs|)
  double residual_printed = 0.0;  // |-t1 + t - w t2 - lhs| / max(1, |lhs|)
};

inline DecompositionSample verify_decomposition(Complex z, Complex tau, std::size_t order) {
  DecompositionSample s;
  s.point = HalfPlanePoint::make(tau, z);
  s.order = order;
  const Complex w = s.point.w();
  const Complex q = s.point.q();
  const auto v = series_V(z, tau, order);
  const Complex pre = (1.0 + 1.0 / w) * q;
  s.lhs = pre * v.value;
  s.lhs_tail = std::abs(pre) * v.truncation_bound;
  if (!(s.lhs_tail < 1e-10 * std::max(std::abs(s.lhs), 1e-300))) {
    throw nonconvergent("verify_decomposition: series tail " + std::to_string(s.lhs_tail) + " too large at order " +
                        std::to_string(order));
  }
  s.t1 = T1(z, tau);
  s.t = T_mid(z, tau);
  s.t2 = T2(z, tau);
  const double scale = std::max(1.0, std::abs(s.lhs));
  s.residual = std::abs(s.t1 + s.t - w * s.t2 - s.lhs) / scale;
  s.residual_printed = std::abs(-s.t1 + s.t - w * s.t2 - s.lhs) / scale;
  return s;
}

/// One-change variants of the printed identity -T1 + T - w T2.
struct FlipCandidate {
  std::string name;
  double max_residual = 0.0;
};

inline std::vector<FlipCandidate> scan_single_flips(const std::vector<DecompositionSample>& samples) {
  struct Variant {
    std::string name;
    double s1, s, s2;       // signs of T1, T, w T2
    double e1, e;           // q exponents in T1 and T
  };
  const std::vector<Variant> variants = {
      {"as printed", -1, 1, -1, 1.0 / 8, -1.0 / 8},  {"sign of T1", 1, 1, -1, 1.0 / 8, -1.0 / 8},
      {"sign of T", -1, -1, -1, 1.0 / 8, -1.0 / 8},  {"sign of T2", -1, 1, 1, 1.0 / 8, -1.0 / 8},
      {"q^{1/8} in T1 -> q^{-1/8}", -1, 1, -1, -1.0 / 8, -1.0 / 8},
      {"q^{-1/8} in T -> q^{1/8}", -1, 1, -1, 1.0 / 8, 1.0 / 8},
  };
  std::vector<FlipCandidate> out;
  for (const auto& v : variants) {
    FlipCandidate c{v.name, 0.0};
    for (const auto& s : samples) {
      const Complex z = s.point.z;
      const Complex tau = s.point.tau;
      const Complex t1 = v.e1 == 1.0 / 8 ? s.t1 : detail::T1_with(z, tau, v.e1);
      const Complex t = v.e == -1.0 / 8 ? s.t : detail::T_with(z, tau, v.e);
      const Complex rhs = v.s1 * t1 + v.s * t + v.s2 * s.point.w() * s.t2;
      c.max_residual = std::max(c.max_residual, std::abs(rhs - s.lhs) / std::max(1.0, std::abs(s.lhs)));
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct GridPoint {
  Complex z;
  Complex tau;
  std::size_t order;
};

/// z in {0.1, 0.2, 1/3, 0.45, 0.6, 0.85} x tau in {0.9i, 0.5+0.8i}.
inline std::vector<GridPoint> default_decomposition_grid() {
  std::vector<GridPoint> grid;
  for (double z : {0.1, 0.2, 1.0 / 3.0, 0.45, 0.6, 0.85}) {
    for (Complex tau : {Complex(0.0, 0.9), Complex(0.5, 0.8)}) grid.push_back({z, tau, 300});
  }
  return grid;
}

}  // namespace oddbal
