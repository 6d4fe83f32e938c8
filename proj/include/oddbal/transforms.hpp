#pragma once

// Residual checks for the modular transformation laws of theta, eta, the
// Appell sum A_1 and the Mordell integral, on fixed pseudo-random grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "oddbal/error.hpp"
#include "oddbal/modular.hpp"

namespace oddbal {

/// |a - b| / max(|a|, |b|), and 0 when both vanish.
inline double relative_residual(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct LawResidual {
  std::string law;
  Complex tau;
  Complex z;  // elliptic variable; for the Appell law this is u
  Complex v;  // second Appell argument, 0 elsewhere
  double residual = 0.0;
};

// Individual laws. Each returns the relative residual between its two sides.

inline double law_theta_shift_one(Complex z, Complex tau) {
  return relative_residual(theta(z + 1.0, tau).value, -theta(z, tau).value);
}

inline double law_theta_shift_tau(Complex z, Complex tau) {
  const Complex factor = -std::exp(-kI * kPi * tau - 2.0 * kPi * kI * z);
  return relative_residual(theta(z + tau, tau).value, factor * theta(z, tau).value);
}

inline double law_theta_tau_plus_one(Complex z, Complex tau) {
  return relative_residual(theta(z, tau + 1.0).value, std::exp(kI * kPi / 4.0) * theta(z, tau).value);
}

inline double law_theta_inversion(Complex z, Complex tau) {
  const Complex lhs = theta(z / tau, -1.0 / tau).value;
  const Complex rhs = -kI * sqrt_minus_i_tau(tau) * std::exp(kI * kPi * z * z / tau) * theta(z, tau).value;
  return relative_residual(lhs, rhs);
}

/// eta(tau) = eta(-1/tau)/sqrt(-i tau) and eta(tau+1) = e^{pi i/12} eta(tau); the worse of the two.
inline double law_eta(Complex tau) {
  const Complex e = eta(tau).value;
  const double inversion = relative_residual(e, eta(-1.0 / tau).value / sqrt_minus_i_tau(tau));
  const double shift = relative_residual(eta(tau + 1.0).value, std::exp(kI * kPi / 12.0) * e);
  return std::max(inversion, shift);
}

/// -(1/tau) e^{pi i (u^2 - 2uv)/tau} A_1(u/tau, v/tau; -1/tau) + A_1(u,v;tau) = h(u-v;tau) theta(v;tau) / (2i)
inline double law_appell(Complex u, Complex v, Complex tau) {
  const Complex lhs = -(1.0 / tau) * std::exp(kI * kPi * (u * u - 2.0 * u * v) / tau) *
                          appell(1, u / tau, v / tau, -1.0 / tau).value +
                      appell(1, u, v, tau).value;
  const Complex rhs = mordell(u - v, tau).value * theta(v, tau).value / (2.0 * kI);
  return relative_residual(lhs, rhs);
}

/// h(z/tau; -1/tau) = sqrt(-i tau) e^{-pi i z^2/tau} h(z;tau)
inline double law_mordell(Complex z, Complex tau) {
  const Complex lhs = mordell(z / tau, -1.0 / tau).value;
  const Complex rhs = sqrt_minus_i_tau(tau) * std::exp(-kI * kPi * z * z / tau) * mordell(z, tau).value;
  return relative_residual(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Grids.

inline constexpr unsigned kTransformSeed = 20240611u;

/// All five theta/eta laws on 20 points with Im tau in [0.3, 2], |Re tau| <= 1, |z| <= 1.
inline std::vector<LawResidual> verify_theta_eta_laws(unsigned seed = kTransformSeed, int points = 20) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re_tau(-1.0, 1.0), im_tau(0.3, 2.0), radius(0.0, 1.0), angle(0.0, 2.0 * kPi);
  std::vector<LawResidual> out;
  for (int i = 0; i < points; ++i) {
    const Complex tau(re_tau(rng), im_tau(rng));
    const Complex z = std::polar(radius(rng), angle(rng));
    out.push_back({"theta(z+1) = -theta(z)", tau, z, 0.0, law_theta_shift_one(z, tau)});
    out.push_back({"theta(z+tau) quasi-period", tau, z, 0.0, law_theta_shift_tau(z, tau)});
    out.push_back({"theta(z;tau+1)", tau, z, 0.0, law_theta_tau_plus_one(z, tau)});
    out.push_back({"theta inversion", tau, z, 0.0, law_theta_inversion(z, tau)});
    out.push_back({"eta inversion and shift", tau, 0.0, 0.0, law_eta(tau)});
  }
  return out;
}

/// A_1 transformation on `points` samples, skipping any draw that lands near a pole.
inline std::vector<LawResidual> verify_appell_law(unsigned seed = kTransformSeed + 1, int points = 10) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re_tau(-0.5, 0.5), im_tau(0.5, 1.5), re_arg(-0.5, 0.5), im_arg(-0.2, 0.2);
  std::vector<LawResidual> out;
  while (static_cast<int>(out.size()) < points) {
    const Complex tau(re_tau(rng), im_tau(rng));
    const Complex u(re_arg(rng), im_arg(rng));
    const Complex v(re_arg(rng), im_arg(rng));
    try {
      out.push_back({"A1 transformation", tau, u, v, law_appell(u, v, tau)});
    } catch (const pole_error&) {
    }
  }
  return out;
}

/// Mordell transformation with Im tau in [0.4, 1.5].
inline std::vector<LawResidual> verify_mordell_law(unsigned seed = kTransformSeed + 2, int points = 10) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re_tau(-0.5, 0.5), im_tau(0.4, 1.5), re_z(-0.4, 0.4), im_z(-0.2, 0.2);
  std::vector<LawResidual> out;
  for (int i = 0; i < points; ++i) {
    const Complex tau(re_tau(rng), im_tau(rng));
    const Complex z(re_z(rng), im_z(rng));
    out.push_back({"Mordell transformation", tau, z, 0.0, law_mordell(z, tau)});
  }
  return out;
}

inline std::vector<LawResidual> verify_all_transforms() {
  auto out = verify_theta_eta_laws();
  for (auto&& r : verify_appell_law()) out.push_back(std::move(r));
  for (auto&& r : verify_mordell_law()) out.push_back(std::move(r));
  return out;
}

}  // namespace oddbal
