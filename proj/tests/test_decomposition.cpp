#include <gtest/gtest.h>

#include "oddbal/decomposition.hpp"
#include "oddbal/transforms.hpp"

using namespace oddbal;

TEST(Pieces, FiniteAtGenericPoints) {
  const Complex tau(0.0, 0.9);
  for (Complex v : {T1(1.0 / 3.0, tau), T_mid(1.0 / 3.0, tau), T2(1.0 / 3.0, {0.0, 0.8})}) {
    EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
  }
}

TEST(Pieces, T2PolesAtQuarterPoints) {
  for (double z : {0.0, 0.25, 0.5, 0.75}) EXPECT_THROW(T2(z, {0.0, 0.8}), pole_error) << z;
}

TEST(Pieces, T1UnderUnitShift) {
  // mu is anti-periodic in u and w^{-1/2} picks up e^{-pi i}, so T1 is 1-periodic in z
  const Complex z(0.27, 0.03), tau(0.1, 0.85);
  EXPECT_LT(relative_residual(T1(z + 1.0, tau), T1(z, tau)), 1e-12);
}

TEST(Pieces, T1BoundedNearZero) {
  for (double t : {0.1, 0.05, 0.02}) EXPECT_LT(std::abs(T1(0.0, {0.0, t})), 1.0);
}

TEST(Pieces, TAtZeroScalesLikeDualNome) {
  // T(1;q) q0^{1/16} -> sqrt(2)/4
  double prev = 1.0;
  for (double t : {0.1, 0.05, 0.02}) {
    const Complex tau(0.0, t);
    const double dev = std::abs(T_mid(0.0, tau) * q0pow(tau, 1.0 / 16.0) - std::sqrt(2.0) / 4.0);
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 0.02);
}

TEST(Pieces, T2MagnitudeTracksExponent) {
  // |T2(0.1; it)| ~ C |q0|^{1/8 - z^2/2 - z/2} / sqrt(t)
  const double z = 0.1, f3 = 0.125 - z * z / 2 - z / 2;
  const auto scaled = [&](double t) {
    const Complex tau(0.0, t);
    return std::abs(T2(z, tau)) * std::sqrt(t) / std::abs(q0pow(tau, f3));
  };
  const double a = scaled(0.1), b = scaled(0.05);
  EXPECT_LT(std::abs(std::log(a / b)), 0.5);
}

TEST(T2Limit, MatchesExtrapolation) {
  for (Complex tau : {Complex(0.0, 0.9), Complex(0.3, 1.1), Complex(0.0, 0.5)}) {
    EXPECT_LT(relative_residual(T2_limit_numeric(tau), T2_limit_w1(tau)), 1e-6) << tau;
    // without the chain-rule factor the limit is off by a factor four
    EXPECT_GT(relative_residual(T2_limit_numeric(tau), T2_limit_w1_unscaled(tau)), 0.7);
  }
  EXPECT_TRUE(std::isfinite(std::abs(T2_limit_w1({0.0, 1.0}))));
}

TEST(T2Limit, SmallNearZero) {
  for (double t : {0.1, 0.05}) {
    const Complex tau(0.0, t);
    EXPECT_LT(std::abs(T2_limit_w1(tau)), 10.0 * std::abs(q0pow(tau, 0.125)) / std::sqrt(t));
  }
}

TEST(SeriesV, TailAndStability) {
  for (auto [z, tau] : {std::pair<Complex, Complex>{0.1, {0.0, 0.9}}, {0.85, {0.5, 0.8}}}) {
    const auto a = series_V(z, tau, 300);
    const auto b = series_V(z, tau, 600);
    EXPECT_LT(std::abs(a.value - b.value) / std::abs(b.value), 1e-11);
    EXPECT_LT(a.truncation_bound, 1e-10 * std::abs(a.value));
  }
}

TEST(Identity, ReferencePoints) {
  EXPECT_LT(verify_decomposition(1.0 / 3.0, {0.0, 0.9}, 300).residual, 1e-8);
  EXPECT_LT(verify_decomposition(0.2, {0.5, 0.9}, 400).residual, 1e-8);
  EXPECT_LT(verify_decomposition(0.45, {0.0, 1.2}, 200).residual, 1e-9);
}

TEST(Identity, DefaultGridAndSignScan) {
  std::vector<DecompositionSample> samples;
  for (const auto& g : default_decomposition_grid()) samples.push_back(verify_decomposition(g.z, g.tau, g.order));
  ASSERT_EQ(samples.size(), 12u);
  for (const auto& s : samples) {
    EXPECT_LT(s.residual, 1e-7);
    EXPECT_GT(s.residual_printed, 0.1);  // the -T1 sign does not close the identity
  }
  const auto flips = scan_single_flips(samples);
  int closing = 0;
  for (const auto& f : flips) {
    if (f.max_residual < 1e-7) {
      ++closing;
      EXPECT_EQ(f.name, "sign of T1");
    }
  }
  EXPECT_EQ(closing, 1);
}

TEST(Identity, TailFailureReported) {
  EXPECT_THROW(verify_decomposition(0.2, {0.0, 0.05}, 20), nonconvergent);
}
