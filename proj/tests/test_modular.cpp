#include <gtest/gtest.h>

#include "oddbal/modular.hpp"
#include "oddbal/transforms.hpp"

using namespace oddbal;

namespace {
const Complex I(0.0, 1.0);

// Independent oracle for theta: the Jacobi triple product
// theta(z;tau) = -i q^{1/8} zeta^{-1/2} prod (1-q^n)(1-zeta q^{n-1})(1-zeta^{-1} q^n), zeta = e^{2 pi i z}
Complex theta_product(Complex z, Complex tau) {
  const Complex q = std::exp(2.0 * kPi * I * tau);
  const Complex zeta = std::exp(2.0 * kPi * I * z);
  Complex prod = -I * std::exp(2.0 * kPi * I * tau / 8.0) * std::exp(-kPi * I * z);
  Complex qn(1.0, 0.0);
  for (int n = 1; n < 400; ++n) {
    const Complex qprev = qn;
    qn *= q;
    prod *= (1.0 - qn) * (1.0 - zeta * qprev) * (1.0 - qn / zeta);
  }
  return prod;
}
}  // namespace

TEST(HalfPlanePoint, RejectsLowerHalfPlane) {
  EXPECT_THROW(HalfPlanePoint::make({0.0, 0.0}), nonconvergent);
  const auto p = HalfPlanePoint::make({0.1, 0.5}, 0.2);
  EXPECT_LT(std::abs(p.q()), 1.0);
  EXPECT_LT(std::abs(p.q0()), 1.0);
}

TEST(Theta, OddAndZeroAtOrigin) {
  EXPECT_LT(std::abs(theta(0.0, {0.0, 0.7}).value), 1e-15);
  EXPECT_LT(std::abs(theta(0.0, {0.3, 1.7}).value), 1e-15);
  const Complex z(0.21, -0.13), tau(0.2, 0.8);
  EXPECT_LT(relative_residual(theta(-z, tau).value, -theta(z, tau).value), 1e-13);
}

TEST(Theta, MatchesTripleProduct) {
  for (auto [z, tau] : {std::pair<Complex, Complex>{0.17, {0.0, 0.3}}, {{0.3, 0.1}, {-0.4, 0.9}}, {{-0.7, 0.2}, {0.5, 1.5}}}) {
    EXPECT_LT(relative_residual(theta(z, tau).value, theta_product(z, tau)), 1e-12);
  }
}

TEST(Theta, ErrorsOffTheHalfPlane) {
  EXPECT_THROW(theta(0.1, {0.0, 0.0}), nonconvergent);
  EXPECT_THROW(theta(0.1, {0.3, -0.2}), nonconvergent);
}

TEST(Theta, SpecificLaws) {
  EXPECT_LT(law_theta_shift_one({0.17, 0.05}, {0.0, 0.3}), 1e-12);
  EXPECT_LT(law_theta_inversion({0.3, 0.1}, {0.2, 0.7}), 1e-12);
}

TEST(Theta, TruncationSelfConsistent) {
  // a sum with twice as many terms on each side around the peak
  const Complex z(0.4, 0.3), tau(0.1, 0.35);
  Complex wide(0.0, 0.0);
  for (int j = -80; j <= 80; ++j) {
    const double n = j + 0.5;
    wide += std::exp(I * kPi * n * n * tau + 2.0 * kPi * I * n * (z + 0.5));
  }
  const auto t = theta(z, tau);
  EXPECT_LT(std::abs(t.value - wide) / std::abs(wide), 1e-14);
  EXPECT_LT(t.truncation_bound, 1e-16 * std::abs(wide) + 1e-300);
}

TEST(Eta, Laws) {
  const Complex t1(0.0, 0.7);
  EXPECT_LT(relative_residual(eta(t1 + 1.0).value, std::exp(I * kPi / 12.0) * eta(t1).value), 1e-13);
  const Complex t2(0.4, 0.8);
  EXPECT_LT(relative_residual(eta(t2).value, eta(-1.0 / t2).value / sqrt_minus_i_tau(t2)), 1e-12);
}

TEST(Eta, KnownValueAtI) {
  // eta(i) = Gamma(1/4) / (2 pi^{3/4}), and eta(2i) from the duplication relation
  const double eta_i = std::tgamma(0.25) / (2.0 * std::pow(kPi, 0.75));
  EXPECT_NEAR(eta(I).value.real(), eta_i, 1e-14);
  EXPECT_NEAR(eta(2.0 * I).value.real(), eta_i / std::pow(2.0, 3.0 / 8.0), 1e-14);
  EXPECT_THROW(eta(0.5), nonconvergent);
}

TEST(Mordell, OriginAndPositivity) {
  EXPECT_NEAR(std::abs(mordell(0.0, 0.0).value - 1.0), 0.0, 1e-10);
  double prev = 0.0;
  for (double t : {0.5, 0.1, 0.02}) {
    const auto h = mordell(0.0, Complex(0.0, t));
    EXPECT_GT(h.value.real(), prev);
    EXPECT_LT(h.value.real(), 1.0);
    EXPECT_NEAR(h.value.imag(), 0.0, 1e-15);
    prev = h.value.real();
  }
  for (double t : {1.0, 0.5, 0.2, 0.05, 0.01}) {
    const double h = mordell(0.0, Complex(0.0, t)).value.real();
    EXPECT_GT(h, 0.0);
    EXPECT_LT(h, 1.05);
  }
}

TEST(Mordell, ClosedFormOnRealAxis) {
  // h(z;0) = 1/cos(pi z) for |Re z| < 1/2
  for (double z : {0.1, 0.3, -0.45}) EXPECT_NEAR(mordell(z, 0.0).value.real(), 1.0 / std::cos(kPi * z), 1e-10);
}

TEST(Mordell, Transformation) { EXPECT_LT(law_mordell(0.2, {0.0, 0.6}), 1e-10); }

TEST(Mordell, DivergentRegime) {
  EXPECT_THROW(mordell(0.5, 0.0), nonconvergent);
  EXPECT_THROW(mordell(0.1, {0.0, -0.1}), nonconvergent);
  EXPECT_NO_THROW(mordell(0.7, {0.0, 0.3}));
}

TEST(Appell, TransformationAtReferencePoint) { EXPECT_LT(law_appell({0.23, 0.1}, 0.37, {0.0, 0.8}), 1e-10); }

TEST(Appell, PoleDetected) {
  EXPECT_THROW(appell(1, 0.0, 0.3, {0.0, 1.0}), pole_error);
  EXPECT_THROW(appell(1, Complex(0.0, 2.0), 0.3, {0.0, 1.0}), pole_error);  // u = 2 tau, hit at n = -2
  EXPECT_THROW(appell(0, 0.1, 0.3, {0.0, 1.0}), std::invalid_argument);
}

TEST(Appell, ShiftInU) {
  // e^{2 pi i u} is 1-periodic, so A_1(u+1) = e^{pi i} A_1(u) = -A_1(u)
  const Complex u(0.13, 0.07), v(0.31, -0.05), tau(0.1, 0.9);
  EXPECT_LT(relative_residual(appell(1, u + 1.0, v, tau).value, -appell(1, u, v, tau).value), 1e-13);
  // level 2: the prefactor e^{2 pi i u} is 1-periodic
  EXPECT_LT(relative_residual(appell(2, u + 1.0, v, tau).value, appell(2, u, v, tau).value), 1e-13);
}

TEST(Appell, MatchesNaiveSum) {
  const Complex u(0.2, 0.05), v(0.4, 0.0), tau(0.0, 0.7);
  const Complex q = std::exp(2.0 * kPi * I * tau);
  Complex sum(0.0, 0.0);
  for (int n = -40; n <= 40; ++n) {
    sum += std::pow(-1.0, n) * std::exp(2.0 * kPi * I * double(n) * v) * std::pow(q, n * (n + 1) / 2.0) /
           (1.0 - std::exp(2.0 * kPi * I * u) * std::pow(q, n));
  }
  sum *= std::exp(kPi * I * u);
  EXPECT_LT(relative_residual(appell(1, u, v, tau).value, sum), 1e-12);
}

TEST(Mu, DefinitionAndAntiPeriodicity) {
  const Complex u(0.3, 0.1), v(0.45, 0.02), tau(0.2, 0.75);
  EXPECT_LT(relative_residual(mu(u, v, tau).value * theta(v, tau).value, appell(1, u, v, tau).value), 1e-13);
  EXPECT_LT(relative_residual(mu(u + 1.0, v, tau).value, -mu(u, v, tau).value), 1e-13);
  EXPECT_THROW(mu(0.3, 0.0, tau), pole_error);
}

TEST(Mu, HalfHalfApproachesOneOverTwoI) {
  // mu(1/2,1/2;2tau) - h(0;2tau)/(2i) is exponentially small as t -> 0, and h(0;2tau) -> 1 only like sqrt(t)
  double prev_gap = 1.0, prev_dev = 1.0;
  for (double t : {0.1, 0.05, 0.02}) {
    const Complex tau(0.0, t);
    const Complex m = mu(0.5, 0.5, 2.0 * tau).value;
    const double gap = std::abs(m - mordell(0.0, 2.0 * tau).value / (2.0 * I));
    const double dev = std::abs(m - 1.0 / (2.0 * I));
    EXPECT_LT(gap, prev_gap);
    EXPECT_LT(dev, prev_dev);
    prev_gap = gap;
    prev_dev = dev;
  }
  EXPECT_LT(prev_gap, 1e-12);
  EXPECT_GT(prev_dev, 1e-3);
}

TEST(DecayMainTerms, ExponentiallyAccurate) {
  for (double t : {0.2, 0.1, 0.05}) {
    const Complex tau(0.0, t);
    const auto m = theta_decay_mainterm(0.25, 2.0, tau);
    EXPECT_LT(std::abs(theta(0.25 * tau, tau).value / m.theta_lattice - 1.0), 1e-9) << t;
    EXPECT_LT(std::abs(eta(tau).value / m.eta - 1.0), 1e-12) << t;
    EXPECT_LT(std::abs(theta(0.5 + 0.25 * tau, tau).value / *m.theta_shifted - 1.0), 1e-12) << t;
  }
  const Complex tau(0.0, 0.1);
  const auto k2 = theta_decay_mainterm(0.0, 2.0, tau);
  EXPECT_LT(std::abs(theta(0.5, tau).value / *k2.theta_shifted - 1.0), 1e-6);
  const auto k3 = theta_decay_mainterm(0.4, 3.0, tau);
  EXPECT_LT(std::abs(theta(1.0 / 3.0 + 0.4 * tau, tau).value / *k3.theta_shifted - 1.0), 1e-4);
}

TEST(DecayMainTerms, RangeChecks) {
  EXPECT_THROW(theta_decay_mainterm(1.0, std::nullopt, {0.0, 0.1}), std::invalid_argument);
  EXPECT_THROW(theta_decay_mainterm(-0.1, std::nullopt, {0.0, 0.1}), std::invalid_argument);
  EXPECT_THROW(theta_decay_mainterm(0.2, 1.0, {0.0, 0.1}), std::invalid_argument);
  EXPECT_FALSE(theta_decay_mainterm(0.2, std::nullopt, {0.0, 0.1}).theta_shifted);
}

TEST(Grids, AllLawsBelowThreshold) {
  for (const auto& r : verify_theta_eta_laws()) EXPECT_LT(r.residual, 1e-9) << r.law;
  for (const auto& r : verify_appell_law()) EXPECT_LT(r.residual, 1e-8) << r.law;
  for (const auto& r : verify_mordell_law()) EXPECT_LT(r.residual, 1e-8) << r.law;
  EXPECT_EQ(verify_theta_eta_laws().size(), 100u);
}

TEST(Grids, WrongBranchIsDetected) {
  // with -sqrt(-i tau) the inversion law fails, so the residual test pins the branch
  const Complex z(0.3, 0.1), tau(0.2, 0.7);
  const Complex lhs = theta(z / tau, -1.0 / tau).value;
  const Complex wrong = I * sqrt_minus_i_tau(tau) * std::exp(I * kPi * z * z / tau) * theta(z, tau).value;
  EXPECT_GT(relative_residual(lhs, wrong), 0.5);
}
