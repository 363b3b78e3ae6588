#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qnlse/errors.hpp"
#include "qnlse/qmath.hpp"

using namespace qnlse;

namespace {

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Complex random_disc_point(std::mt19937_64& rng, double max_radius) {
  std::uniform_real_distribution<double> r(0.0, max_radius);
  std::uniform_real_distribution<double> a(-std::numbers::pi, std::numbers::pi);
  return std::polar(r(rng), a(rng));
}

}  // namespace

// ============================================================================
// Principal-branch powers
// ============================================================================

TEST(CpowPrincipal, UnitBaseIsOne) {
  EXPECT_EQ(cpow_principal({1.0, 0.0}, {2.5, -7.0}), Complex(1.0, 0.0));
  EXPECT_EQ(cpow_principal({1.0, 0.0}, {-3.0, 0.0}), Complex(1.0, 0.0));
}

TEST(CpowPrincipal, SquareRootOfMinusOneIsI) {
  const Complex r = cpow_principal({-1.0, 0.0}, {0.5, 0.0});
  EXPECT_NEAR(r.real(), 0.0, 1e-16);
  EXPECT_NEAR(r.imag(), 1.0, 1e-15);
  // A signed zero must not move the argument to -pi.
  const Complex s = cpow_principal({-1.0, -0.0}, {0.5, 0.0});
  EXPECT_NEAR(s.imag(), 1.0, 1e-15);
}

TEST(CpowPrincipal, ReciprocalMatchesRectangularDivision) {
  const Complex expected = oracle::divide(1.0, {1.0, -1.0});
  EXPECT_NEAR(expected.real(), 0.5, 1e-16);
  EXPECT_NEAR(expected.imag(), 0.5, 1e-16);
  EXPECT_LT(std::abs(cpow_principal({1.0, -1.0}, {-1.0, 0.0}) - expected), 1e-15);
}

TEST(CpowPrincipal, ZeroBase) {
  EXPECT_EQ(cpow_principal(0.0, {0.5, 3.0}), Complex(0.0, 0.0));
  EXPECT_THROW(cpow_principal(0.0, {0.0, 1.0}), DomainError);
  EXPECT_THROW(cpow_principal(0.0, {-1.0, 0.0}), DomainError);
}

TEST(CpowPrincipal, NonFiniteInputsAreRejected) {
  EXPECT_THROW(cpow_principal({NAN, 0.0}, 2.0), DomainError);
  EXPECT_THROW(cpow_principal(2.0, {INFINITY, 0.0}), DomainError);
  EXPECT_THROW(cpow_principal(1e300, 10.0), DomainError);
}

TEST(CpowPrincipal, IntegerExponentsMatchRepeatedMultiplication) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int draw = 0; draw < 200; ++draw) {
    const Complex base{c(rng), c(rng)};
    for (int n = -3; n <= 3; ++n) {
      const Complex expected = oracle::integer_power(base, n);
      EXPECT_LE(std::abs(cpow_principal(base, n) - expected) / std::abs(expected), 1e-13)
          << "base " << base << " n " << n;
    }
  }
}

TEST(ContinuousLog, PicksBranchNearestReference) {
  const Complex z = std::polar(1.0, 3.0);
  const Complex l = continuous_log(z * std::polar(1.0, 0.5), {0.0, 3.0});
  EXPECT_NEAR(l.imag(), 3.5, 1e-14);
  EXPECT_NEAR(continuous_log(z, {0.0, -3.0 + 2 * std::numbers::pi}).imag(), 3.0, 1e-14);
  EXPECT_NEAR(continuous_log(z, {0.0, 3.0 + 4 * std::numbers::pi}).imag(),
              3.0 + 4 * std::numbers::pi, 1e-13);
}

// ============================================================================
// q-exponential
// ============================================================================

TEST(QExp, WorkedValues) {
  EXPECT_NEAR(std::abs(q_exp(2.0, 1.0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q_exp(1.0, 1.0) - std::numbers::e), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q_exp(0.5, 1.0) - 0.25), 0.0, 1e-15);
}

TEST(QExp, DispatchesToExpNearOne) {
  const Complex z{0.3, -1.2};
  EXPECT_EQ(q_exp(1.0 + 1e-13, z), std::exp(z));
}

TEST(QExp, VanishingBaseIsDomainError) {
  // 1 + (q-1) z = 0 at q = 2, z = -1.
  EXPECT_THROW(q_exp(2.0, -1.0), DomainError);
}

TEST(QExpRealCutoff, WorkedValues) {
  EXPECT_EQ(q_exp_real_cutoff(0.5, 3.0), 0.0);
  EXPECT_NEAR(q_exp_real_cutoff(0.5, -3.0), 6.25, 1e-14);
  EXPECT_NEAR(q_exp_real_cutoff(1.0001, 0.0), 1.0, 1e-15);
  EXPECT_EQ(q_exp_real_cutoff(0.5, 2.0), 0.0);  // base exactly 0
}

TEST(QExpRealCutoff, ProductRule) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> qd(0.2, 1.8);
  std::uniform_real_distribution<double> xd(-2.0, 2.0);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    const double q = qd(rng);
    const double x = xd(rng);
    const double y = xd(rng);
    // Near q = 1 the exponent 1/(1-q) amplifies rounding beyond the tolerance.
    if (std::abs(q - 1.0) < 1e-2) continue;
    const double combined = x + y + (q - 1.0) * x * y;
    auto positive = [q](double v) { return 1.0 + (q - 1.0) * v > 0.0; };
    if (!positive(x) || !positive(y) || !positive(combined)) continue;
    const double lhs = q_exp_real_cutoff(q, x) * q_exp_real_cutoff(q, y);
    const double rhs = q_exp_real_cutoff(q, combined);
    EXPECT_LE(std::abs(lhs - rhs) / std::abs(rhs), 1e-12) << q << " " << x << " " << y;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

// The deformed exponential as defined tends to exp(-z) as q -> 1.
TEST(QExp, ApproachesLimitLinearlyInDeviation) {
  std::mt19937_64 rng(3);
  std::vector<Complex> zs;
  for (int i = 0; i < 50; ++i) zs.push_back(random_disc_point(rng, 2.0));
  for (double sign : {1.0, -1.0}) {
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    std::vector<double> errors;
    for (double d : deltas) {
      double worst = 0.0;
      for (Complex z : zs) worst = std::max(worst, std::abs(q_exp(1.0 + sign * d, z) - std::exp(-z)));
      errors.push_back(worst);
      // |z|^2 |e^z| / 2 bounds the leading term; C = 30 covers |z| <= 2.
      EXPECT_LE(worst, 30.0 * d);
    }
    EXPECT_GE(oracle::log_log_slope(deltas, errors), 0.9);
  }
}

// ============================================================================
// Gauss hypergeometric function
// ============================================================================

TEST(Hyp2f1, ZeroArgumentIsOne) {
  EXPECT_EQ(hyp2f1({0.7, -1.3, 2.2, 0.0}), Complex(1.0, 0.0));
  EXPECT_EQ(hyp2f1({0.7, 2.2, 2.2, 0.0}), Complex(1.0, 0.0));
  EXPECT_EQ(hyp2f1_series({0.7, 2.2, 2.2, 0.0}), Complex(1.0, 0.0));
}

TEST(Hyp2f1, DegenerateFormGivesSqrtTwo) {
  // F(-a, g; g; -z) = (1 + z)^a with a = -1/2, z = -1/2.
  EXPECT_NEAR(std::abs(hyp2f1({0.5, 1.0, 1.0, 0.5}) - std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hyp2f1_series({0.5, 1.0, 1.0, 0.5}) - std::sqrt(2.0)), 0.0, 1e-14);
}

TEST(Hyp2f1, SeriesMatchesLongDoublePartialSum) {
  const Complex expected = oracle::hyp2f1_partial_sum(0.5, 0.3, 1.2, 0.2);
  EXPECT_LE(rel_err(hyp2f1({0.5, 0.3, 1.2, 0.2}), expected), 1e-12);
  const Complex z{0.4, -0.6};
  EXPECT_LE(rel_err(hyp2f1({-1.7, 2.4, 0.9, z}), oracle::hyp2f1_partial_sum(-1.7, 2.4, 0.9, z)),
            1e-12);
}

TEST(Hyp2f1, TerminatingSeries) {
  // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1) z^2 / (c(c+1)).
  const double b = 1.5;
  const double c = 2.5;
  const Complex z{0.3, 0.2};
  const Complex expected = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
  EXPECT_LE(std::abs(hyp2f1({-2.0, b, c, z}) - expected), 1e-15);
}

TEST(Hyp2f1, GammaPoleIsDomainError) {
  EXPECT_THROW(hyp2f1({1.0, 2.0, 0.0, 0.1}), DomainError);
  EXPECT_THROW(hyp2f1({1.0, 2.0, -3.0, 0.1}), DomainError);
  EXPECT_NO_THROW(hyp2f1({1.0, 2.0, -2.5, 0.1}));
}

TEST(Hyp2f1, SeriesOutsideUnitDiscIsDomainError) {
  EXPECT_THROW(hyp2f1({1.0, 2.0, 3.0, 1.0}), DomainError);
  EXPECT_THROW(hyp2f1({1.0, 2.0, 3.0, {0.0, 1.5}}), DomainError);
  // The degenerate path is valid off the cut.
  EXPECT_NO_THROW(hyp2f1({1.0, 3.0, 3.0, {0.0, 5.0}}));
  EXPECT_THROW(hyp2f1({1.0, 3.0, 3.0, 2.0}), DomainError);
}

TEST(Hyp2f1, SlowTailExceedsTermBudget) {
  EXPECT_THROW(hyp2f1({1.0, 1.0, 1.5, 0.9999}), ConvergenceError);
}

TEST(Hyp2f1, SymmetricInUpperParameters) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ab(-3.0, 3.0);
  std::uniform_real_distribution<double> g(0.5, 4.0);
  for (int i = 0; i < 200; ++i) {
    const HypParams p{ab(rng), ab(rng), g(rng), random_disc_point(rng, 0.9)};
    EXPECT_LE(rel_err(hyp2f1(p), hyp2f1({p.beta, p.alpha, p.gamma, p.z})), 1e-12);
  }
}

TEST(Hyp2f1Deriv, FirstCoefficientAtOrigin) {
  const HypParams p{0.7, -1.3, 2.2, 0.0};
  EXPECT_NEAR(std::abs(hyp2f1_deriv(p, 1) - 0.7 * -1.3 / 2.2), 0.0, 1e-15);
}

TEST(Hyp2f1Deriv, DegenerateClosedForm) {
  // d/dz (1 - z)^(-1/2) = 0.5 (1 - z)^(-3/2) = sqrt(2) at z = 1/2.
  EXPECT_NEAR(std::abs(hyp2f1_deriv({0.5, 1.0, 1.0, 0.5}, 1) - std::sqrt(2.0)), 0.0, 1e-14);
}

TEST(Hyp2f1Deriv, MatchesFiniteDifferenceOracle) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ab(-3.0, 3.0);
  std::uniform_real_distribution<double> g(0.5, 4.0);
  for (int i = 0; i < 50; ++i) {
    const HypParams p{ab(rng), ab(rng), g(rng), random_disc_point(rng, 0.7)};
    auto along_real = [&](double s) {
      return hyp2f1({p.alpha, p.beta, p.gamma, p.z + s});
    };
    for (int order : {1, 2}) {
      const Complex expected = oracle::derivative(along_real, 0.0, order);
      EXPECT_LE(rel_err(hyp2f1_deriv(p, order), expected), 1e-6)
          << "order " << order << " params " << p.alpha << " " << p.beta << " " << p.gamma
          << " " << p.z;
    }
  }
}

TEST(Hyp2f1Deriv, RejectsOtherOrders) {
  EXPECT_THROW(hyp2f1_deriv({1.0, 1.0, 2.0, 0.1}, 3), DomainError);
}

// ============================================================================
// Binomial identity
// ============================================================================

TEST(BinomialIdentity, WorkedCases) {
  EXPECT_LE(check_binomial_identity(2.0, 3.0, 0.9), 1e-10);
  EXPECT_EQ(check_binomial_identity(0.0, 1.7, {0.2, -0.5}), 0.0);
  EXPECT_LE(check_binomial_identity(-2.0, 1.5, {0.3, 0.4}), 1e-10);
}

TEST(BinomialIdentity, SeriesSideAgreesWithIndependentInverseSquare) {
  const Complex z{0.3, 0.4};
  const Complex expected = oracle::divide(1.0, (1.0 + z) * (1.0 + z));
  EXPECT_LE(std::abs(hyp2f1_series({2.0, 1.5, 1.5, -z}) - expected), 1e-13);
}

TEST(BinomialIdentity, RandomDraws) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> a(-3.0, 3.0);
  std::uniform_real_distribution<double> g(0.5, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double alpha = a(rng);
    const double gamma = g(rng);
    const Complex z = random_disc_point(rng, 0.9);
    EXPECT_LE(check_binomial_identity(alpha, gamma, z), 1e-10)
        << alpha << " " << gamma << " " << z;
  }
}
