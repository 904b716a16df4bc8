#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sfide/errors.hpp"
#include "sfide/specfun.hpp"

namespace sfide {
namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(Gamma, KnownValues) {
  EXPECT_DOUBLE_EQ(gamma(1.0), 1.0);
  EXPECT_DOUBLE_EQ(gamma(5.0), 24.0);
  EXPECT_LE(rel(gamma(0.5), std::sqrt(std::numbers::pi)), 1e-15);
}

TEST(Gamma, MatchesBoostOverRange) {
  for (double x = 0.01; x <= 50.0; x += 0.37) {
    EXPECT_LE(rel(gamma(x), boost::math::tgamma(x)), 1e-13) << "x=" << x;
  }
}

TEST(Gamma, Recurrence) {
  for (double x : {0.1, 0.5, 1.5, 7.3}) EXPECT_LE(rel(gamma(x + 1.0), x * gamma(x)), 1e-12) << x;
}

TEST(Gamma, RejectsNonPositive) {
  EXPECT_THROW(gamma(0.0), DomainError);
  EXPECT_THROW(gamma(-1.5), DomainError);
  EXPECT_THROW(gamma(std::nan("")), DomainError);
}

TEST(Beta, KnownValues) {
  EXPECT_DOUBLE_EQ(beta(1.0, 1.0), 1.0);
  EXPECT_LE(rel(beta(0.5, 0.5), std::numbers::pi), 1e-15);
  EXPECT_LE(rel(beta(2.0, 3.0), 1.0 / 12.0), 1e-15);
  EXPECT_THROW(beta(0.0, 1.0), DomainError);
  EXPECT_THROW(beta(1.0, -2.0), DomainError);
}

TEST(Beta, LargeArgumentsDoNotOverflow) {
  // B(200, 300) ~ 1e-147 while Gamma(500) overflows.
  const double b = beta(200.0, 300.0);
  EXPECT_TRUE(std::isfinite(b));
  EXPECT_LE(rel(b, boost::math::beta(200.0, 300.0)), 1e-11);
}

TEST(Quadrature, LegendreCase) {
  const auto rule = build_quadrature(1.0, 0.0, 5);
  double sum = 0.0;
  for (double w : rule.weights()) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-14);
  // Symmetric about 1/2.
  for (std::size_t q = 0; q < rule.size(); ++q) {
    EXPECT_NEAR(rule.nodes()[q], 1.0 - rule.nodes()[rule.size() - 1 - q], 1e-14);
  }
  EXPECT_NEAR(rule.nodes()[2], 0.5, 1e-15);
}

TEST(Quadrature, WeightSumIsBeta) {
  const auto rule = build_quadrature(0.6, 0.3, 8);
  double sum = 0.0;
  for (double w : rule.weights()) sum += w;
  EXPECT_LE(rel(sum, 2.15389087116132252359), 1e-12);
  EXPECT_LE(rel(sum, beta(0.6, 0.7)), 1e-12);
}

TEST(Quadrature, CubicMomentAgainstOracles) {
  const auto rule = build_quadrature(0.8, 0.25, 8);
  const double value = rule.integrate([](double u) { return u * u * u; });
  const double frozen = 0.412873308586758251398;  // B(0.8, 3.75), 30-digit reference
  EXPECT_LE(rel(value, frozen), 1e-12);
  EXPECT_LE(rel(value, beta(0.8, 3.75)), 1e-12);
  const double adaptive = testing::singular_weight_integral(0.8, 0.25, [](double u) { return u * u * u; });
  EXPECT_LE(rel(value, adaptive), 1e-9);
}

// Property: every rule is Gaussian for its weight, over a grid of exponents and sizes.
TEST(Quadrature, MonomialExactnessProperty) {
  for (double a : {0.1, 0.35, 0.6, 0.8, 1.0}) {
    for (double b : {0.0, 0.05, 0.3, 0.49, 0.9}) {
      for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 12u}) {
        const auto rule = build_quadrature(a, b, n);
        ASSERT_EQ(rule.size(), n);
        for (std::size_t q = 0; q < n; ++q) {
          EXPECT_GT(rule.weights()[q], 0.0);
          EXPECT_GT(rule.nodes()[q], 0.0);
          EXPECT_LT(rule.nodes()[q], 1.0);
          if (q > 0) EXPECT_GT(rule.nodes()[q], rule.nodes()[q - 1]);
        }
        for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
          const double got = rule.integrate([k](double u) { return std::pow(u, static_cast<double>(k)); });
          const double want = beta(a, static_cast<double>(k) + 1.0 - b);
          EXPECT_LE(rel(got, want), 1e-10) << "alpha=" << a << " beta=" << b << " n=" << n << " k=" << k;
        }
      }
    }
  }
}

TEST(Quadrature, AlphaEqualsBetaEdge) {
  // alpha - 1 - beta = -1 makes the textbook k = 1 recurrence 0/0.
  const auto rule = build_quadrature(0.5, 0.5, 6);
  for (std::size_t k = 0; k <= 11; ++k) {
    const double got = rule.integrate([k](double u) { return std::pow(u, static_cast<double>(k)); });
    EXPECT_LE(rel(got, beta(0.5, static_cast<double>(k) + 0.5)), 1e-10) << k;
  }
}

TEST(Quadrature, ArgumentErrors) {
  EXPECT_THROW(build_quadrature(0.8, 0.2, 0), ArgumentError);
  EXPECT_THROW(build_quadrature(0.0, 0.2, 4), DomainError);
  EXPECT_THROW(build_quadrature(1.2, 0.2, 4), DomainError);
  EXPECT_THROW(build_quadrature(0.8, 1.0, 4), DomainError);
  EXPECT_THROW(build_quadrature(0.8, -0.1, 4), DomainError);
}

}  // namespace
}  // namespace sfide
