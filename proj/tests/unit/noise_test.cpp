#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sfide/errors.hpp"
#include "sfide/noise.hpp"

namespace sfide {
namespace {

TEST(Philox, KnownAnswers) {
  using Block = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}),
            (Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
            (Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(NormalQuantile, ReferenceValues) {
  // 25-digit references evaluated at the exact binary value of each p.
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-16);
  EXPECT_NEAR(normal_quantile(0.3), -0.5244005127080408159694544, 1e-15);
  EXPECT_NEAR(normal_quantile(0.7), 0.5244005127080406563136292, 1e-15);
  EXPECT_NEAR(normal_quantile(0.975), 1.95996398454005423552, 1e-14);
  EXPECT_NEAR(normal_quantile(0.02425), -1.97296105131188485027, 1e-14);
  EXPECT_NEAR(normal_quantile(1e-10), -6.36134090240405620470, 1e-13);
  EXPECT_NEAR(normal_quantile(1e-20), -9.26234008979840757957, 1e-12);
  EXPECT_NEAR(normal_quantile(0.999999), 4.753424308817087765688097, 1e-13);
  EXPECT_NEAR(normal_quantile(1e-300), -37.0470962993612, 1e-9);
  EXPECT_THROW(normal_quantile(0.0), DomainError);
  EXPECT_THROW(normal_quantile(1.0), DomainError);
}

TEST(Generate, Deterministic) {
  const auto a = generate(7, 3, 100, 2, 0.01);
  const auto b = generate(7, 3, 100, 2, 0.01);
  EXPECT_EQ(a.increments, b.increments);
  ASSERT_EQ(a.increments.size(), 200u);
  EXPECT_NE(a.increments, generate(8, 3, 100, 2, 0.01).increments);
}

TEST(Generate, ArgumentErrors) {
  EXPECT_THROW(generate(1, 0, 0, 1, 0.1), ArgumentError);
  EXPECT_THROW(generate(1, 0, 4, 0, 0.1), ArgumentError);
  EXPECT_THROW(generate(1, 0, 4, 1, 0.0), ArgumentError);
}

TEST(Generate, SampleVarianceMatchesStep) {
  const double h = 0.01;
  const std::size_t per_path = 10000, paths = 100;
  double sum = 0.0, sum_sq = 0.0;
  std::size_t n = 0;
  for (std::size_t p = 0; p < paths; ++p) {
    for (double x : generate(2024, p, per_path, 1, h).increments) {
      sum += x;
      sum_sq += x * x;
      ++n;
    }
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum_sq / static_cast<double>(n) - mean * mean;
  // Var of the sample variance of n normals is 2 h^2 / n.
  const double se = std::sqrt(2.0 / static_cast<double>(n)) * h;
  EXPECT_LE(std::abs(var - h), 3.0 * se);
  EXPECT_LE(std::abs(mean), 4.0 * std::sqrt(h / static_cast<double>(n)));
}

TEST(Generate, DistinctPathsUncorrelated) {
  const std::size_t n = 100000;
  const auto a = generate(99, 0, n, 1, 1.0);
  const auto b = generate(99, 1, n, 1, 1.0);
  const double dot = std::inner_product(a.increments.begin(), a.increments.end(), b.increments.begin(), 0.0);
  const double na = std::sqrt(std::inner_product(a.increments.begin(), a.increments.end(), a.increments.begin(), 0.0));
  const double nb = std::sqrt(std::inner_product(b.increments.begin(), b.increments.end(), b.increments.begin(), 0.0));
  EXPECT_LE(std::abs(dot / (na * nb)), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Generate, OrderIndependent) {
  std::vector<std::vector<double>> forward, backward(8);
  for (std::uint64_t p = 0; p < 8; ++p) forward.push_back(generate(5, p, 64, 2, 0.1).increments);
  for (std::uint64_t p = 8; p-- > 0;) backward[p] = generate(5, p, 64, 2, 0.1).increments;
  EXPECT_EQ(forward, backward);
}

TEST(Coarsen, PairwiseSums) {
  BrownianPaths fine;
  fine.n_steps = 2;
  fine.r = 1;
  fine.h = 0.5;
  fine.increments = {0.25, -1.5};
  const auto coarse = coarsen(fine);
  ASSERT_EQ(coarse.n_steps, 1u);
  EXPECT_EQ(coarse.increments[0], 0.25 + -1.5);
  EXPECT_EQ(coarse.h, 1.0);
  EXPECT_EQ(coarse.coarsen_level, 1u);
}

TEST(Coarsen, CouplingIdentityAndPrefixSums) {
  const auto fine = generate(11, 4, 64, 3, 1.0 / 64.0);
  const auto coarse = coarsen(fine);
  EXPECT_EQ(coarse.seed, fine.seed);
  EXPECT_EQ(coarse.path_index, fine.path_index);
  for (std::size_t j = 0; j < coarse.n_steps; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(coarse.row(j)[k], fine.row(2 * j)[k] + fine.row(2 * j + 1)[k]);
    }
  }
  // Brownian values at shared grid points agree.
  for (std::size_t k = 0; k < 3; ++k) {
    double wf = 0.0, wc = 0.0;
    for (std::size_t j = 0; j < coarse.n_steps; ++j) {
      wf = (wf + fine.row(2 * j)[k]) + fine.row(2 * j + 1)[k];
      wc += coarse.row(j)[k];
      EXPECT_NEAR(wc, wf, 1e-14);
    }
  }
  const auto twice = coarsen(coarse);
  EXPECT_EQ(twice.n_steps, 16u);
  EXPECT_EQ(twice.coarsen_level, 2u);
  for (std::size_t j = 0; j < twice.n_steps; ++j) {
    const double four = fine.row(4 * j)[0] + fine.row(4 * j + 1)[0] + fine.row(4 * j + 2)[0] + fine.row(4 * j + 3)[0];
    EXPECT_NEAR(twice.row(j)[0], four, 1e-14);
  }
}

TEST(Coarsen, OddStepsRejected) { EXPECT_THROW(coarsen(generate(1, 0, 5, 1, 0.2)), ArgumentError); }

TEST(Coarsen, VarianceDoubles) {
  double sum_sq = 0.0;
  std::size_t n = 0;
  for (std::size_t p = 0; p < 50; ++p) {
    for (double x : coarsen(generate(3, p, 4000, 1, 0.005)).increments) {
      sum_sq += x * x;
      ++n;
    }
  }
  const double var = sum_sq / static_cast<double>(n);
  EXPECT_LE(std::abs(var - 0.01), 3.0 * std::sqrt(2.0 / static_cast<double>(n)) * 0.01);
}

TEST(Dump, RoundTripAndHeaderLayout) {
  const auto paths = generate(0x1234567890abcdefull, 17, 10, 2, 0.1);
  std::stringstream buf;
  write_increments(buf, paths);
  const std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 32u + 20u * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "SFBW");
  const auto back = read_increments(buf);
  EXPECT_EQ(back.n_steps, 10u);
  EXPECT_EQ(back.r, 2u);
  EXPECT_EQ(back.path_index, 17u);
  EXPECT_EQ(back.seed, paths.seed);
  EXPECT_EQ(back.h, paths.h);
  EXPECT_EQ(back.increments, paths.increments);

  std::stringstream bad("XXXX");
  EXPECT_THROW(read_increments(bad), ArgumentError);
}

}  // namespace
}  // namespace sfide
