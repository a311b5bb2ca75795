#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "rcf/errors.hpp"
#include "rcf/lyapunov.hpp"

namespace rcf {
namespace {

// lambda of the Gauss map: integral of -2 ln x / ((1 + x) ln 2) over (0, 1), with x = e^-u.
double gauss_exponent_by_quadrature() {
  return oracle::simpson(
      [](double u) { return 2.0 * u * std::exp(-u) / ((1.0 + std::exp(-u)) * std::log(2.0)); },
      0.0, 60.0, 20000);
}

TEST(EstimateLyapunov, SingleTerm) {
  SplitMix64 e(1);
  const auto rec = estimate_lyapunov(1.0, 1.0, 0.5, 1, e);
  EXPECT_NEAR(rec.lambda_hat, std::log(4.0), 1e-15);
  EXPECT_EQ(rec.orbit_len, 1u);
  EXPECT_EQ(rec.resamples, 0u);
}

TEST(EstimateLyapunov, GaussMapExponent) {
  const double oracle = gauss_exponent_by_quadrature();
  EXPECT_NEAR(oracle, std::numbers::pi * std::numbers::pi / (6.0 * std::log(2.0)), 1e-9);
  SplitMix64 e(2);
  const auto rec = estimate_lyapunov(1.0, 1.0, e.uniform_open01(), 1'000'000, e);
  EXPECT_NEAR(rec.lambda_hat, oracle, 0.05);
  EXPECT_NEAR(conjecture_residual(rec), oracle - 2.0, 0.05);
}

TEST(EstimateLyapunov, LargeRMatchesUniformAverage) {
  SplitMix64 e(3);
  const double r = 1e5;
  const auto rec = estimate_lyapunov(r, 1.0, 0.37, 100'000, e);
  EXPECT_NEAR(rec.lambda_hat, std::log(r) + 2.0, 0.05);
  EXPECT_LT(conjecture_residual(rec), 0.05);
}

TEST(EstimateLyapunov, Preconditions) {
  SplitMix64 e(4);
  EXPECT_THROW(estimate_lyapunov(0.5, 1.0, 0.5, 10, e), DomainError);
  EXPECT_THROW(estimate_lyapunov(2.0, 0.0, 0.5, 10, e), DomainError);
  EXPECT_THROW(estimate_lyapunov(2.0, 1.0, 0.0, 10, e), DomainError);
  EXPECT_THROW(estimate_lyapunov(2.0, 1.0, 1.0, 10, e), DomainError);
  EXPECT_THROW(estimate_lyapunov(2.0, 1.0, 0.5, 0, e), DomainError);
}

TEST(EstimateLyapunov, OrbitHittingZeroResamples) {
  // 0.5 -> frac(2 / 0.5) = 0 under r = 2
  SplitMix64 e(5);
  const auto rec = estimate_lyapunov(2.0, 1.0, 0.5, 1000, e);
  EXPECT_GE(rec.resamples, 1u);
  EXPECT_TRUE(std::isfinite(rec.lambda_hat));
}

TEST(EstimateLyapunov, ResampleCapEnforced) {
  SplitMix64 e(6);
  LyapunovOptions opts;
  opts.resample_cap = 5;
  // x^alpha underflows for every x that is not extremely close to 1
  EXPECT_THROW(estimate_lyapunov(1.0, 1e4, 0.5, 100, e, opts), ResampleLimit);
}

TEST(EstimateLyapunov, BurnInShiftsTheWindow) {
  SplitMix64 a(7), b(7);
  LyapunovOptions opts;
  opts.burn_in = 1;
  const auto skipped = estimate_lyapunov(3.0, 1.0, 0.3, 1, a, opts);
  const auto direct = estimate_lyapunov(3.0, 1.0, 0.3, 2, b);
  const double first = std::log(3.0) - 2.0 * std::log(0.3);
  EXPECT_NEAR(skipped.lambda_hat, 2.0 * direct.lambda_hat - first, 1e-12);
}

TEST(Sweep, SortedRecordsInRange) {
  SplitMix64 e(8);
  const auto recs = sweep(1.0, 2.0, 3.0, 100, 10'000, e);
  ASSERT_EQ(recs.size(), 100u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_GE(recs[i].r, 1.0);
    EXPECT_LE(recs[i].r, 2.0);
    EXPECT_EQ(recs[i].alpha, 3.0);
    EXPECT_GT(recs[i].lambda_hat, 0.0);
    if (i) EXPECT_LE(recs[i - 1].r, recs[i].r);
  }
}

TEST(Sweep, IncreasesOverallWithR) {
  SplitMix64 e(9);
  const auto recs = sweep(1.0, 10.0, 1.0, 2000, 10'000, e);
  double low = 0.0, high = 0.0;
  for (std::size_t i = 0; i < 500; ++i) low += recs[i].lambda_hat;
  for (std::size_t i = recs.size() - 500; i < recs.size(); ++i) high += recs[i].lambda_hat;
  EXPECT_GT(high, low + 500 * 1.0);
}

TEST(Sweep, Preconditions) {
  SplitMix64 e(10);
  EXPECT_THROW(sweep(2.0, 2.0, 1.0, 10, 100, e), DomainError);
  EXPECT_THROW(sweep(3.0, 2.0, 1.0, 10, 100, e), DomainError);
  EXPECT_THROW(sweep(0.5, 2.0, 1.0, 10, 100, e), DomainError);
  EXPECT_THROW(sweep(1.0, 2.0, 1.0, 0, 100, e), DomainError);
}

TEST(ConjectureResidual, ExactValue) {
  SweepRecord rec{7.0, 1.0, 2.0 + std::log(7.0), 10, 0};
  EXPECT_NEAR(conjecture_residual(rec), 0.0, 1e-15);
  rec.lambda_hat = 1.0;
  EXPECT_NEAR(conjecture_residual(rec), 1.0 + std::log(7.0), 1e-15);
}

TEST(LyapunovProperty, Positive) {
  SplitMix64 e(11);
  for (int i = 0; i < 1000; ++i) {
    const double r = e.uniform(1.0, 1e6);
    const auto rec = estimate_lyapunov(r, 1.0, e.uniform_open01(), 10'000, e);
    ASSERT_GT(rec.lambda_hat, 0.0) << "r=" << r;
  }
}

TEST(LyapunovProperty, LogBinnedMeansNondecreasing) {
  SplitMix64 e(12);
  double prev = -INFINITY;
  for (int decade = 0; decade < 6; ++decade) {
    const double lo = std::pow(10.0, decade), hi = std::pow(10.0, decade + 1);
    double sum = 0.0;
    const int per_bin = 40;
    for (int i = 0; i < per_bin; ++i) {
      const double r = lo * std::pow(hi / lo, e.uniform(0.0, 1.0));
      sum += estimate_lyapunov(r, 1.0, e.uniform_open01(), 10'000, e).lambda_hat;
    }
    const double mean = sum / per_bin;
    EXPECT_GE(mean, prev) << "decade " << decade;
    prev = mean;
  }
}

TEST(LyapunovProperty, ResidualDecaysWithR) {
  SplitMix64 e(13);
  auto mean_residual = [&](double lo, double hi) {
    const auto recs = sweep(lo, hi, 1.0, 100, 10'000, e);
    double s = 0.0;
    for (const auto& rec : recs) s += conjecture_residual(rec);
    return s / static_cast<double>(recs.size());
  };
  EXPECT_LT(mean_residual(1e5, 1e6), mean_residual(1.0, 10.0));
}

TEST(WriteSweepCsv, HeaderAndRows) {
  std::vector<SweepRecord> recs{{1.5, 1.0, 2.25, 100, 0}, {2.0, 2.0, 3.0, 100, 4}};
  std::ostringstream os;
  write_sweep_csv(os, recs);
  EXPECT_EQ(os.str(), "r,alpha,lambda,orbit_len,resamples\n1.5,1,2.25,100,0\n2,2,3,100,4\n");
}

}  // namespace
}  // namespace rcf
