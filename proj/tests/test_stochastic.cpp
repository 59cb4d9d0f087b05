#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "parkassign/stochastic.hpp"

using namespace parkassign;

namespace {

// Mean of Poisson(lambda) restricted to 0..n-1, by summing the pmf directly.
double truncated_mean_oracle(double lambda, int n) {
  long double term = std::exp(-static_cast<long double>(lambda));
  long double mass = 0, weighted = 0;
  for (int s = 0; s < n; ++s) {
    if (s > 0) term *= lambda / s;
    mass += term;
    weighted += s * term;
  }
  return static_cast<double>(weighted / mass);
}

// Gamma CDF by composite Simpson integration of the density.
double gamma_cdf_oracle(double t, double shape, double scale) {
  if (t <= 0) return 0.0;
  const int n = 4000;
  const double h = t / n;
  auto pdf = [&](double x) {
    if (x <= 0) return shape < 1 ? 0.0 : (shape == 1 ? 1.0 / scale : 0.0);
    return std::exp((shape - 1) * std::log(x) - x / scale - std::lgamma(shape) - shape * std::log(scale));
  };
  double sum = pdf(0) + pdf(t);
  for (int i = 1; i < n; ++i) sum += pdf(i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3;
}

}  // namespace

TEST(TruncatedPoisson, SegmentMeanMatchesPmfSum) {
  Rng rng = make_rng(42);
  const int n = 12, draws = 100000;
  double sum = 0;
  for (int i = 0; i < draws; ++i) {
    const int s = sample_segment(rng, 6.0, n);
    ASSERT_GE(s, 0);
    ASSERT_LT(s, n);
    sum += s;
  }
  const double expected = truncated_mean_oracle(6.0, n);
  EXPECT_NEAR(sum / draws, expected, 0.02 * expected);
}

TEST(TruncatedPoisson, TinyLambdaStaysInFirstSegment) {
  Rng rng = make_rng(1);
  TimeWindow w{0, 7200, 600};
  for (int i = 0; i < 1000; ++i) {
    const double et = sample_expected_arrival(rng, {1e-12, 0}, w);
    EXPECT_GE(et, 0.0);
    EXPECT_LT(et, 600.0);
  }
}

TEST(TruncatedPoisson, HugeLambdaStaysInWindow) {
  Rng rng = make_rng(1);
  // P(11) / P(10) = 5000 / 11, so almost all mass sits in the last segment.
  int last = 0;
  for (int i = 0; i < 1000; ++i) {
    const int s = sample_segment(rng, 5000.0, 12);
    ASSERT_GE(s, 9);
    ASSERT_LE(s, 11);
    last += s == 11;
  }
  EXPECT_GE(last, 985);
}

TEST(TruncatedPoisson, ModeNearWindowMidpoint) {
  Rng rng = make_rng(5);
  TimeWindow w;  // 10:00 to 12:00 in 10-minute segments
  std::map<int, int> counts;
  for (int i = 0; i < 100000; ++i) {
    const double et = sample_expected_arrival(rng, {6.0, 0}, w);
    ASSERT_GE(et, w.start);
    ASSERT_LT(et, w.end);
    ++counts[static_cast<int>((et - w.start) / w.segment)];
  }
  const auto mode = std::max_element(counts.begin(), counts.end(),
                                     [](auto& a, auto& b) { return a.second < b.second; })->first;
  // Poisson(6) has modes at 5 and 6: segment starts 10:50 and 11:00.
  EXPECT_TRUE(mode == 5 || mode == 6) << mode;
}

TEST(ArrivalNoise, ZeroSigmaIsExactlyZero) {
  Rng rng = make_rng(1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(sample_arrival_noise(rng, {6, 0.0}), 0.0);
}

TEST(ArrivalNoise, MomentsAndSymmetry) {
  Rng rng = make_rng(9);
  const int n = 100000;
  double sum = 0, sq = 0;
  int negative = 0;
  for (int i = 0; i < n; ++i) {
    const double v = sample_arrival_noise(rng, {6, 60.0});
    sum += v;
    sq += v * v;
    negative += v < 0;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  EXPECT_NEAR(mean, 0.0, 1.0);
  EXPECT_NEAR(sd, 60.0, 0.02 * 60.0);
  EXPECT_NEAR(static_cast<double>(negative) / n, 0.5, 0.01);
}

TEST(ActualArrival, AddsNoiseAndClamps) {
  TimeWindow w{0, 7200, 600};
  EXPECT_EQ(actual_arrival(600, 0, w), 600);
  EXPECT_EQ(actual_arrival(600, -30, w), 570);
  EXPECT_EQ(actual_arrival(10, -50, w), 0);
}

TEST(Patience, GammaMomentsAndPositivity) {
  Rng rng = make_rng(13);
  const int n = 100000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double v = sample_patience(rng, {2.0, 300.0});
    ASSERT_GT(v, 0.0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 600.0, 0.02 * 600.0);
  EXPECT_NEAR(var, 2.0 * 300.0 * 300.0, 0.05 * 2.0 * 300.0 * 300.0);
}

TEST(Patience, AbandonmentCdfMatchesGamma) {
  Rng rng = make_rng(17);
  const int n = 100000;
  std::vector<double> draws(n);
  for (auto& d : draws) d = sample_patience(rng, {2.0, 300.0});
  std::sort(draws.begin(), draws.end());
  // Empirical P(abandon by t) against the analytic CDF on a grid, with the
  // DKW band at 99.9% confidence.
  const double band = std::sqrt(std::log(2.0 / 0.001) / (2.0 * n));
  for (double t = 50; t <= 3000; t += 50) {
    const double empirical =
        static_cast<double>(std::upper_bound(draws.begin(), draws.end(), t) - draws.begin()) / n;
    EXPECT_NEAR(empirical, gamma_cdf_oracle(t, 2.0, 300.0), band) << "t=" << t;
  }
}

TEST(ShouldAbandon, StrictThreshold) {
  EXPECT_FALSE(should_abandon(0, 10));
  EXPECT_TRUE(should_abandon(601, 600));
  EXPECT_FALSE(should_abandon(600, 600));
}

TEST(Determinism, SameSeedSameStreams) {
  Rng a = make_rng(99, 2), b = make_rng(99, 2), c = make_rng(99, 3);
  const ArrivalParams ap{6, 120};
  const TimeWindow w;
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double ea = sample_expected_arrival(a, ap, w), eb = sample_expected_arrival(b, ap, w);
    ASSERT_EQ(ea, eb);
    ASSERT_EQ(sample_arrival_noise(a, ap), sample_arrival_noise(b, ap));
    ASSERT_EQ(sample_patience(a, {2, 300}), sample_patience(b, {2, 300}));
    differs |= ea != sample_expected_arrival(c, ap, w);
  }
  EXPECT_TRUE(differs);
}
