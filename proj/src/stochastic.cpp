#include "parkassign/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parkassign {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

int TimeWindow::segment_count() const {
  if (!(segment > 0.0) || !(end > start)) return 0;
  return static_cast<int>(std::llround((end - start) / segment));
}

std::vector<double> truncated_poisson_pmf(double lambda, int n_segments) {
  if (n_segments < 1) throw std::invalid_argument("window needs at least one segment");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("poisson mean must be finite and nonnegative");
  }
  std::vector<double> pmf(static_cast<std::size_t>(n_segments));
  if (lambda == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  // log-space so large lambda does not underflow
  double max_log = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_segments; ++s) {
    pmf[s] = s * std::log(lambda) - lambda - std::lgamma(s + 1.0);
    max_log = std::max(max_log, pmf[s]);
  }
  double total = 0.0;
  for (auto& v : pmf) {
    v = std::exp(v - max_log);
    total += v;
  }
  for (auto& v : pmf) v /= total;
  return pmf;
}

int sample_segment(Rng& rng, double lambda, int n_segments) {
  const auto pmf = truncated_poisson_pmf(lambda, n_segments);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (int s = 0; s < n_segments; ++s) {
    acc += pmf[s];
    if (u < acc) return s;
  }
  // u landed in the rounding gap above the accumulated mass
  for (int s = n_segments - 1; s >= 0; --s) {
    if (pmf[s] > 0.0) return s;
  }
  return 0;
}

double sample_expected_arrival(Rng& rng, const ArrivalParams& p, const TimeWindow& window) {
  const int n = window.segment_count();
  const int s = sample_segment(rng, p.lambda_segment, n);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return window.start + (s + u) * window.segment;
}

double sample_arrival_noise(Rng& rng, const ArrivalParams& p) {
  if (p.noise_sigma == 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, p.noise_sigma)(rng);
}

double actual_arrival(double expected, double noise, const TimeWindow& window) {
  return std::max(expected + noise, window.start);
}

double sample_patience(Rng& rng, const PatienceParams& p) {
  std::gamma_distribution<double> dist(p.shape, p.scale);
  double v = dist(rng);
  while (!(v > 0.0)) v = dist(rng);
  return v;
}

}  // namespace parkassign
