#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace parkassign {

/// Seeded generator used by every sampler.
using Rng = std::mt19937_64;

/// Independent generator for (seed, stream). Different streams drawn from
/// the same seed do not overlap in practice.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Arrival window split into equal segments; all values in seconds.
struct TimeWindow {
  double start = 36000.0;  // 10:00
  double end = 43200.0;    // 12:00
  double segment = 600.0;

  int segment_count() const;
};

struct ArrivalParams {
  double lambda_segment = 6.0;  ///< Poisson mean, in segments.
  double noise_sigma = 120.0;   ///< seconds
};

struct PatienceParams {
  double shape = 2.0;
  double scale = 300.0;  ///< seconds
};

/// Probability mass of Poisson(lambda) conditioned on [0, n_segments).
std::vector<double> truncated_poisson_pmf(double lambda, int n_segments);

/// Segment index drawn from the truncated Poisson pmf by inversion.
int sample_segment(Rng& rng, double lambda, int n_segments);

/// Expected arrival ET: window.start + (segment + u) * segment_length.
double sample_expected_arrival(Rng& rng, const ArrivalParams& p, const TimeWindow& window);

/// NS ~ Normal(0, sigma^2); exactly 0 when sigma is 0 (no draw is consumed).
double sample_arrival_noise(Rng& rng, const ArrivalParams& p);

/// AT = ET + NS, never before the window opens.
double actual_arrival(double expected, double noise, const TimeWindow& window);

/// Patience threshold ~ Gamma(shape, scale), strictly positive.
double sample_patience(Rng& rng, const PatienceParams& p);

inline bool should_abandon(double elapsed_search, double patience) {
  return elapsed_search > patience;
}

}  // namespace parkassign
