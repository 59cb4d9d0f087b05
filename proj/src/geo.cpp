#include "parkassign/geo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace parkassign {

void check_geo(const GeoCoord& g) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!std::isfinite(g.lat) || !(std::abs(g.lat) < half_pi)) {
    throw std::domain_error("latitude must lie strictly inside (-pi/2, pi/2), got " +
                            std::to_string(g.lat));
  }
  if (!std::isfinite(g.lon) || g.lon < -std::numbers::pi || g.lon >= std::numbers::pi) {
    throw std::domain_error("longitude must lie in [-pi, pi), got " + std::to_string(g.lon));
  }
}

PlanarCoord miller_project(const GeoCoord& g) {
  check_geo(g);
  using namespace miller;
  const double xp = g.lon;
  const double yp = kYScale * std::log(std::tan(std::numbers::pi / 4.0 + kLatFactor * g.lat));
  const double L = kWidth;
  return {L / 2.0 + (L / (2.0 * std::numbers::pi)) * xp, L / 4.0 - (L / (4.0 * kYDivisor)) * yp};
}

GeoCoord miller_unproject(const PlanarCoord& p) {
  using namespace miller;
  const double L = kWidth;
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !(p.y > 0.0) || !(p.y < L / 2.0)) {
    throw std::domain_error("planar y outside the invertible range (0, L/2)");
  }
  const double xp = (p.x - L / 2.0) * (2.0 * std::numbers::pi) / L;
  const double yp = (L / 4.0 - p.y) * (4.0 * kYDivisor) / L;
  const double lat = (std::atan(std::exp(yp / kYScale)) - std::numbers::pi / 4.0) / kLatFactor;
  GeoCoord g{lat, xp};
  check_geo(g);
  return g;
}

double manhattan_distance(const PlanarCoord& a, const PlanarCoord& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double travel_time(double distance_m, double speed_mps) {
  if (!(speed_mps > 0.0)) throw std::domain_error("speed must be positive");
  if (!(distance_m >= 0.0)) throw std::domain_error("distance must be nonnegative");
  return distance_m / speed_mps;
}

}  // namespace parkassign
