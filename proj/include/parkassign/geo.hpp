#pragma once

#include <numbers>

namespace parkassign {

/// Geographic position in radians.
struct GeoCoord {
  double lat = 0.0;
  double lon = 0.0;
};

/// Position on the projected plane, meters.
struct PlanarCoord {
  double x = 0.0;
  double y = 0.0;
};

namespace miller {
// Constants of the projection variant used throughout, kept as literals.
inline constexpr double kRadius = 6381372.0;
inline constexpr double kWidth = kRadius * std::numbers::pi * 2.0;  // L
inline constexpr double kYScale = 1.25;
inline constexpr double kLatFactor = 0.4;
inline constexpr double kYDivisor = 2.3;
}  // namespace miller

/// Throws std::domain_error if |lat| >= pi/2 or lon outside [-pi, pi).
void check_geo(const GeoCoord& g);

/// Miller cylindrical projection to planar meters. Note that y decreases
/// as latitude increases.
PlanarCoord miller_project(const GeoCoord& g);

/// Inverse of miller_project. Throws std::domain_error when y is outside
/// the open interval (0, L/2).
GeoCoord miller_unproject(const PlanarCoord& p);

double manhattan_distance(const PlanarCoord& a, const PlanarCoord& b);

/// distance / speed; throws std::domain_error when speed <= 0 or distance < 0.
double travel_time(double distance_m, double speed_mps);

inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }
inline double radians_to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace parkassign
