#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parkassign/geo.hpp"
#include "parkassign/stochastic.hpp"
#include "parkassign/strategy_kind.hpp"

namespace parkassign {

struct KinematicParams {
  double spot_width = 2.5;    ///< W, meters
  double cruise_speed = 2.78; ///< v_c, m/s; also the driving speed between lots
  double walk_speed = 1.2;    ///< v_w, m/s
  double ramp_speed = 2.78;   ///< v_ud, m/s
  double stop_time = 30.0;    ///< t_stop, s
  double turn_time = 10.0;    ///< t_turn, s

  friend bool operator==(const KinematicParams&, const KinematicParams&) = default;
};

struct ParkingLot {
  std::string id;
  GeoCoord location;
  int capacity = 0;
  int floors = 1;
  std::vector<int> floor_capacities;
  double ramp_length = 0.0;  ///< meters between floors
};

struct EntryPoint {
  std::string id;
  GeoCoord location;
};

/// Axis-aligned bounds, radians.
struct Region {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  bool contains(const GeoCoord& g) const {
    return g.lat >= min_lat && g.lat <= max_lat && g.lon >= min_lon && g.lon <= max_lon;
  }
};

struct Scenario {
  GeoCoord destination;
  Region region;
  std::vector<ParkingLot> lots;
  std::vector<EntryPoint> entries;
  int demand = 0;
  bool allow_overflow = false;
  KinematicParams kinematics;
  ArrivalParams arrival;
  PatienceParams patience;
  double exclusion_radius = 300.0;  ///< meters, used by the core-avoiding group
  TimeWindow window;
  std::optional<StrategyMix> mix;   ///< default group mix when absent

  int total_capacity() const;
  std::vector<int> capacities() const;
};

/// Scenario with every location projected once.
struct ProjectedLayout {
  PlanarCoord destination;
  std::vector<PlanarCoord> lots;
  std::vector<PlanarCoord> entries;
};

ProjectedLayout project_layout(const Scenario& s);

/// Syntax errors carry the 1-based line; schema errors carry line 0 and a
/// JSON pointer to the offending field in the message.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Every violated invariant, each naming the field and rule. Empty iff valid.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Parses a JSON scenario document (angles in degrees) and validates it.
/// Throws ParseError or ValidationError.
Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::filesystem::path& path);

/// JSON document accepted by load_scenario.
std::string save_scenario(const Scenario& s);
void save_scenario_file(const Scenario& s, const std::filesystem::path& path);

/// Rectangle around California Memorial Stadium.
Region berkeley_region();
GeoCoord berkeley_destination();

struct SynthParams {
  std::uint64_t seed = 1;
  int n_lots = 21;
  int total_capacity = 3992;
  int n_entries = 12;
  Region region = berkeley_region();
  GeoCoord destination = berkeley_destination();
  std::optional<int> demand;  ///< defaults to total_capacity
  KinematicParams kinematics;
  ArrivalParams arrival;
  PatienceParams patience;
  double exclusion_radius = 300.0;
  TimeWindow window;
};

/// Deterministic synthetic scenario: lots uniform in the region, capacities an
/// exact partition of total_capacity, 1-3 floors, entries on the boundary.
Scenario synth_scenario(const SynthParams& p);

}  // namespace parkassign
