#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "parkassign/assignment.hpp"
#include "parkassign/lot_model.hpp"
#include "parkassign/scenario.hpp"
#include "parkassign/vehicle.hpp"

namespace parkassign {

enum class AttemptOutcome { Parked, Full, AbandonedEnroute };

struct Attempt {
  std::optional<std::size_t> lot;  ///< empty when abandoning with nowhere left to go
  double time = 0.0;               ///< arrival at the lot, or the abandon decision
  AttemptOutcome outcome = AttemptOutcome::Full;
  int floor = -1;                  ///< set when parked
  double leg_drive_time = 0.0;     ///< seconds driven to reach this lot
  double detection_overhead = 0.0; ///< seconds spent discovering the lot is full
};

struct VehicleRecord {
  std::size_t vehicle = 0;
  std::size_t entry = 0;
  std::string strategy;  ///< strategy label, or "assigned"
  double actual_arrival = 0.0;
  double patience = 0.0;
  std::vector<Attempt> attempts;
  std::optional<std::size_t> parked_lot;
  double rerouting_time = 0.0;
  double total_drive_time = 0.0;
  double total_search_time = 0.0;
  double walk_time = 0.0;
  bool abandoned = false;
};

struct SimOutcome {
  std::uint64_t seed = 0;
  std::vector<VehicleRecord> records;
  std::vector<int> failed_searches;  ///< per lot index
  int abandonment_count = 0;
  int parked_count = 0;
  double mean_rerouting_time = 0.0;  ///< seconds, over vehicles that parked

  int total_failed_searches() const;
};

/// Failed legs plus full-lot detection time; zero when the first attempt parked.
double rerouting_time_of(const VehicleRecord& record);

enum class EventKind { Enter, ArriveLot, Full, Park, Abandon, ReachDestination };

std::string event_name(EventKind kind);

struct SimEvent {
  double time = 0.0;
  std::size_t vehicle = 0;
  EventKind kind = EventKind::Enter;
  std::optional<std::size_t> lot;
  int floor = -1;
};

/// Vehicle counts by phase after an event. They always sum to K.
struct PhaseCounts {
  int pending = 0;
  int en_route = 0;   ///< entered, not yet at a first lot
  int searching = 0;  ///< reached at least one lot, not parked
  int parked = 0;     ///< holds a spot, including those walking or arrived
  int abandoned = 0;

  int total() const { return pending + en_route + searching + parked + abandoned; }
};

/// Drivers follow a strategy mix, or a precomputed assignment.
using Method = std::variant<StrategyMix, Assignment>;

struct SimOptions {
  /// Assignment mode: spots are held for assigned vehicles. Without it a vehicle
  /// that finds its assigned lot full falls back to the MinTotal strategy.
  bool reservation = true;
  double detection_overhead = 0.0;
  bool infinite_patience = false;
  /// Called after every processed event. Not synchronized; leave unset for
  /// parallel Monte Carlo.
  std::function<void(const SimEvent&, const PhaseCounts&, std::span<const LotState>)> observer;
};

/// One seeded replication. Vehicles keep their population entry points; arrival
/// times, patience and strategy labels are drawn from `seed`.
SimOutcome run_simulation(const Scenario& s, std::span<const Vehicle> population,
                          const Method& method, std::uint64_t seed,
                          const SimOptions& options = {});

/// Run r uses seed base_seed + r. Output order is run order either way.
std::vector<SimOutcome> monte_carlo(const Scenario& s, std::span<const Vehicle> population,
                                    const Method& method, int n_runs, std::uint64_t base_seed,
                                    bool parallel, const SimOptions& options = {});

struct MethodComparison {
  std::string label;
  double mean_rerouting_min = 0.0;  ///< mean over runs of each run's mean
  long failed_searches_total = 0;   ///< over all runs
  double abandonment_rate = 0.0;    ///< abandoned / (K * runs)
  std::vector<SimOutcome> outcomes;
};

/// Every method sees the same seed stream (common random numbers).
std::vector<MethodComparison> compare_methods(const Scenario& s,
                                              std::span<const Vehicle> population,
                                              const std::vector<std::pair<std::string, Method>>& methods,
                                              int n_runs, std::uint64_t base_seed,
                                              const SimOptions& options = {}, bool parallel = true);

}  // namespace parkassign
