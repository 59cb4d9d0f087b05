#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "parkassign/strategy_kind.hpp"

namespace parkassign {

struct Scenario;

struct Vehicle {
  std::size_t id = 0;
  std::size_t entry = 0;  ///< index into Scenario::entries
  StrategyKind strategy;
  double expected_arrival = 0.0;  ///< ET, seconds
  double noise = 0.0;             ///< NS, seconds
  double actual_arrival = 0.0;    ///< AT = max(ET + NS, window start)
  double patience = 0.0;          ///< seconds of searching tolerated
};

/// demand_K vehicles with entry points drawn uniformly, fixed in advance of
/// any run. Timing and patience are left for draw_run_attributes.
std::vector<Vehicle> make_population(const Scenario& s, std::uint64_t seed);

/// Fills ET, NS, AT and patience for one run from `seed`. Uses its own stream
/// so the draws do not depend on how strategies are assigned.
void draw_run_attributes(std::vector<Vehicle>& vehicles, const Scenario& s, std::uint64_t seed);

}  // namespace parkassign
