#include "parkassign/lot_model.hpp"

#include <numeric>

namespace parkassign {

LotState LotState::empty_for(const ParkingLot& lot, std::size_t index) {
  return {index, std::vector<int>(lot.floor_capacities.size(), 0), 0};
}

int LotState::occupied() const {
  return std::accumulate(per_floor_occupied.begin(), per_floor_occupied.end(), 0);
}

double occupancy(const LotState& state, const ParkingLot& lot) {
  return static_cast<double>(state.occupied()) / lot.capacity;
}

double top_floor_occupancy(const LotState& state, const ParkingLot& lot) {
  if (lot.floor_capacities.empty()) return 0.0;
  return static_cast<double>(state.per_floor_occupied.back()) / lot.floor_capacities.back();
}

bool is_full(const LotState& state, const ParkingLot& lot) {
  return state.occupied() >= lot.capacity;
}

double search_time(const ParkingLot& lot, double lot_occupancy, double top_occupancy,
                   const KinematicParams& kin) {
  const double spots_passed = kin.spot_width * lot.capacity * lot_occupancy;
  const double ground = spots_passed / (2.0 * kin.cruise_speed) +
                        spots_passed / (2.0 * kin.walk_speed) + kin.stop_time;
  const double top_capacity = lot.floor_capacities.empty() ? 0.0 : lot.floor_capacities.back();
  const double ramps = (lot.floors - 1) * (lot.ramp_length / kin.ramp_speed * top_capacity * top_occupancy +
                                           kin.turn_time);
  return ground + ramps;
}

double search_time(const ParkingLot& lot, const LotState& state, const KinematicParams& kin) {
  return search_time(lot, occupancy(state, lot), top_floor_occupancy(state, lot), kin);
}

std::optional<int> try_admit(LotState& state, const ParkingLot& lot) {
  for (std::size_t f = 0; f < state.per_floor_occupied.size(); ++f) {
    if (state.per_floor_occupied[f] < lot.floor_capacities[f]) {
      ++state.per_floor_occupied[f];
      return static_cast<int>(f);
    }
  }
  ++state.failed_search_count;
  return std::nullopt;
}

}  // namespace parkassign
