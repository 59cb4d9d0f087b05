#pragma once

#include <optional>
#include <vector>

#include "parkassign/scenario.hpp"

namespace parkassign {

/// Mutable occupancy of one lot during a single simulation run.
struct LotState {
  std::size_t lot_index = 0;
  std::vector<int> per_floor_occupied;
  int failed_search_count = 0;

  static LotState empty_for(const ParkingLot& lot, std::size_t index);
  int occupied() const;
};

double occupancy(const LotState& state, const ParkingLot& lot);

/// Occupancy of the topmost floor, used by the ramp term.
double top_floor_occupancy(const LotState& state, const ParkingLot& lot);

bool is_full(const LotState& state, const ParkingLot& lot);

/// In-lot search time, seconds:
///   W*Vol*O/(2 v_c) + W*Vol*O/(2 v_w) + t_stop + (N-1) * (R/v_ud * C_N * O_N + t_turn)
/// with C_N and O_N taken from the top floor. The ramp term is carried over
/// unchanged even though R/v_ud * C_N is seconds times spots.
double search_time(const ParkingLot& lot, double lot_occupancy, double top_floor_occupancy,
                   const KinematicParams& kin);

double search_time(const ParkingLot& lot, const LotState& state, const KinematicParams& kin);

/// Takes a spot on the lowest floor with room and returns that floor. A full
/// lot returns nullopt and counts one failed search.
std::optional<int> try_admit(LotState& state, const ParkingLot& lot);

}  // namespace parkassign
