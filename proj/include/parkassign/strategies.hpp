#pragma once

#include <optional>
#include <span>
#include <vector>

#include "parkassign/lot_model.hpp"
#include "parkassign/scenario.hpp"
#include "parkassign/strategy_kind.hpp"
#include "parkassign/vehicle.hpp"

namespace parkassign {

/// Lot indices ordered by preference for `kind` from `position`. Always a
/// permutation of all lots; ties resolve by lot id.
std::vector<std::size_t> rank_lots(const StrategyKind& kind, const PlanarCoord& position,
                                   const Scenario& s, const ProjectedLayout& layout,
                                   std::span<const LotState> states);

/// Best-ranked lot that is neither visited nor known to be full. Guided
/// strategies know live fullness; the unguided one only knows what it visited.
std::optional<std::size_t> next_choice(const StrategyKind& kind, std::span<const std::size_t> visited,
                                       const PlanarCoord& position, const Scenario& s,
                                       const ProjectedLayout& layout,
                                       std::span<const LotState> states);

/// Labels every vehicle independently from `mix`. Throws std::invalid_argument
/// if the mix weights are unusable.
void assign_strategy_mix(std::span<Vehicle> vehicles, const StrategyMix& mix, Rng& rng);

}  // namespace parkassign
