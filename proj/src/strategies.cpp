#include "parkassign/strategies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace parkassign {

namespace {

std::vector<double> scores(const StrategyKind& kind, const PlanarCoord& position, const Scenario& s,
                           const ProjectedLayout& layout, std::span<const LotState> states) {
  const std::size_t m = s.lots.size();
  std::vector<double> drive(m), walk(m);
  for (std::size_t i = 0; i < m; ++i) {
    drive[i] = manhattan_distance(position, layout.lots[i]);
    walk[i] = manhattan_distance(layout.lots[i], layout.destination);
  }
  switch (kind.tag) {
    case Strategy::NearestFromEntry:
    case Strategy::NearestAvoidingCore:
    case Strategy::NoGuidanceNearest:
      return drive;
    case Strategy::MinWalk:
      return walk;
    case Strategy::MinTotal: {
      const auto& kin = s.kinematics;
      std::vector<double> total(m);
      for (std::size_t i = 0; i < m; ++i) {
        total[i] = travel_time(drive[i], kin.cruise_speed) + search_time(s.lots[i], states[i], kin) +
                   travel_time(walk[i], kin.walk_speed);
      }
      return total;
    }
    case Strategy::MultiCriteria: {
      const double max_drive = *std::max_element(drive.begin(), drive.end());
      const double max_walk = *std::max_element(walk.begin(), walk.end());
      const auto& w = kind.weights;
      std::vector<double> total(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double d = max_drive > 0.0 ? drive[i] / max_drive : 0.0;
        const double wk = max_walk > 0.0 ? walk[i] / max_walk : 0.0;
        total[i] = w.drive * d + w.walk * wk + w.fullness * occupancy(states[i], s.lots[i]);
      }
      return total;
    }
  }
  return drive;
}

}  // namespace

std::vector<std::size_t> rank_lots(const StrategyKind& kind, const PlanarCoord& position,
                                   const Scenario& s, const ProjectedLayout& layout,
                                   std::span<const LotState> states) {
  const auto score = scores(kind, position, s, layout, states);
  std::vector<std::size_t> order(s.lots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] < score[b];
    return s.lots[a].id < s.lots[b].id;
  });
  if (kind.tag == Strategy::NearestAvoidingCore) {
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
      return manhattan_distance(layout.lots[i], layout.destination) >= s.exclusion_radius;
    });
  }
  return order;
}

std::optional<std::size_t> next_choice(const StrategyKind& kind, std::span<const std::size_t> visited,
                                       const PlanarCoord& position, const Scenario& s,
                                       const ProjectedLayout& layout,
                                       std::span<const LotState> states) {
  const bool guided = is_guided(kind.tag);
  for (std::size_t i : rank_lots(kind, position, s, layout, states)) {
    if (std::find(visited.begin(), visited.end(), i) != visited.end()) continue;
    if (guided && is_full(states[i], s.lots[i])) continue;
    return i;
  }
  return std::nullopt;
}

void assign_strategy_mix(std::span<Vehicle> vehicles, const StrategyMix& mix, Rng& rng) {
  if (auto errors = validate_mix(mix); !errors.empty()) throw std::invalid_argument(errors.front());
  std::vector<double> weights;
  for (const auto& entry : mix) weights.push_back(entry.second);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  for (auto& v : vehicles) v.strategy = mix[pick(rng)].first;
}

}  // namespace parkassign
