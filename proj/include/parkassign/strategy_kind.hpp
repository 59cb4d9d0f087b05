#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parkassign {

enum class Strategy {
  NearestFromEntry,     // group 1
  NearestAvoidingCore,  // group 2
  MinWalk,              // group 3
  MinTotal,             // group 4
  NoGuidanceNearest,    // unguided baseline stand-in
  MultiCriteria,        // weighted multi-criteria baseline stand-in
};

struct CriteriaWeights {
  double drive = 0.5;
  double walk = 0.25;
  double fullness = 0.25;

  friend bool operator==(const CriteriaWeights&, const CriteriaWeights&) = default;
};

struct StrategyKind {
  Strategy tag = Strategy::NearestFromEntry;
  CriteriaWeights weights{};  // only read by MultiCriteria

  friend bool operator==(const StrategyKind&, const StrategyKind&) = default;
};

/// Guided strategies see live lot fullness; the unguided one discovers it on arrival.
inline bool is_guided(Strategy s) { return s != Strategy::NoGuidanceNearest; }

/// Short label: G1..G4, nearest, multicriteria.
std::string strategy_label(Strategy s);

/// Inverse of strategy_label; throws std::invalid_argument for unknown labels.
Strategy parse_strategy_label(std::string_view label);

using StrategyMix = std::vector<std::pair<StrategyKind, double>>;

/// Equal quarters over the four driver groups.
StrategyMix default_group_mix();

StrategyMix single_strategy_mix(StrategyKind kind);

/// Parses "G1=0.25,G2=0.25,..."; weights are checked by validate_mix.
StrategyMix parse_mix(std::string_view text);

std::string format_mix(const StrategyMix& mix);

/// Empty when the mix is usable: nonempty, weights nonnegative and summing to 1,
/// MultiCriteria weights nonnegative and summing to 1.
std::vector<std::string> validate_mix(const StrategyMix& mix);

}  // namespace parkassign
