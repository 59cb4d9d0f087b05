#include "parkassign/strategy_kind.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace parkassign {

std::string strategy_label(Strategy s) {
  switch (s) {
    case Strategy::NearestFromEntry: return "G1";
    case Strategy::NearestAvoidingCore: return "G2";
    case Strategy::MinWalk: return "G3";
    case Strategy::MinTotal: return "G4";
    case Strategy::NoGuidanceNearest: return "nearest";
    case Strategy::MultiCriteria: return "multicriteria";
  }
  return "?";
}

Strategy parse_strategy_label(std::string_view label) {
  for (auto s : {Strategy::NearestFromEntry, Strategy::NearestAvoidingCore, Strategy::MinWalk,
                 Strategy::MinTotal, Strategy::NoGuidanceNearest, Strategy::MultiCriteria}) {
    if (label == strategy_label(s)) return s;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(label) + "'");
}

StrategyMix default_group_mix() {
  return {{{Strategy::NearestFromEntry}, 0.25},
          {{Strategy::NearestAvoidingCore}, 0.25},
          {{Strategy::MinWalk}, 0.25},
          {{Strategy::MinTotal}, 0.25}};
}

StrategyMix single_strategy_mix(StrategyKind kind) { return {{kind, 1.0}}; }

StrategyMix parse_mix(std::string_view text) {
  StrategyMix mix;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("mix entry '" + item + "' is not LABEL=WEIGHT");
    }
    double w = 0.0;
    try {
      std::size_t used = 0;
      w = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw std::invalid_argument("mix entry '" + item + "' has a malformed weight");
    }
    mix.push_back({{parse_strategy_label(item.substr(0, eq))}, w});
  }
  return mix;
}

std::string format_mix(const StrategyMix& mix) {
  std::ostringstream out;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    if (i) out << ',';
    out << strategy_label(mix[i].first.tag) << '=' << mix[i].second;
  }
  return out.str();
}

std::vector<std::string> validate_mix(const StrategyMix& mix) {
  std::vector<std::string> errors;
  if (mix.empty()) {
    errors.push_back("mix: must name at least one strategy");
    return errors;
  }
  double total = 0.0;
  for (const auto& [kind, w] : mix) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      errors.push_back("mix: weight of " + strategy_label(kind.tag) + " must be nonnegative");
    }
    total += w;
    if (kind.tag == Strategy::MultiCriteria) {
      const auto& c = kind.weights;
      if (c.drive < 0 || c.walk < 0 || c.fullness < 0 ||
          std::abs(c.drive + c.walk + c.fullness - 1.0) > 1e-9) {
        errors.push_back("mix: multicriteria weights must be nonnegative and sum to 1");
      }
    }
  }
  if (std::abs(total - 1.0) > 1e-9) errors.push_back("mix: weights must sum to 1");
  return errors;
}

}  // namespace parkassign
