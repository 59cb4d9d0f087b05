#include "parkassign/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>
#include <stdexcept>
#include <thread>

#include "parkassign/strategies.hpp"

namespace parkassign {

int SimOutcome::total_failed_searches() const {
  int total = 0;
  for (int f : failed_searches) total += f;
  return total;
}

double rerouting_time_of(const VehicleRecord& record) {
  double total = 0.0;
  for (const auto& a : record.attempts) {
    if (a.outcome == AttemptOutcome::Full) total += a.leg_drive_time + a.detection_overhead;
  }
  return total;
}

std::string event_name(EventKind kind) {
  switch (kind) {
    case EventKind::Enter: return "enter";
    case EventKind::ArriveLot: return "arrive_lot";
    case EventKind::Full: return "full";
    case EventKind::Park: return "park";
    case EventKind::Abandon: return "abandon";
    case EventKind::ReachDestination: return "reach_destination";
  }
  return "?";
}

namespace {

enum class Phase { Pending, EnRoute, Searching, Parked, Abandoned };

// Queue entries; Decide picks the next leg after a full lot.
enum class Action { Enter, Arrive, Decide, Park, Reach };

struct Scheduled {
  double time;
  std::uint64_t seq;
  Action action;
  std::size_t vehicle;
  std::size_t lot;

  bool operator>(const Scheduled& o) const {
    if (time != o.time) return time > o.time;
    return seq > o.seq;
  }
};

struct VehicleState {
  Phase phase = Phase::Pending;
  PlanarCoord position;
  std::vector<std::size_t> visited;
  double search_start = -1.0;
};

constexpr std::uint64_t kStrategyStream = 3;
constexpr std::size_t kNoLot = std::numeric_limits<std::size_t>::max();

class Run {
 public:
  Run(const Scenario& s, std::span<const Vehicle> population, const Method& method,
      std::uint64_t seed, const SimOptions& options)
      : s_(s),
        layout_(project_layout(s)),
        vehicles_(population.begin(), population.end()),
        assignment_(std::get_if<Assignment>(&method)),
        options_(options) {
    draw_run_attributes(vehicles_, s, seed);
    if (const auto* mix = std::get_if<StrategyMix>(&method)) {
      Rng rng = make_rng(seed, kStrategyStream);
      assign_strategy_mix(vehicles_, *mix, rng);
    }
    if (assignment_) {
      if (assignment_->lot_of.size() != vehicles_.size()) {
        throw InfeasibleError("assignment covers " + std::to_string(assignment_->lot_of.size()) +
                              " vehicles but the population has " +
                              std::to_string(vehicles_.size()));
      }
      if (auto problems = check_assignment(*assignment_, s.capacities(), FillMode::AtMost);
          !problems.empty()) {
        throw InfeasibleError("assignment infeasible: " + problems.front());
      }
    }
    if (options.infinite_patience) {
      for (auto& v : vehicles_) v.patience = std::numeric_limits<double>::infinity();
    }
    for (std::size_t i = 0; i < s.lots.size(); ++i) states_.push_back(LotState::empty_for(s.lots[i], i));
    state_.resize(vehicles_.size());
    counts_.pending = static_cast<int>(vehicles_.size());

    outcome_.seed = seed;
    outcome_.failed_searches.assign(s.lots.size(), 0);
    outcome_.records.resize(vehicles_.size());
    for (std::size_t k = 0; k < vehicles_.size(); ++k) {
      auto& r = outcome_.records[k];
      const auto& v = vehicles_[k];
      r.vehicle = v.id;
      r.entry = v.entry;
      r.strategy = assignment_ ? "assigned" : strategy_label(v.strategy.tag);
      r.actual_arrival = v.actual_arrival;
      r.patience = v.patience;
      schedule(v.actual_arrival, Action::Enter, k, kNoLot);
    }
  }

  SimOutcome execute() {
    while (!queue_.empty()) {
      const Scheduled ev = queue_.top();
      queue_.pop();
      switch (ev.action) {
        case Action::Enter: enter(ev); break;
        case Action::Arrive: arrive(ev); break;
        case Action::Decide: decide(ev.vehicle, ev.time); break;
        case Action::Park: emit({ev.time, vehicles_[ev.vehicle].id, EventKind::Park, ev.lot,
                                 outcome_.records[ev.vehicle].attempts.back().floor});
          break;
        case Action::Reach:
          emit({ev.time, vehicles_[ev.vehicle].id, EventKind::ReachDestination, ev.lot, -1});
          break;
      }
    }
    finalize();
    return std::move(outcome_);
  }

 private:
  void schedule(double time, Action action, std::size_t vehicle, std::size_t lot) {
    queue_.push({time, seq_++, action, vehicle, lot});
  }

  void emit(const SimEvent& e) {
    if (options_.observer) options_.observer(e, counts_, states_);
  }

  void move_phase(std::size_t k, Phase to) {
    auto bucket = [this](Phase p) -> int& {
      switch (p) {
        case Phase::Pending: return counts_.pending;
        case Phase::EnRoute: return counts_.en_route;
        case Phase::Searching: return counts_.searching;
        case Phase::Parked: return counts_.parked;
        case Phase::Abandoned: return counts_.abandoned;
      }
      return counts_.pending;
    };
    --bucket(state_[k].phase);
    ++bucket(to);
    state_[k].phase = to;
  }

  void enter(const Scheduled& ev) {
    const std::size_t k = ev.vehicle;
    state_[k].position = layout_.entries.at(vehicles_[k].entry);
    move_phase(k, Phase::EnRoute);
    emit({ev.time, vehicles_[k].id, EventKind::Enter, std::nullopt, -1});
    if (assignment_) {
      start_leg(k, ev.time, assignment_->lot_of[k]);
    } else {
      decide(k, ev.time);
    }
  }

  std::optional<std::size_t> choose(std::size_t k) {
    const auto& vs = state_[k];
    StrategyKind kind = vehicles_[k].strategy;
    if (assignment_) kind = StrategyKind{Strategy::MinTotal};
    return next_choice(kind, vs.visited, vs.position, s_, layout_, states_);
  }

  void decide(std::size_t k, double now) {
    auto& vs = state_[k];
    if (vs.search_start >= 0.0 && should_abandon(now - vs.search_start, vehicles_[k].patience)) {
      abandon(k, now, std::nullopt);
      return;
    }
    const auto lot = choose(k);
    if (!lot) {
      abandon(k, now, std::nullopt);
      return;
    }
    start_leg(k, now, *lot);
  }

  void start_leg(std::size_t k, double now, std::size_t lot) {
    const double drive =
        travel_time(manhattan_distance(state_[k].position, layout_.lots[lot]), s_.kinematics.cruise_speed);
    leg_drive_[k] = drive;
    outcome_.records[k].total_drive_time += drive;
    schedule(now + drive, Action::Arrive, k, lot);
  }

  void arrive(const Scheduled& ev) {
    const std::size_t k = ev.vehicle;
    const std::size_t lot_index = ev.lot;
    auto& vs = state_[k];
    auto& rec = outcome_.records[k];
    const auto& lot = s_.lots[lot_index];
    auto& state = states_[lot_index];

    if (vs.search_start < 0.0) {
      vs.search_start = ev.time;
      move_phase(k, Phase::Searching);
    }
    vs.position = layout_.lots[lot_index];
    vs.visited.push_back(lot_index);
    emit({ev.time, vehicles_[k].id, EventKind::ArriveLot, lot_index, -1});

    const double in_lot = search_time(lot, state, s_.kinematics);
    if (const auto floor = try_admit(state, lot)) {
      check_capacity(lot_index);
      rec.attempts.push_back({lot_index, ev.time, AttemptOutcome::Parked, *floor, leg_drive_[k], 0.0});
      rec.parked_lot = lot_index;
      rec.total_search_time = in_lot;
      rec.walk_time = travel_time(manhattan_distance(layout_.lots[lot_index], layout_.destination),
                                  s_.kinematics.walk_speed);
      move_phase(k, Phase::Parked);
      schedule(ev.time + in_lot, Action::Park, k, lot_index);
      schedule(ev.time + in_lot + rec.walk_time, Action::Reach, k, lot_index);
      return;
    }

    ++outcome_.failed_searches[lot_index];
    const double overhead = options_.detection_overhead;
    rec.attempts.push_back({lot_index, ev.time, AttemptOutcome::Full, -1, leg_drive_[k], overhead});
    emit({ev.time, vehicles_[k].id, EventKind::Full, lot_index, -1});
    schedule(ev.time + overhead, Action::Decide, k, lot_index);
  }

  void abandon(std::size_t k, double now, std::optional<std::size_t> lot) {
    auto& rec = outcome_.records[k];
    rec.abandoned = true;
    rec.attempts.push_back({lot, now, AttemptOutcome::AbandonedEnroute, -1, 0.0, 0.0});
    move_phase(k, Phase::Abandoned);
    emit({now, vehicles_[k].id, EventKind::Abandon, lot, -1});
  }

  void check_capacity(std::size_t lot_index) const {
    const auto& lot = s_.lots[lot_index];
    const auto& st = states_[lot_index];
    for (std::size_t f = 0; f < st.per_floor_occupied.size(); ++f) {
      if (st.per_floor_occupied[f] > lot.floor_capacities[f]) {
        throw std::logic_error("lot " + lot.id + " exceeded floor capacity");
      }
    }
  }

  void finalize() {
    double rerouting_sum = 0.0;
    for (auto& rec : outcome_.records) {
      rec.rerouting_time = rerouting_time_of(rec);
      if (rec.abandoned) {
        ++outcome_.abandonment_count;
      } else if (rec.parked_lot) {
        ++outcome_.parked_count;
        rerouting_sum += rec.rerouting_time;
      }
    }
    outcome_.mean_rerouting_time =
        outcome_.parked_count > 0 ? rerouting_sum / outcome_.parked_count : 0.0;
  }

  const Scenario& s_;
  ProjectedLayout layout_;
  std::vector<Vehicle> vehicles_;
  const Assignment* assignment_;
  const SimOptions& options_;

  std::vector<LotState> states_;
  std::vector<VehicleState> state_;
  std::vector<double> leg_drive_ = std::vector<double>(vehicles_.size(), 0.0);
  PhaseCounts counts_;
  std::priority_queue<Scheduled, std::vector<Scheduled>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  SimOutcome outcome_;
};

}  // namespace

SimOutcome run_simulation(const Scenario& s, std::span<const Vehicle> population,
                          const Method& method, std::uint64_t seed, const SimOptions& options) {
  return Run(s, population, method, seed, options).execute();
}

std::vector<SimOutcome> monte_carlo(const Scenario& s, std::span<const Vehicle> population,
                                    const Method& method, int n_runs, std::uint64_t base_seed,
                                    bool parallel, const SimOptions& options) {
  if (n_runs < 1) throw std::invalid_argument("monte_carlo needs at least one run");
  std::vector<SimOutcome> out(static_cast<std::size_t>(n_runs));
  if (!parallel || n_runs == 1) {
    for (int r = 0; r < n_runs; ++r) out[r] = run_simulation(s, population, method, base_seed + r, options);
    return out;
  }

  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(n_runs));
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int r = next++; r < n_runs; r = next++) {
            out[r] = run_simulation(s, population, method, base_seed + r, options);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<MethodComparison> compare_methods(const Scenario& s,
                                              std::span<const Vehicle> population,
                                              const std::vector<std::pair<std::string, Method>>& methods,
                                              int n_runs, std::uint64_t base_seed,
                                              const SimOptions& options, bool parallel) {
  if (methods.size() < 2) throw std::invalid_argument("compare_methods needs at least two methods");
  std::vector<MethodComparison> rows;
  for (const auto& [label, method] : methods) {
    MethodComparison row;
    row.label = label;
    row.outcomes = monte_carlo(s, population, method, n_runs, base_seed, parallel, options);
    long abandoned = 0;
    double mean_sum = 0.0;
    for (const auto& o : row.outcomes) {
      mean_sum += o.mean_rerouting_time;
      row.failed_searches_total += o.total_failed_searches();
      abandoned += o.abandonment_count;
    }
    row.mean_rerouting_min = mean_sum / n_runs / 60.0;
    const double denom = static_cast<double>(population.size()) * n_runs;
    row.abandonment_rate = denom > 0 ? abandoned / denom : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace parkassign
