#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "parkassign/simulator.hpp"

using namespace parkassign;

namespace {

ParkingLot lot_at(std::string id, GeoCoord g, std::vector<int> floors) {
  ParkingLot lot;
  lot.id = std::move(id);
  lot.location = g;
  lot.floors = static_cast<int>(floors.size());
  lot.capacity = std::accumulate(floors.begin(), floors.end(), 0);
  lot.floor_capacities = std::move(floors);
  lot.ramp_length = lot.floors > 1 ? 25.0 : 0.0;
  return lot;
}

// Tiny world where every vehicle enters within the first second.
Scenario tiny(std::vector<ParkingLot> lots, int demand) {
  Scenario s;
  s.region = {0.6600, -2.1345, 0.6620, -2.1330};
  s.destination = {0.6612, -2.1335};
  s.lots = std::move(lots);
  s.entries = {{"E1", {0.6600, -2.1345}}};
  s.demand = demand;
  s.window = {0.0, 1.0, 1.0};
  s.arrival = {1.0, 0.0};
  s.patience = {2.0, 1e6};
  return s;
}

Scenario desk(int lots = 4, int capacity = 30, std::uint64_t seed = 3) {
  SynthParams p;
  p.seed = seed;
  p.n_lots = lots;
  p.total_capacity = capacity;
  p.n_entries = 3;
  return synth_scenario(p);
}

void expect_same(const SimOutcome& a, const SimOutcome& b) {
  ASSERT_EQ(a.seed, b.seed);
  ASSERT_EQ(a.failed_searches, b.failed_searches);
  ASSERT_EQ(a.parked_count, b.parked_count);
  ASSERT_EQ(a.abandonment_count, b.abandonment_count);
  ASSERT_EQ(a.mean_rerouting_time, b.mean_rerouting_time);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    const auto& x = a.records[k];
    const auto& y = b.records[k];
    ASSERT_EQ(x.strategy, y.strategy);
    ASSERT_EQ(x.actual_arrival, y.actual_arrival);
    ASSERT_EQ(x.parked_lot, y.parked_lot);
    ASSERT_EQ(x.rerouting_time, y.rerouting_time);
    ASSERT_EQ(x.total_drive_time, y.total_drive_time);
    ASSERT_EQ(x.total_search_time, y.total_search_time);
    ASSERT_EQ(x.abandoned, y.abandoned);
    ASSERT_EQ(x.attempts.size(), y.attempts.size());
    for (std::size_t i = 0; i < x.attempts.size(); ++i) {
      ASSERT_EQ(x.attempts[i].lot, y.attempts[i].lot);
      ASSERT_EQ(x.attempts[i].time, y.attempts[i].time);
      ASSERT_EQ(x.attempts[i].outcome, y.attempts[i].outcome);
    }
  }
}

}  // namespace

TEST(RunSimulation, SingleVehicleParksDirectly) {
  const auto s = tiny({lot_at("A", {0.6610, -2.1338}, {5})}, 1);
  const auto pop = make_population(s, 1);
  const auto out = run_simulation(s, pop, single_strategy_mix({Strategy::NearestFromEntry}), 1);
  ASSERT_EQ(out.records.size(), 1u);
  const auto& r = out.records[0];
  EXPECT_EQ(r.parked_lot, 0u);
  EXPECT_EQ(r.attempts.size(), 1u);
  EXPECT_EQ(r.rerouting_time, 0.0);
  EXPECT_EQ(out.parked_count, 1);
  EXPECT_EQ(out.total_failed_searches(), 0);
  EXPECT_EQ(r.total_search_time, s.kinematics.stop_time);
}

TEST(RunSimulation, SecondVehicleFindsLotFullThenAbandons) {
  const auto s = tiny({lot_at("A", {0.6610, -2.1338}, {1})}, 2);
  const auto pop = make_population(s, 1);
  const auto out = run_simulation(s, pop, single_strategy_mix({Strategy::NearestFromEntry}), 5);
  EXPECT_EQ(out.parked_count, 1);
  EXPECT_EQ(out.abandonment_count, 1);
  EXPECT_EQ(out.failed_searches, (std::vector<int>{1}));
  int with_failure = 0;
  for (const auto& r : out.records) {
    if (!r.abandoned) continue;
    ASSERT_EQ(r.attempts.size(), 2u);
    EXPECT_EQ(r.attempts[0].outcome, AttemptOutcome::Full);
    EXPECT_EQ(r.attempts[1].outcome, AttemptOutcome::AbandonedEnroute);
    ++with_failure;
  }
  EXPECT_EQ(with_failure, 1);
  // Abandoned drivers do not count toward the mean.
  EXPECT_EQ(out.mean_rerouting_time, 0.0);
}

TEST(RunSimulation, ReroutesToSecondLot) {
  const auto s = tiny({lot_at("A", {0.6605, -2.1342}, {1}), lot_at("B", {0.6615, -2.1332}, {3})}, 2);
  const auto pop = make_population(s, 1);
  SimOptions opt;
  opt.detection_overhead = 15.0;
  const auto out = run_simulation(s, pop, single_strategy_mix({Strategy::NearestFromEntry}), 5, opt);
  EXPECT_EQ(out.parked_count, 2);
  EXPECT_EQ(out.failed_searches, (std::vector<int>{1, 0}));
  const auto layout = project_layout(s);
  const double first_leg = manhattan_distance(layout.entries[0], layout.lots[0]) / s.kinematics.cruise_speed;
  double rerouted = 0.0;
  for (const auto& r : out.records) rerouted = std::max(rerouted, r.rerouting_time);
  EXPECT_NEAR(rerouted, first_leg + 15.0, 1e-9);
  EXPECT_NEAR(out.mean_rerouting_time, (first_leg + 15.0) / 2, 1e-9);
}

TEST(RunSimulation, PatienceRunsOut) {
  std::vector<ParkingLot> lots;
  for (int i = 0; i < 6; ++i) lots.push_back(lot_at("L" + std::to_string(i), {0.6603 + 0.0003 * i, -2.1343 + 0.0002 * i}, {1}));
  auto s = tiny(lots, 12);
  s.allow_overflow = true;
  s.patience = {1.0, 1.0};  // about a second of searching tolerated
  const auto pop = make_population(s, 1);
  const auto out = run_simulation(s, pop, single_strategy_mix({Strategy::NoGuidanceNearest}), 9);
  EXPECT_EQ(out.parked_count + out.abandonment_count, 12);
  // Everyone crowds the nearest lot, one parks, the rest move on together to
  // the next lot where one more parks; by then patience has run out.
  EXPECT_EQ(out.parked_count, 2);
  for (const auto& r : out.records) {
    if (!r.abandoned) continue;
    ASSERT_EQ(r.attempts.size(), 3u);
    EXPECT_EQ(r.attempts[0].outcome, AttemptOutcome::Full);
    EXPECT_EQ(r.attempts[1].outcome, AttemptOutcome::Full);
    EXPECT_EQ(r.attempts[2].outcome, AttemptOutcome::AbandonedEnroute);
  }
}

TEST(RunSimulation, ConservationAndCapacityAtEveryEvent) {
  const auto s = desk();
  const auto pop = make_population(s, 2);
  int events = 0;
  SimOptions opt;
  opt.observer = [&](const SimEvent&, const PhaseCounts& c, std::span<const LotState> states) {
    ++events;
    ASSERT_EQ(c.total(), s.demand);
    int occupied = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t f = 0; f < states[i].per_floor_occupied.size(); ++f) {
        ASSERT_LE(states[i].per_floor_occupied[f], s.lots[i].floor_capacities[f]);
      }
      occupied += states[i].occupied();
    }
    ASSERT_EQ(occupied, c.parked);
  };
  const auto out = run_simulation(s, pop, default_group_mix(), 11, opt);
  EXPECT_GT(events, 2 * s.demand);
  EXPECT_EQ(out.parked_count + out.abandonment_count, s.demand);

  std::vector<int> recount(s.lots.size(), 0);
  double reroute_sum = 0.0;
  for (const auto& r : out.records) {
    int parked = 0;
    for (std::size_t i = 0; i < r.attempts.size(); ++i) {
      const auto& a = r.attempts[i];
      if (a.outcome == AttemptOutcome::Full) ++recount[*a.lot];
      if (a.outcome == AttemptOutcome::Parked) {
        ++parked;
        EXPECT_EQ(i + 1, r.attempts.size());
      }
    }
    EXPECT_LE(parked, 1);
    EXPECT_FALSE(r.abandoned && parked);
    EXPECT_GE(r.rerouting_time, 0.0);
    if (!r.abandoned) reroute_sum += r.rerouting_time;
  }
  EXPECT_EQ(recount, out.failed_searches);
  EXPECT_NEAR(out.mean_rerouting_time, reroute_sum / out.parked_count, 1e-12);
}

TEST(RunSimulation, DeterministicForSeed) {
  const auto s = desk();
  const auto pop = make_population(s, 2);
  expect_same(run_simulation(s, pop, default_group_mix(), 4), run_simulation(s, pop, default_group_mix(), 4));
  const auto a = run_simulation(s, pop, default_group_mix(), 4);
  const auto b = run_simulation(s, pop, default_group_mix(), 5);
  EXPECT_NE(a.records[0].actual_arrival, b.records[0].actual_arrival);
}

TEST(RunSimulation, EventLogReplayGivesReroutingTime) {
  auto s = desk(6, 30, 9);
  s.demand = 40;
  s.allow_overflow = true;
  const auto pop = make_population(s, 2);
  std::vector<SimEvent> log;
  SimOptions opt;
  opt.detection_overhead = 7.0;
  opt.observer = [&](const SimEvent& e, const PhaseCounts&, std::span<const LotState>) { log.push_back(e); };
  const auto out = run_simulation(s, pop, single_strategy_mix({Strategy::NoGuidanceNearest}), 3, opt);

  // Legs start at enter, or detection overhead after a full lot; failed legs
  // end at a full event.
  std::map<std::size_t, double> leg_start, replayed;
  for (const auto& e : log) {
    switch (e.kind) {
      case EventKind::Enter: leg_start[e.vehicle] = e.time; break;
      case EventKind::Full:
        replayed[e.vehicle] += e.time - leg_start[e.vehicle] + opt.detection_overhead;
        leg_start[e.vehicle] = e.time + opt.detection_overhead;
        break;
      default: break;
    }
  }
  int with_reroute = 0;
  for (const auto& r : out.records) {
    EXPECT_NEAR(r.rerouting_time, replayed[r.vehicle], 1e-6) << "vehicle " << r.vehicle;
    with_reroute += r.rerouting_time > 0;
  }
  EXPECT_GT(with_reroute, 0);
}

TEST(RunSimulation, ReservedAssignmentNeverFails) {
  const auto s = desk(5, 60, 4);
  const auto pop = make_population(s, 8);
  const auto plan = optimize_assignment(s, pop, FillMode::ExactFill);
  const auto out = run_simulation(s, pop, plan, 2);
  EXPECT_EQ(out.total_failed_searches(), 0);
  EXPECT_EQ(out.parked_count, s.demand);
  for (std::size_t k = 0; k < out.records.size(); ++k) {
    EXPECT_EQ(out.records[k].parked_lot, plan.lot_of[k]);
    EXPECT_EQ(out.records[k].strategy, "assigned");
  }
  SimOptions loose;
  loose.reservation = false;
  EXPECT_EQ(run_simulation(s, pop, plan, 2, loose).total_failed_searches(), 0);
}

TEST(RunSimulation, RejectsInfeasibleAssignment) {
  const auto s = desk(3, 9, 4);
  const auto pop = make_population(s, 1);
  Assignment bad;
  bad.lot_of.assign(pop.size(), 0);  // everyone into lot 0
  EXPECT_THROW(run_simulation(s, pop, bad, 1), InfeasibleError);
  bad.lot_of.pop_back();
  EXPECT_THROW(run_simulation(s, pop, bad, 1), InfeasibleError);
}

TEST(RunSimulation, InfinitePatienceGuidedAllPark) {
  const auto s = desk(6, 80, 12);
  const auto pop = make_population(s, 1);
  SimOptions opt;
  opt.infinite_patience = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto out = run_simulation(s, pop, default_group_mix(), seed, opt);
    EXPECT_EQ(out.parked_count, s.demand);
    EXPECT_EQ(out.abandonment_count, 0);
  }
}

TEST(RunSimulation, SimultaneousEntryStress) {
  auto s = desk(6, 80, 12);
  s.window = {36000, 36001, 1};
  s.arrival.noise_sigma = 0;
  const auto pop = make_population(s, 1);
  const auto out = run_simulation(s, pop, default_group_mix(), 1);
  EXPECT_EQ(out.parked_count + out.abandonment_count, s.demand);
  EXPECT_GT(out.total_failed_searches(), 0);
}

TEST(MonteCarlo, SingleRunEqualsRunSimulation) {
  const auto s = desk();
  const auto pop = make_population(s, 2);
  const auto mc = monte_carlo(s, pop, default_group_mix(), 1, 77, true);
  ASSERT_EQ(mc.size(), 1u);
  expect_same(mc[0], run_simulation(s, pop, default_group_mix(), 77));
}

TEST(MonteCarlo, ParallelEqualsSerial) {
  const auto s = desk(8, 120, 5);
  const auto pop = make_population(s, 2);
  const auto a = monte_carlo(s, pop, default_group_mix(), 12, 100, false);
  const auto b = monte_carlo(s, pop, default_group_mix(), 12, 100, true);
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a[r].seed, 100 + r);
    expect_same(a[r], b[r]);
  }
  EXPECT_THROW(monte_carlo(s, pop, default_group_mix(), 0, 1, false), std::invalid_argument);
}

TEST(CompareMethods, SelfComparisonIdenticalRows) {
  const auto s = desk(8, 120, 5);
  const auto pop = make_population(s, 2);
  const auto rows = compare_methods(s, pop, {{"a", default_group_mix()}, {"b", default_group_mix()}}, 5, 10);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].mean_rerouting_min, rows[1].mean_rerouting_min);
  EXPECT_EQ(rows[0].failed_searches_total, rows[1].failed_searches_total);
  EXPECT_EQ(rows[0].abandonment_rate, rows[1].abandonment_rate);
  EXPECT_THROW(compare_methods(s, pop, {{"a", default_group_mix()}}, 5, 10), std::invalid_argument);
}

TEST(CompareMethods, OptimizedBeatsUnguided) {
  const auto s = desk(8, 120, 5);
  const auto pop = make_population(s, 2);
  const auto rows = compare_methods(
      s, pop,
      {{"opt", optimize_assignment(s, pop)}, {"nearest", single_strategy_mix({Strategy::NoGuidanceNearest})}},
      5, 10);
  EXPECT_EQ(rows[0].failed_searches_total, 0);
  EXPECT_LT(rows[0].mean_rerouting_min, rows[1].mean_rerouting_min);
}

TEST(ReroutingTimeOf, Definition) {
  VehicleRecord r;
  r.attempts = {{0, 10.0, AttemptOutcome::Parked, 0, 55.0, 0.0}};
  EXPECT_EQ(rerouting_time_of(r), 0.0);
  r.attempts = {{0, 120.0, AttemptOutcome::Full, -1, 120.0, 0.0}, {1, 200.0, AttemptOutcome::Parked, 0, 80.0, 0.0}};
  EXPECT_EQ(rerouting_time_of(r), 120.0);
  r.attempts = {{0, 120.0, AttemptOutcome::Full, -1, 120.0, 5.0},
                {1, 230.0, AttemptOutcome::Full, -1, 105.0, 5.0},
                {2, 300.0, AttemptOutcome::Parked, 1, 65.0, 0.0}};
  EXPECT_EQ(rerouting_time_of(r), 235.0);
}
