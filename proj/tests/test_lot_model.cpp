#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "parkassign/lot_model.hpp"

using namespace parkassign;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// The in-lot search-time formula evaluated at 50 digits.
Big search_oracle(Big W, Big vol, Big occ, Big vc, Big vw, Big tstop, int floors, Big ramp, Big vud,
                  Big top_cap, Big top_occ, Big tturn) {
  return (W * vol * occ / (2 * vc) + W * vol * occ / (2 * vw) + tstop) +
         Big(floors - 1) * (ramp / vud * top_cap * top_occ + tturn);
}

ParkingLot make_lot(std::vector<int> floors, double ramp = 0.0) {
  ParkingLot lot;
  lot.id = "X";
  lot.floors = static_cast<int>(floors.size());
  lot.capacity = 0;
  for (int c : floors) lot.capacity += c;
  lot.floor_capacities = std::move(floors);
  lot.ramp_length = ramp;
  return lot;
}

}  // namespace

TEST(Occupancy, Fractions) {
  const auto lot = make_lot({20, 20});
  auto st = LotState::empty_for(lot, 0);
  EXPECT_EQ(occupancy(st, lot), 0.0);
  st.per_floor_occupied = {20, 0};
  EXPECT_EQ(occupancy(st, lot), 0.5);
  st.per_floor_occupied = {20, 20};
  EXPECT_EQ(occupancy(st, lot), 1.0);
}

TEST(SearchTime, EmptySingleFloorIsStopTime) {
  const auto lot = make_lot({100});
  const KinematicParams kin;
  EXPECT_EQ(search_time(lot, LotState::empty_for(lot, 0), kin), kin.stop_time);
}

TEST(SearchTime, WorkedValues) {
  const KinematicParams kin;  // W=2.5, v_c=2.78, v_w=1.2, t_stop=30, t_turn=10, v_ud=2.78
  const auto single = make_lot({100});
  const Big expect1 = search_oracle(Big("2.5"), 100, Big("0.5"), Big("2.78"), Big("1.2"), 30, 1, 0,
                                    Big("2.78"), 100, Big("0.5"), 10);
  const double got1 = search_time(single, 0.5, 0.5, kin);
  EXPECT_NEAR(got1, expect1.convert_to<double>(), 1e-9 * got1);
  EXPECT_NEAR(got1, 104.5653, 1e-4);

  auto two = make_lot({50, 50}, 30.0);
  const double got2 = search_time(two, 0.5, 0.4, kin);
  const Big expect2 = search_oracle(Big("2.5"), 100, Big("0.5"), Big("2.78"), Big("1.2"), 30, 2, 30,
                                    Big("2.78"), 50, Big("0.4"), 10);
  EXPECT_NEAR(got2, expect2.convert_to<double>(), 1e-9 * got2);
  const double ramp_term = (expect2 - expect1).convert_to<double>();
  EXPECT_NEAR(got2 - got1, ramp_term, 1e-9 * ramp_term);
  EXPECT_NEAR(ramp_term, 225.8273, 1e-4);
}

TEST(SearchTime, UsesTopFloorOccupancyFromState) {
  const KinematicParams kin;
  auto lot = make_lot({10, 10, 10}, 20.0);
  auto st = LotState::empty_for(lot, 0);
  st.per_floor_occupied = {10, 10, 5};
  EXPECT_DOUBLE_EQ(top_floor_occupancy(st, lot), 0.5);
  EXPECT_DOUBLE_EQ(search_time(lot, st, kin), search_time(lot, 25.0 / 30.0, 0.5, kin));
}

TEST(SearchTime, MonotoneInOccupancy) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0), pos(0.1, 5.0), len(0.0, 60.0);
  std::uniform_int_distribution<int> cap(1, 300), floors(1, 4);
  for (int i = 0; i < 1000; ++i) {
    KinematicParams kin{pos(rng), pos(rng), pos(rng), pos(rng), 60 * u(rng) + 1e-3, 30 * u(rng) + 1e-3};
    std::vector<int> fc(floors(rng));
    for (auto& c : fc) c = cap(rng);
    const auto lot = make_lot(fc, len(rng));
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    EXPECT_LE(search_time(lot, a, c, kin), search_time(lot, b, c, kin));
    EXPECT_LE(search_time(lot, c, a, kin), search_time(lot, c, b, kin));
  }
}

TEST(TryAdmit, FillsLowestFloorFirst) {
  const auto lot = make_lot({1, 2});
  auto st = LotState::empty_for(lot, 0);
  EXPECT_EQ(try_admit(st, lot), 0);
  EXPECT_DOUBLE_EQ(occupancy(st, lot), 1.0 / 3.0);
  EXPECT_EQ(try_admit(st, lot), 1);
  EXPECT_EQ(try_admit(st, lot), 1);
  EXPECT_TRUE(is_full(st, lot));
  EXPECT_EQ(try_admit(st, lot), std::nullopt);
  EXPECT_EQ(st.failed_search_count, 1);
  EXPECT_EQ(st.per_floor_occupied, (std::vector<int>{1, 2}));
}

TEST(TryAdmit, CapacityOneAdmitsOnce) {
  const auto lot = make_lot({1});
  auto st = LotState::empty_for(lot, 0);
  EXPECT_TRUE(try_admit(st, lot).has_value());
  EXPECT_FALSE(try_admit(st, lot).has_value());
  EXPECT_EQ(st.failed_search_count, 1);
}

TEST(IsFull, Cases) {
  const auto lot = make_lot({2});
  auto st = LotState::empty_for(lot, 0);
  EXPECT_FALSE(is_full(st, lot));
  st.per_floor_occupied = {1};
  EXPECT_FALSE(is_full(st, lot));
  st.per_floor_occupied = {2};
  EXPECT_TRUE(is_full(st, lot));
}
