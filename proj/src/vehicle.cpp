#include "parkassign/vehicle.hpp"

#include "parkassign/scenario.hpp"

namespace parkassign {

namespace {
constexpr std::uint64_t kPopulationStream = 1;
constexpr std::uint64_t kArrivalStream = 2;
}  // namespace

std::vector<Vehicle> make_population(const Scenario& s, std::uint64_t seed) {
  Rng rng = make_rng(seed, kPopulationStream);
  std::uniform_int_distribution<std::size_t> entry_dist(0, s.entries.size() - 1);
  std::vector<Vehicle> out(static_cast<std::size_t>(s.demand));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].id = k;
    out[k].entry = entry_dist(rng);
  }
  return out;
}

void draw_run_attributes(std::vector<Vehicle>& vehicles, const Scenario& s, std::uint64_t seed) {
  Rng rng = make_rng(seed, kArrivalStream);
  for (auto& v : vehicles) {
    v.expected_arrival = sample_expected_arrival(rng, s.arrival, s.window);
    v.noise = sample_arrival_noise(rng, s.arrival);
    v.actual_arrival = actual_arrival(v.expected_arrival, v.noise, s.window);
    v.patience = sample_patience(rng, s.patience);
  }
}

}  // namespace parkassign
