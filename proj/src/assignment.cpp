#include "parkassign/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "parkassign/lot_model.hpp"

namespace parkassign {

CostMatrix CostTerms::total() const {
  CostMatrix out(drive.vehicles(), drive.lots());
  for (std::size_t k = 0; k < drive.vehicles(); ++k) {
    for (std::size_t i = 0; i < drive.lots(); ++i) out(k, i) = drive(k, i) + search[i] + walk[i];
  }
  return out;
}

double planning_occupancy(const Scenario& s, std::size_t n_vehicles, PlanningOccupancy rule) {
  switch (rule) {
    case PlanningOccupancy::Empty: return 0.0;
    case PlanningOccupancy::Full: return 1.0;
    case PlanningOccupancy::Uniform: break;
  }
  const int cap = s.total_capacity();
  if (cap <= 0) return 0.0;
  return std::min(1.0, static_cast<double>(n_vehicles) / cap);
}

CostTerms build_cost_terms(const Scenario& s, const ProjectedLayout& layout,
                           std::span<const Vehicle> vehicles, PlanningOccupancy rule) {
  const auto& kin = s.kinematics;
  const std::size_t m = s.lots.size();
  const double occ = planning_occupancy(s, vehicles.size(), rule);
  CostTerms t{CostMatrix(vehicles.size(), m), std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    t.search[i] = search_time(s.lots[i], occ, occ, kin);
    t.walk[i] = travel_time(manhattan_distance(layout.lots[i], layout.destination), kin.walk_speed);
  }
  for (std::size_t k = 0; k < vehicles.size(); ++k) {
    const auto& from = layout.entries.at(vehicles[k].entry);
    for (std::size_t i = 0; i < m; ++i) {
      t.drive(k, i) = travel_time(manhattan_distance(from, layout.lots[i]), kin.cruise_speed);
    }
  }
  return t;
}

CostMatrix build_cost_matrix(const Scenario& s, const ProjectedLayout& layout,
                             std::span<const Vehicle> vehicles, PlanningOccupancy rule) {
  return build_cost_terms(s, layout, vehicles, rule).total();
}

std::int64_t to_millis(double seconds) { return std::llround(seconds * 1000.0); }

namespace {

void check_feasible(std::size_t n_vehicles, std::size_t n_lots, std::span<const int> capacities,
                    FillMode mode) {
  if (capacities.size() != n_lots) {
    throw std::invalid_argument("capacities length " + std::to_string(capacities.size()) +
                                " does not match " + std::to_string(n_lots) + " lots");
  }
  long total = 0;
  for (int c : capacities) {
    if (c < 0) throw std::invalid_argument("capacities must be nonnegative");
    total += c;
  }
  const long k = static_cast<long>(n_vehicles);
  if (mode == FillMode::ExactFill && k != total) {
    throw InfeasibleError("exact fill needs K == sum of capacities (K=" + std::to_string(k) +
                          ", capacity=" + std::to_string(total) + ")");
  }
  if (k > total) {
    throw InfeasibleError("K exceeds sum of capacities (K=" + std::to_string(k) +
                          ", capacity=" + std::to_string(total) + ")");
  }
}

Assignment finish(const CostMatrix& c, std::vector<std::size_t> lot_of) {
  Assignment a{std::move(lot_of), 0.0, 0};
  a.total_cost = assignment_cost(a, c);
  a.total_cost_ms = assignment_cost_ms(a, c);
  return a;
}

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

// Residual network collapsed onto lots: moving along lot a -> lot b means some
// vehicle u currently at a is reassigned to b for cost c[u][b] - c[u][a]. The
// cheapest such u per (a, b) is cached and refreshed only for lots whose
// membership changed. Each new vehicle is routed by Bellman-Ford over lots;
// the residual graph of an optimal partial flow has no negative cycles.
Assignment solve_assignment(const CostMatrix& c, std::span<const int> capacities, FillMode mode) {
  const std::size_t K = c.vehicles();
  const std::size_t m = c.lots();
  check_feasible(K, m, capacities, mode);
  if (K == 0) return finish(c, {});

  std::vector<std::int64_t> cost(K * m);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < m; ++i) cost[k * m + i] = to_millis(c(k, i));
  }
  auto at = [&](std::size_t k, std::size_t i) { return cost[k * m + i]; };

  std::vector<std::size_t> lot_of(K, kNone);
  std::vector<std::vector<std::size_t>> members(m);
  std::vector<int> free(capacities.begin(), capacities.end());
  std::vector<std::int64_t> move_cost(m * m, kInf);
  std::vector<std::size_t> move_vehicle(m * m, kNone);

  auto refresh = [&](std::size_t a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::int64_t best = kInf;
      std::size_t who = kNone;
      if (b != a) {
        for (std::size_t u : members[a]) {  // members kept sorted by vehicle index
          const std::int64_t d = at(u, b) - at(u, a);
          if (d < best) {
            best = d;
            who = u;
          }
        }
      }
      move_cost[a * m + b] = best;
      move_vehicle[a * m + b] = who;
    }
  };
  auto remove_member = [&](std::size_t lot, std::size_t u) {
    auto& v = members[lot];
    v.erase(std::lower_bound(v.begin(), v.end(), u));
  };
  auto add_member = [&](std::size_t lot, std::size_t u) {
    auto& v = members[lot];
    v.insert(std::lower_bound(v.begin(), v.end(), u), u);
  };

  std::vector<std::int64_t> dist(m);
  std::vector<std::size_t> parent(m);
  std::vector<std::size_t> touched;
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      dist[i] = capacities[i] > 0 ? at(k, i) : kInf;
      parent[i] = kNone;
    }
    for (std::size_t round = 0; round + 1 < m; ++round) {
      bool changed = false;
      for (std::size_t a = 0; a < m; ++a) {
        if (dist[a] >= kInf) continue;
        for (std::size_t b = 0; b < m; ++b) {
          const std::int64_t step = move_cost[a * m + b];
          if (step >= kInf) continue;
          if (dist[a] + step < dist[b]) {
            dist[b] = dist[a] + step;
            parent[b] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    std::size_t target = kNone;
    for (std::size_t i = 0; i < m; ++i) {
      if (free[i] > 0 && dist[i] < kInf && (target == kNone || dist[i] < dist[target])) target = i;
    }
    if (target == kNone) throw InfeasibleError("no augmenting path; capacities exhausted");

    // Walk back from the target shifting one vehicle per hop.
    --free[target];
    touched.clear();
    std::size_t lot = target;
    while (parent[lot] != kNone) {
      const std::size_t from = parent[lot];
      const std::size_t u = move_vehicle[from * m + lot];
      remove_member(from, u);
      add_member(lot, u);
      lot_of[u] = lot;
      touched.push_back(lot);
      lot = from;
    }
    add_member(lot, k);
    lot_of[k] = lot;
    touched.push_back(lot);
    for (std::size_t t : touched) refresh(t);
  }

  if (auto problems = check_assignment({lot_of, 0.0, 0}, capacities, mode); !problems.empty()) {
    throw std::logic_error("solver produced an infeasible assignment: " + problems.front());
  }
  return finish(c, std::move(lot_of));
}

Assignment brute_force_assignment(const CostMatrix& c, std::span<const int> capacities,
                                  FillMode mode) {
  const std::size_t K = c.vehicles();
  const std::size_t m = c.lots();
  const long cap_total = std::accumulate(capacities.begin(), capacities.end(), 0L);
  if (K > 10 || cap_total > 12) {
    throw std::invalid_argument("brute force limited to K <= 10 and total capacity <= 12");
  }
  check_feasible(K, m, capacities, mode);

  std::vector<int> left(capacities.begin(), capacities.end());
  std::vector<std::size_t> current(K), best;
  std::int64_t best_cost = kInf;

  auto recurse = [&](auto&& self, std::size_t k, std::int64_t acc) -> void {
    if (k == K) {
      if (mode == FillMode::ExactFill &&
          std::any_of(left.begin(), left.end(), [](int v) { return v != 0; })) {
        return;
      }
      if (acc < best_cost) {
        best_cost = acc;
        best = current;
      }
      return;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (left[i] == 0) continue;
      --left[i];
      current[k] = i;
      self(self, k + 1, acc + to_millis(c(k, i)));
      ++left[i];
    }
  };
  recurse(recurse, 0, 0);
  if (best_cost == kInf) throw InfeasibleError("no feasible assignment");
  return finish(c, std::move(best));
}

Assignment optimize_assignment(const Scenario& s, std::span<const Vehicle> vehicles, FillMode mode,
                               PlanningOccupancy rule) {
  const auto c = build_cost_matrix(s, project_layout(s), vehicles, rule);
  const auto caps = s.capacities();
  return solve_assignment(c, caps, mode);
}

double assignment_cost(const Assignment& a, const CostMatrix& c) {
  if (a.lot_of.size() != c.vehicles()) {
    throw std::invalid_argument("assignment covers " + std::to_string(a.lot_of.size()) +
                                " vehicles but the matrix has " + std::to_string(c.vehicles()));
  }
  double total = 0.0;
  for (std::size_t k = 0; k < a.lot_of.size(); ++k) {
    if (a.lot_of[k] >= c.lots()) throw std::invalid_argument("assignment names an unknown lot");
    total += c(k, a.lot_of[k]);
  }
  return total;
}

std::int64_t assignment_cost_ms(const Assignment& a, const CostMatrix& c) {
  if (a.lot_of.size() != c.vehicles()) throw std::invalid_argument("assignment size mismatch");
  std::int64_t total = 0;
  for (std::size_t k = 0; k < a.lot_of.size(); ++k) {
    if (a.lot_of[k] >= c.lots()) throw std::invalid_argument("assignment names an unknown lot");
    total += to_millis(c(k, a.lot_of[k]));
  }
  return total;
}

std::vector<std::string> check_assignment(const Assignment& a, std::span<const int> capacities,
                                          FillMode mode) {
  std::vector<std::string> problems;
  std::vector<int> used(capacities.size(), 0);
  for (std::size_t k = 0; k < a.lot_of.size(); ++k) {
    if (a.lot_of[k] >= capacities.size()) {
      problems.push_back("vehicle " + std::to_string(k) + " has no valid lot");
      continue;
    }
    ++used[a.lot_of[k]];
  }
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    if (used[i] > capacities[i]) {
      problems.push_back("lot " + std::to_string(i) + " over capacity");
    } else if (mode == FillMode::ExactFill && used[i] != capacities[i]) {
      problems.push_back("lot " + std::to_string(i) + " not filled exactly");
    }
  }
  return problems;
}

}  // namespace parkassign
