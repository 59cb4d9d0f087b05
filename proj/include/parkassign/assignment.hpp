#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "parkassign/scenario.hpp"
#include "parkassign/vehicle.hpp"

namespace parkassign {

/// Dense vehicles x lots matrix of seconds.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t vehicles, std::size_t lots, double fill = 0.0)
      : rows_(vehicles), cols_(lots), values_(vehicles * lots, fill) {}

  std::size_t vehicles() const { return rows_; }
  std::size_t lots() const { return cols_; }
  double& operator()(std::size_t k, std::size_t i) { return values_[k * cols_ + i]; }
  double operator()(std::size_t k, std::size_t i) const { return values_[k * cols_ + i]; }
  std::span<const double> row(std::size_t k) const { return {values_.data() + k * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Occupancy assumed for the in-lot term when planning.
enum class PlanningOccupancy {
  Uniform,  ///< K / total capacity
  Empty,
  Full,
};

/// Drive, search and walk components; cost(k, i) = drive(k, i) + search[i] + walk[i].
struct CostTerms {
  CostMatrix drive;
  std::vector<double> search;
  std::vector<double> walk;

  CostMatrix total() const;
};

double planning_occupancy(const Scenario& s, std::size_t n_vehicles, PlanningOccupancy rule);

CostTerms build_cost_terms(const Scenario& s, const ProjectedLayout& layout,
                           std::span<const Vehicle> vehicles,
                           PlanningOccupancy rule = PlanningOccupancy::Uniform);

CostMatrix build_cost_matrix(const Scenario& s, const ProjectedLayout& layout,
                             std::span<const Vehicle> vehicles,
                             PlanningOccupancy rule = PlanningOccupancy::Uniform);

enum class FillMode {
  AtMost,     ///< per-lot count <= capacity
  ExactFill,  ///< per-lot count == capacity; needs K == total capacity
};

struct Assignment {
  std::vector<std::size_t> lot_of;  ///< lot index per vehicle
  double total_cost = 0.0;          ///< seconds
  std::int64_t total_cost_ms = 0;   ///< objective the solver minimizes exactly
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Costs are rounded to integer milliseconds before optimization.
std::int64_t to_millis(double seconds);

/// Exact transportation-problem solve by successive shortest augmenting paths
/// (min-cost flow with unit supplies). Ties resolve deterministically by vehicle
/// then lot index. Throws InfeasibleError when K exceeds the capacity bound.
Assignment solve_assignment(const CostMatrix& c, std::span<const int> capacities,
                            FillMode mode = FillMode::AtMost);

/// Exhaustive oracle for small instances (K <= 10, sum of capacities <= 12).
/// Returns the lexicographically smallest optimal lot_of.
Assignment brute_force_assignment(const CostMatrix& c, std::span<const int> capacities,
                                  FillMode mode = FillMode::AtMost);

double assignment_cost(const Assignment& a, const CostMatrix& c);
std::int64_t assignment_cost_ms(const Assignment& a, const CostMatrix& c);

/// Builds the cost matrix for `vehicles` and solves it.
Assignment optimize_assignment(const Scenario& s, std::span<const Vehicle> vehicles,
                               FillMode mode = FillMode::AtMost,
                               PlanningOccupancy rule = PlanningOccupancy::Uniform);

/// Empty when every vehicle has one valid lot and capacities hold for `mode`.
std::vector<std::string> check_assignment(const Assignment& a, std::span<const int> capacities,
                                          FillMode mode);

}  // namespace parkassign
