#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parkassign/assignment.hpp"
#include "parkassign/csv.hpp"
#include "parkassign/scenario.hpp"
#include "parkassign/simulator.hpp"

namespace parkassign {

struct Summary {
  int runs = 0;
  double mean_rerouting_min = 0.0;    ///< mean over runs of each run's mean
  double median_rerouting_min = 0.0;  ///< over every parked vehicle of every run
  std::vector<double> failed_searches_per_lot;  ///< mean per run
  double abandonment_rate = 0.0;
  double parked_fraction = 0.0;
  std::vector<double> run_mean_rerouting_min;  ///< per-run series
};

/// Exact aggregation; throws std::invalid_argument on empty input.
Summary summarize(std::span<const SimOutcome> outcomes);

/// (n, mean of the first n runs' mean rerouting time in minutes), n = 1..runs.
std::vector<std::pair<int, double>> convergence_series(std::span<const SimOutcome> outcomes);

/// Entry [lot][run] = failed searches at that lot in that run.
std::vector<std::vector<int>> failed_search_matrix(std::span<const SimOutcome> outcomes);

/// Entry [n-1][lot] = mean failed searches at the lot over the first n runs.
std::vector<std::vector<double>> failed_search_running_means(std::span<const SimOutcome> outcomes);

/// Largest |m_n - m_{n-1}| / |m_{n-1}| over n > after.
double max_step_change(std::span<const double> running_means, int after);

/// Same, with vectors compared by L1 norm.
double max_step_change(const std::vector<std::vector<double>>& running_means, int after);

// Table builders. Numbers use six significant digits; summaries in minutes use
// two decimals.
CsvTable runs_table(std::span<const SimOutcome> outcomes);
CsvTable vehicles_table(std::span<const SimOutcome> outcomes, const Scenario& s);
CsvTable failed_search_table(std::span<const SimOutcome> outcomes, const Scenario& s);
CsvTable convergence_table(std::span<const SimOutcome> outcomes);
CsvTable summary_table(const std::vector<std::pair<std::string, Summary>>& summaries,
                       std::uint64_t base_seed);
CsvTable comparison_table(const std::vector<MethodComparison>& rows, std::uint64_t base_seed);
CsvTable assignment_table(const Assignment& a, const CostTerms& terms, const Scenario& s);
CsvTable event_table(const std::vector<SimEvent>& events, const Scenario& s);

/// Reads an assignment CSV (vehicle_id, lot_id, ...) back into lot indices.
Assignment parse_assignment(const CsvTable& table, const Scenario& s, const CostMatrix& c);

std::string format_minutes(double minutes);

}  // namespace parkassign
