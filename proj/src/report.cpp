#include "parkassign/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace parkassign {

Summary summarize(std::span<const SimOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("summarize needs at least one outcome");
  Summary s;
  s.runs = static_cast<int>(outcomes.size());
  const std::size_t n_lots = outcomes.front().failed_searches.size();
  s.failed_searches_per_lot.assign(n_lots, 0.0);
  std::vector<double> rerouting;
  long vehicles = 0, abandoned = 0, parked = 0;
  double mean_sum = 0.0;
  for (const auto& o : outcomes) {
    if (o.failed_searches.size() != n_lots) throw std::invalid_argument("outcomes disagree on lot count");
    mean_sum += o.mean_rerouting_time;
    s.run_mean_rerouting_min.push_back(o.mean_rerouting_time / 60.0);
    for (std::size_t i = 0; i < n_lots; ++i) s.failed_searches_per_lot[i] += o.failed_searches[i];
    vehicles += static_cast<long>(o.records.size());
    abandoned += o.abandonment_count;
    parked += o.parked_count;
    for (const auto& r : o.records) {
      if (r.parked_lot && !r.abandoned) rerouting.push_back(r.rerouting_time);
    }
  }
  for (auto& f : s.failed_searches_per_lot) f /= s.runs;
  s.mean_rerouting_min = mean_sum / s.runs / 60.0;
  if (!rerouting.empty()) {
    std::sort(rerouting.begin(), rerouting.end());
    const std::size_t mid = rerouting.size() / 2;
    const double median = rerouting.size() % 2 ? rerouting[mid] : 0.5 * (rerouting[mid - 1] + rerouting[mid]);
    s.median_rerouting_min = median / 60.0;
  }
  if (vehicles > 0) {
    s.abandonment_rate = static_cast<double>(abandoned) / vehicles;
    s.parked_fraction = static_cast<double>(parked) / vehicles;
  }
  return s;
}

std::vector<std::pair<int, double>> convergence_series(std::span<const SimOutcome> outcomes) {
  std::vector<std::pair<int, double>> out;
  double sum = 0.0;
  for (std::size_t n = 1; n <= outcomes.size(); ++n) {
    sum += outcomes[n - 1].mean_rerouting_time / 60.0;
    out.emplace_back(static_cast<int>(n), sum / n);
  }
  return out;
}

std::vector<std::vector<int>> failed_search_matrix(std::span<const SimOutcome> outcomes) {
  const std::size_t n_lots = outcomes.empty() ? 0 : outcomes.front().failed_searches.size();
  std::vector<std::vector<int>> m(n_lots, std::vector<int>(outcomes.size(), 0));
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    for (std::size_t i = 0; i < n_lots; ++i) m[i][r] = outcomes[r].failed_searches.at(i);
  }
  return m;
}

std::vector<std::vector<double>> failed_search_running_means(std::span<const SimOutcome> outcomes) {
  std::vector<std::vector<double>> out;
  if (outcomes.empty()) return out;
  std::vector<double> sum(outcomes.front().failed_searches.size(), 0.0);
  for (std::size_t n = 1; n <= outcomes.size(); ++n) {
    std::vector<double> mean(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += outcomes[n - 1].failed_searches.at(i);
      mean[i] = sum[i] / n;
    }
    out.push_back(std::move(mean));
  }
  return out;
}

double max_step_change(std::span<const double> running_means, int after) {
  double worst = 0.0;
  for (std::size_t n = std::max(after + 1, 2); n <= running_means.size(); ++n) {
    const double prev = running_means[n - 2];
    const double diff = std::abs(running_means[n - 1] - prev);
    if (diff == 0.0) continue;
    worst = std::max(worst, prev == 0.0 ? INFINITY : diff / std::abs(prev));
  }
  return worst;
}

double max_step_change(const std::vector<std::vector<double>>& running_means, int after) {
  double worst = 0.0;
  for (std::size_t n = std::max(after + 1, 2); n <= running_means.size(); ++n) {
    const auto& prev = running_means[n - 2];
    const auto& cur = running_means[n - 1];
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      diff += std::abs(cur[i] - prev[i]);
      norm += std::abs(prev[i]);
    }
    if (diff == 0.0) continue;
    worst = std::max(worst, norm == 0.0 ? INFINITY : diff / norm);
  }
  return worst;
}

std::string format_minutes(double minutes) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", minutes);
  return buf;
}

CsvTable runs_table(std::span<const SimOutcome> outcomes) {
  CsvTable t{{"run", "seed", "vehicles", "parked", "abandoned", "failed_searches", "mean_rerouting_s"}, {}};
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const auto& o = outcomes[r];
    t.rows.push_back({std::to_string(r), std::to_string(o.seed), std::to_string(o.records.size()),
                      std::to_string(o.parked_count), std::to_string(o.abandonment_count),
                      std::to_string(o.total_failed_searches()), format_number(o.mean_rerouting_time)});
  }
  return t;
}

namespace {

std::string lot_name(const Scenario& s, std::optional<std::size_t> lot) {
  return lot ? s.lots.at(*lot).id : std::string{};
}

}  // namespace

CsvTable vehicles_table(std::span<const SimOutcome> outcomes, const Scenario& s) {
  CsvTable t{{"run", "vehicle_id", "entry_id", "strategy", "arrival_s", "patience_s", "attempts",
              "parked_lot", "rerouting_s", "drive_s", "search_s", "walk_s", "abandoned"},
             {}};
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    for (const auto& rec : outcomes[r].records) {
      int lot_attempts = 0;
      for (const auto& a : rec.attempts) lot_attempts += a.outcome != AttemptOutcome::AbandonedEnroute;
      t.rows.push_back({std::to_string(r), std::to_string(rec.vehicle), s.entries.at(rec.entry).id,
                        rec.strategy, format_number(rec.actual_arrival),
                        std::isinf(rec.patience) ? "inf" : format_number(rec.patience),
                        std::to_string(lot_attempts), lot_name(s, rec.parked_lot),
                        format_number(rec.rerouting_time), format_number(rec.total_drive_time),
                        format_number(rec.total_search_time), format_number(rec.walk_time),
                        rec.abandoned ? "1" : "0"});
    }
  }
  return t;
}

CsvTable failed_search_table(std::span<const SimOutcome> outcomes, const Scenario& s) {
  CsvTable t{{"lot_id"}, {}};
  for (std::size_t r = 0; r < outcomes.size(); ++r) t.header.push_back("run_" + std::to_string(r));
  const auto m = failed_search_matrix(outcomes);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<std::string> row{s.lots.at(i).id};
    for (int v : m[i]) row.push_back(std::to_string(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable convergence_table(std::span<const SimOutcome> outcomes) {
  CsvTable t{{"n", "running_mean_rerouting_min", "running_mean_failed_searches"}, {}};
  const auto series = convergence_series(outcomes);
  double failed = 0.0;
  for (std::size_t n = 1; n <= series.size(); ++n) {
    failed += outcomes[n - 1].total_failed_searches();
    t.rows.push_back({std::to_string(series[n - 1].first), format_number(series[n - 1].second),
                      format_number(failed / n)});
  }
  return t;
}

CsvTable summary_table(const std::vector<std::pair<std::string, Summary>>& summaries,
                       std::uint64_t base_seed) {
  CsvTable t{{"method", "base_seed", "runs", "mean_rerouting_min", "median_rerouting_min", "failed_searches_per_run",
              "abandonment_rate", "parked_fraction"},
             {}};
  for (const auto& [label, s] : summaries) {
    double failed = 0.0;
    for (double f : s.failed_searches_per_lot) failed += f;
    t.rows.push_back({label, std::to_string(base_seed), std::to_string(s.runs), format_minutes(s.mean_rerouting_min),
                      format_minutes(s.median_rerouting_min), format_number(failed),
                      format_number(s.abandonment_rate), format_number(s.parked_fraction)});
  }
  return t;
}

CsvTable comparison_table(const std::vector<MethodComparison>& rows, std::uint64_t base_seed) {
  CsvTable t{{"method", "base_seed", "runs", "mean_rerouting_min", "failed_searches_total", "abandonment_rate"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.label, std::to_string(base_seed), std::to_string(r.outcomes.size()), format_minutes(r.mean_rerouting_min),
                      std::to_string(r.failed_searches_total), format_number(r.abandonment_rate)});
  }
  return t;
}

CsvTable assignment_table(const Assignment& a, const CostTerms& terms, const Scenario& s) {
  CsvTable t{{"vehicle_id", "lot_id", "td_s", "ts_s", "tw_s", "total_s"}, {}};
  for (std::size_t k = 0; k < a.lot_of.size(); ++k) {
    const std::size_t i = a.lot_of[k];
    const double td = terms.drive(k, i), ts = terms.search[i], tw = terms.walk[i];
    t.rows.push_back({std::to_string(k), s.lots.at(i).id, format_number(td), format_number(ts),
                      format_number(tw), format_number(td + ts + tw)});
  }
  return t;
}

CsvTable event_table(const std::vector<SimEvent>& events, const Scenario& s) {
  CsvTable t{{"time_s", "vehicle_id", "event", "lot_id", "floor"}, {}};
  for (const auto& e : events) {
    t.rows.push_back({format_number(e.time), std::to_string(e.vehicle), event_name(e.kind), lot_name(s, e.lot),
                      e.floor >= 0 ? std::to_string(e.floor) : std::string{}});
  }
  return t;
}

Assignment parse_assignment(const CsvTable& table, const Scenario& s, const CostMatrix& c) {
  const auto col = [&](const char* name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) throw std::runtime_error(std::string("assignment csv lacks column ") + name);
    return static_cast<std::size_t>(it - table.header.begin());
  };
  const std::size_t vcol = col("vehicle_id"), lcol = col("lot_id");
  std::map<std::string, std::size_t> lot_index;
  for (std::size_t i = 0; i < s.lots.size(); ++i) lot_index[s.lots[i].id] = i;

  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  Assignment a;
  a.lot_of.assign(c.vehicles(), unset);
  for (const auto& row : table.rows) {
    if (row.size() <= std::max(vcol, lcol)) throw std::runtime_error("assignment csv: short row");
    std::size_t k = 0;
    try {
      k = std::stoul(row[vcol]);
    } catch (const std::exception&) {
      throw std::runtime_error("assignment csv: bad vehicle_id '" + row[vcol] + "'");
    }
    if (k >= a.lot_of.size()) throw std::runtime_error("assignment csv: vehicle_id out of range");
    const auto it = lot_index.find(row[lcol]);
    if (it == lot_index.end()) throw std::runtime_error("assignment csv: unknown lot '" + row[lcol] + "'");
    if (a.lot_of[k] != unset) throw std::runtime_error("assignment csv: vehicle listed twice");
    a.lot_of[k] = it->second;
  }
  if (std::find(a.lot_of.begin(), a.lot_of.end(), unset) != a.lot_of.end()) {
    throw std::runtime_error("assignment csv does not cover every vehicle");
  }
  a.total_cost = assignment_cost(a, c);
  a.total_cost_ms = assignment_cost_ms(a, c);
  return a;
}

}  // namespace parkassign
