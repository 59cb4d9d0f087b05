// Command-line front end: synth, validate, optimize, simulate, compare.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "parkassign/assignment.hpp"
#include "parkassign/report.hpp"
#include "parkassign/scenario.hpp"
#include "parkassign/simulator.hpp"
#include "parkassign/vehicle.hpp"

namespace fs = std::filesystem;
using namespace parkassign;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;

struct Common {
  std::string scenario;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::string planning = "uniform";
};

PlanningOccupancy parse_planning(const std::string& name) {
  if (name == "uniform") return PlanningOccupancy::Uniform;
  if (name == "empty") return PlanningOccupancy::Empty;
  if (name == "full") return PlanningOccupancy::Full;
  throw CLI::ValidationError("--planning-occupancy", "expected uniform, empty or full");
}

FillMode parse_mode(const std::string& name) {
  if (name == "at_most") return FillMode::AtMost;
  if (name == "exact_fill") return FillMode::ExactFill;
  throw CLI::ValidationError("--mode", "expected exact_fill or at_most");
}

fs::path out_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

Method method_for(const std::string& label, const Scenario& s, const std::vector<Vehicle>& population,
                  FillMode mode, PlanningOccupancy planning) {
  if (label == "opt") return optimize_assignment(s, population, mode, planning);
  if (label == "g-mix") return s.mix.value_or(default_group_mix());
  if (label == "nearest") return single_strategy_mix({Strategy::NoGuidanceNearest});
  if (label == "multicriteria") return single_strategy_mix({Strategy::MultiCriteria});
  return single_strategy_mix({parse_strategy_label(label)});
}

void write_run_outputs(const fs::path& dir, const std::string& suffix, const Scenario& s,
                       const std::vector<SimOutcome>& outcomes) {
  emit_csv(runs_table(outcomes), dir / ("runs" + suffix + ".csv"));
  emit_csv(vehicles_table(outcomes, s), dir / ("vehicles" + suffix + ".csv"));
  emit_csv(failed_search_table(outcomes, s), dir / ("failed_searches" + suffix + ".csv"));
  emit_csv(convergence_table(outcomes), dir / ("convergence" + suffix + ".csv"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event parking assignment: optimization and driver-strategy simulation"};
  app.require_subcommand(1);

  // synth
  SynthParams synth;
  std::string synth_out = ".";
  std::string synth_name = "scenario.json";
  int synth_demand = -1;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scenario document");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--lots", synth.n_lots, "Number of lots")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--capacity", synth.total_capacity, "Total spaces")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--entries", synth.n_entries, "Entry streets")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--demand", synth_demand, "Vehicles (defaults to capacity)");
  synth_cmd->add_option("--lambda", synth.arrival.lambda_segment, "Poisson mean segment");
  synth_cmd->add_option("--noise-sigma", synth.arrival.noise_sigma, "Arrival noise sd, seconds");
  synth_cmd->add_option("--exclusion-radius", synth.exclusion_radius, "Group 2 exclusion radius, meters");
  synth_cmd->add_option("--out", synth_out, "Output directory");
  synth_cmd->add_option("--name", synth_name, "Output file name");

  // validate
  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario document");
  validate_cmd->add_option("file", validate_file)->required();

  // optimize
  Common opt;
  std::string opt_mode = "at_most";
  auto* optimize_cmd = app.add_subcommand("optimize", "Solve the vehicle-to-lot assignment");
  optimize_cmd->add_option("file", opt.scenario)->required();
  optimize_cmd->add_option("--mode", opt_mode, "exact_fill or at_most");
  optimize_cmd->add_option("--seed", opt.seed, "Population seed (entry points)");
  optimize_cmd->add_option("--planning-occupancy", opt.planning, "uniform, empty or full");
  optimize_cmd->add_option("--out", opt.out, "Output directory");

  // simulate
  Common sim;
  std::string sim_mix, sim_assignment, sim_events;
  int sim_runs = 1;
  bool no_reservation = false, infinite_patience = false, serial = false;
  double overhead = 0.0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run seeded Monte Carlo simulations");
  simulate_cmd->add_option("file", sim.scenario)->required();
  auto* mix_opt = simulate_cmd->add_option("--mix", sim_mix, "e.g. G1=0.25,G2=0.25,G3=0.25,G4=0.25");
  simulate_cmd->add_option("--assignment", sim_assignment, "Assignment CSV from optimize")->excludes(mix_opt);
  simulate_cmd->add_option("--runs", sim_runs, "Replications")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "Base seed; run r uses seed + r");
  simulate_cmd->add_option("--events", sim_events, "Event log CSV for the first run");
  simulate_cmd->add_option("--out", sim.out, "Output directory");
  simulate_cmd->add_option("--detection-overhead", overhead, "Seconds to detect a full lot");
  simulate_cmd->add_flag("--no-reservation", no_reservation, "Do not hold spots for assigned vehicles");
  simulate_cmd->add_flag("--infinite-patience", infinite_patience, "Drivers never abandon");
  simulate_cmd->add_flag("--serial", serial, "Run replications on one thread");

  // compare
  Common cmp;
  std::string methods_text = "opt,g-mix,nearest,multicriteria";
  std::string cmp_mode = "at_most";
  int cmp_runs = 10;
  auto* compare_cmd = app.add_subcommand("compare", "Compare methods under common random numbers");
  compare_cmd->add_option("file", cmp.scenario)->required();
  compare_cmd->add_option("--methods", methods_text, "Comma list of opt, g-mix, nearest, multicriteria, G1..G4");
  compare_cmd->add_option("--runs", cmp_runs, "Replications per method")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", cmp.seed, "Base seed");
  compare_cmd->add_option("--mode", cmp_mode, "Fill mode for opt");
  compare_cmd->add_option("--planning-occupancy", cmp.planning, "uniform, empty or full");
  compare_cmd->add_option("--detection-overhead", overhead, "Seconds to detect a full lot");
  compare_cmd->add_option("--out", cmp.out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      if (synth_demand > 0) synth.demand = synth_demand;
      const auto s = synth_scenario(synth);
      const auto path = out_dir(synth_out) / synth_name;
      save_scenario_file(s, path);
      std::cout << "wrote " << path.string() << " (" << s.lots.size() << " lots, " << s.total_capacity()
                << " spaces, " << s.entries.size() << " entries)\n";
      return 0;
    }

    if (*validate_cmd) {
      const auto s = load_scenario_file(validate_file);
      std::cout << "ok: " << s.lots.size() << " lots, " << s.total_capacity() << " spaces, "
                << s.entries.size() << " entries, demand " << s.demand << "\n";
      return 0;
    }

    if (*optimize_cmd) {
      const auto s = load_scenario_file(opt.scenario);
      const auto population = make_population(s, opt.seed);
      const auto terms = build_cost_terms(s, project_layout(s), population, parse_planning(opt.planning));
      const auto caps = s.capacities();
      const auto a = solve_assignment(terms.total(), caps, parse_mode(opt_mode));
      const auto path = out_dir(opt.out) / "assignment.csv";
      emit_csv(assignment_table(a, terms, s), path);
      std::cout << "total_cost_s=" << format_number(a.total_cost) << " seed=" << opt.seed << " -> "
                << path.string() << "\n";
      return 0;
    }

    if (*simulate_cmd) {
      const auto s = load_scenario_file(sim.scenario);
      const auto population = make_population(s, sim.seed);
      Method method = s.mix.value_or(default_group_mix());
      std::string label = "g-mix";
      if (!sim_mix.empty()) {
        auto mix = parse_mix(sim_mix);
        if (auto errors = validate_mix(mix); !errors.empty()) {
          throw std::invalid_argument("--mix: " + errors.front());
        }
        method = std::move(mix);
        label = sim_mix;
      } else if (!sim_assignment.empty()) {
        const auto c = build_cost_matrix(s, project_layout(s), population, parse_planning(sim.planning));
        method = parse_assignment(read_csv(sim_assignment), s, c);
        label = "assigned";
      }
      SimOptions options;
      options.reservation = !no_reservation;
      options.detection_overhead = overhead;
      options.infinite_patience = infinite_patience;

      const fs::path dir = out_dir(sim.out);
      if (!sim_events.empty()) {
        std::vector<SimEvent> events;
        SimOptions logged = options;
        logged.observer = [&](const SimEvent& e, const PhaseCounts&, std::span<const LotState>) {
          events.push_back(e);
        };
        run_simulation(s, population, method, sim.seed, logged);
        emit_csv(event_table(events, s), sim_events);
      }
      const auto outcomes = monte_carlo(s, population, method, sim_runs, sim.seed, !serial, options);
      write_run_outputs(dir, "", s, outcomes);
      emit_csv(summary_table({{label, summarize(outcomes)}}, sim.seed), dir / "summary.csv");
      std::cout << to_csv(summary_table({{label, summarize(outcomes)}}, sim.seed));
      return 0;
    }

    if (*compare_cmd) {
      const auto s = load_scenario_file(cmp.scenario);
      const auto population = make_population(s, cmp.seed);
      std::vector<std::pair<std::string, Method>> methods;
      std::stringstream in(methods_text);
      for (std::string label; std::getline(in, label, ',');) {
        if (label.empty()) continue;
        methods.emplace_back(label, method_for(label, s, population, parse_mode(cmp_mode),
                                               parse_planning(cmp.planning)));
      }
      SimOptions options;
      options.detection_overhead = overhead;
      const auto rows = compare_methods(s, population, methods, cmp_runs, cmp.seed, options);
      const fs::path dir = out_dir(cmp.out);
      std::vector<std::pair<std::string, Summary>> summaries;
      for (const auto& row : rows) {
        write_run_outputs(dir, "_" + row.label, s, row.outcomes);
        summaries.emplace_back(row.label, summarize(row.outcomes));
      }
      emit_csv(comparison_table(rows, cmp.seed), dir / "comparison.csv");
      emit_csv(summary_table(summaries, cmp.seed), dir / "summary.csv");
      std::cout << to_csv(comparison_table(rows, cmp.seed));
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
