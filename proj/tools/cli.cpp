#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>

#include "springleg/baseline.hpp"
#include "springleg/calibration.hpp"
#include "springleg/config.hpp"
#include "springleg/cyclic.hpp"
#include "springleg/error.hpp"
#include "springleg/explore.hpp"
#include "springleg/io.hpp"

namespace springleg {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Stall:
    case ErrorKind::Infeasible:
    case ErrorKind::Geometry:
      return kExitInfeasible;
    default:
      return kExitUsage;
  }
}

void print_sim_summary(std::ostream& out, const SimResult& sim) {
  out << "squats: " << sim.records.size() << " (" << to_string(sim.termination) << ")\n";
  out << "preload force: " << format_decimal(sim.preload_force) << " N\n";
  out << "force cap: " << format_decimal(sim.force_cap) << " N\n";
  for (const auto& r : sim.records) {
    out << "  #" << r.state.iteration << "  x=" << format_decimal(r.state.spring_position)
        << " m  s=" << format_decimal(r.state.spring_length_start) << " -> "
        << format_decimal(r.state.spring_length_end.value_or(r.state.spring_length_start))
        << " m  F=" << format_decimal(r.start_force) << " -> " << format_decimal(r.end_force)
        << " N  E=" << format_decimal(r.energy_after) << " J  [" << to_string(r.stop_reason)
        << "]\n";
  }
  out << "final energy: " << format_decimal(sim.final_energy) << " J ("
      << format_decimal(sim.final_energy / sim.e1_max) << " x E1max)\n";
  out << "full compression: ";
  if (sim.iterations_to_full_compression)
    out << "after " << *sim.iterations_to_full_compression << " squats\n";
  else
    out << "not reached\n";
}

struct Options {
  std::string config;
  std::string out;
  std::string grid;
  std::string data;
  std::string summary;
  std::string kind = "force_deflection";
  std::optional<double> bottom_force;
  std::optional<double> x_release;
  unsigned threads = 0;
  bool fix_cap = false;
  std::size_t grid_points = 21;
};

int run_baseline(const Options& o, std::ostream& out) {
  const auto config = parse_config(o.config);
  const auto r = evaluate_baseline(o.bottom_force.value_or(0.0), config.body, config.leg);
  out << "weight: " << format_decimal(config.body.weight()) << " N\n"
      << "bottom force: " << format_decimal(r.bottom_force) << " N\n"
      << "average force: " << format_decimal(r.average_force) << " N\n"
      << "required stiffness: " << format_decimal(r.stiffness) << " N/m\n"
      << "stored energy: " << format_decimal(r.stored_energy) << " J\n"
      << "E1max: " << format_decimal(r.e1_max) << " J\n";
  if (!o.out.empty()) {
    Trajectory t;
    t.iteration = 1;
    t.spring_position = config.leg.segment_length;
    t.samples = baseline_ramp(r.bottom_force, config.body, config.leg, config.sample_count);
    emit_trajectory_csv(t, o.out);
  }
  return kExitOk;
}

int run_simulate(const Options& o, std::ostream& out) {
  const auto config = parse_config(o.config);
  const auto sim = simulate(config);
  print_sim_summary(out, sim);
  if (!o.out.empty()) {
    const fs::path dir = o.out;
    emit_trajectory_csv(sim, dir / "trajectory.csv");
    out << "wrote " << (dir / "trajectory.csv").string() << " and "
        << (dir / "trajectory_summary.csv").string() << "\n";
  }
  return kExitOk;
}

int run_release(const Options& o, std::ostream& out) {
  const auto config = parse_config(o.config);
  const auto sim = simulate(config);
  const auto r = release_profile(sim.records.back().state, config, o.x_release);
  out << "release from leg length " << format_decimal(r.start_leg_length) << " m\n"
      << "peak assistive force: " << format_decimal(r.peak_force) << " N ("
      << format_decimal(r.peak_force / sim.force_cap) << " x force cap)\n"
      << "released energy: " << format_decimal(r.released_energy) << " J\n";
  if (!o.out.empty()) emit_trajectory_csv(r.trajectory, o.out);
  return kExitOk;
}

int run_sweep(const Options& o, std::ostream& out) {
  const auto config = parse_config(o.config);
  const auto grid = parse_grid(o.grid);
  const auto rows = sweep(config, grid, o.threads);
  const auto feasible = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.feasible; });
  out << "grid points: " << rows.size() << ", feasible: " << feasible << "\n";
  if (!o.out.empty()) write_text_file(o.out, sweep_csv(rows));
  else out << sweep_csv(rows);
  return kExitOk;
}

int run_fit(const Options& o, std::ostream& out) {
  const auto config = parse_config(o.config);
  const auto cycles = read_measured_cycles(o.data, o.summary.empty() ? fs::path() : fs::path(o.summary));
  FitOptions fo;
  fo.fit_force_cap = !o.fix_cap;
  fo.grid_points = o.grid_points;
  const auto report = fit_model(cycles, config, fo);
  out << fit_report_text(report);
  if (!o.out.empty()) {
    const fs::path dir = o.out;
    write_text_file(dir / "fit_report.txt", fit_report_text(report));
    write_text_file(dir / "fit_report.csv", fit_report_csv(report));
  }
  return kExitOk;
}

int run_plot(const Options& o, std::ostream& out) {
  const auto config = parse_config(o.config);
  PlotKind kind;
  if (o.kind == "force_deflection") kind = PlotKind::ForceDeflection;
  else if (o.kind == "energy") kind = PlotKind::Energy;
  else throw Error(ErrorKind::Usage, "--kind must be force_deflection or energy");
  const auto sim = simulate(config);
  emit_plot_svg(sim, kind, config, o.out);
  out << "wrote " << o.out << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclic energy accumulation in a floating variable-stiffness spring leg", "springleg"};
  app.require_subcommand(1);
  Options o;

  auto* baseline = app.add_subcommand("baseline", "Single-squat fixed-spring reference");
  baseline->add_option("--config", o.config, "Configuration file")->required();
  baseline->add_option("--bottom-force", o.bottom_force, "Leg force at the bottom of the squat [N] (default 0)");
  baseline->add_option("--out", o.out, "Write the linear force ramp as trajectory CSV");

  auto* simulate_cmd = app.add_subcommand("simulate", "Run the multi-squat accumulation");
  simulate_cmd->add_option("--config", o.config, "Configuration file")->required();
  simulate_cmd->add_option("--out", o.out, "Output directory for trajectory and summary CSVs");

  auto* release = app.add_subcommand("release", "Release the accumulated energy after resetting x");
  release->add_option("--config", o.config, "Configuration file")->required();
  release->add_option("--x-release", o.x_release, "Spring position for the release [m] (default segment length)");
  release->add_option("--out", o.out, "Release trajectory CSV");

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a parameter grid");
  sweep_cmd->add_option("--config", o.config, "Template configuration file")->required();
  sweep_cmd->add_option("--grid", o.grid, "Grid file (key = v1, v2, ...)")->required();
  sweep_cmd->add_option("--out", o.out, "Result CSV (default: standard output)");
  sweep_cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");

  auto* fit = app.add_subcommand("fit", "Fit efficiency and force cap to measured cycles");
  fit->add_option("--config", o.config, "Configuration with the known parameters")->required();
  fit->add_option("--data", o.data, "Measured trajectory CSV")->required();
  fit->add_option("--summary", o.summary, "Summary CSV with locked spring lengths");
  fit->add_flag("--fix-cap", o.fix_cap, "Hold force_cap_n from the configuration");
  fit->add_option("--grid-points", o.grid_points, "Coarse grid points per searched axis");
  fit->add_option("--out", o.out, "Output directory for fit_report.txt and fit_report.csv");

  auto* plot = app.add_subcommand("plot", "Render a simulation as SVG");
  plot->add_option("--config", o.config, "Configuration file")->required();
  plot->add_option("--kind", o.kind, "force_deflection or energy");
  plot->add_option("--out", o.out, "SVG path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (baseline->parsed()) return run_baseline(o, out);
    if (simulate_cmd->parsed()) return run_simulate(o, out);
    if (release->parsed()) return run_release(o, out);
    if (sweep_cmd->parsed()) return run_sweep(o, out);
    if (fit->parsed()) return run_fit(o, out);
    if (plot->parsed()) return run_plot(o, out);
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace springleg
