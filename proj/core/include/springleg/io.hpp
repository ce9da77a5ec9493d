#pragma once

// CSV and SVG artifacts.
//
// Trajectory CSV:  iteration,leg_deformation_m,spring_length_m,hip_force_n,stored_energy_j
// Summary CSV:     iteration,x_m,s_start_m,s_end_m,f_start_n,f_end_n,e_before_j,e_after_j,stop_reason
//
// Numbers are written in plain decimal notation with 9 significant digits.

#include <filesystem>
#include <string>
#include <vector>

#include "springleg/calibration.hpp"
#include "springleg/cyclic.hpp"
#include "springleg/explore.hpp"

namespace springleg {

/// 9 significant digits, never exponent notation.
std::string format_decimal(double value);

std::string trajectory_csv(const SimResult& result);
std::string trajectory_csv(const Trajectory& trajectory);
std::string summary_csv(const SimResult& result);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string fit_report_csv(const FitReport& report);
std::string fit_report_text(const FitReport& report);

/// Companion summary path: run/trajectory.csv -> run/trajectory_summary.csv.
std::filesystem::path summary_path_for(const std::filesystem::path& trajectory_path);

/// Writes the trajectory CSV and its companion summary CSV.
void emit_trajectory_csv(const SimResult& result, const std::filesystem::path& path);
void emit_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Reads a trajectory-schema CSV (columns located by header name; needs
/// iteration, leg_deformation_m or hip_displacement_m, and hip_force_n) into
/// one cycle per iteration. A summary CSV, when given, supplies s_end_m as
/// each cycle's locked length.
std::vector<MeasuredCycle> read_measured_cycles_text(const std::string& trajectory_text,
                                                     const std::string& summary_text = {});
std::vector<MeasuredCycle> read_measured_cycles(const std::filesystem::path& trajectory_path,
                                                const std::filesystem::path& summary_path = {});

enum class PlotKind { ForceDeflection, Energy };

/// Force (normalized by the cap) or energy (normalized by E1max) against
/// spring deflection s0 - s, with the single-squat reference and cap line.
std::string plot_svg(const SimResult& result, PlotKind kind, const Configuration& config);
void emit_plot_svg(const SimResult& result, PlotKind kind, const Configuration& config,
                   const std::filesystem::path& path);

}  // namespace springleg
