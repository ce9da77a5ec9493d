#include "springleg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "springleg/config.hpp"
#include "springleg/error.hpp"

namespace springleg {

std::string format_decimal(double value) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // Let printf do the rounding to 9 significant digits, then re-render in
  // fixed notation with the matching number of decimals.
  char sci[64];
  std::snprintf(sci, sizeof sci, "%.8e", value);
  const char* e = std::strchr(sci, 'e');
  const int exponent = std::atoi(e + 1);
  const int decimals = std::max(0, 8 - exponent);
  char out[512];
  std::snprintf(out, sizeof out, "%.*f", decimals, value);
  return out;
}

namespace {

void put_row(std::ostringstream& os, std::size_t iteration, const TrajectorySample& s) {
  os << iteration << ',' << format_decimal(s.leg_deformation) << ','
     << format_decimal(s.spring_length) << ',' << format_decimal(s.hip_force) << ','
     << format_decimal(s.stored_energy) << '\n';
}

constexpr const char* kTrajectoryHeader =
    "iteration,leg_deformation_m,spring_length_m,hip_force_n,stored_energy_j\n";

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    auto cell = line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.remove_suffix(1);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    out.push_back(cell);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

double parse_cell(std::string_view cell, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    std::ostringstream os;
    os << "CSV line " << line << ": `" << cell << "` is not a number";
    throw Error(ErrorKind::Data, os.str());
  }
  return v;
}

std::map<std::string, std::size_t> header_index(std::string_view header) {
  std::map<std::string, std::size_t> idx;
  const auto cells = split(header);
  for (std::size_t i = 0; i < cells.size(); ++i) idx.emplace(std::string(cells[i]), i);
  return idx;
}

std::size_t require_column(const std::map<std::string, std::size_t>& idx,
                           std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (auto it = idx.find(n); it != idx.end()) return it->second;
  throw Error(ErrorKind::Data, std::string("CSV lacks required column `") + *names.begin() + "`");
}

}  // namespace

std::string trajectory_csv(const SimResult& result) {
  std::ostringstream os;
  os << kTrajectoryHeader;
  for (const auto& t : result.trajectories)
    for (const auto& s : t.samples) put_row(os, t.iteration, s);
  return os.str();
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::ostringstream os;
  os << kTrajectoryHeader;
  for (const auto& s : trajectory.samples) put_row(os, trajectory.iteration, s);
  return os.str();
}

std::string summary_csv(const SimResult& result) {
  std::ostringstream os;
  os << "iteration,x_m,s_start_m,s_end_m,f_start_n,f_end_n,e_before_j,e_after_j,stop_reason\n";
  for (const auto& r : result.records) {
    os << r.state.iteration << ',' << format_decimal(r.state.spring_position) << ','
       << format_decimal(r.state.spring_length_start) << ','
       << format_decimal(r.state.spring_length_end.value_or(r.state.spring_length_start)) << ','
       << format_decimal(r.start_force) << ',' << format_decimal(r.end_force) << ','
       << format_decimal(r.energy_before) << ',' << format_decimal(r.energy_after) << ','
       << to_string(r.stop_reason) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "index";
  if (!rows.empty())
    for (const auto& [key, value] : rows.front().point) os << ',' << key;
  os << ",feasible,final_energy_j,iterations,iterations_to_full,termination,peak_force_n,"
        "energy_over_e1max,energy_over_capped_squat,peak_over_cap,reason\n";
  for (const auto& r : rows) {
    os << r.index;
    for (const auto& [key, value] : r.point) os << ',' << format_decimal(value);
    os << ',' << (r.feasible ? 1 : 0) << ',' << format_decimal(r.final_energy) << ','
       << r.iterations << ',';
    if (r.iterations_to_full) os << *r.iterations_to_full;
    os << ',' << r.termination << ',' << format_decimal(r.peak_force) << ','
       << format_decimal(r.energy_over_e1max) << ',' << format_decimal(r.energy_over_capped_squat)
       << ',' << format_decimal(r.peak_over_cap) << ',';
    // Reasons are free text; keep the row parseable.
    std::string reason = r.reason;
    for (char& ch : reason)
      if (ch == ',' || ch == '\n') ch = ';';
    os << reason << '\n';
  }
  return os.str();
}

std::string fit_report_csv(const FitReport& report) {
  std::ostringstream os;
  os << "iteration,work_j,retention_ratio\n";
  for (std::size_t i = 0; i < report.work_per_iteration.size(); ++i) {
    os << i + 1 << ',' << format_decimal(report.work_per_iteration[i]) << ',';
    // Ratio i describes the transition into iteration i + 2.
    if (i >= 1 && i - 1 < report.retention_ratios.size())
      os << format_decimal(report.retention_ratios[i - 1]);
    os << '\n';
  }
  return os.str();
}

std::string fit_report_text(const FitReport& report) {
  std::ostringstream os;
  os << "efficiency = " << format_decimal(report.efficiency) << "\n"
     << "force_cap_n = " << format_decimal(report.force_cap) << "\n"
     << "objective_n2 = " << format_decimal(report.objective) << "\n"
     << "rms_residual_n = " << format_decimal(report.rms_residual) << "\n"
     << "residual_points = " << report.residual_points << "\n"
     << "evaluations = " << report.evaluations << "\n"
     << "flat_objective = " << (report.flat_objective ? "true" : "false") << "\n";
  return os.str();
}

std::filesystem::path summary_path_for(const std::filesystem::path& trajectory_path) {
  auto p = trajectory_path;
  const auto stem = p.stem().string();
  const auto ext = p.has_extension() ? p.extension().string() : std::string(".csv");
  p.replace_filename(stem + "_summary" + ext);
  return p;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Usage, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::Usage, "failed writing " + path.string());
}

void emit_trajectory_csv(const SimResult& result, const std::filesystem::path& path) {
  if (result.trajectories.empty()) throw Error(ErrorKind::Data, "no trajectories to write");
  write_text_file(path, trajectory_csv(result));
  write_text_file(summary_path_for(path), summary_csv(result));
}

void emit_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
  if (trajectory.samples.empty()) throw Error(ErrorKind::Data, "empty trajectory");
  write_text_file(path, trajectory_csv(trajectory));
}

std::vector<MeasuredCycle> read_measured_cycles_text(const std::string& trajectory_text,
                                                     const std::string& summary_text) {
  const auto lines = lines_of(trajectory_text);
  if (lines.empty()) throw Error(ErrorKind::Data, "measured CSV is empty");
  const auto idx = header_index(lines.front());
  const auto c_iter = require_column(idx, {"iteration"});
  const auto c_disp = require_column(idx, {"leg_deformation_m", "hip_displacement_m"});
  const auto c_force = require_column(idx, {"hip_force_n"});

  std::vector<MeasuredCycle> cycles;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i]);
    if (cells.size() != idx.size()) {
      std::ostringstream os;
      os << "CSV line " << i + 1 << " has " << cells.size() << " cells, expected " << idx.size();
      throw Error(ErrorKind::Data, os.str());
    }
    const double it = parse_cell(cells[c_iter], i + 1);
    if (it < 0.0 || std::floor(it) != it) throw Error(ErrorKind::Data, "iteration must be an integer");
    const auto iteration = static_cast<std::size_t>(it);
    if (cycles.empty() || cycles.back().iteration != iteration) {
      for (const auto& c : cycles)
        if (c.iteration == iteration)
          throw Error(ErrorKind::Data, "iteration rows must be contiguous");
      cycles.push_back(MeasuredCycle{iteration, {}, std::nullopt});
    }
    cycles.back().samples.push_back({parse_cell(cells[c_disp], i + 1), parse_cell(cells[c_force], i + 1)});
  }

  if (!summary_text.empty()) {
    const auto slines = lines_of(summary_text);
    if (slines.empty()) throw Error(ErrorKind::Data, "summary CSV is empty");
    const auto sidx = header_index(slines.front());
    const auto s_iter = require_column(sidx, {"iteration"});
    const auto s_end = require_column(sidx, {"s_end_m"});
    for (std::size_t i = 1; i < slines.size(); ++i) {
      const auto cells = split(slines[i]);
      if (cells.size() != sidx.size()) throw Error(ErrorKind::Data, "malformed summary CSV row");
      const auto iteration = static_cast<std::size_t>(parse_cell(cells[s_iter], i + 1));
      const double locked = parse_cell(cells[s_end], i + 1);
      for (auto& c : cycles)
        if (c.iteration == iteration) c.locked_length = locked;
    }
  }
  for (const auto& c : cycles) validate(c);
  return cycles;
}

std::vector<MeasuredCycle> read_measured_cycles(const std::filesystem::path& trajectory_path,
                                                const std::filesystem::path& summary_path) {
  auto read = [](const std::filesystem::path& p) {
    try {
      return read_text_file(p);
    } catch (const Error& e) {
      throw Error(ErrorKind::Data, e.what());
    }
  };
  return read_measured_cycles_text(read(trajectory_path),
                                   summary_path.empty() ? std::string() : read(summary_path));
}

}  // namespace springleg
