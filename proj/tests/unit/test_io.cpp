#include <gtest/gtest.h>

#include <filesystem>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "springleg/config.hpp"
#include "springleg/error.hpp"
#include "springleg/io.hpp"
#include "test_configs.hpp"

using namespace springleg;
using springleg::testing::worked_config;

namespace {

const char* kWorkedText = R"(# worked example
mass_kg = 10
gravity_mps2 = 10
segment_length_m = 0.20
standing_length_m = 0.30
max_deformation_m = 0.10
spring_stiffness_n_per_m = 1000
spring_free_length_m = 0.12
spring_solid_length_m = 0.04
initial_spring_position_m = 0.08
)";

std::string expect_config_error(const std::string& text) {
  try {
    parse_config_text(text, "t.cfg");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
    return e.what();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

struct Polyline {
  std::string stroke, dash;
  std::vector<std::pair<double, double>> points;
};

std::vector<Polyline> polylines(const std::string& svg) {
  static const std::regex re(R"re(<polyline fill="none" stroke="([^"]+)" stroke-width="1.5" (?:stroke-dasharray="([^"]*)")? ?points="([^"]*)"/>)re");
  std::vector<Polyline> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    Polyline p{(*it)[1], (*it)[2], {}};
    std::istringstream pts((*it)[3].str());
    for (std::string xy; pts >> xy;) {
      const auto comma = xy.find(',');
      p.points.emplace_back(std::stod(xy.substr(0, comma)), std::stod(xy.substr(comma + 1)));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST(ParseConfig, WorkedExample) {
  const auto c = parse_config_text(kWorkedText);
  EXPECT_EQ(c.body.weight(), 100.0);
  EXPECT_EQ(c.effective_force_cap(), 100.0);
  EXPECT_EQ(c.initial_spring_length(), 0.12);
  EXPECT_EQ(c.loss.efficiency, 1.0);
  EXPECT_EQ(c.policy, CompressionPolicy::ForceLimited);
  EXPECT_EQ(c.max_iterations, 100u);
  EXPECT_EQ(c.sample_count, 1000u);
}

TEST(ParseConfig, PrototypeDefaultsInMillimetres) {
  const auto c = parse_config(std::string(SPRINGLEG_CONFIG_DIR) + "/prototype_experiment.cfg");
  EXPECT_NEAR(c.leg.segment_length, 0.205, 1e-15);
  EXPECT_NEAR(c.spring.free_length, 0.114, 1e-15);
  EXPECT_NEAR(c.spring.stiffness, 900.0, 1e-12);
  EXPECT_NEAR(c.initial_spring_length(), 0.190 * 0.120 / 0.205, 1e-15);
}

TEST(ParseConfig, EfficiencyOutOfRangeNamesKeyAndBound) {
  const auto msg = expect_config_error(std::string(kWorkedText) + "efficiency = 1.2\n");
  EXPECT_NE(msg.find("efficiency"), std::string::npos);
  EXPECT_NE(msg.find("(0, 1]"), std::string::npos);
}

TEST(ParseConfig, DuplicateKey) {
  const auto msg = expect_config_error(std::string(kWorkedText) + "mass_kg = 11\n");
  EXPECT_NE(msg.find("duplicate"), std::string::npos);
  EXPECT_NE(msg.find("t.cfg:11"), std::string::npos);
  expect_config_error(std::string(kWorkedText) + "spring_free_length_mm = 120\n");
}

TEST(ParseConfig, UnknownAndMissingKeys) {
  EXPECT_NE(expect_config_error(std::string(kWorkedText) + "colour = 3\n").find("colour"), std::string::npos);
  std::string text = kWorkedText;
  text.erase(text.find("mass_kg"), std::string("mass_kg = 10\n").size());
  EXPECT_NE(expect_config_error(text).find("mass_kg"), std::string::npos);
}

TEST(ParseConfig, MalformedValues) {
  expect_config_error(std::string(kWorkedText) + "force_cap_n = 12abc\n");
  expect_config_error(std::string(kWorkedText) + "policy = sometimes\n");
  expect_config_error(std::string(kWorkedText) + "sample_count = 1\n");
  expect_config_error(std::string(kWorkedText) + "force_cap_n\n");
}

TEST(ParseConfig, FormatRoundTrip) {
  auto c = worked_config();
  c.force_cap = 16.0;
  c.loss = {0.84, 0.005};
  c.policy = CompressionPolicy::FullRange;
  const auto back = parse_config_text(format_config(c));
  EXPECT_EQ(format_config(back), format_config(c));
  EXPECT_EQ(back.loss.ratchet_pitch, 0.005);
  EXPECT_EQ(back.policy, CompressionPolicy::FullRange);
}

TEST(ParseGrid, ListsAndErrors) {
  const auto g = parse_grid_text("# caps\nforce_cap_n = 1, 2,3\nefficiency = 0.9\n");
  ASSERT_EQ(g.axes.size(), 2u);
  EXPECT_EQ(g.axes[0].values, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(g.size(), 3u);
  EXPECT_THROW(parse_grid_text("force_cap_n = 1\nforce_cap_n = 2\n"), Error);
  EXPECT_THROW(parse_grid_text("wingspan = 1\n"), Error);
  EXPECT_THROW(parse_grid_text("force_cap_n = \n"), Error);
}

TEST(FormatDecimal, NineSignificantDigits) {
  EXPECT_EQ(format_decimal(0.0), "0");
  EXPECT_EQ(format_decimal(0.8), "0.800000000");
  EXPECT_EQ(format_decimal(2.0 / 9.0 * 10.0), "2.22222222");
  EXPECT_EQ(format_decimal(1234.5678901), "1234.56789");
  EXPECT_EQ(format_decimal(-0.000123456789012), "-0.000123456789");
  EXPECT_EQ(format_decimal(16.0), "16.0000000");
  EXPECT_EQ(format_decimal(1e10), "10000000000");
}

TEST(TrajectoryCsv, SingleSampleTrajectory) {
  Trajectory t;
  t.iteration = 1;
  t.samples.push_back({0.0, 0.12, 0.0, 0.0});
  const auto l = lines(trajectory_csv(t));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "iteration,leg_deformation_m,spring_length_m,hip_force_n,stored_energy_j");
  EXPECT_EQ(l[1], "1,0,0.120000000,0,0");
}

TEST(TrajectoryCsv, WorkedTwoSquats) {
  auto c = worked_config();
  c.max_iterations = 2;
  c.sample_count = 11;
  const auto sim = simulate(c);
  const auto csv = trajectory_csv(sim);
  EXPECT_EQ(lines(csv).size(), 2 * c.sample_count + 1);
  EXPECT_EQ(csv.back(), '\n');
  const auto summary = lines(summary_csv(sim));
  ASSERT_EQ(summary.size(), 3u);
  EXPECT_EQ(summary[0], "iteration,x_m,s_start_m,s_end_m,f_start_n,f_end_n,e_before_j,e_after_j,stop_reason");
  EXPECT_EQ(summary[1], "1,0.0800000000,0.120000000,0.0800000000,0,16.0000000,0,0.800000000,leg_range");
  EXPECT_EQ(summary[2],
            "2,0.0533333333,0.0800000000,0.0533333333,10.6666667,17.7777778,0.800000000,2.22222222,leg_range");
}

TEST(TrajectoryCsv, ReaderRecoversPrintedValues) {
  auto c = worked_config();
  c.sample_count = 25;
  c.loss.efficiency = 0.84;
  const auto sim = simulate(c);
  const auto csv = trajectory_csv(sim);
  const auto cycles = read_measured_cycles_text(csv, summary_csv(sim));
  ASSERT_EQ(cycles.size(), sim.trajectories.size());
  for (std::size_t n = 0; n < cycles.size(); ++n) {
    ASSERT_EQ(cycles[n].samples.size(), sim.trajectories[n].samples.size());
    EXPECT_EQ(cycles[n].iteration, sim.trajectories[n].iteration);
    ASSERT_TRUE(cycles[n].locked_length);
    EXPECT_EQ(format_decimal(*cycles[n].locked_length), format_decimal(*sim.records[n].state.spring_length_end));
    for (std::size_t j = 0; j < cycles[n].samples.size(); ++j) {
      EXPECT_EQ(format_decimal(cycles[n].samples[j].displacement),
                format_decimal(sim.trajectories[n].samples[j].leg_deformation));
      EXPECT_EQ(format_decimal(cycles[n].samples[j].force), format_decimal(sim.trajectories[n].samples[j].hip_force));
    }
  }
}

TEST(TrajectoryCsv, ReaderRejectsMissingColumns) {
  try {
    read_measured_cycles_text("iteration,spring_length_m\n1,0.1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
  EXPECT_THROW(read_measured_cycles_text("iteration,hip_displacement_m,hip_force_n\n1,0.1\n"), Error);
}

TEST(TrajectoryCsv, EmitWritesCompanionSummary) {
  const auto dir = std::filesystem::temp_directory_path() / "springleg_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "run.csv";
  emit_trajectory_csv(simulate(worked_config()), path);
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_EQ(summary_path_for(path), dir / "run_summary.csv");
  EXPECT_TRUE(std::filesystem::exists(dir / "run_summary.csv"));
  std::filesystem::remove_all(dir);
}

TEST(PlotSvg, EmptyResultIsAnError) {
  EXPECT_THROW(plot_svg(SimResult{}, PlotKind::Energy, worked_config()), Error);
}

TEST(PlotSvg, Deterministic) {
  auto c = worked_config();
  c.loss.efficiency = 0.84;
  const auto sim = simulate(c);
  for (auto kind : {PlotKind::ForceDeflection, PlotKind::Energy})
    EXPECT_EQ(plot_svg(sim, kind, c), plot_svg(simulate(c), kind, c));
}

TEST(PlotSvg, BaselineReferenceEndsOnCapLine) {
  const auto c = worked_config();  // cap defaults to mg
  const auto lines = polylines(plot_svg(simulate(c), PlotKind::ForceDeflection, c));
  ASSERT_GE(lines.size(), 4u);
  const auto& reference = lines[0];
  const auto& cap = lines[2];
  ASSERT_EQ(cap.stroke, "#cc3333");
  EXPECT_EQ(reference.points.back().second, cap.points.front().second);
}

TEST(PlotSvg, EnergyRisesWithinSquatsAndDropsAtLossyTransitions) {
  auto c = worked_config();
  c.loss.efficiency = 0.84;
  c.sample_count = 50;
  const auto sim = simulate(c);
  std::vector<Polyline> strokes;
  for (auto& p : polylines(plot_svg(sim, PlotKind::Energy, c)))
    if (p.stroke == "#1f4e9a" && p.dash.empty()) strokes.push_back(p);
  ASSERT_EQ(strokes.size(), sim.trajectories.size());
  for (std::size_t i = 0; i < strokes.size(); ++i) {
    // SVG y grows downwards.
    for (std::size_t j = 1; j < strokes[i].points.size(); ++j)
      EXPECT_LE(strokes[i].points[j].second, strokes[i].points[j - 1].second);
    EXPECT_LT(strokes[i].points.back().second, strokes[i].points.front().second);
    if (i + 1 < strokes.size()) EXPECT_GT(strokes[i + 1].points.front().second, strokes[i].points.back().second);
  }
}
