#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "springleg/calibration.hpp"
#include "springleg/config.hpp"
#include "springleg/cyclic.hpp"
#include "springleg/error.hpp"
#include "springleg/io.hpp"
#include "synthetic.hpp"
#include "test_configs.hpp"

using namespace springleg;
using springleg::testing::cycles_from;
using springleg::testing::with_force_noise;
using springleg::testing::worked_config;

namespace {

Configuration prototype() {
  return parse_config(std::string(SPRINGLEG_CONFIG_DIR) + "/prototype_experiment.cfg");
}

MeasuredCycle trace(std::vector<MeasuredSample> s) {
  MeasuredCycle c;
  c.iteration = 1;
  c.samples = std::move(s);
  return c;
}

}  // namespace

TEST(IntegrateWork, Rectangle) {
  EXPECT_NEAR(integrate_work(trace({{0.0, 10.0}, {0.05, 10.0}, {0.1, 10.0}})), 1.0, 1e-15);
}

TEST(IntegrateWork, Triangle) {
  EXPECT_NEAR(integrate_work(trace({{0.0, 0.0}, {0.1, 20.0}})), 1.0, 1e-15);
}

TEST(IntegrateWork, ModelTraceMatchesEnergyGain) {
  auto c = worked_config();
  c.max_iterations = 1;
  const auto cycles = cycles_from(simulate(c));
  EXPECT_NEAR(integrate_work(cycles[0]), 0.8, 1e-4);
}

TEST(IntegrateWork, RejectsShortOrUnorderedTraces) {
  EXPECT_THROW(integrate_work(trace({{0.0, 1.0}})), Error);
  try {
    integrate_work(trace({{0.1, 1.0}, {0.0, 1.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
}

TEST(EstimateEfficiency, LosslessIsUnity) {
  const auto c = worked_config();
  const auto est = estimate_efficiency(cycles_from(simulate(c)), c.spring);
  EXPECT_NEAR(est.efficiency, 1.0, 1e-9);
  EXPECT_EQ(est.ratios.size(), 2u);
  EXPECT_TRUE(est.warnings.empty());
}

TEST(EstimateEfficiency, RecoversLossFactor) {
  auto c = worked_config();
  c.loss.efficiency = 0.84;
  c.max_iterations = 5;
  const auto est = estimate_efficiency(cycles_from(simulate(c)), c.spring);
  EXPECT_NEAR(est.efficiency, 0.84, 1e-3);
}

TEST(EstimateEfficiency, SingleCycleIsAnError) {
  auto c = worked_config();
  c.max_iterations = 1;
  try {
    estimate_efficiency(cycles_from(simulate(c)), c.spring);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
}

TEST(EstimateEfficiency, WarnsWhenEnergyGrowsWhileLocked) {
  const auto c = worked_config();
  auto cycles = cycles_from(simulate(c));
  for (auto& s : cycles[1].samples) s.force *= 0.5;  // less work than the lock implies
  const auto est = estimate_efficiency(cycles, c.spring);
  EXPECT_FALSE(est.warnings.empty());
}

TEST(FitModel, NoiselessRoundTrip) {
  const auto truth = prototype();
  const auto cycles = cycles_from(simulate(truth));
  auto guess = truth;
  guess.loss.efficiency = 1.0;
  guess.force_cap.reset();
  const auto fit = fit_model(cycles, guess);
  EXPECT_NEAR(fit.efficiency, 0.84, 0.01 * 0.84);
  EXPECT_NEAR(fit.force_cap, *truth.force_cap, 0.01 * *truth.force_cap);
  EXPECT_GE(fit.rms_residual, 0.0);
  EXPECT_EQ(fit.work_per_iteration.size(), cycles.size());
  EXPECT_EQ(fit.retention_ratios.size(), cycles.size() - 1);
}

TEST(FitModel, LosslessDataFitsUnity) {
  auto truth = prototype();
  truth.loss.efficiency = 1.0;
  const auto cycles = cycles_from(simulate(truth));
  auto guess = truth;
  guess.loss.efficiency = 0.5;
  FitOptions opt;
  opt.fit_force_cap = false;
  EXPECT_GE(fit_model(cycles, guess, opt).efficiency, 0.999);
}

TEST(FitModel, NoisyDataStillNearTruth) {
  const auto truth = prototype();
  const auto clean = cycles_from(simulate(truth));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto fit = fit_model(with_force_noise(clean, 0.01, seed), truth);
    EXPECT_NEAR(fit.efficiency, 0.84, 0.05 * 0.84) << "seed " << seed;
  }
}

TEST(FitModel, Deterministic) {
  const auto truth = prototype();
  const auto cycles = with_force_noise(cycles_from(simulate(truth)), 0.01, 9);
  const auto a = fit_model(cycles, truth);
  const auto b = fit_model(cycles, truth);
  EXPECT_EQ(a.efficiency, b.efficiency);
  EXPECT_EQ(a.force_cap, b.force_cap);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(FitModel, NeedsTwoCycles) {
  auto c = prototype();
  c.max_iterations = 1;
  EXPECT_THROW(fit_model(cycles_from(simulate(c)), c), Error);
}

TEST(FitObjective, ZeroAtTruth) {
  const auto truth = prototype();
  const auto cycles = cycles_from(simulate(truth));
  std::size_t points = 0;
  const double at_truth = fit_objective(cycles, truth, 0.84, *truth.force_cap, &points);
  EXPECT_LT(at_truth, 1e-18);
  EXPECT_GT(points, 0u);
  EXPECT_GT(fit_objective(cycles, truth, 0.7, *truth.force_cap), 1e-6);
}

TEST(FitModel, PrintedTracesFitWithoutEndArtifacts) {
  const auto truth = prototype();
  const auto sim = simulate(truth);
  const auto cycles = read_measured_cycles_text(trajectory_csv(sim), summary_csv(sim));
  const auto fit = fit_model(cycles, truth);
  EXPECT_NEAR(fit.efficiency, 0.84, 1e-6);
  EXPECT_LT(fit.rms_residual, 1e-6);
}
