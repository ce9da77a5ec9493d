#include <gtest/gtest.h>

#include <random>

#include "springleg/baseline.hpp"
#include "springleg/cyclic.hpp"
#include "springleg/error.hpp"
#include "test_configs.hpp"

using namespace springleg;
using springleg::testing::rel_diff;

namespace {
const BodyParams kBody100{10.0, 10.0};
const LegGeometry kLeg{0.20, 0.30, 0.10};
}  // namespace

TEST(RequiredStiffness, Examples) {
  EXPECT_EQ(required_stiffness(100.0, kBody100, kLeg), 0.0);
  EXPECT_NEAR(required_stiffness(0.0, kBody100, kLeg), 1000.0, 1e-9);
  EXPECT_NEAR(required_stiffness(50.0, kBody100, kLeg), 500.0, 1e-9);
}

TEST(RequiredStiffness, SpringCannotPull) {
  try {
    required_stiffness(100.5, kBody100, kLeg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
  }
  EXPECT_THROW(required_stiffness(-1.0, kBody100, kLeg), Error);
}

TEST(AverageForce, Examples) {
  EXPECT_EQ(average_force(100.0, kBody100), 100.0);
  EXPECT_EQ(average_force(0.0, kBody100), 50.0);
  EXPECT_EQ(average_force(40.0, kBody100), 70.0);
}

TEST(StoredEnergySingle, Examples) {
  EXPECT_EQ(stored_energy_single(100.0, kBody100, kLeg), 0.0);
  EXPECT_NEAR(stored_energy_single(50.0, kBody100, kLeg), 5.0, 1e-12);
  EXPECT_NEAR(stored_energy_single(70.0, kBody100, kLeg), 3.0, 1e-12);
  EXPECT_THROW(stored_energy_single(40.0, kBody100, kLeg), Error);
}

TEST(E1Max, Examples) {
  EXPECT_NEAR(e1_max(kBody100, kLeg), 5.0, 1e-12);
  EXPECT_NEAR(e1_max({70.0, 10.0}, {0.45, 0.9, 0.4}), 140.0, 1e-9);
  EXPECT_NEAR(e1_max(kBody100, {0.2, 0.3, 1e-12}), 0.0, 1e-9);
}

TEST(BaselineProperties, ChainConsistency) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    BodyParams body{1.0 + 120.0 * u(rng), 9.81};
    LegGeometry leg{0.45, 0.9, 0.05 + 0.8 * u(rng)};
    const double f = body.weight() * u(rng);
    const double lhs = stored_energy_single(average_force(f, body), body, leg);
    const double rhs = 0.5 * required_stiffness(f, body, leg) * leg.max_deformation * leg.max_deformation;
    EXPECT_LT(rel_diff(lhs, rhs), 1e-12);
    EXPECT_LE(lhs, e1_max(body, leg) * (1 + 1e-15));
  }
  EXPECT_DOUBLE_EQ(stored_energy_single(average_force(0.0, kBody100), kBody100, kLeg), e1_max(kBody100, kLeg));
}

TEST(BaselineProperties, FloatingSpringAtUnityRatioReducesToBaseline) {
  // s_1 = l_stand = s0 with x = l_t: spring spans hip to ankle.
  Configuration c;
  c.body = kBody100;
  c.leg = {0.20, 0.30, 0.10};
  c.spring = {required_stiffness(0.0, c.body, c.leg), 0.30, 0.0};
  c.initial_spring_position = 0.20;
  c.policy = CompressionPolicy::FullRange;
  c.max_iterations = 1;
  c.sample_count = 101;
  const auto sim = simulate(c);
  ASSERT_EQ(sim.records.size(), 1u);
  for (const auto& s : sim.trajectories[0].samples) {
    const double dl = s.leg_deformation;
    EXPECT_LT(rel_diff(s.hip_force, c.spring.stiffness * dl, 1e-12), 1e-12);
    EXPECT_LT(rel_diff(s.stored_energy, 0.5 * c.spring.stiffness * dl * dl, 1e-12), 1e-12);
  }
  EXPECT_LT(rel_diff(sim.final_energy, e1_max(c.body, c.leg)), 1e-12);
  EXPECT_LT(rel_diff(sim.records[0].end_force, c.body.weight()), 1e-12);
}

TEST(BaselineRamp, FallsLinearlyToBottomForce) {
  const auto ramp = baseline_ramp(40.0, kBody100, kLeg, 11);
  ASSERT_EQ(ramp.size(), 11u);
  EXPECT_EQ(ramp.front().hip_force, 100.0);
  EXPECT_NEAR(ramp.back().hip_force, 40.0, 1e-12);
  EXPECT_NEAR(ramp.back().leg_deformation, 0.1, 1e-15);
}
