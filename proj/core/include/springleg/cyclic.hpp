#pragma once

// Multi-squat energy accumulation: compress with fixed endpoints, lock the
// spring, retract the endpoints toward the knee while standing, repeat.

#include <cstddef>
#include <optional>
#include <vector>

#include "springleg/model.hpp"

namespace springleg {

struct CycleState {
  std::size_t iteration = 1;
  double spring_position = 0.0;      // x_n, distance of the endpoints from the knee
  double spring_length_start = 0.0;  // s_n^- (locked length at standing)
  std::optional<double> spring_length_end;  // s_n^+, set once the squat completes
  double dead_band = 0.0;  // leg travel before the cable re-tensions
};

enum class StopReason { ForceCap, LegRange, SpringSolid, EngagedOnly };

const char* to_string(StopReason reason) noexcept;

struct SquatRecord {
  CycleState state;
  double start_force = 0.0;
  double end_force = 0.0;
  double energy_before = 0.0;
  double energy_after = 0.0;
  double leg_travel_used = 0.0;  // leg deformation at the bottom, dead band included
  StopReason stop_reason = StopReason::LegRange;
};

struct SquatOutcome {
  CycleState state;
  SquatRecord record;
  Trajectory trajectory;
};

enum class Termination { FullCompression, Converged, Stalled, IterationLimit };

const char* to_string(Termination t) noexcept;

struct SimResult {
  std::vector<SquatRecord> records;
  std::vector<Trajectory> trajectories;
  double final_energy = 0.0;
  std::optional<std::size_t> iterations_to_full_compression;
  Termination termination = Termination::IterationLimit;
  double preload_force = 0.0;
  // Normalization constants for plots and ratios.
  double e1_max = 0.0;
  double force_cap = 0.0;
};

CycleState initial_state(const Configuration& config);

/// Hip force at standing before the first squat; nonzero iff the spring is preloaded.
double preload_force(const Configuration& config);

/// One compression stroke with x_n fixed. The stroke ends at the largest of
/// the force-cap, leg-range and solid-length spring lengths. Throws Stall
/// when the spring cannot be compressed at all.
SquatOutcome squat_step(const CycleState& state, const Configuration& config);

/// Lock the spring, apply the transition loss, and shift the endpoints so
/// the locked spring spans the standing leg.
CycleState lock_and_retract(const CycleState& state, const Configuration& config);

/// Hip force needed to begin compressing from s_n^-.
double start_force(const CycleState& state, const Configuration& config);

/// Alternates squat_step and lock_and_retract until full compression,
/// convergence, a stall after the first squat, or max_iterations.
SimResult simulate(const Configuration& config);

struct ReleaseResult {
  Trajectory trajectory;
  double start_leg_length = 0.0;
  double peak_force = 0.0;
  double released_energy = 0.0;
};

/// Quasi-static extension with the locked spring re-attached at x_release
/// (default: segment_length). Throws Geometry when the starting posture lies
/// outside the leg's range.
ReleaseResult release_profile(const CycleState& final_state, const Configuration& config,
                              std::optional<double> x_release = std::nullopt);

/// Energy the same spring holds when compressed once by the force cap at
/// unity mechanical advantage: cap^2 / (2 k_s), or full compression if less.
double capped_single_squat_energy(const Configuration& config);

}  // namespace springleg
