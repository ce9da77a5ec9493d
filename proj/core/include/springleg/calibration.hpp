#pragma once

// Recovery of loss-model parameters from per-iteration force-deflection
// traces, as recorded by a load cell on the hip carriage.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "springleg/model.hpp"

namespace springleg {

struct MeasuredSample {
  double displacement = 0.0;  // hip displacement from standing, m
  double force = 0.0;         // N
};

struct MeasuredCycle {
  std::size_t iteration = 0;
  std::vector<MeasuredSample> samples;
  std::optional<double> locked_length;  // spring length measured after locking
};

/// Throws Data unless samples are non-empty, finite, and non-decreasing in displacement.
void validate(const MeasuredCycle& cycle);

/// Trapezoidal work over the trace; needs at least two samples.
double integrate_work(const MeasuredCycle& cycle);

struct EfficiencyEstimate {
  double efficiency = 1.0;           // geometric mean of the ratios
  std::vector<double> ratios;        // one per consecutive transition
  std::vector<std::string> warnings; // e.g. energy grew while the spring was locked
};

/// Retention ratio of transition n -> n+1 is E(s_{n+1}^-) / E(s_n^+), where
/// E(s_{n+1}^-) = E(locked_{n+1}) - work_{n+1}.
EfficiencyEstimate estimate_efficiency(std::span<const MeasuredCycle> cycles,
                                       const SpringParams& spring, double tolerance = 1e-9);

struct FitOptions {
  bool fit_force_cap = true;   // otherwise the config's cap is held fixed
  double efficiency_min = 0.01;
  double efficiency_max = 1.0;
  // Cap search box; unset bounds default to 0.5x / 1.5x the peak measured force.
  std::optional<double> force_cap_min;
  std::optional<double> force_cap_max;
  std::size_t grid_points = 21;      // per searched axis
  std::size_t refine_rounds = 8;     // alternating golden-section sweeps
  std::size_t golden_iterations = 60;
  double flatness_tolerance = 1e-12; // relative objective spread counted as flat
};

struct FitReport {
  double efficiency = 1.0;
  double force_cap = 0.0;
  double objective = 0.0;        // sum of squared force residuals, N^2
  double rms_residual = 0.0;     // N
  std::size_t residual_points = 0;
  std::size_t evaluations = 0;
  bool flat_objective = false;
  std::vector<double> work_per_iteration;  // trapezoidal, from the measured traces
  std::vector<double> retention_ratios;    // empty without locked lengths
};

/// Sum of squared force residuals between simulated and measured cycles for
/// one (efficiency, force_cap) candidate.
double fit_objective(std::span<const MeasuredCycle> cycles, const Configuration& config,
                     double efficiency, double force_cap, std::size_t* points = nullptr);

/// Grid search followed by alternating golden-section refinement.
FitReport fit_model(std::span<const MeasuredCycle> cycles, const Configuration& config,
                    const FitOptions& options = {});

}  // namespace springleg
