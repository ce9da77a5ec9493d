#pragma once

// Design-space queries on top of simulate().

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "springleg/config.hpp"
#include "springleg/cyclic.hpp"

namespace springleg {

/// Smallest number of squats whose stored energy reaches target_energy, or
/// nullopt when the accumulation stops short of it within max_iterations.
/// Throws Infeasible when the target exceeds the spring's capacity.
std::optional<std::size_t> min_squats(const Configuration& config, double target_energy);

/// Supremum of the stored energy: full-compression energy when the
/// recurrence reaches solid length, otherwise the energy at its fixed point.
/// max_iterations is raised to at least `iteration_budget` for the search.
double max_energy(const Configuration& config, std::size_t iteration_budget = 1'000'000);

struct SweepRow {
  std::size_t index = 0;
  std::vector<std::pair<std::string, double>> point;
  bool feasible = false;
  std::string reason;  // set when infeasible
  double final_energy = 0.0;
  std::size_t iterations = 0;
  std::optional<std::size_t> iterations_to_full;
  std::string termination;
  double peak_force = 0.0;
  double energy_over_e1max = 0.0;
  double energy_over_capped_squat = 0.0;
  double peak_over_cap = 0.0;
};

/// Evaluates every grid point on `threads` workers (0: hardware concurrency).
/// Rows come back in grid order whatever the execution order.
std::vector<SweepRow> sweep(const Configuration& base, const ParameterGrid& grid,
                            unsigned threads = 0);

}  // namespace springleg
