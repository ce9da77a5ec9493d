#pragma once

// Single-squat reference with a spring fixed between hip and ankle. Its
// energies normalize every multi-squat result.

#include <vector>

#include "springleg/model.hpp"

namespace springleg {

struct BaselineResult {
  double bottom_force = 0.0;  // leg force at the bottom of the squat
  double average_force = 0.0; // mean leg force over the squat
  double stiffness = 0.0;     // spring rate that balances the bottom posture
  double stored_energy = 0.0;
  double e1_max = 0.0;
};

/// k = (mg - F) / dl_max. Throws Infeasible when F > mg and Domain when F < 0.
double required_stiffness(double bottom_force, const BodyParams& body, const LegGeometry& leg);

/// F_avg = (mg + F) / 2.
double average_force(double bottom_force, const BodyParams& body);

/// (mg - F_avg) dl_max; requires mg/2 <= F_avg <= mg.
double stored_energy_single(double average_force, const BodyParams& body, const LegGeometry& leg);

/// Largest single-squat storage: mg dl_max / 2.
double e1_max(const BodyParams& body, const LegGeometry& leg);

BaselineResult evaluate_baseline(double bottom_force, const BodyParams& body,
                                 const LegGeometry& leg);

/// Linear force ramp from mg at standing to F at the bottom, sampled
/// uniformly over leg deformation. Hip force column holds the leg force.
std::vector<TrajectorySample> baseline_ramp(double bottom_force, const BodyParams& body,
                                            const LegGeometry& leg, std::size_t samples);

}  // namespace springleg
