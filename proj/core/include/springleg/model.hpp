#pragma once

// Domain types and the floating-spring kinematic and force relations.
//
// All quantities are SI (m, N, N/m, J, kg, m/s^2). The spring stays
// vertical, so geometry enters only through the ratio x / segment_length
// where x is the distance of the spring endpoints from the knee.

#include <cstddef>
#include <optional>
#include <vector>

namespace springleg {

struct BodyParams {
  double mass = 0.0;     // kg
  double gravity = 9.81; // m/s^2

  double weight() const noexcept { return mass * gravity; }
};

struct LegGeometry {
  double segment_length = 0.0;   // thigh = shank length
  double standing_length = 0.0;  // hip-ankle distance when standing
  double max_deformation = 0.0;  // deepest squat, measured from standing
};

struct SpringParams {
  double stiffness = 0.0;
  double free_length = 0.0;
  double solid_length = 0.0;
};

/// Abstract losses of the lock/retract transition.
struct LossModel {
  double efficiency = 1.0;    // fraction of stored energy kept per transition
  double ratchet_pitch = 0.0; // 0 = continuous locking
};

enum class CompressionPolicy { ForceLimited, FullRange };

struct Tolerances {
  double spring_length = 1e-9; // m, full-compression detection
  double energy_gain = 1e-12;  // J, convergence short of full compression
};

struct Configuration {
  BodyParams body;
  LegGeometry leg;
  SpringParams spring;
  double initial_spring_position = 0.0;
  std::optional<double> force_cap;  // unset: body weight
  LossModel loss;
  CompressionPolicy policy = CompressionPolicy::ForceLimited;
  std::size_t max_iterations = 100;
  std::size_t sample_count = 1000;
  Tolerances tolerances;

  double effective_force_cap() const noexcept {
    return force_cap ? *force_cap : body.weight();
  }
  /// Spring length at standing for the first squat.
  double initial_spring_length() const;
};

// Each validate() throws Error{Configuration} naming the offending config
// key and the violated bound.
void validate(const BodyParams& body);
void validate(const LegGeometry& leg);
void validate(const SpringParams& spring);
void validate(const LossModel& loss);
void validate(const Configuration& config);

struct TrajectorySample {
  double leg_deformation = 0.0; // m, from standing
  double spring_length = 0.0;   // m
  double hip_force = 0.0;       // N
  double stored_energy = 0.0;   // J
};

struct Trajectory {
  std::size_t iteration = 0;
  double spring_position = 0.0;
  std::vector<TrajectorySample> samples;
};

/// s = (x / l_t) * l.
double spring_length_from_leg(double x, double leg_length, const LegGeometry& leg);

/// k_s (s0 - s); rejects slack (s > s0) and solid (s < s_min) lengths.
double spring_force(double s, const SpringParams& spring);

/// Force needed at the hip to hold the spring at length s with endpoints at x.
double hip_force(double x, double s, const LegGeometry& leg, const SpringParams& spring);

/// 1/2 k_s (s0 - s)^2.
double spring_energy(double s, const SpringParams& spring);

/// Trapezoidal work of hip force over leg deformation.
double trapezoid_work(const std::vector<TrajectorySample>& samples);

}  // namespace springleg
