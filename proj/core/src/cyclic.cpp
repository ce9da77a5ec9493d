#include "springleg/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "springleg/baseline.hpp"
#include "springleg/error.hpp"

namespace springleg {

const char* to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::ForceCap: return "force_cap";
    case StopReason::LegRange: return "leg_range";
    case StopReason::SpringSolid: return "spring_solid";
    case StopReason::EngagedOnly: return "engaged_only";
  }
  return "unknown";
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::FullCompression: return "full_compression";
    case Termination::Converged: return "converged";
    case Termination::Stalled: return "stalled";
    case Termination::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Stop candidates closer than this (relative to s0) count as a tie for labeling.
constexpr double kTieSlack = 1e-12;
constexpr double kGeometrySlack = 1e-12;

std::vector<TrajectorySample> sample_stroke(double x, double s_from, double s_to, double dl_from,
                                            double dl_to, std::size_t count,
                                            const Configuration& config) {
  std::vector<TrajectorySample> out;
  out.reserve(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    TrajectorySample smp;
    if (i + 1 == count) {
      smp.leg_deformation = dl_to;
      smp.spring_length = s_to;
    } else {
      const double t = static_cast<double>(i) / last;
      smp.leg_deformation = dl_from + (dl_to - dl_from) * t;
      smp.spring_length = s_from + (s_to - s_from) * t;
    }
    smp.hip_force = hip_force(x, smp.spring_length, config.leg, config.spring);
    smp.stored_energy = spring_energy(smp.spring_length, config.spring);
    out.push_back(smp);
  }
  return out;
}

}  // namespace

CycleState initial_state(const Configuration& config) {
  validate(config);
  CycleState st;
  st.iteration = 1;
  st.spring_position = config.initial_spring_position;
  st.spring_length_start = config.initial_spring_length();
  st.dead_band = 0.0;
  return st;
}

double preload_force(const Configuration& config) {
  const auto st = initial_state(config);
  return hip_force(st.spring_position, st.spring_length_start, config.leg, config.spring);
}

double start_force(const CycleState& state, const Configuration& config) {
  return hip_force(state.spring_position, state.spring_length_start, config.leg, config.spring);
}

SquatOutcome squat_step(const CycleState& state, const Configuration& config) {
  if (state.spring_length_end)
    throw Error(ErrorKind::Domain, "squat_step: state already holds a completed squat");

  const auto& leg = config.leg;
  const auto& spring = config.spring;
  const double x = state.spring_position;
  const double s_start = state.spring_length_start;

  if (s_start <= spring.solid_length) {
    std::ostringstream os;
    os << "squat " << state.iteration << ": spring already at solid length ("
       << s_start << " m), no compression possible";
    throw Error(ErrorKind::Stall, os.str());
  }

  const double cap = config.effective_force_cap();
  const bool force_limited = config.policy == CompressionPolicy::ForceLimited;
  const double s_cap = spring.free_length - cap * leg.segment_length / (spring.stiffness * x);
  const double s_range = x * (leg.standing_length - leg.max_deformation) / leg.segment_length;
  const double s_solid = spring.solid_length;

  double s_end = std::max(s_range, s_solid);
  if (force_limited) s_end = std::max(s_end, s_cap);

  if (s_end > s_start) {
    std::ostringstream os;
    os.precision(10);
    os << "squat " << state.iteration << ": no compression possible; ";
    if (force_limited && s_cap > s_start)
      os << "start force " << start_force(state, config) << " N exceeds force cap " << cap
         << " N";
    else
      os << "dead band " << state.dead_band << " m leaves no leg range (max_deformation "
         << leg.max_deformation << " m)";
    throw Error(ErrorKind::Stall, os.str());
  }

  SquatOutcome out;
  out.state = state;
  out.state.spring_length_end = s_end;

  auto& rec = out.record;
  const double tie = kTieSlack * spring.free_length;
  if (s_end == s_start)
    rec.stop_reason = StopReason::EngagedOnly;
  else if (force_limited && s_cap >= s_end - tie)
    rec.stop_reason = StopReason::ForceCap;
  else if (s_range >= s_end - tie)
    rec.stop_reason = StopReason::LegRange;
  else
    rec.stop_reason = StopReason::SpringSolid;

  const double dl_start = state.dead_band;
  const double dl_end = dl_start + (s_start - s_end) * leg.segment_length / x;

  rec.state = out.state;
  rec.start_force = hip_force(x, s_start, leg, spring);
  rec.end_force = hip_force(x, s_end, leg, spring);
  rec.energy_before = spring_energy(s_start, spring);
  rec.energy_after = spring_energy(s_end, spring);
  rec.leg_travel_used = dl_end;

  out.trajectory.iteration = state.iteration;
  out.trajectory.spring_position = x;
  out.trajectory.samples =
      sample_stroke(x, s_start, s_end, dl_start, dl_end, config.sample_count, config);
  return out;
}

CycleState lock_and_retract(const CycleState& state, const Configuration& config) {
  if (!state.spring_length_end)
    throw Error(ErrorKind::Domain, "lock_and_retract: squat has not completed");

  const auto& leg = config.leg;
  const double s0 = config.spring.free_length;
  const double s_end = *state.spring_length_end;
  const double eta = config.loss.efficiency;

  // Energy scales with deflection squared, so sqrt(eta) on deflection.
  const double s_next = eta == 1.0 ? s_end : s0 - std::sqrt(eta) * (s0 - s_end);
  const double x_target = s_next * leg.segment_length / leg.standing_length;

  CycleState next;
  next.iteration = state.iteration + 1;
  next.spring_length_start = s_next;

  const double pitch = config.loss.ratchet_pitch;
  if (pitch > 0.0) {
    // The pawl holds at the last tooth passed, away from the knee.
    const double x = std::min(leg.segment_length, pitch * std::ceil(x_target / pitch));
    next.spring_position = x;
    next.dead_band = std::max(0.0, leg.standing_length - s_next * leg.segment_length / x);
  } else {
    next.spring_position = x_target;
    next.dead_band = 0.0;
  }
  return next;
}

SimResult simulate(const Configuration& config) {
  SimResult result;
  CycleState state = initial_state(config);
  result.preload_force = start_force(state, config);
  result.e1_max = e1_max(config.body, config.leg);
  result.force_cap = config.effective_force_cap();
  result.records.reserve(std::min<std::size_t>(config.max_iterations, 1024));
  result.trajectories.reserve(std::min<std::size_t>(config.max_iterations, 1024));

  const double full_at = config.spring.solid_length + config.tolerances.spring_length;
  double previous_energy = spring_energy(state.spring_length_start, config.spring);
  result.final_energy = previous_energy;

  for (std::size_t n = 1;; ++n) {
    SquatOutcome outcome;
    try {
      outcome = squat_step(state, config);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Stall) throw;
      if (n == 1)
        throw Error(ErrorKind::Stall, std::string("infeasible configuration: ") + e.what());
      result.termination = Termination::Stalled;
      break;
    }

    const double energy = outcome.record.energy_after;
    const double s_end = *outcome.state.spring_length_end;
    result.records.push_back(outcome.record);
    result.trajectories.push_back(std::move(outcome.trajectory));
    result.final_energy = energy;

    if (s_end <= full_at) {
      result.termination = Termination::FullCompression;
      result.iterations_to_full_compression = n;
      break;
    }
    if (energy - previous_energy < config.tolerances.energy_gain) {
      result.termination = Termination::Converged;
      break;
    }
    if (n >= config.max_iterations) {
      result.termination = Termination::IterationLimit;
      break;
    }
    previous_energy = energy;
    state = lock_and_retract(outcome.state, config);
  }
  return result;
}

ReleaseResult release_profile(const CycleState& final_state, const Configuration& config,
                              std::optional<double> x_release) {
  if (!final_state.spring_length_end)
    throw Error(ErrorKind::Domain, "release_profile: spring is not locked after a squat");

  const auto& leg = config.leg;
  const auto& spring = config.spring;
  const double xr = x_release.value_or(leg.segment_length);
  if (!(xr > 0.0 && xr <= leg.segment_length)) {
    std::ostringstream os;
    os << "release position must lie in (0, segment_length] (got " << xr << ")";
    throw Error(ErrorKind::Domain, os.str());
  }

  const double s_locked = *final_state.spring_length_end;
  const double l_start = s_locked * leg.segment_length / xr;
  const double l_min = leg.standing_length - leg.max_deformation;
  if (l_start < l_min * (1.0 - kGeometrySlack) || l_start > leg.standing_length * (1.0 + kGeometrySlack)) {
    std::ostringstream os;
    os.precision(10);
    os << "release posture needs leg length " << l_start << " m, outside the range ["
       << l_min << ", " << leg.standing_length << "] m";
    throw Error(ErrorKind::Geometry, os.str());
  }

  double l_end = spring.free_length * leg.segment_length / xr;
  double s_final = spring.free_length;
  if (l_end > leg.standing_length) {
    l_end = leg.standing_length;
    s_final = std::min(spring.free_length, xr * l_end / leg.segment_length);
  }
  s_final = std::max(s_final, s_locked);

  ReleaseResult r;
  r.start_leg_length = l_start;
  r.peak_force = hip_force(xr, s_locked, leg, spring);
  r.released_energy = spring_energy(s_locked, spring) - spring_energy(s_final, spring);
  r.trajectory.iteration = 0;
  r.trajectory.spring_position = xr;
  r.trajectory.samples =
      sample_stroke(xr, s_locked, s_final, std::max(0.0, leg.standing_length - l_start),
                    std::max(0.0, leg.standing_length - l_end), config.sample_count, config);
  return r;
}

double capped_single_squat_energy(const Configuration& config) {
  const auto& sp = config.spring;
  const double cap = config.effective_force_cap();
  const double full = spring_energy(sp.solid_length, sp);
  return std::min(full, cap * cap / (2.0 * sp.stiffness));
}

}  // namespace springleg
