#include "springleg/baseline.hpp"

#include <sstream>

#include "springleg/error.hpp"

namespace springleg {

namespace {

void check_bottom_force(double bottom_force, double weight) {
  if (!(bottom_force >= 0.0)) {
    std::ostringstream os;
    os << "bottom force must be >= 0 since the leg cannot pull (got " << bottom_force << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  if (bottom_force > weight) {
    std::ostringstream os;
    os << "bottom force " << bottom_force << " N exceeds body weight " << weight
       << " N; the spring would have to pull";
    throw Error(ErrorKind::Infeasible, os.str());
  }
}

}  // namespace

double required_stiffness(double bottom_force, const BodyParams& body, const LegGeometry& leg) {
  const double weight = body.weight();
  check_bottom_force(bottom_force, weight);
  return (weight - bottom_force) / leg.max_deformation;
}

double average_force(double bottom_force, const BodyParams& body) {
  const double weight = body.weight();
  check_bottom_force(bottom_force, weight);
  return 0.5 * (weight + bottom_force);
}

double stored_energy_single(double avg_force, const BodyParams& body, const LegGeometry& leg) {
  const double weight = body.weight();
  if (!(avg_force >= 0.5 * weight && avg_force <= weight)) {
    std::ostringstream os;
    os << "average force must lie in [mg/2, mg] = [" << 0.5 * weight << ", " << weight
       << "] (got " << avg_force << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  return (weight - avg_force) * leg.max_deformation;
}

double e1_max(const BodyParams& body, const LegGeometry& leg) {
  return 0.5 * body.weight() * leg.max_deformation;
}

BaselineResult evaluate_baseline(double bottom_force, const BodyParams& body,
                                 const LegGeometry& leg) {
  BaselineResult r;
  r.bottom_force = bottom_force;
  r.stiffness = required_stiffness(bottom_force, body, leg);
  r.average_force = average_force(bottom_force, body);
  r.stored_energy = stored_energy_single(r.average_force, body, leg);
  r.e1_max = e1_max(body, leg);
  return r;
}

std::vector<TrajectorySample> baseline_ramp(double bottom_force, const BodyParams& body,
                                            const LegGeometry& leg, std::size_t samples) {
  const double k = required_stiffness(bottom_force, body, leg);
  const double weight = body.weight();
  if (samples < 2) samples = 2;
  std::vector<TrajectorySample> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double dl = t * leg.max_deformation;
    TrajectorySample s;
    s.leg_deformation = dl;
    s.spring_length = leg.standing_length - dl;
    s.hip_force = weight - (weight - bottom_force) * t;
    s.stored_energy = 0.5 * k * dl * dl;
    out.push_back(s);
  }
  return out;
}

}  // namespace springleg
