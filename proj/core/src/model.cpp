#include "springleg/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "springleg/error.hpp"

namespace springleg {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::Data: return "data error";
    case ErrorKind::Stall: return "stall";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Geometry: return "geometry error";
  }
  return "error";
}

namespace {

// Relative slack used when a derived length should equal a configured one.
constexpr double kRoundingSlack = 1e-12;

[[noreturn]] void config_error(const std::string& key, const std::string& bound, double value) {
  std::ostringstream os;
  os.precision(12);
  os << key << " = " << value << " violates " << bound;
  throw Error(ErrorKind::Configuration, os.str());
}

[[noreturn]] void domain_error(const std::string& what, double value) {
  std::ostringstream os;
  os.precision(12);
  os << what << " (got " << value << ")";
  throw Error(ErrorKind::Domain, os.str());
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const BodyParams& body) {
  if (!finite(body.mass) || body.mass <= 0.0) config_error("mass_kg", "mass_kg > 0", body.mass);
  if (!finite(body.gravity) || body.gravity <= 0.0)
    config_error("gravity_mps2", "gravity_mps2 > 0", body.gravity);
  if (!finite(body.weight())) config_error("mass_kg", "finite weight", body.weight());
}

void validate(const LegGeometry& leg) {
  if (!finite(leg.segment_length) || leg.segment_length <= 0.0)
    config_error("segment_length_m", "segment_length_m > 0", leg.segment_length);
  if (!finite(leg.standing_length) || leg.standing_length <= 0.0 ||
      leg.standing_length > 2.0 * leg.segment_length)
    config_error("standing_length_m", "0 < standing_length_m <= 2 * segment_length_m",
                 leg.standing_length);
  if (!finite(leg.max_deformation) || leg.max_deformation <= 0.0 ||
      leg.max_deformation >= leg.standing_length)
    config_error("max_deformation_m", "0 < max_deformation_m < standing_length_m",
                 leg.max_deformation);
}

void validate(const SpringParams& spring) {
  if (!finite(spring.stiffness) || spring.stiffness <= 0.0)
    config_error("spring_stiffness_n_per_m", "spring_stiffness_n_per_m > 0", spring.stiffness);
  if (!finite(spring.free_length) || spring.free_length <= 0.0)
    config_error("spring_free_length_m", "spring_free_length_m > 0", spring.free_length);
  if (!finite(spring.solid_length) || spring.solid_length < 0.0 ||
      spring.solid_length >= spring.free_length)
    config_error("spring_solid_length_m", "0 <= spring_solid_length_m < spring_free_length_m",
                 spring.solid_length);
}

void validate(const LossModel& loss) {
  if (!finite(loss.efficiency) || loss.efficiency <= 0.0 || loss.efficiency > 1.0)
    config_error("efficiency", "efficiency in (0, 1]", loss.efficiency);
  if (!finite(loss.ratchet_pitch) || loss.ratchet_pitch < 0.0)
    config_error("ratchet_pitch_m", "ratchet_pitch_m >= 0", loss.ratchet_pitch);
}

void validate(const Configuration& config) {
  validate(config.body);
  validate(config.leg);
  validate(config.spring);
  validate(config.loss);

  // A locked spring longer than the standing leg could not fit between the
  // endpoints once they retract, so the free length is bounded by it.
  if (config.spring.free_length > config.leg.standing_length)
    config_error("spring_free_length_m", "spring_free_length_m <= standing_length_m",
                 config.spring.free_length);

  const double x1 = config.initial_spring_position;
  if (!finite(x1) || x1 <= 0.0 || x1 > config.leg.segment_length)
    config_error("initial_spring_position_m", "0 < initial_spring_position_m <= segment_length_m",
                 x1);

  if (config.force_cap && (!finite(*config.force_cap) || *config.force_cap <= 0.0))
    config_error("force_cap_n", "force_cap_n > 0", *config.force_cap);

  if (config.max_iterations < 1)
    config_error("max_iterations", "max_iterations >= 1", static_cast<double>(config.max_iterations));
  if (config.sample_count < 2)
    config_error("sample_count", "sample_count >= 2", static_cast<double>(config.sample_count));
  if (!finite(config.tolerances.spring_length) || config.tolerances.spring_length < 0.0)
    config_error("tol_abs_m", "tol_abs_m >= 0", config.tolerances.spring_length);
  if (!finite(config.tolerances.energy_gain) || config.tolerances.energy_gain < 0.0)
    config_error("tol_gain_j", "tol_gain_j >= 0", config.tolerances.energy_gain);

  const double s1 = x1 * config.leg.standing_length / config.leg.segment_length;
  const double s0 = config.spring.free_length;
  if (s1 > s0 * (1.0 + kRoundingSlack))
    config_error("initial_spring_position_m",
                 "initial spring length (x_1 / l_t) * l_stand <= spring_free_length_m (cable slack)",
                 x1);
  if (s1 <= config.spring.solid_length)
    config_error("initial_spring_position_m",
                 "initial spring length (x_1 / l_t) * l_stand > spring_solid_length_m", x1);
}

double Configuration::initial_spring_length() const {
  const double s1 = initial_spring_position * leg.standing_length / leg.segment_length;
  // Within rounding of s0 means "no preload"; snap so the spring is exactly free.
  if (s1 > spring.free_length && s1 <= spring.free_length * (1.0 + kRoundingSlack))
    return spring.free_length;
  return s1;
}

double spring_length_from_leg(double x, double leg_length, const LegGeometry& leg) {
  if (!(x >= 0.0)) domain_error("spring position x must be >= 0", x);
  if (!(x <= leg.segment_length)) domain_error("spring position x must be <= segment_length", x);
  if (!(leg_length > 0.0)) domain_error("leg length must be > 0", leg_length);
  if (!(leg_length <= leg.standing_length))
    domain_error("leg length must be <= standing_length", leg_length);
  return x * leg_length / leg.segment_length;
}

double spring_force(double s, const SpringParams& spring) {
  if (!(s <= spring.free_length)) domain_error("spring length exceeds free length (slack)", s);
  if (!(s >= spring.solid_length)) domain_error("spring length below solid length", s);
  return spring.stiffness * (spring.free_length - s);
}

double hip_force(double x, double s, const LegGeometry& leg, const SpringParams& spring) {
  if (!(x >= 0.0)) domain_error("spring position x must be >= 0", x);
  if (!(x <= leg.segment_length)) domain_error("spring position x must be <= segment_length", x);
  return x / leg.segment_length * spring_force(s, spring);
}

double spring_energy(double s, const SpringParams& spring) {
  if (!(s <= spring.free_length)) domain_error("spring length exceeds free length (slack)", s);
  if (!(s >= spring.solid_length)) domain_error("spring length below solid length", s);
  const double d = spring.free_length - s;
  return 0.5 * spring.stiffness * d * d;
}

double trapezoid_work(const std::vector<TrajectorySample>& samples) {
  double work = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& b = samples[i];
    work += 0.5 * (a.hip_force + b.hip_force) * (b.leg_deformation - a.leg_deformation);
  }
  return work;
}

}  // namespace springleg
