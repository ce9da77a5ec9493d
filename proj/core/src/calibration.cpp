#include "springleg/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "springleg/cyclic.hpp"
#include "springleg/error.hpp"

namespace springleg {

namespace {

[[noreturn]] void data_error(const std::string& msg) { throw Error(ErrorKind::Data, msg); }

// Relative slack on the stroke ends; covers displacements printed to nine digits.
constexpr double kEndSlack = 1e-8;

// Piecewise-linear interpolation over a non-decreasing abscissa. Outside the
// sampled range the stroke is not engaged and the force is zero.
template <typename Sample, typename X, typename Y>
double interpolate(const std::vector<Sample>& samples, double at, X x_of, Y y_of) {
  const double lo = x_of(samples.front()), hi = x_of(samples.back());
  const double slack = kEndSlack * std::max({hi - lo, std::abs(lo), std::abs(hi)});
  if (at < lo - slack || at > hi + slack) return 0.0;
  if (at <= lo) return y_of(samples.front());
  if (at >= hi) return y_of(samples.back());
  const auto it = std::upper_bound(samples.begin(), samples.end(), at,
                                   [&](double v, const Sample& s) { return v < x_of(s); });
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double span = x_of(b) - x_of(a);
  if (span <= 0.0) return y_of(b);
  const double t = (at - x_of(a)) / span;
  return y_of(a) + (y_of(b) - y_of(a)) * t;
}

double measured_force_at(const MeasuredCycle& c, double d) {
  return interpolate(
      c.samples, d, [](const MeasuredSample& s) { return s.displacement; },
      [](const MeasuredSample& s) { return s.force; });
}

double model_force_at(const Trajectory& t, double d) {
  return interpolate(
      t.samples, d, [](const TrajectorySample& s) { return s.leg_deformation; },
      [](const TrajectorySample& s) { return s.hip_force; });
}

double peak_force(std::span<const MeasuredCycle> cycles) {
  double peak = 0.0;
  for (const auto& c : cycles)
    for (const auto& s : c.samples) peak = std::max(peak, s.force);
  return peak;
}

// Golden-section minimization on [lo, hi]; returns the best evaluated point.
template <typename F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, std::size_t iterations,
                                         double x_best, double f_best) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  auto keep = [&](double x, double fx) {
    if (fx < f_best) {
      f_best = fx;
      x_best = x;
    }
  };
  keep(c, fc);
  keep(d, fd);
  for (std::size_t i = 0; i < iterations && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      keep(d, fd);
    }
  }
  return {x_best, f_best};
}

}  // namespace

void validate(const MeasuredCycle& cycle) {
  std::ostringstream os;
  if (cycle.samples.empty()) {
    os << "cycle " << cycle.iteration << " has no samples";
    data_error(os.str());
  }
  for (std::size_t i = 0; i < cycle.samples.size(); ++i) {
    const auto& s = cycle.samples[i];
    if (!std::isfinite(s.displacement) || !std::isfinite(s.force)) {
      os << "cycle " << cycle.iteration << " sample " << i << " is not finite";
      data_error(os.str());
    }
    if (i > 0 && s.displacement < cycle.samples[i - 1].displacement) {
      os << "cycle " << cycle.iteration << " displacement decreases at sample " << i;
      data_error(os.str());
    }
  }
}

double integrate_work(const MeasuredCycle& cycle) {
  validate(cycle);
  if (cycle.samples.size() < 2) {
    std::ostringstream os;
    os << "cycle " << cycle.iteration << " needs at least two samples to integrate work";
    data_error(os.str());
  }
  double work = 0.0;
  for (std::size_t i = 1; i < cycle.samples.size(); ++i) {
    const auto& a = cycle.samples[i - 1];
    const auto& b = cycle.samples[i];
    work += 0.5 * (a.force + b.force) * (b.displacement - a.displacement);
  }
  return work;
}

EfficiencyEstimate estimate_efficiency(std::span<const MeasuredCycle> cycles,
                                       const SpringParams& spring, double tolerance) {
  if (cycles.size() < 2) data_error("efficiency estimate needs at least two cycles (one transition)");

  auto locked_energy = [&](const MeasuredCycle& c) {
    if (!c.locked_length) {
      std::ostringstream os;
      os << "cycle " << c.iteration << " lacks a locked spring length";
      data_error(os.str());
    }
    try {
      return spring_energy(*c.locked_length, spring);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "cycle " << c.iteration << " locked length: " << e.what();
      data_error(os.str());
    }
  };

  EfficiencyEstimate est;
  double log_sum = 0.0;
  for (std::size_t i = 0; i + 1 < cycles.size(); ++i) {
    const auto& prev = cycles[i];
    const auto& next = cycles[i + 1];
    const double e_locked = locked_energy(prev);
    const double e_next_start = locked_energy(next) - integrate_work(next);
    if (!(e_locked > 0.0) || !(e_next_start > 0.0)) {
      std::ostringstream os;
      os << "transition " << prev.iteration << " -> " << next.iteration
         << " has no stored energy to compare";
      data_error(os.str());
    }
    const double ratio = e_next_start / e_locked;
    if (ratio > 1.0 + tolerance) {
      std::ostringstream os;
      os.precision(9);
      os << "transition " << prev.iteration << " -> " << next.iteration << " retention ratio "
         << ratio << " > 1: energy cannot grow while the spring is locked";
      est.warnings.push_back(os.str());
    }
    est.ratios.push_back(ratio);
    log_sum += std::log(ratio);
  }
  est.efficiency = std::exp(log_sum / static_cast<double>(est.ratios.size()));
  return est;
}

double fit_objective(std::span<const MeasuredCycle> cycles, const Configuration& config,
                     double efficiency, double force_cap, std::size_t* points) {
  Configuration trial = config;
  trial.loss.efficiency = efficiency;
  trial.force_cap = force_cap;
  std::size_t last_iteration = 0;
  for (const auto& c : cycles) last_iteration = std::max(last_iteration, c.iteration);
  trial.max_iterations = std::max<std::size_t>(1, last_iteration);

  SimResult sim;
  try {
    sim = simulate(trial);
  } catch (const Error&) {
    // Unsimulatable candidates are scored as if the model produced no force.
  }

  double sse = 0.0;
  std::size_t n = 0;
  for (const auto& c : cycles) {
    const Trajectory* model = nullptr;
    for (const auto& t : sim.trajectories)
      if (t.iteration == c.iteration) model = &t;

    if (!model || model->samples.empty()) {
      for (const auto& s : c.samples) sse += s.force * s.force;
      n += c.samples.size();
      continue;
    }
    const double lo = std::min(c.samples.front().displacement, model->samples.front().leg_deformation);
    const double hi = std::max(c.samples.back().displacement, model->samples.back().leg_deformation);
    const std::size_t m = std::max<std::size_t>(2, c.samples.size());
    for (std::size_t j = 0; j < m; ++j) {
      const double d = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(m - 1);
      const double r = measured_force_at(c, d) - model_force_at(*model, d);
      sse += r * r;
    }
    n += m;
  }
  if (points) *points = n;
  return sse;
}

FitReport fit_model(std::span<const MeasuredCycle> cycles, const Configuration& config,
                    const FitOptions& options) {
  if (cycles.size() < 2) data_error("fit needs at least two measured cycles");
  for (const auto& c : cycles) validate(c);
  validate(config);

  const double peak = peak_force(cycles);
  const double eta_lo = options.efficiency_min;
  const double eta_hi = options.efficiency_max;
  if (!(eta_lo > 0.0 && eta_lo <= eta_hi && eta_hi <= 1.0))
    throw Error(ErrorKind::Configuration, "efficiency search box must satisfy 0 < min <= max <= 1");

  double cap_lo = config.effective_force_cap();
  double cap_hi = cap_lo;
  if (options.fit_force_cap) {
    cap_lo = options.force_cap_min.value_or(0.5 * peak);
    cap_hi = options.force_cap_max.value_or(1.5 * peak);
    if (!(cap_lo > 0.0 && cap_lo <= cap_hi))
      throw Error(ErrorKind::Configuration, "force cap search box must satisfy 0 < min <= max");
  }

  FitReport report;
  auto objective = [&](double eta, double cap) {
    ++report.evaluations;
    const double v = fit_objective(cycles, config, eta, cap);
    if (!std::isfinite(v)) data_error("non-finite force residual; check the measured traces");
    return v;
  };

  const std::size_t g = std::max<std::size_t>(2, options.grid_points);
  const std::size_t g_cap = options.fit_force_cap ? g : 1;
  auto grid_value = [](double lo, double hi, std::size_t i, std::size_t count) {
    return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  };

  double best_eta = eta_hi, best_cap = cap_lo;
  double best = std::numeric_limits<double>::infinity();
  double worst = -best;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g_cap; ++j) {
      const double eta = grid_value(eta_lo, eta_hi, i, g);
      const double cap = grid_value(cap_lo, cap_hi, j, g_cap);
      const double v = objective(eta, cap);
      worst = std::max(worst, v);
      if (v < best) {
        best = v;
        best_eta = eta;
        best_cap = cap;
      }
    }
  }
  report.flat_objective = (worst - best) <= options.flatness_tolerance * std::max(1.0, std::abs(best));

  if (!report.flat_objective) {
    const double eta_step = (eta_hi - eta_lo) / static_cast<double>(g - 1);
    const double cap_step = g_cap > 1 ? (cap_hi - cap_lo) / static_cast<double>(g_cap - 1) : 0.0;
    auto refine = [&](auto&& f, double lo, double hi, double centre, double half, double x_best,
                      double f_best) {
      return golden_section(f, std::max(lo, centre - half), std::min(hi, centre + half),
                            options.golden_iterations, x_best, f_best);
    };

    // The first squat does not depend on the efficiency, so it pins the cap
    // on its own. Then the efficiency is searched with that cap held.
    if (cap_step > 0.0) {
      const auto first = std::min_element(cycles.begin(), cycles.end(),
                                          [](const auto& a, const auto& b) { return a.iteration < b.iteration; });
      const std::span<const MeasuredCycle> head(&*first, 1);
      auto f_head = [&](double cap) {
        ++report.evaluations;
        return fit_objective(head, config, best_eta, cap);
      };
      double cap = cap_lo, v_cap = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < g_cap; ++j) {
        const double c = grid_value(cap_lo, cap_hi, j, g_cap);
        const double v = f_head(c);
        if (v < v_cap) {
          v_cap = v;
          cap = c;
        }
      }
      cap = refine(f_head, cap_lo, cap_hi, cap, cap_step, cap, v_cap).first;

      double eta = eta_hi, v_eta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < g; ++i) {
        const double e = grid_value(eta_lo, eta_hi, i, g);
        const double v = objective(e, cap);
        if (v < v_eta) {
          v_eta = v;
          eta = e;
        }
      }
      std::tie(eta, v_eta) =
          refine([&](double e) { return objective(e, cap); }, eta_lo, eta_hi, eta, eta_step, eta, v_eta);
      if (v_eta < best) {
        best = v_eta;
        best_eta = eta;
        best_cap = cap;
      }
    }

    double eta_half = eta_step, cap_half = cap_step;
    for (std::size_t round = 0; round < options.refine_rounds; ++round) {
      const double before = best;
      if (eta_step > 0.0)
        std::tie(best_eta, best) = refine([&](double e) { return objective(e, best_cap); }, eta_lo,
                                          eta_hi, best_eta, eta_half, best_eta, best);
      if (cap_step > 0.0)
        std::tie(best_cap, best) = refine([&](double c) { return objective(best_eta, c); }, cap_lo,
                                          cap_hi, best_cap, cap_half, best_cap, best);
      eta_half *= 0.5;
      cap_half *= 0.5;
      if (round > 0 && before - best <= 1e-15 * std::max(1.0, before)) break;
    }
  }

  report.efficiency = best_eta;
  report.force_cap = best_cap;
  report.objective = fit_objective(cycles, config, best_eta, best_cap, &report.residual_points);
  report.rms_residual =
      report.residual_points ? std::sqrt(report.objective / static_cast<double>(report.residual_points)) : 0.0;

  for (const auto& c : cycles)
    report.work_per_iteration.push_back(c.samples.size() >= 2 ? integrate_work(c) : 0.0);

  const bool all_locked = std::all_of(cycles.begin(), cycles.end(),
                                      [](const MeasuredCycle& c) { return c.locked_length.has_value(); });
  if (all_locked) {
    try {
      report.retention_ratios = estimate_efficiency(cycles, config.spring).ratios;
    } catch (const Error&) {
      report.retention_ratios.clear();
    }
  }
  return report;
}

}  // namespace springleg
