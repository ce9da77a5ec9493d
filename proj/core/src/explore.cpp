#include "springleg/explore.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "springleg/error.hpp"

namespace springleg {

std::optional<std::size_t> min_squats(const Configuration& config, double target_energy) {
  validate(config);
  const double capacity = spring_energy(config.spring.solid_length, config.spring);
  if (!(target_energy <= capacity)) {
    std::ostringstream os;
    os.precision(10);
    os << "target energy " << target_energy << " J exceeds spring capacity " << capacity << " J";
    throw Error(ErrorKind::Infeasible, os.str());
  }
  if (target_energy <= spring_energy(config.initial_spring_length(), config.spring)) return 0;

  const auto result = simulate(config);
  for (const auto& r : result.records)
    if (r.energy_after >= target_energy) return r.state.iteration;
  return std::nullopt;
}

double max_energy(const Configuration& config, std::size_t iteration_budget) {
  validate(config);
  Configuration c = config;
  c.max_iterations = std::max(c.max_iterations, iteration_budget);
  const auto result = simulate(c);
  if (result.termination == Termination::FullCompression)
    return spring_energy(c.spring.solid_length, c.spring);
  return result.final_energy;
}

namespace {

SweepRow evaluate_point(const Configuration& base, const ParameterGrid& grid, std::size_t index) {
  SweepRow row;
  row.index = index;
  row.point = grid.point(index);
  try {
    Configuration c = base;
    for (const auto& [key, value] : row.point) apply_parameter(c, key, value);
    validate(c);
    const auto sim = simulate(c);
    row.feasible = true;
    row.final_energy = sim.final_energy;
    row.iterations = sim.records.size();
    row.iterations_to_full = sim.iterations_to_full_compression;
    row.termination = to_string(sim.termination);
    for (const auto& r : sim.records) row.peak_force = std::max({row.peak_force, r.start_force, r.end_force});
    row.energy_over_e1max = sim.e1_max > 0.0 ? sim.final_energy / sim.e1_max : 0.0;
    const double capped = capped_single_squat_energy(c);
    row.energy_over_capped_squat = capped > 0.0 ? sim.final_energy / capped : 0.0;
    row.peak_over_cap = row.peak_force / sim.force_cap;
  } catch (const Error& e) {
    row.feasible = false;
    row.reason = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const Configuration& base, const ParameterGrid& grid, unsigned threads) {
  const std::size_t n = grid.size();
  std::vector<SweepRow> rows(n);
  if (n == 0) return rows;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      rows[i] = evaluate_point(base, grid, i);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

}  // namespace springleg
