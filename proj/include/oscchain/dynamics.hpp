#pragma once

// Time evolution of x'' = omega0^2 H x.
//
// Two independent routes: modal superposition (exact up to rounding) and
// velocity Verlet. Energy is E = m/2 |v|^2 - k/2 x^T H x, which is
// nonnegative because H is negative semidefinite.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscchain/chain.hpp"
#include "oscchain/spectra.hpp"

namespace oscchain {

struct TrajectoryState {
  double time = 0.0;
  std::vector<double> positions;
  std::vector<double> velocities;
  double energy = 0.0;
};

struct InitialCondition {
  std::vector<double> positions;
  std::vector<double> velocities;
};

struct SimulationConfig {
  ChainConfig chain;
  double dt = 0.0;
  std::size_t steps = 0;
  InitialCondition initial;
};

inline constexpr double kStabilityMargin = 0.5;
inline constexpr double kDefaultStepFactor = 0.05;

class StabilityError : public std::invalid_argument {
public:
  explicit StabilityError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline void require_length(const ChainConfig& cfg, std::span<const double> v, const char* what) {
  if (v.size() != cfg.n)
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(cfg.n) + ", got " +
                         std::to_string(v.size()));
}

// H x without materializing H.
inline void apply_coupling(Topology topology, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = -2.0 * x[i];
    if (i > 0) s += x[i - 1];
    if (i + 1 < n) s += x[i + 1];
    out[i] = s;
  }
  if (topology == Topology::circular) {
    out[0] += x[n - 1];
    out[n - 1] += x[0];
  }
}

}  // namespace detail

inline std::vector<double> acceleration(const ChainConfig& cfg, std::span<const double> x) {
  detail::require_length(cfg, x, "acceleration");
  std::vector<double> a(cfg.n);
  detail::apply_coupling(cfg.topology, x, a);
  const double w2 = cfg.omega0 * cfg.omega0;
  for (double& v : a) v *= w2;
  return a;
}

inline double total_energy(const ChainConfig& cfg, std::span<const double> x, std::span<const double> v) {
  detail::require_length(cfg, x, "total_energy positions");
  detail::require_length(cfg, v, "total_energy velocities");
  std::vector<double> hx(cfg.n);
  detail::apply_coupling(cfg.topology, x, hx);
  double kinetic = 0.0;
  double quad = 0.0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    kinetic += v[i] * v[i];
    quad += x[i] * hx[i];
  }
  return 0.5 * cfg.mass * kinetic - 0.5 * cfg.spring_k * quad;
}

inline double total_energy(const ChainConfig& cfg, const TrajectoryState& s) {
  return total_energy(cfg, s.positions, s.velocities);
}

inline double total_momentum(const ChainConfig& cfg, std::span<const double> v) {
  double p = 0.0;
  for (double x : v) p += x;
  return cfg.mass * p;
}

// Projects the initial state on the orthonormal mode basis and advances each
// amplitude: a cos(wt) + (b/w) sin(wt), or a + b t for a zero mode.
inline TrajectoryState analytic_evolution(const ChainConfig& cfg, const InitialCondition& initial, double t) {
  detail::require_length(cfg, initial.positions, "analytic_evolution positions");
  detail::require_length(cfg, initial.velocities, "analytic_evolution velocities");
  const auto modes = normal_modes(cfg.topology, cfg.n);
  TrajectoryState out;
  out.time = t;
  out.positions.assign(cfg.n, 0.0);
  out.velocities.assign(cfg.n, 0.0);
  for (const auto& mode : modes) {
    double a = 0.0;
    double b = 0.0;
    for (std::size_t j = 0; j < cfg.n; ++j) {
      a += mode.components[j] * initial.positions[j];
      b += mode.components[j] * initial.velocities[j];
    }
    const double w = cfg.omega0 * std::sqrt(std::max(0.0, -mode.eigenvalue));
    double q;
    double qdot;
    if (w == 0.0) {
      q = a + b * t;
      qdot = b;
    } else {
      const double c = std::cos(w * t);
      const double s = std::sin(w * t);
      q = a * c + (b / w) * s;
      qdot = -a * w * s + b * c;
    }
    for (std::size_t j = 0; j < cfg.n; ++j) {
      out.positions[j] += q * mode.components[j];
      out.velocities[j] += qdot * mode.components[j];
    }
  }
  out.energy = total_energy(cfg, out.positions, out.velocities);
  return out;
}

inline double default_time_step(const ChainConfig& cfg) { return kDefaultStepFactor / max_frequency(cfg); }

inline void validate(const SimulationConfig& sim) {
  sim.chain.validate();
  detail::require_length(sim.chain, sim.initial.positions, "initial positions");
  detail::require_length(sim.chain, sim.initial.velocities, "initial velocities");
  if (!(sim.dt > 0.0) || !std::isfinite(sim.dt)) throw StabilityError("dt must be positive and finite");
  if (sim.steps < 1) throw std::invalid_argument("steps must be at least 1");
  const double wmax = max_frequency(sim.chain);
  if (!(sim.dt * wmax < kStabilityMargin))
    throw StabilityError("dt * omega_max = " + std::to_string(sim.dt * wmax) + " violates the stability bound " +
                         std::to_string(kStabilityMargin));
}

// Velocity Verlet; calls `sink` with the initial state and after every step.
inline void verlet_run(const SimulationConfig& sim, const std::function<void(const TrajectoryState&)>& sink) {
  validate(sim);
  const ChainConfig& cfg = sim.chain;
  const double dt = sim.dt;
  TrajectoryState s;
  s.time = 0.0;
  s.positions = sim.initial.positions;
  s.velocities = sim.initial.velocities;
  s.energy = total_energy(cfg, s.positions, s.velocities);
  sink(s);
  std::vector<double> acc = acceleration(cfg, s.positions);
  const double w2 = cfg.omega0 * cfg.omega0;
  for (std::size_t step = 1; step <= sim.steps; ++step) {
    for (std::size_t i = 0; i < cfg.n; ++i) {
      s.velocities[i] += 0.5 * dt * acc[i];
      s.positions[i] += dt * s.velocities[i];
    }
    detail::apply_coupling(cfg.topology, s.positions, acc);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      acc[i] *= w2;
      s.velocities[i] += 0.5 * dt * acc[i];
    }
    s.time = static_cast<double>(step) * dt;
    s.energy = total_energy(cfg, s.positions, s.velocities);
    sink(s);
  }
}

inline std::vector<TrajectoryState> verlet_simulate(const SimulationConfig& sim) {
  std::vector<TrajectoryState> out;
  out.reserve(sim.steps + 1);
  verlet_run(sim, [&](const TrajectoryState& s) { out.push_back(s); });
  return out;
}

struct TrajectoryAudit {
  double initial_energy = 0.0;
  double max_relative_energy_error = 0.0;  // max over steps |E - E0| / E0
  double final_relative_energy_error = 0.0;
  double max_analytic_deviation = 0.0;     // max over steps and components
  double final_analytic_deviation = 0.0;
  double max_momentum_error = 0.0;         // |P - P0|
};

// Runs Verlet and compares every state against the modal solution.
inline TrajectoryAudit audit_verlet(const SimulationConfig& sim) {
  TrajectoryAudit audit;
  bool first = true;
  double p0 = 0.0;
  verlet_run(sim, [&](const TrajectoryState& s) {
    const double p = total_momentum(sim.chain, s.velocities);
    if (first) {
      audit.initial_energy = s.energy;
      p0 = p;
      first = false;
    }
    const double scale = audit.initial_energy > 0.0 ? audit.initial_energy : 1.0;
    const double rel = std::abs(s.energy - audit.initial_energy) / scale;
    audit.max_relative_energy_error = std::max(audit.max_relative_energy_error, rel);
    audit.final_relative_energy_error = rel;
    const TrajectoryState exact = analytic_evolution(sim.chain, sim.initial, s.time);
    double dev = 0.0;
    for (std::size_t i = 0; i < s.positions.size(); ++i)
      dev = std::max(dev, std::abs(s.positions[i] - exact.positions[i]));
    audit.max_analytic_deviation = std::max(audit.max_analytic_deviation, dev);
    audit.final_analytic_deviation = dev;
    audit.max_momentum_error = std::max(audit.max_momentum_error, std::abs(p - p0));
  });
  return audit;
}

}  // namespace oscchain
