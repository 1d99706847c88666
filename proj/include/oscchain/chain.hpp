#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "oscchain/matrix.hpp"

namespace oscchain {

enum class Topology { circular, linear };

inline std::string_view to_string(Topology t) { return t == Topology::circular ? "circular" : "linear"; }

inline Topology parse_topology(std::string_view s) {
  if (s == "circular") return Topology::circular;
  if (s == "linear") return Topology::linear;
  throw std::invalid_argument("unknown topology '" + std::string(s) + "' (expected circular or linear)");
}

// Identical masses m joined by identical springs k; omega0^2 = k / m.
struct ChainConfig {
  Topology topology = Topology::linear;
  std::size_t n = 2;
  double mass = 1.0;
  double spring_k = 1.0;
  double omega0 = 1.0;

  static ChainConfig make(Topology topology, std::size_t n, double mass, double spring_k) {
    ChainConfig c{topology, n, mass, spring_k, std::sqrt(spring_k / mass)};
    c.validate();
    return c;
  }

  // Unit mass with k chosen so that sqrt(k/m) is exactly omega0.
  static ChainConfig with_omega0(Topology topology, std::size_t n, double omega0) {
    ChainConfig c{topology, n, 1.0, omega0 * omega0, omega0};
    c.validate();
    return c;
  }

  void validate() const {
    if (n < 2) throw std::invalid_argument("chain needs n >= 2, got n=" + std::to_string(n));
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive and finite");
    if (!(spring_k > 0.0) || !std::isfinite(spring_k))
      throw std::invalid_argument("spring constant must be positive and finite");
    if (!(omega0 >= 0.0)) throw std::invalid_argument("omega0 must be nonnegative");
    const double ratio = spring_k / mass;
    if (std::abs(omega0 * omega0 - ratio) > 4.0 * std::numeric_limits<double>::epsilon() * ratio)
      throw std::invalid_argument("omega0^2 must equal k/m");
  }
};

inline IntMatrix coupling_matrix(Topology topology, std::size_t n) {
  return topology == Topology::circular ? circular_coupling_matrix(n) : linear_coupling_matrix(n);
}

inline IntMatrix coupling_matrix(const ChainConfig& cfg) { return coupling_matrix(cfg.topology, cfg.n); }

}  // namespace oscchain
