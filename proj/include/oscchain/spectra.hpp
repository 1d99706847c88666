#pragma once

// Closed-form normal-mode spectra of circular and linear chains.
//
// Sign convention: lambda = -omega^2 / omega0^2 is an eigenvalue of the
// coupling matrix H, so every lambda <= 0 and omega = omega0 * sqrt(-lambda).
//
// Mode labels: circular k = 0..n-1 with lambda = -4 sin^2(k pi / n);
// linear k = 1..n with lambda = -4 sin^2(k pi / (2(n+1))). Each distinct
// normal mode is listed once.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "oscchain/chain.hpp"

namespace oscchain {

inline constexpr double kDefaultDegeneracyTol = 1e-8;

using Partition = std::vector<std::vector<std::size_t>>;

struct Spectrum {
  Topology topology = Topology::linear;
  std::size_t n = 0;
  double omega0 = 1.0;
  // Parallel arrays sorted by ascending eigenvalue.
  std::vector<double> eigenvalues;
  std::vector<double> frequencies;
  std::vector<int> mode_indices;
  // Index groups into the arrays above.
  Partition degeneracy_clusters;
};

struct ModeShape {
  int mode_index = 0;
  double eigenvalue = 0.0;
  std::vector<double> components;
};

inline double circular_eigenvalue(std::size_t n, std::size_t k) {
  const double s = std::sin(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n));
  return s == 0.0 ? 0.0 : -4.0 * s * s;
}

inline double linear_eigenvalue(std::size_t n, std::size_t k) {
  const double s = std::sin(static_cast<double>(k) * std::numbers::pi / (2.0 * static_cast<double>(n + 1)));
  return -4.0 * s * s;
}

// Groups adjacent sorted eigenvalues whose gap is below rel_tol * max(1, |lambda|).
inline Partition degeneracy_clusters(std::span<const double> sorted_eigenvalues,
                                     double rel_tol = kDefaultDegeneracyTol) {
  Partition groups;
  for (std::size_t i = 0; i < sorted_eigenvalues.size(); ++i) {
    const double v = sorted_eigenvalues[i];
    if (!groups.empty()) {
      const double prev = sorted_eigenvalues[groups.back().back()];
      if (std::abs(v - prev) < rel_tol * std::max(1.0, std::abs(v))) {
        groups.back().push_back(i);
        continue;
      }
    }
    groups.push_back({i});
  }
  return groups;
}

inline Partition degeneracy_clusters(const Spectrum& s, double rel_tol = kDefaultDegeneracyTol) {
  return degeneracy_clusters(s.eigenvalues, rel_tol);
}

// Cluster sizes, in the order of ascending eigenvalue.
inline std::vector<std::size_t> multiplicities(const Partition& p) {
  std::vector<std::size_t> m;
  m.reserve(p.size());
  for (const auto& g : p) m.push_back(g.size());
  return m;
}

namespace detail {

inline Spectrum assemble_spectrum(const ChainConfig& cfg, std::vector<std::pair<double, int>> modes) {
  std::stable_sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Spectrum s;
  s.topology = cfg.topology;
  s.n = cfg.n;
  s.omega0 = cfg.omega0;
  for (const auto& [lambda, k] : modes) {
    s.eigenvalues.push_back(lambda);
    s.frequencies.push_back(cfg.omega0 * std::sqrt(std::max(0.0, -lambda)));
    s.mode_indices.push_back(k);
  }
  s.degeneracy_clusters = degeneracy_clusters(s.eigenvalues);
  return s;
}

}  // namespace detail

inline Spectrum circular_spectrum(const ChainConfig& cfg) {
  if (cfg.topology != Topology::circular) throw std::invalid_argument("circular_spectrum needs a circular chain");
  cfg.validate();
  std::vector<std::pair<double, int>> modes;
  for (std::size_t k = 0; k < cfg.n; ++k) modes.emplace_back(circular_eigenvalue(cfg.n, k), static_cast<int>(k));
  return detail::assemble_spectrum(cfg, std::move(modes));
}

inline Spectrum linear_spectrum(const ChainConfig& cfg) {
  if (cfg.topology != Topology::linear) throw std::invalid_argument("linear_spectrum needs a linear chain");
  cfg.validate();
  std::vector<std::pair<double, int>> modes;
  for (std::size_t k = 1; k <= cfg.n; ++k) modes.emplace_back(linear_eigenvalue(cfg.n, k), static_cast<int>(k));
  return detail::assemble_spectrum(cfg, std::move(modes));
}

inline Spectrum closed_form_spectrum(const ChainConfig& cfg) {
  return cfg.topology == Topology::circular ? circular_spectrum(cfg) : linear_spectrum(cfg);
}

// Largest closed-form frequency of the chain.
inline double max_frequency(const ChainConfig& cfg) {
  const Spectrum s = closed_form_spectrum(cfg);
  return *std::max_element(s.frequencies.begin(), s.frequencies.end());
}

// True iff sorted {lambda} equals sorted {-4 - lambda} entrywise within 1e-9.
inline bool spectral_reflection_check(std::span<const double> eigenvalues) {
  std::vector<double> a(eigenvalues.begin(), eigenvalues.end());
  std::vector<double> b;
  b.reserve(a.size());
  for (double v : a) b.push_back(-4.0 - v);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) >= 1e-9) return false;
  return true;
}

inline bool spectral_reflection_check(const Spectrum& s) { return spectral_reflection_check(s.eigenvalues); }

namespace detail {

inline void normalize_canonical(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  for (double x : v) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      break;
    }
  }
}

}  // namespace detail

// Real orthonormal basis of H_c(n) eigenvectors, ordered by k. For
// 0 < k < n/2 the degenerate pair (k, n-k) is represented by the cosine
// vector (label k) and the sine vector (label n-k).
inline std::vector<ModeShape> circular_modes(std::size_t n) {
  if (n < 2) throw std::invalid_argument("circular_modes needs n >= 2");
  std::vector<ModeShape> modes(n);
  const double base = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    ModeShape& m = modes[k];
    m.mode_index = static_cast<int>(k);
    m.eigenvalue = circular_eigenvalue(n, k);
    m.components.resize(n);
    const bool sine = 2 * k > n;
    const std::size_t freq = sine ? n - k : k;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = base * static_cast<double>((freq * j) % n);
      m.components[j] = sine ? std::sin(phase) : std::cos(phase);
    }
    detail::normalize_canonical(m.components);
  }
  return modes;
}

// Standing waves sin(k j pi / (n+1)), j = 1..n, for k = 1..n.
inline std::vector<ModeShape> linear_modes(std::size_t n) {
  if (n < 2) throw std::invalid_argument("linear_modes needs n >= 2");
  std::vector<ModeShape> modes(n);
  const double base = std::numbers::pi / static_cast<double>(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    ModeShape& m = modes[k - 1];
    m.mode_index = static_cast<int>(k);
    m.eigenvalue = linear_eigenvalue(n, k);
    m.components.resize(n);
    for (std::size_t j = 1; j <= n; ++j)
      m.components[j - 1] = std::sin(base * static_cast<double>((k * j) % (2 * (n + 1))));
    detail::normalize_canonical(m.components);
  }
  return modes;
}

inline std::vector<ModeShape> normal_modes(Topology topology, std::size_t n) {
  return topology == Topology::circular ? circular_modes(n) : linear_modes(n);
}

}  // namespace oscchain
