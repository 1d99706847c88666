#pragma once

// End-to-end verification: every closed form and exact identity of the
// library cross-checked against the independent oracles, bounded by n_max.
// Reports contain no timings so identical runs serialize identically.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "oscchain/chebyshev.hpp"
#include "oscchain/commutant.hpp"
#include "oscchain/dynamics.hpp"
#include "oscchain/eigensolver.hpp"
#include "oscchain/serialize.hpp"
#include "oscchain/spectra.hpp"
#include "oscchain/symmetry.hpp"

namespace oscchain {

struct Check {
  std::string name;
  bool passed = false;
  json detail;
};

enum class CriterionStatus { pass, fail, skipped, interrupted };

inline std::string_view to_string(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::pass: return "pass";
    case CriterionStatus::fail: return "fail";
    case CriterionStatus::skipped: return "skipped";
    case CriterionStatus::interrupted: return "interrupted";
  }
  return "fail";
}

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool interrupted = false;

  CriterionStatus status() const {
    if (interrupted) return CriterionStatus::interrupted;
    if (checks.empty()) return CriterionStatus::skipped;
    for (const auto& c : checks)
      if (!c.passed) return CriterionStatus::fail;
    return CriterionStatus::pass;
  }
};

struct VerifyOptions {
  std::size_t n_max = 64;
  // Polled between cases; when set the current criterion stops early and
  // the remaining ones are not started.
  const std::atomic<bool>* cancel = nullptr;
  // Called after each finished criterion (progress / partial flushing).
  std::function<void(const CriterionResult&)> on_criterion;
};

inline constexpr double kSpectrumTol = 1e-9;
inline constexpr double kAnchorTol = 1e-12;
inline constexpr double kRootTol = 1e-10;
inline constexpr double kEnergyDriftTol = 1e-6;
inline constexpr double kVerletDeviationTol = 1e-3;
inline constexpr double kConvergenceRatioLow = 3.5;
inline constexpr double kConvergenceRatioHigh = 4.5;
inline constexpr double kMomentumTol = 1e-12;
inline constexpr double kTranslationTol = 1e-9;

namespace detail {

inline bool cancelled(const VerifyOptions& o) { return o.cancel && o.cancel->load(); }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::vector<double> tridiagonal_diag(const IntMatrix& m) {
  std::vector<double> d;
  for (std::size_t i = 0; i < m.side(); ++i) d.push_back(m(i, i).to_double());
  return d;
}

inline std::vector<double> tridiagonal_offdiag(const IntMatrix& m) {
  std::vector<double> e;
  for (std::size_t i = 0; i + 1 < m.side(); ++i) e.push_back(m(i, i + 1).to_double());
  return e;
}

}  // namespace detail

// 1. Closed-form spectra vs the Jacobi oracle (and Sturm bisection for the
// tridiagonal linear chain), plus hand-derived anchor spectra.
inline CriterionResult verify_spectrum_equivalence(const VerifyOptions& opt) {
  CriterionResult r{1, "spectrum equivalence: closed forms vs eigensolver oracles", {}, false};
  const std::size_t hi = std::min<std::size_t>(512, opt.n_max);
  double worst_jacobi = 0.0;
  double worst_sturm = 0.0;
  std::size_t worst_jacobi_n = 0;
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= hi; ++n) {
    if (detail::cancelled(opt)) {
      r.interrupted = true;
      break;
    }
    for (Topology topo : {Topology::circular, Topology::linear}) {
      const ChainConfig cfg = ChainConfig::with_omega0(topo, n, 1.0);
      const Spectrum s = closed_form_spectrum(cfg);
      const IntMatrix h = coupling_matrix(topo, n);
      const double dj = detail::max_abs_diff(s.eigenvalues, jacobi_eigenvalues(h).eigenvalues);
      if (dj > worst_jacobi) {
        worst_jacobi = dj;
        worst_jacobi_n = n;
      }
      if (topo == Topology::linear) {
        const auto st = sturm_eigenvalues(detail::tridiagonal_diag(h), detail::tridiagonal_offdiag(h));
        worst_sturm = std::max(worst_sturm, detail::max_abs_diff(s.eigenvalues, st));
      }
      ++cases;
    }
  }
  if (cases > 0) {
    r.checks.push_back({"closed_form_vs_jacobi", worst_jacobi < kSpectrumTol,
                        json{{"n_range", json::array({2, hi})},
                             {"max_abs_diff", worst_jacobi},
                             {"worst_n", worst_jacobi_n},
                             {"tol", kSpectrumTol}}});
    r.checks.push_back({"linear_closed_form_vs_sturm", worst_sturm < kSpectrumTol,
                        json{{"max_abs_diff", worst_sturm}, {"tol", kSpectrumTol}}});
  }

  struct Anchor {
    const char* name;
    Topology topo;
    std::size_t n;
    std::vector<double> expected;
  };
  const double r2 = std::numbers::sqrt2;
  const std::vector<Anchor> anchors = {
      {"linear_n2", Topology::linear, 2, {-3.0, -1.0}},
      {"linear_n3", Topology::linear, 3, {-2.0 - r2, -2.0, -2.0 + r2}},
      {"circular_n3", Topology::circular, 3, {-3.0, -3.0, 0.0}},
      {"circular_n4", Topology::circular, 4, {-4.0, -2.0, -2.0, 0.0}},
  };
  for (const auto& a : anchors) {
    if (a.n > opt.n_max) continue;
    const double err =
        detail::max_abs_diff(closed_form_spectrum(ChainConfig::with_omega0(a.topo, a.n, 1.0)).eigenvalues, a.expected);
    r.checks.push_back({std::string("anchor_") + a.name, err < kAnchorTol, json{{"max_abs_diff", err}, {"tol", kAnchorTol}}});
  }
  return r;
}

// 2. Degeneracy structure of the closed-form spectra.
inline CriterionResult verify_degeneracy(const VerifyOptions& opt) {
  CriterionResult r{2, "degeneracy structure", {}, false};
  auto sorted_mult = [](const Spectrum& s) {
    auto m = multiplicities(s.degeneracy_clusters);
    std::sort(m.begin(), m.end());
    return m;
  };
  auto to_j = [](const std::vector<std::size_t>& m) {
    json a = json::array();
    for (auto x : m) a.push_back(x);
    return a;
  };
  if (opt.n_max >= 4) {
    const auto m = multiplicities(circular_spectrum(ChainConfig::with_omega0(Topology::circular, 4, 1.0)).degeneracy_clusters);
    r.checks.push_back({"circular_n4_multiplicities_1_2_1", m == std::vector<std::size_t>{1, 2, 1}, json{{"observed", to_j(m)}}});
  }
  if (opt.n_max >= 5) {
    const auto m = sorted_mult(circular_spectrum(ChainConfig::with_omega0(Topology::circular, 5, 1.0)));
    r.checks.push_back({"circular_n5_multiplicities_1_2_2", m == std::vector<std::size_t>{1, 2, 2}, json{{"observed_sorted", to_j(m)}}});
  }
  const std::size_t hi = std::min<std::size_t>(64, opt.n_max);
  bool singletons = true;
  std::size_t first_bad = 0;
  for (std::size_t n = 2; n <= hi; ++n) {
    const Spectrum s = linear_spectrum(ChainConfig::with_omega0(Topology::linear, n, 1.0));
    if (s.degeneracy_clusters.size() != n) {
      singletons = false;
      first_bad = n;
      break;
    }
  }
  if (hi >= 2)
    r.checks.push_back({"linear_all_singletons", singletons,
                        json{{"n_range", json::array({2, hi})}, {"rel_tol", kDefaultDegeneracyTol}, {"first_failure_n", first_bad}}});
  return r;
}

// 3. Exact symmetry relations, including the expected failures.
inline CriterionResult verify_symmetry(const VerifyOptions& opt) {
  CriterionResult r{3, "exact symmetry relations", {}, false};
  const std::size_t hi = std::min<std::size_t>(64, opt.n_max);
  std::vector<std::string> mismatches;
  std::size_t relations = 0;
  std::size_t expected_failures = 0;
  for (std::size_t n = 2; n <= hi; ++n) {
    if (detail::cancelled(opt)) {
      r.interrupted = true;
      break;
    }
    for (const auto& rel : symmetry_relations(n)) {
      ++relations;
      if (!rel.expected) ++expected_failures;
      if (!rel.matches()) mismatches.push_back(rel.name + " at n=" + std::to_string(n));
    }
  }
  if (relations > 0)
    r.checks.push_back({"all_relations_match_expectation", mismatches.empty(),
                        json{{"n_range", json::array({2, hi})},
                             {"relations_checked", relations},
                             {"expected_failures_confirmed", expected_failures},
                             {"mismatches", mismatches}}});
  return r;
}

// 4. Reflection lambda -> -4 - lambda.
inline CriterionResult verify_reflection(const VerifyOptions& opt) {
  CriterionResult r{4, "spectral reflection", {}, false};
  const std::size_t hi = std::min<std::size_t>(512, opt.n_max);
  std::vector<std::string> bad;
  for (std::size_t n = 2; n <= hi; ++n) {
    const bool lin = spectral_reflection_check(linear_spectrum(ChainConfig::with_omega0(Topology::linear, n, 1.0)));
    const bool circ = spectral_reflection_check(circular_spectrum(ChainConfig::with_omega0(Topology::circular, n, 1.0)));
    if (!lin) bad.push_back("linear n=" + std::to_string(n));
    // Odd n = 2 does not exist; every odd n >= 3 must fail.
    if (circ != (n % 2 == 0)) bad.push_back("circular n=" + std::to_string(n));
  }
  if (hi >= 2)
    r.checks.push_back({"reflection_holds_exactly_where_expected", bad.empty(),
                        json{{"n_range", json::array({2, hi})}, {"tol", kSpectrumTol}, {"mismatches", bad}}});
  return r;
}

// 5. Commutant of H_l.
inline CriterionResult verify_commutant(const VerifyOptions& opt) {
  CriterionResult r{5, "commutant lemma", {}, false};
  const std::size_t hi = std::min<std::size_t>(12, opt.n_max);
  std::vector<std::string> bad;
  for (std::size_t n = 2; n <= hi; ++n) {
    if (detail::cancelled(opt)) {
      r.interrupted = true;
      break;
    }
    const auto basis = commutant_basis(n);
    const IntMatrix hl = linear_coupling_matrix(n);
    if (basis.size() != n || exact_rank(basis) != n) bad.push_back("basis rank n=" + std::to_string(n));
    for (const auto& b : basis) {
      if (!commutator(hl, b).is_zero()) bad.push_back("basis element does not commute n=" + std::to_string(n));
      if (!structural_checks(b).all()) bad.push_back("structural checks n=" + std::to_string(n));
    }
    if (commuting_nullspace(n).size() != n) bad.push_back("nullspace dimension n=" + std::to_string(n));
    const auto dj = decompose(exchange_matrix(n), n);
    const auto* ok = std::get_if<CommutantDecomposition>(&dj);
    if (!ok || !ok->residual_zero) bad.push_back("J not in span n=" + std::to_string(n));
    if (n >= 3 && !std::holds_alternative<NotInSpan>(decompose(shift_matrix(n), n)))
      bad.push_back("T decomposed n=" + std::to_string(n));
  }
  if (hi >= 2)
    r.checks.push_back({"commutant_basis_nullspace_and_decompositions", bad.empty(),
                        json{{"n_range", json::array({2, hi})}, {"failures", bad}}});
  if (opt.n_max >= 3) {
    const auto d = decompose(exchange_matrix(3), 3);
    const auto* ok = std::get_if<CommutantDecomposition>(&d);
    const bool match = ok && ok->residual_zero &&
                       ok->coefficients == std::vector<Rational>{Rational{0}, Rational{0}, Rational{1}};
    r.checks.push_back({"J3_coefficients_0_0_1", match, json{}});
  }
  return r;
}

// 6. Chebyshev identities and Cayley-Hamilton.
inline CriterionResult verify_chebyshev(const VerifyOptions& opt) {
  CriterionResult r{6, "Chebyshev identities", {}, false};
  const std::size_t poly_hi = std::min<std::size_t>(32, opt.n_max);
  bool rec_eq_explicit = true;
  bool u_eq_p2x = true;
  for (std::size_t n = 0; n <= poly_hi; ++n) {
    const Polynomial p = p_poly_recurrence(n);
    rec_eq_explicit = rec_eq_explicit && (p == p_poly_explicit(n));
    u_eq_p2x = u_eq_p2x && (u_poly(n) - p.rescale_argument(ExactInt{2})).is_zero();
  }
  r.checks.push_back({"p_recurrence_equals_explicit", rec_eq_explicit, json{{"n_range", json::array({0, poly_hi})}}});
  r.checks.push_back({"u_equals_p_of_2x", u_eq_p2x, json{{"n_range", json::array({0, poly_hi})}}});

  const std::size_t root_hi = std::min<std::size_t>(64, opt.n_max);
  double worst = 0.0;
  for (std::size_t n = 1; n <= root_hi; ++n)
    for (double x : u_roots(n)) worst = std::max(worst, std::abs(chebyshev_u_value(n, x)));
  r.checks.push_back({"u_roots_are_roots", worst < kRootTol,
                      json{{"n_range", json::array({1, root_hi})}, {"max_abs_value", worst}, {"tol", kRootTol}}});

  const std::size_t ch_hi = std::min<std::size_t>(20, opt.n_max);
  std::vector<std::size_t> ch_fail;
  for (std::size_t n = 2; n <= ch_hi; ++n)
    if (!cayley_hamilton_check(n)) ch_fail.push_back(n);
  if (ch_hi >= 2)
    r.checks.push_back({"cayley_hamilton_exact_zero", ch_fail.empty(),
                        json{{"n_range", json::array({2, ch_hi})}, {"failures", ch_fail}}});
  return r;
}

// The single-mode Verlet scenario of criterion 7.
inline SimulationConfig single_mode_scenario(std::size_t n, int mode_k, double dt_factor, std::size_t steps) {
  const ChainConfig cfg = ChainConfig::with_omega0(Topology::linear, n, 1.0);
  const auto modes = linear_modes(n);
  SimulationConfig sim;
  sim.chain = cfg;
  sim.dt = dt_factor * default_time_step(cfg);
  sim.steps = steps;
  sim.initial.positions = modes.at(static_cast<std::size_t>(mode_k - 1)).components;
  sim.initial.velocities.assign(n, 0.0);
  return sim;
}

// 7. Dynamics: Verlet vs modal solution, energy, momentum.
inline CriterionResult verify_dynamics(const VerifyOptions& opt) {
  CriterionResult r{7, "dynamics", {}, false};
  if (opt.n_max >= 8) {
    const auto coarse = audit_verlet(single_mode_scenario(8, 3, 1.0, 10000));
    r.checks.push_back({"energy_drift", coarse.max_relative_energy_error < kEnergyDriftTol,
                        json{{"max_relative_energy_error", coarse.max_relative_energy_error},
                             {"final_relative_energy_error", coarse.final_relative_energy_error},
                             {"tol", kEnergyDriftTol}}});
    r.checks.push_back({"deviation_from_analytic", coarse.max_analytic_deviation < kVerletDeviationTol,
                        json{{"max_deviation", coarse.max_analytic_deviation},
                             {"final_deviation", coarse.final_analytic_deviation},
                             {"tol", kVerletDeviationTol}}});
    if (!detail::cancelled(opt)) {
      const auto fine = audit_verlet(single_mode_scenario(8, 3, 0.5, 20000));
      const double ratio = coarse.final_analytic_deviation / fine.final_analytic_deviation;
      r.checks.push_back({"second_order_convergence", ratio >= kConvergenceRatioLow && ratio <= kConvergenceRatioHigh,
                          json{{"deviation_dt", coarse.final_analytic_deviation},
                               {"deviation_dt_half", fine.final_analytic_deviation},
                               {"ratio", ratio},
                               {"range", json::array({kConvergenceRatioLow, kConvergenceRatioHigh})}}});
    } else {
      r.interrupted = true;
    }
  }
  if (opt.n_max >= 4) {
    const ChainConfig cfg = ChainConfig::with_omega0(Topology::circular, 4, 1.0);
    const double u = 1.0;
    SimulationConfig sim{cfg, default_time_step(cfg), 10000, {std::vector<double>(4, 0.0), std::vector<double>(4, u)}};
    const double p0 = total_momentum(cfg, sim.initial.velocities);
    double worst_translation = 0.0;
    double worst_momentum_verlet = 0.0;
    double worst_momentum_analytic = 0.0;
    verlet_run(sim, [&](const TrajectoryState& s) {
      const TrajectoryState exact = analytic_evolution(cfg, sim.initial, s.time);
      for (std::size_t i = 0; i < 4; ++i) {
        const double expected = u * s.time;
        worst_translation = std::max(worst_translation, std::abs(s.positions[i] - expected) / std::max(1.0, expected));
        worst_translation = std::max(worst_translation, std::abs(exact.positions[i] - expected) / std::max(1.0, expected));
      }
      worst_momentum_verlet = std::max(worst_momentum_verlet, std::abs(total_momentum(cfg, s.velocities) - p0));
      worst_momentum_analytic = std::max(worst_momentum_analytic, std::abs(total_momentum(cfg, exact.velocities) - p0));
    });
    r.checks.push_back({"circular_translation_follows_ut", worst_translation < kTranslationTol,
                        json{{"max_relative_error", worst_translation}, {"tol", kTranslationTol}}});
    r.checks.push_back({"circular_momentum_conserved",
                        worst_momentum_verlet < kMomentumTol && worst_momentum_analytic < kMomentumTol,
                        json{{"verlet_max_error", worst_momentum_verlet},
                             {"analytic_max_error", worst_momentum_analytic},
                             {"tol", kMomentumTol}}});
  }
  return r;
}

struct VerifyReport {
  std::size_t n_max = 0;
  std::vector<CriterionResult> criteria;
  bool interrupted = false;

  bool passed() const {
    if (interrupted) return false;
    for (const auto& c : criteria)
      if (c.status() == CriterionStatus::fail || c.status() == CriterionStatus::interrupted) return false;
    return true;
  }
};

inline VerifyReport run_verification(const VerifyOptions& opt) {
  using Runner = CriterionResult (*)(const VerifyOptions&);
  static constexpr Runner runners[] = {verify_spectrum_equivalence, verify_degeneracy, verify_symmetry,
                                       verify_reflection,           verify_commutant,  verify_chebyshev,
                                       verify_dynamics};
  VerifyReport rep;
  rep.n_max = opt.n_max;
  for (Runner run : runners) {
    if (detail::cancelled(opt)) {
      rep.interrupted = true;
      break;
    }
    rep.criteria.push_back(run(opt));
    if (rep.criteria.back().interrupted) rep.interrupted = true;
    if (opt.on_criterion) opt.on_criterion(rep.criteria.back());
    if (rep.interrupted) break;
  }
  return rep;
}

inline json to_json(const CriterionResult& c) {
  json checks = json::array();
  for (const auto& ch : c.checks) checks.push_back(json{{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
  return json{{"id", c.id}, {"title", c.title}, {"status", std::string(to_string(c.status()))}, {"checks", std::move(checks)}};
}

inline json to_json(const VerifyReport& r) {
  json crit = json::array();
  for (const auto& c : r.criteria) crit.push_back(to_json(c));
  return json{{"n_max", r.n_max}, {"interrupted", r.interrupted}, {"passed", r.passed()}, {"criteria", std::move(crit)}};
}

}  // namespace oscchain
