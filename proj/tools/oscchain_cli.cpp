// oscchain: command-line front end for the harmonic chain library.
//
// Exit codes: 0 success, 2 usage or precondition, 3 verification
// discrepancy, 4 exact-arithmetic cap, 130 interrupted.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "oscchain/oscchain.hpp"

namespace {

using namespace oscchain;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDiscrepancy = 3;
constexpr int kExitCap = 4;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted.store(true); }

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "json";
  std::string path;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file_) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
    return *file_;
  }

  void require_json() const {
    if (format != "json") throw UsageError("this subcommand only emits json");
  }

  void emit(const json& j) { stream() << j.dump(2) << '\n'; }

private:
  std::unique_ptr<std::ofstream> file_;
};

void add_output_options(CLI::App* sub, Output& out, const std::vector<std::string>& formats) {
  sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember(formats));
  sub->add_option("-o,--output", out.path, "Write to this file instead of standard output");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

// --- matrix -----------------------------------------------------------------

struct MatrixArgs {
  std::string kind = "circular";
  std::size_t n = 0;
  Output out;
};

int run_matrix(MatrixArgs& a) {
  a.out.require_json();
  IntMatrix m;
  if (a.kind == "circular") m = circular_coupling_matrix(a.n);
  else if (a.kind == "linear") m = linear_coupling_matrix(a.n);
  else if (a.kind == "shift") m = shift_matrix(a.n);
  else if (a.kind == "exchange") m = exchange_matrix(a.n);
  else if (a.kind == "sign") m = sign_matrix(a.n);
  else m = shifted_linear_matrix(a.n);
  a.out.emit(to_json(m));
  return kExitOk;
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
  std::string topology = "linear";
  std::size_t n = 0;
  double omega0 = 1.0;
  Output out;
};

int run_spectrum(SpectrumArgs& a) {
  const ChainConfig cfg = ChainConfig::with_omega0(parse_topology(a.topology), a.n, a.omega0);
  const Spectrum s = closed_form_spectrum(cfg);
  const IntMatrix h = coupling_matrix(cfg);
  const EigenResult oracle = jacobi_eigenvalues(h);

  double discrepancy = 0.0;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    discrepancy = std::max(discrepancy, std::abs(s.eigenvalues[i] - oracle.eigenvalues[i]));

  if (a.out.format == "csv") {
    a.out.stream() << spectrum_csv(s);
  } else {
    json j = to_json(s);
    j["oracle"] = json{{"method", "jacobi"},
                       {"eigenvalues", to_json(oracle.eigenvalues)},
                       {"sweeps", oracle.iterations},
                       {"off_diagonal_residual", oracle.off_diagonal_residual}};
    j["max_discrepancy"] = discrepancy;
    a.out.emit(j);
  }
  return discrepancy < kSpectrumTol ? kExitOk : kExitDiscrepancy;
}

// --- symmetry ---------------------------------------------------------------

struct SymmetryArgs {
  std::size_t n = 0;
  Output out;
};

int run_symmetry(SymmetryArgs& a) {
  a.out.require_json();
  const auto relations = symmetry_relations(a.n);
  json rel = json::array();
  bool all = true;
  for (const auto& r : relations) {
    rel.push_back(json{{"relation", r.name}, {"expected", r.expected}, {"observed", r.observed}, {"pass", r.matches()}});
    all = all && r.matches();
  }
  a.out.emit(json{{"n", a.n}, {"relations", std::move(rel)}, {"all_pass", all}});
  return all ? kExitOk : kExitDiscrepancy;
}

// --- commutant --------------------------------------------------------------

struct CommutantArgs {
  std::optional<std::size_t> n;
  std::string decompose_path;
  std::size_t trials = 4;
  std::uint64_t seed = 1;
  Output out;
};

json decomposition_json(const DecomposeResult& d) {
  if (const auto* ok = std::get_if<CommutantDecomposition>(&d)) {
    json c = json::array();
    for (const auto& q : ok->coefficients) {
      if (q.is_integer()) c.push_back(q.num().to_int64());
      else c.push_back(q.to_string());
    }
    return json{{"in_span", true}, {"coefficients", std::move(c)}, {"residual_zero", ok->residual_zero}};
  }
  const auto& ns = std::get<NotInSpan>(d);
  return json{{"in_span", false}, {"nonzero_commutator_entries", ns.nonzero_commutator_entries}};
}

int run_commutant(CommutantArgs& a) {
  a.out.require_json();
  std::optional<IntMatrix> input;
  if (!a.decompose_path.empty()) input = int_matrix_from_json(read_json_file(a.decompose_path));
  if (!a.n) {
    if (!input) throw UsageError("--n is required unless --decompose supplies a matrix");
    a.n = input->side();
  }
  const std::size_t n = *a.n;
  if (n < 2) throw UsageError("--n must be at least 2");
  if (input && input->side() != n) throw UsageError("matrix side does not match --n");

  const auto basis = commutant_basis(n);
  json basis_j = json::array();
  for (const auto& b : basis) basis_j.push_back(to_json(b));
  const bool ch = cayley_hamilton_check(n);
  bool ok = ch;

  json j{{"n", n}, {"basis", std::move(basis_j)}};
  if (n <= kProbeCap) {
    const auto probe = commutant_dimension_probe(n, a.trials, a.seed);
    j["dimension_probe"] = json{{"nullspace_dimension", probe.nullspace_dimension},
                                {"expected_dimension", n},
                                {"trials", probe.trials},
                                {"decomposed_exactly", probe.decomposed},
                                {"pass", probe.passed()}};
    ok = ok && probe.passed();
  } else {
    j["dimension_probe"] = json{{"skipped", "n exceeds the probe cap of " + std::to_string(kProbeCap)}};
  }
  j["cayley_hamilton"] = ch;
  if (input) {
    const auto d = decompose(*input, n);
    j["decomposition"] = decomposition_json(d);
    j["structural_checks"] = [&] {
      const auto s = structural_checks(*input);
      return json{{"cross_sum", s.cross_sum}, {"symmetric", s.symmetric}, {"persymmetric", s.persymmetric}};
    }();
  }
  a.out.emit(j);
  return ok ? kExitOk : kExitDiscrepancy;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string topology = "linear";
  std::size_t n = 0;
  double omega0 = 1.0;
  std::optional<double> dt;
  std::size_t steps = 1000;
  std::string initial_path;
  std::optional<int> mode;
  Output out;

  SimulateArgs() { out.format = "csv"; }
};

int run_simulate(SimulateArgs& a) {
  if (a.out.format == "json") a.out.format = "jsonl";
  const ChainConfig cfg = ChainConfig::with_omega0(parse_topology(a.topology), a.n, a.omega0);
  SimulationConfig sim;
  sim.chain = cfg;
  sim.dt = a.dt ? *a.dt : default_time_step(cfg);
  sim.steps = a.steps;
  if (!a.initial_path.empty() && a.mode) throw UsageError("--initial and --mode are mutually exclusive");
  if (!a.initial_path.empty()) {
    sim.initial = initial_condition_from_json(read_json_file(a.initial_path));
  } else if (a.mode) {
    const auto modes = normal_modes(cfg.topology, cfg.n);
    auto it = std::find_if(modes.begin(), modes.end(), [&](const ModeShape& m) { return m.mode_index == *a.mode; });
    if (it == modes.end()) throw UsageError("no mode with index " + std::to_string(*a.mode));
    sim.initial.positions = it->components;
    sim.initial.velocities.assign(cfg.n, 0.0);
  } else {
    sim.initial.positions.assign(cfg.n, 0.0);
    sim.initial.velocities.assign(cfg.n, 0.0);
  }
  validate(sim);

  std::ostream& os = a.out.stream();
  const bool csv = a.out.format == "csv";
  if (csv) os << trajectory_csv_header(cfg.n);
  double e0 = 0.0;
  bool first = true;
  double drift = 0.0;
  double deviation = 0.0;
  verlet_run(sim, [&](const TrajectoryState& s) {
    if (first) {
      e0 = s.energy;
      first = false;
    }
    const double scale = e0 > 0.0 ? e0 : 1.0;
    drift = std::max(drift, std::abs(s.energy - e0) / scale);
    const TrajectoryState exact = analytic_evolution(cfg, sim.initial, s.time);
    for (std::size_t i = 0; i < cfg.n; ++i) deviation = std::max(deviation, std::abs(s.positions[i] - exact.positions[i]));
    if (csv) os << trajectory_csv_row(s);
    else os << to_json(s).dump() << '\n';
  });
  if (csv) {
    os << "# relative_energy_drift=" << format_double(drift) << ",max_analytic_deviation=" << format_double(deviation)
       << ",dt=" << format_double(sim.dt) << ",steps=" << sim.steps << '\n';
  } else {
    os << json{{"summary", json{{"relative_energy_drift", drift},
                                {"max_analytic_deviation", deviation},
                                {"dt", sim.dt},
                                {"steps", sim.steps}}}}
              .dump()
       << '\n';
  }
  return kExitOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::size_t n_max = 64;
  Output out;
};

int run_verify(VerifyArgs& a) {
  a.out.require_json();
  if (a.n_max < 2) throw UsageError("--n-max must be at least 2");
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  VerifyOptions opt;
  opt.n_max = a.n_max;
  opt.cancel = &g_interrupted;
  const VerifyReport rep = run_verification(opt);
  a.out.emit(to_json(rep));
  a.out.stream().flush();
  if (rep.interrupted) return kExitInterrupted;
  return rep.passed() ? kExitOk : kExitDiscrepancy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal modes, symmetries and commutants of harmonic oscillator chains"};
  app.require_subcommand(1);

  MatrixArgs matrix_args;
  auto* matrix_cmd = app.add_subcommand("matrix", "Print a structural matrix as JSON");
  matrix_cmd->add_option("--kind", matrix_args.kind, "circular | linear | shift | exchange | sign | shifted-linear")
      ->check(CLI::IsMember({"circular", "linear", "shift", "exchange", "sign", "shifted-linear"}));
  matrix_cmd->add_option("--n", matrix_args.n, "Number of masses")->required();
  add_output_options(matrix_cmd, matrix_args.out, {"json"});

  SpectrumArgs spectrum_args;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Closed-form spectrum checked against the Jacobi oracle");
  spectrum_cmd->add_option("--topology", spectrum_args.topology)->check(CLI::IsMember({"circular", "linear"}));
  spectrum_cmd->add_option("--n", spectrum_args.n, "Number of masses")->required();
  spectrum_cmd->add_option("--omega0", spectrum_args.omega0, "sqrt(k/m)");
  add_output_options(spectrum_cmd, spectrum_args.out, {"json", "csv"});

  SymmetryArgs symmetry_args;
  auto* symmetry_cmd = app.add_subcommand("symmetry", "Exact commutator and anti-commutator relations");
  symmetry_cmd->add_option("--n", symmetry_args.n, "Number of masses")->required();
  add_output_options(symmetry_cmd, symmetry_args.out, {"json"});

  CommutantArgs commutant_args;
  auto* commutant_cmd = app.add_subcommand("commutant", "Commutant basis of the linear chain and decompositions");
  commutant_cmd->add_option("--n", commutant_args.n, "Number of masses");
  commutant_cmd->add_option("--decompose", commutant_args.decompose_path, "JSON matrix file to decompose");
  commutant_cmd->add_option("--trials", commutant_args.trials, "Random samples for the dimension probe")
      ->check(CLI::PositiveNumber);
  commutant_cmd->add_option("--seed", commutant_args.seed, "Seed for the dimension probe");
  add_output_options(commutant_cmd, commutant_args.out, {"json"});

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Velocity Verlet trajectory with energy and deviation audit");
  simulate_cmd->add_option("--topology", simulate_args.topology)->check(CLI::IsMember({"circular", "linear"}));
  simulate_cmd->add_option("--n", simulate_args.n, "Number of masses")->required();
  simulate_cmd->add_option("--omega0", simulate_args.omega0, "sqrt(k/m)");
  simulate_cmd->add_option("--dt", simulate_args.dt, "Time step (default 0.05 / omega_max)");
  simulate_cmd->add_option("--steps", simulate_args.steps, "Number of steps");
  simulate_cmd->add_option("--initial", simulate_args.initial_path, "JSON file {positions: [...], velocities: [...]}");
  simulate_cmd->add_option("--mode", simulate_args.mode, "Start from the normal mode with this index");
  add_output_options(simulate_cmd, simulate_args.out, {"csv", "jsonl", "json"});

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run every cross-check up to n_max");
  verify_cmd->add_option("--n-max", verify_args.n_max, "Largest chain size to check");
  add_output_options(verify_cmd, verify_args.out, {"json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*matrix_cmd) return run_matrix(matrix_args);
    if (*spectrum_cmd) return run_spectrum(spectrum_args);
    if (*symmetry_cmd) return run_symmetry(symmetry_args);
    if (*commutant_cmd) return run_commutant(commutant_args);
    if (*simulate_cmd) return run_simulate(simulate_args);
    if (*verify_cmd) return run_verify(verify_args);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiscrepancy;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
