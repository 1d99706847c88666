#pragma once

// JSON and CSV encodings of matrices, polynomials, spectra and trajectories.
//
//   matrix      {"side": n, "kind": "int"|"float", "rows": [[...], ...]}
//   polynomial  [c0, c1, ...]  (lowest degree first)
//   spectrum    {"topology", "n", "omega0", "eigenvalues",
//                "modes": [{"k", "lambda", "omega", "degeneracy_class"}]}
//   spectrum csv    k,lambda,omega
//   trajectory csv  t,x_0..x_{n-1},v_0..v_{n-1},E

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "oscchain/chebyshev.hpp"
#include "oscchain/dynamics.hpp"
#include "oscchain/matrix.hpp"
#include "oscchain/spectra.hpp"

namespace oscchain {

using json = nlohmann::ordered_json;

class MalformedInput : public std::invalid_argument {
public:
  explicit MalformedInput(const std::string& what) : std::invalid_argument(what) {}
};

// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc{}) {
    res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  }
  return {buf.data(), res.ptr};
}

inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.side(); ++i) {
    json r = json::array();
    for (const auto& e : m.row(i)) r.push_back(e.to_int64());
    rows.push_back(std::move(r));
  }
  return json{{"side", m.side()}, {"kind", "int"}, {"rows", std::move(rows)}};
}

inline json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.side(); ++i) {
    json r = json::array();
    for (double e : m.row(i)) r.push_back(e);
    rows.push_back(std::move(r));
  }
  return json{{"side", m.side()}, {"kind", "float"}, {"rows", std::move(rows)}};
}

inline IntMatrix int_matrix_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("matrix must be a JSON object");
  if (!j.contains("side") || !j["side"].is_number_unsigned()) throw MalformedInput("matrix needs a positive 'side'");
  if (j.contains("kind") && j["kind"] != "int") throw MalformedInput("matrix kind must be \"int\"");
  if (!j.contains("rows") || !j["rows"].is_array()) throw MalformedInput("matrix needs a 'rows' array");
  const auto side = j["side"].get<std::size_t>();
  const auto& rows = j["rows"];
  if (side == 0 || rows.size() != side) throw MalformedInput("'rows' must hold exactly 'side' rows");
  IntMatrix m(side);
  for (std::size_t i = 0; i < side; ++i) {
    const auto& r = rows[i];
    if (!r.is_array() || r.size() != side) throw MalformedInput("row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < side; ++k) {
      if (!r[k].is_number_integer()) throw MalformedInput("matrix entries must be integers");
      m(i, k) = ExactInt{r[k].get<long long>()};
    }
  }
  return m;
}

inline json to_json(const Polynomial& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(c.to_int64());
  return a;
}

inline json to_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

// Cluster index of every spectrum entry.
inline std::vector<std::size_t> degeneracy_classes(const Spectrum& s) {
  std::vector<std::size_t> cls(s.eigenvalues.size());
  for (std::size_t c = 0; c < s.degeneracy_clusters.size(); ++c)
    for (auto i : s.degeneracy_clusters[c]) cls[i] = c;
  return cls;
}

// Spectrum entry order by mode index k (dispersion-relation order).
inline std::vector<std::size_t> order_by_mode_index(const Spectrum& s) {
  std::vector<std::size_t> idx(s.mode_indices.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return s.mode_indices[a] < s.mode_indices[b]; });
  return idx;
}

inline json to_json(const Spectrum& s) {
  const auto cls = degeneracy_classes(s);
  json modes = json::array();
  for (auto i : order_by_mode_index(s)) {
    modes.push_back(json{{"k", s.mode_indices[i]},
                         {"lambda", s.eigenvalues[i]},
                         {"omega", s.frequencies[i]},
                         {"degeneracy_class", cls[i]}});
  }
  return json{{"topology", std::string(to_string(s.topology))},
              {"n", s.n},
              {"omega0", s.omega0},
              {"eigenvalues", to_json(s.eigenvalues)},
              {"modes", std::move(modes)}};
}

inline std::string spectrum_csv(const Spectrum& s) {
  std::string out = "k,lambda,omega\n";
  for (auto i : order_by_mode_index(s)) {
    out += std::to_string(s.mode_indices[i]) + "," + format_double(s.eigenvalues[i]) + "," +
           format_double(s.frequencies[i]) + "\n";
  }
  return out;
}

inline InitialCondition initial_condition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("positions") || !j.contains("velocities"))
    throw MalformedInput("initial condition needs 'positions' and 'velocities' arrays");
  InitialCondition ic;
  for (const char* key : {"positions", "velocities"}) {
    const auto& a = j[key];
    if (!a.is_array()) throw MalformedInput(std::string("'") + key + "' must be an array");
    auto& dst = std::string_view(key) == "positions" ? ic.positions : ic.velocities;
    for (const auto& v : a) {
      if (!v.is_number()) throw MalformedInput(std::string("'") + key + "' entries must be numbers");
      dst.push_back(v.get<double>());
    }
  }
  return ic;
}

inline std::string trajectory_csv_header(std::size_t n) {
  std::string h = "t";
  for (std::size_t i = 0; i < n; ++i) h += ",x_" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) h += ",v_" + std::to_string(i);
  return h + ",E\n";
}

inline std::string trajectory_csv_row(const TrajectoryState& s) {
  std::string r = format_double(s.time);
  for (double x : s.positions) r += "," + format_double(x);
  for (double v : s.velocities) r += "," + format_double(v);
  return r + "," + format_double(s.energy) + "\n";
}

inline json to_json(const TrajectoryState& s) {
  return json{{"t", s.time}, {"x", to_json(s.positions)}, {"v", to_json(s.velocities)}, {"E", s.energy}};
}

}  // namespace oscchain
