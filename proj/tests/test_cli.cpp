#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "oscchain/serialize.hpp"

using oscchain::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(OSCCHAIN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  CliRun r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, SpectrumLinearTwo) {
  const CliRun r = run("spectrum --topology linear --n 2");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["eigenvalues"].size(), 2u);
  EXPECT_NEAR(j["eigenvalues"][0].get<double>(), -3.0, 1e-12);
  EXPECT_NEAR(j["eigenvalues"][1].get<double>(), -1.0, 1e-12);
  EXPECT_LT(j["max_discrepancy"].get<double>(), 1e-12);
}

TEST(Cli, SpectrumCircularCsv) {
  const CliRun r = run("spectrum --topology circular --n 4 --format csv");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "k,lambda,omega");
  for (int k = 0; k < 4; ++k) EXPECT_EQ(ls[static_cast<std::size_t>(k) + 1].substr(0, 2), std::to_string(k) + ",");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("spectrum --n 1").code, 2);
  EXPECT_EQ(run("spectrum --topology ring --n 4").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("matrix --kind nope --n 3").code, 2);
  EXPECT_EQ(run("verify --n-max 1").code, 2);
}

TEST(Cli, Matrix) {
  const CliRun r = run("matrix --kind circular --n 2");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["rows"], json::parse("[[-2,2],[2,-2]]"));
  EXPECT_EQ(j["kind"], "int");
}

TEST(Cli, Symmetry) {
  for (int n : {2, 5, 6}) {
    const CliRun r = run("symmetry --n " + std::to_string(n));
    ASSERT_EQ(r.code, 0) << n;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    for (const auto& rel : j["relations"]) {
      if (rel["relation"] == "J=T") {
        EXPECT_EQ(rel["observed"].get<bool>(), n == 2);
      }
      if (rel["relation"] == "{H_c,S}=-4S") {
        EXPECT_EQ(rel["expected"].get<bool>(), n % 2 == 0);
        EXPECT_EQ(rel["observed"].get<bool>(), n % 2 == 0);
      }
    }
  }
}

TEST(Cli, CommutantDecompositions) {
  write_file("cli_j3.json", R"({"side":3,"kind":"int","rows":[[0,0,1],[0,1,0],[1,0,0]]})");
  CliRun r = run("commutant --n 3 --decompose cli_j3.json");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_TRUE(j["decomposition"]["in_span"].get<bool>());
  EXPECT_EQ(j["decomposition"]["coefficients"], json::parse("[0,0,1]"));

  write_file("cli_t3.json", R"({"side":3,"kind":"int","rows":[[0,0,1],[1,0,0],[0,1,0]]})");
  r = run("commutant --n 3 --decompose cli_t3.json");
  ASSERT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_FALSE(j["decomposition"]["in_span"].get<bool>());

  EXPECT_EQ(run("commutant --n 64").code, 4);
  write_file("cli_bad.json", "{not json");
  EXPECT_EQ(run("commutant --n 3 --decompose cli_bad.json").code, 2);
  EXPECT_EQ(run("commutant --n 3 --decompose missing_file.json").code, 2);
}

TEST(Cli, CommutantProbe) {
  const CliRun r = run("commutant --n 4");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["basis"].size(), 4u);
  EXPECT_EQ(j["dimension_probe"]["nullspace_dimension"], 4);
  EXPECT_TRUE(j["cayley_hamilton"].get<bool>());
}

TEST(Cli, SimulateZeroInitial) {
  write_file("cli_zero.json", R"({"positions":[0,0,0],"velocities":[0,0,0]})");
  const CliRun r = run("simulate --topology linear --n 3 --steps 20 --initial cli_zero.json");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 23u);
  EXPECT_EQ(ls[0], "t,x_0,x_1,x_2,v_0,v_1,v_2,E");
  for (std::size_t i = 1; i + 1 < ls.size(); ++i) EXPECT_EQ(ls[i].substr(ls[i].find(',')), ",0,0,0,0,0,0,0");
  EXPECT_EQ(ls.back().rfind("# relative_energy_drift=0,max_analytic_deviation=0,", 0), 0u) << ls.back();
}

TEST(Cli, SimulateJsonLinesAndMode) {
  const CliRun r = run("simulate --topology circular --n 4 --steps 10 --mode 1 --format jsonl");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 12u);
  const json first = json::parse(ls[0]);
  EXPECT_EQ(first["x"].size(), 4u);
  const json summary = json::parse(ls.back());
  EXPECT_LT(summary["summary"]["relative_energy_drift"].get<double>(), 1e-2);
}

TEST(Cli, SimulateRejectsUnstableStep) {
  EXPECT_EQ(run("simulate --topology linear --n 4 --dt 1.0").code, 2);
  write_file("cli_short.json", R"({"positions":[0],"velocities":[0]})");
  EXPECT_EQ(run("simulate --topology linear --n 3 --initial cli_short.json").code, 2);
  EXPECT_EQ(run("simulate --topology linear --n 3 --mode 9").code, 2);
}

TEST(Cli, VerifySmallRunPasses) {
  const CliRun r = run("verify --n-max 2");
  EXPECT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.contains("criteria"));
}

TEST(Cli, OutputFileAndDeterminism) {
  ASSERT_EQ(run("spectrum --topology circular --n 9 -o cli_spec.json").code, 0);
  std::ifstream in("cli_spec.json", std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), run("spectrum --topology circular --n 9").out);
  EXPECT_EQ(run("commutant --n 6").out, run("commutant --n 6").out);
}
