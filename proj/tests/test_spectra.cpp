#include <gtest/gtest.h>

#include <cmath>

#include "oscchain/eigensolver.hpp"
#include "oscchain/spectra.hpp"

using namespace oscchain;

namespace {

Spectrum circ(std::size_t n, double w0 = 1.0) { return circular_spectrum(ChainConfig::with_omega0(Topology::circular, n, w0)); }
Spectrum lin(std::size_t n, double w0 = 1.0) { return linear_spectrum(ChainConfig::with_omega0(Topology::linear, n, w0)); }

void expect_values(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST(ClosedForm, CircularExamples) {
  expect_values(circ(4).eigenvalues, {-4, -2, -2, 0}, 1e-12);
  expect_values(circ(3).eigenvalues, {-3, -3, 0}, 1e-12);
  for (std::size_t n : {2u, 7u, 30u}) {
    const Spectrum s = circ(n, 2.5);
    // k = 0 is the translation mode.
    const auto it = std::find(s.mode_indices.begin(), s.mode_indices.end(), 0);
    ASSERT_NE(it, s.mode_indices.end());
    const auto i = static_cast<std::size_t>(it - s.mode_indices.begin());
    EXPECT_EQ(s.eigenvalues[i], 0.0);
    EXPECT_EQ(s.frequencies[i], 0.0);
    EXPECT_FALSE(std::signbit(s.eigenvalues[i]));
  }
  expect_values(circ(2).eigenvalues, {-4, 0}, 1e-15);
}

TEST(ClosedForm, LinearExamples) {
  expect_values(lin(2).eigenvalues, {-3, -1}, 1e-12);
  expect_values(lin(3).eigenvalues, {-2 - std::sqrt(2.0), -2, -2 + std::sqrt(2.0)}, 1e-12);
  EXPECT_NEAR(linear_eigenvalue(2, 1), -1.0, 1e-15);
  EXPECT_NEAR(linear_eigenvalue(2, 2), -3.0, 1e-15);
}

TEST(ClosedForm, FrequenciesScaleWithOmega0) {
  const Spectrum s = lin(5, 3.0);
  for (std::size_t i = 0; i < s.n; ++i) EXPECT_NEAR(s.frequencies[i], 3.0 * std::sqrt(-s.eigenvalues[i]), 1e-14);
  EXPECT_NEAR(max_frequency(ChainConfig::with_omega0(Topology::circular, 4, 1.5)), 3.0, 1e-15);
}

TEST(ClosedForm, WrongTopologyAndSizeRejected) {
  EXPECT_THROW(circular_spectrum(ChainConfig::with_omega0(Topology::linear, 3, 1.0)), std::invalid_argument);
  EXPECT_THROW(linear_spectrum(ChainConfig::with_omega0(Topology::circular, 3, 1.0)), std::invalid_argument);
  EXPECT_THROW(ChainConfig::with_omega0(Topology::linear, 1, 1.0), std::invalid_argument);
}

TEST(ClosedForm, MatchesOracleForSmallChains) {
  for (std::size_t n = 2; n <= 64; ++n) {
    expect_values(circ(n).eigenvalues, jacobi_eigenvalues(circular_coupling_matrix(n)).eigenvalues, 1e-9);
    expect_values(lin(n).eigenvalues, jacobi_eigenvalues(linear_coupling_matrix(n)).eigenvalues, 1e-9);
  }
}

TEST(ClosedForm, TraceIdentity) {
  for (std::size_t n = 2; n <= 200; ++n) {
    for (const Spectrum& s : {circ(n), lin(n)}) {
      double sum = 0.0;
      for (double v : s.eigenvalues) sum += v;
      EXPECT_NEAR(sum, -2.0 * static_cast<double>(n), 1e-9 * static_cast<double>(n));
    }
  }
}

TEST(ClosedForm, CircularPairingAndLinearMonotonicity) {
  for (std::size_t n = 2; n <= 100; ++n) {
    for (std::size_t k = 1; k < n; ++k)
      EXPECT_NEAR(circular_eigenvalue(n, k), circular_eigenvalue(n, n - k), 4e-15) << n << "," << k;
    for (std::size_t k = 1; k < n; ++k) EXPECT_GT(linear_eigenvalue(n, k), linear_eigenvalue(n, k + 1));
  }
}

TEST(Degeneracy, Examples) {
  EXPECT_EQ(multiplicities(degeneracy_clusters(circ(5))), (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_EQ(multiplicities(degeneracy_clusters(circ(4))), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(multiplicities(degeneracy_clusters(lin(6))), (std::vector<std::size_t>(6, 1)));
  for (std::size_t n = 2; n <= 64; ++n) EXPECT_EQ(degeneracy_clusters(lin(n)).size(), n);
}

TEST(Degeneracy, CircularPairsUp) {
  for (std::size_t n = 3; n <= 64; ++n) {
    const auto m = multiplicities(circ(n).degeneracy_clusters);
    const std::size_t singles = static_cast<std::size_t>(std::count(m.begin(), m.end(), 1u));
    EXPECT_EQ(singles, n % 2 == 0 ? 2u : 1u) << n;
    EXPECT_EQ(m.size(), n / 2 + 1) << n;
  }
}

TEST(Reflection, Examples) {
  EXPECT_TRUE(spectral_reflection_check(lin(2)));
  EXPECT_FALSE(spectral_reflection_check(circ(3)));
  EXPECT_TRUE(spectral_reflection_check(circ(4)));
  for (std::size_t n = 2; n <= 128; ++n) {
    EXPECT_TRUE(spectral_reflection_check(lin(n))) << n;
    EXPECT_EQ(spectral_reflection_check(circ(n)), n % 2 == 0) << n;
  }
}

TEST(Modes, Examples) {
  const auto c3 = circular_modes(3);
  const double r3 = 1.0 / std::sqrt(3.0);
  expect_values(c3[0].components, {r3, r3, r3}, 1e-15);
  EXPECT_EQ(c3[0].eigenvalue, 0.0);

  const auto c4 = circular_modes(4);
  expect_values(c4[2].components, {0.5, -0.5, 0.5, -0.5}, 1e-15);
  EXPECT_NEAR(c4[2].eigenvalue, -4.0, 1e-15);
  const double r2 = 1.0 / std::sqrt(2.0);
  expect_values(c4[1].components, {r2, 0, -r2, 0}, 1e-15);
  EXPECT_NEAR(c4[1].eigenvalue, -2.0, 1e-15);

  const auto l2 = linear_modes(2);
  expect_values(l2[0].components, {r2, r2}, 1e-15);
  EXPECT_NEAR(l2[0].eigenvalue, -1.0, 1e-15);
  expect_values(l2[1].components, {r2, -r2}, 1e-15);
  EXPECT_NEAR(l2[1].eigenvalue, -3.0, 1e-15);
  const auto l3 = linear_modes(3);
  expect_values(l3[1].components, {r2, 0, -r2}, 1e-15);
  EXPECT_NEAR(l3[1].eigenvalue, -2.0, 1e-15);
}

TEST(Modes, OrthonormalEigenvectors) {
  for (Topology top : {Topology::circular, Topology::linear}) {
    for (std::size_t n = 2; n <= 40; ++n) {
      const auto modes = normal_modes(top, n);
      const IntMatrix h = coupling_matrix(top, n);
      ASSERT_EQ(modes.size(), n);
      for (std::size_t a = 0; a < n; ++a) {
        const auto& v = modes[a].components;
        EXPECT_LT(residual(h, modes[a].eigenvalue, v), 1e-9);
        EXPECT_NEAR(dot(v, v), 1.0, 1e-12);
        // Canonical sign.
        const auto first = std::find_if(v.begin(), v.end(), [](double x) { return std::abs(x) > 1e-12; });
        EXPECT_GT(*first, 0.0);
        for (std::size_t b = a + 1; b < n; ++b) EXPECT_LT(std::abs(dot(v, modes[b].components)), 1e-9);
      }
    }
  }
}
