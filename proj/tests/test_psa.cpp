#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fedr/errors.hpp"
#include "fedr/psa.hpp"
#include "fedr/relations.hpp"

using namespace fedr;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("chi is recomputed from g, |alpha| and sigma") {
  PsaConfig cfg(0.1, 3.0, 0.5);
  CHECK(cfg.chi() == doctest::Approx(0.6));
  cfg.g = 0.2;
  CHECK(cfg.chi() == doctest::Approx(1.2));
  CHECK_THROWS_AS(PsaConfig(0.1, 3.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PsaConfig(0.1, 3.0, -1.0), std::invalid_argument);
}

TEST_CASE("phase-space closed forms") {
  CHECK(eps2_psa(0.5) == 1.0);
  CHECK(eta2_psa(0.5) == doctest::Approx(0.786938680574733).epsilon(1e-14));
  CHECK(eta2_psa(2.0) == doctest::Approx(1.99932907474419).epsilon(1e-14));
  CHECK(eta2_psa(0.0) == 0.0);
  CHECK(eta2_psa(40.0) == 2.0);
  CHECK_THROWS_AS(eps2_psa(0.0), CalibrationSingular);
  CHECK_THROWS_AS(eps2_psa(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(eta2_psa(-0.1), std::invalid_argument);
}

TEST_CASE("weak interaction limit") {
  CHECK(eps2_wia(0.1) == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(eta2_wia(0.1) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(eps2_wia(0.05) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(eta2_wia(0.05) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(wia_valid(0.29));
  CHECK_FALSE(wia_valid(0.3));
  // Small chi: 4 chi^2 and 2(1 - exp(-2 chi^2)) differ by under 0.5%.
  CHECK(rel(eta2_wia(0.05), eta2_psa(0.05)) < 0.005);
  CHECK(rel(eta2_wia(0.3), eta2_psa(0.3)) > 0.04);
}

TEST_CASE("monotonicity in chi") {
  double prev_eps = eps2_psa(0.01);
  double prev_eta = eta2_psa(0.01);
  for (int k = 2; k <= 300; ++k) {
    const double chi = 0.01 * k;
    CHECK(eps2_psa(chi) < prev_eps);
    CHECK(eta2_psa(chi) > prev_eta);
    CHECK(eta2_psa(chi) < 2.0);
    prev_eps = eps2_psa(chi);
    prev_eta = eta2_psa(chi);
  }
}

TEST_CASE("Gauss-Hermite rule") {
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
  const GaussHermiteRule r1 = gauss_hermite(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi)));
  // Two-point rule: nodes +-1/sqrt(2), weights sqrt(pi)/2.
  const GaussHermiteRule r2 = gauss_hermite(2);
  CHECK(std::abs(r2.nodes[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(r2.weights[0] - std::sqrt(std::numbers::pi) / 2) < 1e-15);
  // Exact for polynomials up to degree 2n - 1: integral x^4 e^{-x^2} = 3 sqrt(pi) / 4.
  const GaussHermiteRule r5 = gauss_hermite(5);
  double m4 = 0.0;
  for (size_t i = 0; i < r5.nodes.size(); ++i) m4 += r5.weights[i] * std::pow(r5.nodes[i], 4);
  CHECK(std::abs(m4 - 0.75 * std::sqrt(std::numbers::pi)) < 1e-13);
}

TEST_CASE("Gaussian oracle values") {
  const GaussianMoments a = gaussian_oracle(PsaConfig(0.0, 1.0, 1.0));
  CHECK(std::abs(a.q2_mean - 1.0) <= 1e-10);
  CHECK(std::abs(a.cos_mean - 1.0) <= 1e-10);
  const GaussianMoments b = gaussian_oracle(PsaConfig(0.5, 1.0, 1.0));
  CHECK(std::abs(b.q2_mean - 1.0) <= 1e-10);
  CHECK(std::abs(b.cos_mean - std::exp(-0.5)) <= 1e-10);
  const GaussianMoments c = gaussian_oracle(PsaConfig(0.5, 1.0, 0.5));
  CHECK(std::abs(c.q2_mean - 0.25) <= 1e-10);
  CHECK(std::abs(c.cos_mean - std::exp(-2.0)) <= 1e-10);
}

TEST_CASE("Gaussian oracle reproduces the closed forms on a grid") {
  for (double sigma : linear_grid(0.5, 2.0, 10)) {
    for (double ga : linear_grid(0.05, 1.0, 10)) {
      const PsaConfig cfg(ga, 1.0, sigma);
      const GaussianMoments m = gaussian_oracle(cfg);
      CHECK(rel(m.q2_mean / (4 * ga * ga), eps2_psa(cfg.chi())) <= 1e-9);
      CHECK(rel(2.0 * (1.0 - m.cos_mean), eta2_psa(cfg.chi())) <= 1e-9);
    }
  }
}

TEST_CASE("Gaussian oracle reports non-convergence") {
  CHECK_THROWS_AS(gaussian_oracle(PsaConfig(40.0, 1.0, 0.1), 16), QuadratureNotConverged);
}
