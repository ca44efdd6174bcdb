#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fedr/edr.hpp"
#include "fedr/psa.hpp"

using namespace fedr;

namespace {

constexpr double pi = std::numbers::pi;

std::shared_ptr<const MeterSetup> meter(double alpha2, double r = 0.0) {
  MeasurementConfig cfg;
  cfg.alpha = Complex(std::sqrt(alpha2), 0.0);
  if (r != 0.0) cfg.squeeze = SqueezeSpec{r, 0.0};
  return prepare_meter(cfg);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("edr point at g = pi/4, alpha2 = 6") {
  const EDRPoint p = edr_point(meter(6.0), pi / 4);
  REQUIRE(p.eps2);
  CHECK(rel(*p.eps2, 1.0 / 6.0) <= 1e-9);
  CHECK(rel(p.eta2, 1.99504249564667) <= 1e-9);
  CHECK(rel(*p.eps2_analytic, 1.0 / 6.0) <= 1e-15);
  CHECK(rel(p.eta2_analytic, 1.99504249564667) <= 1e-14);
  CHECK(p.sigma_a == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.sigma_b == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.c_ab == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.cutoff == 30);
  CHECK(p.norm_deficit <= 1e-12);
}

TEST_CASE("error minimum repeats with period pi/2") {
  const auto m = edr_point(meter(6.0), 3 * pi / 4);
  CHECK(rel(*m.eps2, 1.0 / 6.0) <= 1e-9);
}

TEST_CASE("edr point at g = 0.2, alpha2 = 6") {
  const EDRPoint p = edr_point(meter(6.0), 0.2);
  CHECK(rel(*p.eps2, 1.09904618270928) <= 1e-9);
  CHECK(rel(*p.eps2_analytic, 1.09904618270928) <= 1e-13);
}

TEST_CASE("edr point at g = 0.05, alpha2 = 2") {
  const EDRPoint p = edr_point(meter(2.0), 0.05);
  CHECK(rel(*p.eps2, 50.1670005298422) <= 1e-9);
  CHECK(rel(p.eta2, 0.0198838371016883) <= 1e-9);
}

TEST_CASE("g = pi/2: singular error, maximal disturbance") {
  const EDRPoint p = edr_point(meter(6.0), pi / 2);
  CHECK(p.singular());
  CHECK_FALSE(p.eps2_analytic);
  CHECK_FALSE(p.eps2_gap());
  CHECK(rel(p.eta2, 1.99998771157529) <= 1e-9);
}

TEST_CASE("g = pi: singular error, disturbance revival") {
  for (double alpha2 : {2.0, 6.0, 12.0}) {
    const EDRPoint p = edr_point(meter(alpha2), pi);
    CHECK(p.singular());
    CHECK(p.eta2 <= 1e-10);
    CHECK(p.eta2_analytic <= 1e-15);
  }
}

TEST_CASE("noise and disturbance operators") {
  const auto m = meter(2.0);
  CHECK_THROWS_AS(noise_operator(JointContext(pi / 2, m)), CalibrationSingular);
  CHECK(max_abs_entry(disturbance_operator(JointContext(0.0, m))) <= 1e-13);
  CHECK(max_abs_entry(disturbance_operator(JointContext(pi, m))) <= 1e-12);
}

TEST_CASE("matrix-free and dense operators agree") {
  const auto m = meter(2.0);
  const JointContext ctx(0.7, m);
  const Ket psi = tensor(pauli::y_plus(), m->xi);
  const Ket n_dense = noise_operator(ctx).apply(psi);
  const Ket d_dense = disturbance_operator(ctx).apply(psi);
  CHECK((n_dense.amplitudes() - apply_noise(ctx, psi).amplitudes()).cwiseAbs().maxCoeff() <=
        1e-12);
  CHECK((d_dense.amplitudes() - apply_disturbance(ctx, psi).amplitudes()).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("Heisenberg and Schroedinger pictures agree") {
  for (double alpha2 : {2.0, 6.0}) {
    const auto m = meter(alpha2);
    for (double g : {0.1, 0.6, 1.4, 2.9}) {
      const JointContext ctx(g, m);
      for (const Ket& s : pauli::eigenstates()) {
        const double e_h = square_error_numeric(ctx, s, m->xi);
        const double e_s = square_error_schrodinger(ctx, s, m->xi);
        const double d_h = square_disturbance_numeric(ctx, s, m->xi);
        const double d_s = square_disturbance_schrodinger(ctx, s, m->xi);
        CHECK(std::abs(e_h - e_s) <= 1e-10 * e_h);
        CHECK(std::abs(d_h - d_s) <= 1e-10);
      }
    }
  }
}

TEST_CASE("noise is unbiased for every Pauli eigenstate") {
  const auto m = meter(6.0);
  for (double g : {0.05, 0.3, pi / 4, 1.2, 2.0, 3.0}) {
    const JointContext ctx(g, m);
    for (const Ket& s : pauli::eigenstates()) {
      CHECK(std::abs(noise_mean(ctx, s, m->xi)) <= 1e-10);
    }
  }
}

TEST_CASE("disturbance bias law") {
  const auto m = meter(6.0);
  CHECK(disturbance_bias_coefficient(0.3, 6.0) ==
        doctest::Approx(-0.649356874966805).epsilon(1e-14));
  for (double g : {0.3, 0.8, 2.4}) {
    const JointContext ctx(g, m);
    const double coeff = disturbance_bias_coefficient(g, 6.0);
    for (const Ket& s : pauli::eigenstates()) {
      const Complex expected = coeff * expectation(pauli::x(), s);
      CHECK(std::abs(disturbance_mean(ctx, s, m->xi) - expected) <= 1e-8);
    }
  }
}

TEST_CASE("disturbance range and periodicity") {
  const double alpha2 = 2.0;
  const auto m = meter(alpha2);
  const double cap = 2.0 * (1.0 - std::exp(-2.0 * alpha2)) + 1e-9;
  for (int k = 0; k < 40; ++k) {
    const double g = 0.08 * k;
    const EDRPoint a = edr_point(m, g);
    const EDRPoint b = edr_point(m, g + pi);
    CHECK(a.eta2 >= 0.0);
    CHECK(a.eta2 <= cap);
    CHECK(std::abs(a.eta2 - b.eta2) <= 1e-12);
  }
}

TEST_CASE("analytic forms") {
  CHECK(square_error_analytic(pi / 4, 6.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(square_disturbance_analytic(pi / 4, 6.0) ==
        doctest::Approx(1.99504249564667).epsilon(1e-14));
  CHECK_THROWS_AS(square_error_analytic(pi, 6.0), CalibrationSingular);
  CHECK(std::abs(square_disturbance_analytic(pi, 6.0)) <= 1e-15);
  // Small-g limit approaches the weak interaction form 1 / (4 g^2 alpha2).
  const double g = 1e-3;
  CHECK(rel(square_error_analytic(g, 6.0), 1.0 / (4 * g * g * 6.0)) <= 2e-6);
  CHECK(std::abs(square_error_analytic(0.3, 6.0) - square_error_analytic(0.3 + pi / 2, 6.0)) <=
        1e-12);
}

TEST_CASE("squeezed meter error matches its moment formula") {
  const auto m = meter(9.0, 0.3);
  const StokesMoments mom = stokes_moments(m->xi, m->stokes);
  const double sx2 = mom.variance[1] + mom.mean[1] * mom.mean[1];
  for (double g : {0.1, 0.3, 0.7}) {
    const EDRPoint p = edr_point(m, g);
    const double oracle = square_error_from_moments(g, mom.mean[1], mom.variance[2], sx2);
    CHECK(rel(*p.eps2, oracle) <= 1e-9);
  }
}

TEST_CASE("phase-space and exact coherent results agree for small g") {
  for (double alpha2 : {6.0, 12.0}) {
    const auto m = meter(alpha2);
    for (double g : {0.01, 0.03, 0.05}) {
      const EDRPoint p = edr_point(m, g);
      const double chi = g * std::sqrt(alpha2);
      CHECK(rel(*p.eps2, eps2_psa(chi)) <= 0.01);
      CHECK(rel(p.eta2, eta2_psa(chi)) <= 0.01);
    }
  }
}

TEST_CASE("edr_point from a measurement config") {
  MeasurementConfig cfg;
  cfg.g = pi / 4;
  cfg.alpha = Complex(std::sqrt(6.0), 0.0);
  const EDRPoint p = edr_point(cfg);
  CHECK(rel(*p.eps2, 1.0 / 6.0) <= 1e-9);
  cfg.auto_cutoff = false;
  cfg.cutoff = 4;
  CHECK_THROWS_AS(edr_point(cfg), NormDeficitExceeded);
}
