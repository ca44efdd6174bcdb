#pragma once

#include <vector>

namespace fedr {

// Phase-space approximation: the meter is reduced to canonical operators
// q = Sy / sqrt<Sx>, p = Sz / sqrt<Sx> with [q, p] = 2i (not the textbook i).
// A meter squeezed to Var q = sigma^2 then has Var p = 1 / sigma^2.

struct PsaConfig {
  double g = 0.0;
  double alpha_mag = 0.0;  // |alpha|
  double sigma = 1.0;      // squeezing parameter, e^{-r}

  PsaConfig(double g, double alpha_mag, double sigma);
  /// Measurement strength g |alpha| / sigma, always recomputed.
  double chi() const { return g * alpha_mag / sigma; }
};

/// 1 / (4 chi^2). Throws CalibrationSingular for chi == 0, invalid_argument for chi < 0.
double eps2_psa(double chi);
/// 2 (1 - exp(-2 chi^2)).
double eta2_psa(double chi);

/// Weak interaction limit: 1 / (4 chi^2) and 4 chi^2.
double eps2_wia(double chi);
double eta2_wia(double chi);
/// False once chi reaches tol::wia_validity.
bool wia_valid(double chi);

/// Nodes and weights for integral of f(x) exp(-x^2) over the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// Golub-Welsch construction.
GaussHermiteRule gauss_hermite(int n);

struct GaussianMoments {
  double q2_mean = 0.0;   // <q^2> over |psi(q)|^2 ~ exp(-q^2 / 2 sigma^2)
  double cos_mean = 0.0;  // <cos(2 g |alpha| p)> over the momentum Gaussian
  int nodes = 0;          // quadrature size that met the convergence check
};

/// Integrates both expectations with Gauss-Hermite rules, doubling the node
/// count until successive results agree to 1e-12 absolute. Throws
/// QuadratureNotConverged past max_nodes.
GaussianMoments gaussian_oracle(const PsaConfig& cfg, int max_nodes = 512);

}  // namespace fedr
