#include "fedr/psa.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fedr/errors.hpp"
#include "fedr/tolerances.hpp"

namespace fedr {

PsaConfig::PsaConfig(double g_, double alpha_mag_, double sigma_)
    : g(g_), alpha_mag(alpha_mag_), sigma(sigma_) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("squeezing parameter sigma must be positive");
  }
}

namespace {
void require_chi(double chi) {
  if (!(chi >= 0.0) || !std::isfinite(chi)) {
    throw std::invalid_argument("measurement strength chi must be finite and >= 0");
  }
}
}  // namespace

double eps2_psa(double chi) {
  require_chi(chi);
  if (chi == 0.0) throw CalibrationSingular("chi = 0: square error diverges");
  return 1.0 / (4.0 * chi * chi);
}

double eta2_psa(double chi) {
  require_chi(chi);
  return -2.0 * std::expm1(-2.0 * chi * chi);
}

double eps2_wia(double chi) { return eps2_psa(chi); }

double eta2_wia(double chi) {
  require_chi(chi);
  return 4.0 * chi * chi;
}

bool wia_valid(double chi) { return chi < tol::wia_validity; }

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Hermite rule needs n >= 1");
  // Jacobi matrix of the monic Hermite recurrence: off-diagonal sqrt(k/2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<size_t>(i)] = solver.eigenvalues()[i];
    rule.weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

namespace {

// Both densities are Gaussians; with x the standardized variable each
// expectation becomes integral f(x) exp(-x^2) dx / integral exp(-x^2) dx.
// Dividing by the rule's own weight sum keeps <1> = 1 exactly.
GaussianMoments integrate(const PsaConfig& cfg, int n) {
  const GaussHermiteRule rule = gauss_hermite(n);
  // q = sqrt(2) sigma x for density exp(-q^2 / 2 sigma^2);
  // p = sqrt(2) x / sigma for density exp(-sigma^2 p^2 / 2).
  const double q_scale = std::sqrt(2.0) * cfg.sigma;
  const double p_scale = std::sqrt(2.0) / cfg.sigma;
  const double freq = 2.0 * cfg.g * cfg.alpha_mag;

  GaussianMoments out;
  out.nodes = n;
  double total = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double w = rule.weights[i];
    const double q = q_scale * x;
    total += w;
    out.q2_mean += w * q * q;
    out.cos_mean += w * std::cos(freq * p_scale * x);
  }
  out.q2_mean /= total;
  out.cos_mean /= total;
  return out;
}

}  // namespace

GaussianMoments gaussian_oracle(const PsaConfig& cfg, int max_nodes) {
  constexpr double kTolerance = 1e-12;
  GaussianMoments prev = integrate(cfg, 8);
  for (int n = 16; n <= max_nodes; n *= 2) {
    GaussianMoments next = integrate(cfg, n);
    if (std::abs(next.q2_mean - prev.q2_mean) <= kTolerance &&
        std::abs(next.cos_mean - prev.cos_mean) <= kTolerance) {
      return next;
    }
    prev = next;
  }
  throw QuadratureNotConverged("Gauss-Hermite quadrature did not converge within " +
                               std::to_string(max_nodes) + " nodes");
}

}  // namespace fedr
