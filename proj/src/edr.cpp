#include "fedr/edr.hpp"

#include <algorithm>
#include <cmath>

#include "fedr/psa.hpp"

namespace fedr {

std::optional<double> EDRPoint::eps2_gap() const {
  if (!eps2 || !eps2_analytic) return std::nullopt;
  return std::abs(*eps2 - *eps2_analytic) / std::abs(*eps2_analytic);
}

double EDRPoint::eta2_gap() const {
  const double scale = std::abs(eta2_analytic);
  const double diff = std::abs(eta2 - eta2_analytic);
  return scale > 0.0 ? diff / scale : diff;
}

Operator noise_operator(const JointContext& ctx) {
  const Operator a0 = tensor(pauli::z(), Operator::identity(ctx.meter().basis.tag()));
  return calibrated_meter(ctx) - a0;
}

Operator disturbance_operator(const JointContext& ctx) {
  const Operator b0 = tensor(pauli::x(), Operator::identity(ctx.meter().basis.tag()));
  return heisenberg_bx(ctx) - b0;
}

namespace {

Vector difference(const Ket& a, const Ket& b) { return a.amplitudes() - b.amplitudes(); }

Ket joint_state(const JointContext& ctx, const Ket& psi, const Ket& xi) {
  Ket joint = tensor(psi, xi);
  if (!(joint.basis() == ctx.basis())) {
    throw DimensionMismatch("product state " + joint.basis().label() +
                            " does not match context " + ctx.basis().label());
  }
  return joint;
}

}  // namespace

Ket apply_noise(const JointContext& ctx, const Ket& joint) {
  const double c = calibration_factor(ctx);
  const Ket evolved = ctx.evolve(joint);
  const Ket measured = ctx.evolve_adjoint(apply_meter(ctx.meter().stokes.sy, evolved));
  const Ket a0 = apply_spin(pauli::z(), joint);
  return Ket(c * measured.amplitudes() - a0.amplitudes(), joint.basis());
}

Ket apply_disturbance(const JointContext& ctx, const Ket& joint) {
  const Operator sx = pauli::x();
  const Ket bt = ctx.evolve_adjoint(apply_spin(sx, ctx.evolve(joint)));
  return Ket(difference(bt, apply_spin(sx, joint)), joint.basis());
}

double square_error_numeric(const JointContext& ctx, const Ket& psi, const Ket& xi) {
  return apply_noise(ctx, joint_state(ctx, psi, xi)).amplitudes().squaredNorm();
}

double square_disturbance_numeric(const JointContext& ctx, const Ket& psi, const Ket& xi) {
  return apply_disturbance(ctx, joint_state(ctx, psi, xi)).amplitudes().squaredNorm();
}

double square_error_schrodinger(const JointContext& ctx, const Ket& psi, const Ket& xi) {
  const double c = calibration_factor(ctx);
  const Ket evolved = ctx.evolve(joint_state(ctx, psi, xi));
  const Ket y = apply_meter(ctx.meter().stokes.sy, evolved);
  // U A0 U^dagger acting on the evolved state.
  const Ket a0 = ctx.evolve(apply_spin(pauli::z(), ctx.evolve_adjoint(evolved)));
  return (c * y.amplitudes() - a0.amplitudes()).squaredNorm();
}

double square_disturbance_schrodinger(const JointContext& ctx, const Ket& psi,
                                      const Ket& xi) {
  const Operator sx = pauli::x();
  const Ket evolved = ctx.evolve(joint_state(ctx, psi, xi));
  const Ket b0 = apply_spin(sx, evolved);
  const Ket rotated = ctx.evolve(apply_spin(sx, ctx.evolve_adjoint(evolved)));
  return difference(b0, rotated).squaredNorm();
}

Complex noise_mean(const JointContext& ctx, const Ket& psi, const Ket& xi) {
  const Ket joint = joint_state(ctx, psi, xi);
  return joint.amplitudes().dot(apply_noise(ctx, joint).amplitudes());
}

Complex disturbance_mean(const JointContext& ctx, const Ket& psi, const Ket& xi) {
  const Ket joint = joint_state(ctx, psi, xi);
  return joint.amplitudes().dot(apply_disturbance(ctx, joint).amplitudes());
}

double square_error_analytic(double g, double alpha2) {
  const double s = std::sin(2.0 * g);
  if (std::abs(s) <= tol::calibration_singular) {
    throw CalibrationSingular("sin(2g) vanishes at g = " + std::to_string(g));
  }
  return 1.0 / (alpha2 * s * s);
}

double square_disturbance_analytic(double g, double alpha2) {
  return -2.0 * disturbance_bias_coefficient(g, alpha2);
}

double disturbance_bias_coefficient(double g, double alpha2) {
  const double s = std::sin(g);
  return std::expm1(-2.0 * alpha2 * s * s);
}

double square_error_from_moments(double g, double mean_sx, double var_sy, double mean_sx2) {
  const double s = std::sin(2.0 * g);
  if (std::abs(s) <= tol::calibration_singular) {
    throw CalibrationSingular("sin(2g) vanishes at g = " + std::to_string(g));
  }
  const double cot = std::cos(2.0 * g) / s;
  return (var_sy * cot * cot + mean_sx2) / (mean_sx * mean_sx) - 1.0;
}

EDRPoint edr_point(const std::shared_ptr<const MeterSetup>& meter, double g) {
  const JointContext ctx(g, meter);
  const Ket psi = pauli::y_plus();
  const Ket& xi = meter->xi;

  EDRPoint p;
  p.g = g;
  p.alpha2 = meter->alpha2;
  p.r = meter->r;
  p.cutoff = meter->basis.n_max();
  p.norm_deficit = xi.norm_deficit();

  const Complex mz = expectation(pauli::z(), psi);
  const Complex mx = expectation(pauli::x(), psi);
  const Complex my = expectation(pauli::y(), psi);
  p.sigma_a = std::sqrt(std::max(0.0, 1.0 - std::norm(mz)));
  p.sigma_b = std::sqrt(std::max(0.0, 1.0 - std::norm(mx)));
  // |<[sigma_z, sigma_x]>| / 2 = |<2i sigma_y>| / 2
  p.c_ab = std::abs(my);

  p.eta2 = square_disturbance_numeric(ctx, psi, xi);
  for (const Ket& s : pauli::eigenstates()) {
    p.bias_disturbance = std::max(p.bias_disturbance, std::abs(disturbance_mean(ctx, s, xi)));
  }
  try {
    p.eps2 = square_error_numeric(ctx, psi, xi);
    for (const Ket& s : pauli::eigenstates()) {
      p.bias_noise = std::max(p.bias_noise, std::abs(noise_mean(ctx, s, xi)));
    }
  } catch (const CalibrationSingular&) {
    p.eps2.reset();
  }

  // Coherent meters have exact closed forms; squeezed meters only the
  // phase-space approximation.
  if (p.r == 0.0) {
    p.eta2_analytic = square_disturbance_analytic(g, p.alpha2);
    if (!p.singular()) p.eps2_analytic = square_error_analytic(g, p.alpha2);
  } else {
    const double chi = std::abs(PsaConfig(g, std::sqrt(p.alpha2), std::exp(-p.r)).chi());
    p.eta2_analytic = eta2_psa(chi);
    if (!p.singular()) p.eps2_analytic = eps2_psa(chi);
  }
  return p;
}

EDRPoint edr_point(const MeasurementConfig& cfg) { return edr_point(prepare_meter(cfg), cfg.g); }

}  // namespace fedr
