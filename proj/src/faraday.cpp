#include "fedr/faraday.hpp"

#include <cmath>

namespace fedr {

namespace {

Ket prepare_xi(const MeasurementConfig& cfg, const MeterBasis& basis) {
  if (cfg.squeeze && cfg.squeeze->r != 0.0) {
    PreparationOptions opt;
    opt.tail_tol = cfg.tail_tol;
    opt.ceiling = cfg.ceiling;
    return squeezed_coherent_state(cfg.alpha, *cfg.squeeze, basis, opt);
  }
  return coherent_state(cfg.alpha, basis, cfg.tail_tol);
}

void require_joint(const Ket& joint, const BasisTag& expected) {
  if (!(joint.basis() == expected)) {
    throw DimensionMismatch("joint ket basis " + joint.basis().label() + " vs " +
                            expected.label());
  }
}

}  // namespace

std::shared_ptr<const MeterSetup> prepare_meter(const MeasurementConfig& cfg) {
  if (!std::isfinite(cfg.g)) throw std::invalid_argument("g must be finite");
  int cutoff = cfg.cutoff;
  if (cfg.auto_cutoff) {
    cutoff = std::max(cfg.cutoff, choose_cutoff(cfg.alpha2(), cfg.r(), cfg.tail_tol,
                                                 cfg.ceiling));
  }
  if (cutoff > cfg.ceiling) {
    throw CutoffCeilingExceeded("cutoff " + std::to_string(cutoff) + " exceeds ceiling " +
                                std::to_string(cfg.ceiling));
  }
  MeterBasis basis(cutoff);
  StokesSet stokes = build_stokes(basis);
  ShellSpectrum spectrum(stokes.sz);
  Ket xi = prepare_xi(cfg, basis);
  const double mean_sx = expectation(stokes.sx, xi).real();
  return std::make_shared<const MeterSetup>(
      MeterSetup{cfg.alpha2(), cfg.r(), std::move(basis), std::move(stokes), std::move(spectrum), std::move(xi),
                 mean_sx});
}

JointContext::JointContext(double g, std::shared_ptr<const MeterSetup> meter)
    : g_(g), meter_(std::move(meter)) {
  if (!std::isfinite(g_)) throw std::invalid_argument("g must be finite");
  if (!meter_) throw std::invalid_argument("joint context needs a meter");
}

Operator JointContext::unitary() const {
  const auto& spec = meter_->sz_spectrum;
  const Operator plus = spec.function([g = g_](double l) { return std::polar(1.0, -g * l); });
  const Operator minus = spec.function([g = g_](double l) { return std::polar(1.0, g * l); });
  const Index m = plus.dim();
  Matrix u = Matrix::Zero(2 * m, 2 * m);
  u.topLeftCorner(m, m) = plus.matrix();
  u.bottomRightCorner(m, m) = minus.matrix();
  return Operator(std::move(u), basis());
}

Ket JointContext::rotate(const Ket& joint, double sign) const {
  require_joint(joint, basis());
  const Index m = meter_->basis.size();
  Vector out = joint.amplitudes();
  // sigma_z = +1 block: exp(-i sign g Sz); sigma_z = -1 block: exp(+i sign g Sz).
  const double phase = sign * g_;
  meter_->sz_spectrum.apply_function([phase](double l) { return std::polar(1.0, -phase * l); },
                                     out.head(m));
  meter_->sz_spectrum.apply_function([phase](double l) { return std::polar(1.0, phase * l); },
                                     out.tail(m));
  return Ket(std::move(out), joint.basis());
}

Ket JointContext::evolve(const Ket& joint) const { return rotate(joint, 1.0); }
Ket JointContext::evolve_adjoint(const Ket& joint) const { return rotate(joint, -1.0); }

JointContext build_unitary(const MeasurementConfig& cfg,
                           std::shared_ptr<const MeterSetup> meter) {
  return JointContext(cfg.g, std::move(meter));
}

Operator build_unitary_generic(double g, const StokesSet& stokes) {
  const Operator generator = tensor(pauli::z(), stokes.sz);
  return hermitian_function(generator, [g](double l) { return std::polar(1.0, -g * l); });
}

Operator heisenberg_sy(const JointContext& ctx) {
  const Operator u = ctx.unitary();
  const Operator y = tensor(pauli::identity(), ctx.meter().stokes.sy);
  return u.adjoint() * y * u;
}

Operator heisenberg_sy_closed_form(double g, const StokesSet& stokes) {
  return std::cos(2.0 * g) * tensor(pauli::identity(), stokes.sy) +
         std::sin(2.0 * g) * tensor(pauli::z(), stokes.sx);
}

double calibration_factor(const JointContext& ctx) {
  const double s = std::sin(2.0 * ctx.g());
  if (std::abs(s) <= tol::calibration_singular) {
    throw CalibrationSingular("sin(2g) = " + std::to_string(s) + " at g = " +
                              std::to_string(ctx.g()) +
                              ": no Sy shift reaches the meter, the error diverges");
  }
  if (std::abs(ctx.mean_sx()) <= tol::calibration_singular) {
    throw ZeroMeanSx("<Sx> of the meter state vanishes; calibration undefined");
  }
  return 1.0 / (ctx.mean_sx() * s);
}

Operator calibrated_meter(const JointContext& ctx) {
  const double c = calibration_factor(ctx);
  return c * heisenberg_sy(ctx);
}

Operator heisenberg_bx(const JointContext& ctx) {
  const Operator u = ctx.unitary();
  const Operator x = tensor(pauli::x(), Operator::identity(ctx.meter().basis.tag()));
  return u.adjoint() * x * u;
}

Operator heisenberg_bx_closed_form(double g, const StokesSet& stokes) {
  const HermitianSpectrum sz(stokes.sz);
  const Operator c = sz.function([g](double l) { return std::cos(2.0 * g * l); });
  const Operator s = sz.function([g](double l) { return std::sin(2.0 * g * l); });
  return tensor(pauli::x(), c) - tensor(pauli::y(), s);
}

Ket apply_spin(const Operator& spin_op, const Ket& joint) {
  if (spin_op.basis().kind != BasisTag::Kind::Spin ||
      joint.basis().kind != BasisTag::Kind::Joint) {
    throw DimensionMismatch("apply_spin needs a spin operator and a joint ket");
  }
  const Index m = joint.dim() / 2;
  const Vector& v = joint.amplitudes();
  Vector out(joint.dim());
  out.head(m) = spin_op(0, 0) * v.head(m) + spin_op(0, 1) * v.tail(m);
  out.tail(m) = spin_op(1, 0) * v.head(m) + spin_op(1, 1) * v.tail(m);
  return Ket(std::move(out), joint.basis());
}

Ket apply_meter(const Operator& meter_op, const Ket& joint) {
  if (!(BasisTag::joint(meter_op.basis().n_max) == joint.basis()) ||
      meter_op.basis().kind != BasisTag::Kind::Meter) {
    throw DimensionMismatch("apply_meter: " + meter_op.basis().label() + " on " +
                            joint.basis().label());
  }
  const Index m = meter_op.dim();
  Vector out(joint.dim());
  out.head(m) = meter_op.matrix() * joint.amplitudes().head(m);
  out.tail(m) = meter_op.matrix() * joint.amplitudes().tail(m);
  return Ket(std::move(out), joint.basis());
}

}  // namespace fedr
