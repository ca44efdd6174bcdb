#pragma once

#include <memory>
#include <optional>

#include "fedr/meter.hpp"

namespace fedr {

/// Parameters of one Faraday measurement. The measured spin observable is
/// always sigma_z and the disturbed one sigma_x.
struct MeasurementConfig {
  double g = 0.0;  // integrated interaction strength, radians
  Complex alpha{0.0, 0.0};
  std::optional<SqueezeSpec> squeeze;
  int cutoff = 0;  // total photon cutoff; 0 with auto_cutoff picks one
  bool auto_cutoff = true;
  double tail_tol = tol::default_tail;
  int ceiling = tol::default_cutoff_ceiling;

  double alpha2() const { return std::norm(alpha); }
  double r() const { return squeeze ? squeeze->r : 0.0; }
};

/// Everything about the meter that does not depend on g: basis, Stokes
/// operators, the shell-wise Sz spectrum, and the prepared meter state.
/// Immutable; shared read-only between sweep workers.
struct MeterSetup {
  double alpha2;  // nominal |alpha|^2
  double r;       // nominal squeezing magnitude
  MeterBasis basis;
  StokesSet stokes;
  ShellSpectrum sz_spectrum;
  Ket xi;
  double mean_sx;  // <Sx>_xi of the prepared (unrenormalized) state
};

/// Resolves the cutoff (choose_cutoff when cfg.auto_cutoff), prepares the
/// meter state and diagonalizes Sz.
std::shared_ptr<const MeterSetup> prepare_meter(const MeasurementConfig& cfg);

/// U_T = exp(-i g sigma_z (x) Sz) for one g, held as the shell-wise spectrum
/// of Sz: on the sigma_z = +1 (-1) block U acts as exp(-i g Sz) (exp(+i g Sz)).
class JointContext {
 public:
  JointContext(double g, std::shared_ptr<const MeterSetup> meter);

  double g() const { return g_; }
  double mean_sx() const { return meter_->mean_sx; }
  const MeterSetup& meter() const { return *meter_; }
  BasisTag basis() const { return BasisTag::joint(meter_->basis.n_max()); }

  /// Dense U_T built from the structured spectrum.
  Operator unitary() const;

  Ket evolve(const Ket& joint) const;          // U |Psi>
  Ket evolve_adjoint(const Ket& joint) const;  // U^dagger |Psi>

 private:
  Ket rotate(const Ket& joint, double sign) const;

  double g_;
  std::shared_ptr<const MeterSetup> meter_;
};

JointContext build_unitary(const MeasurementConfig& cfg,
                           std::shared_ptr<const MeterSetup> meter);

/// Reference path: full eigendecomposition of sigma_z (x) Sz, then exp(-i g lambda).
Operator build_unitary_generic(double g, const StokesSet& stokes);

/// U^dagger (I (x) Sy) U, by matrix products.
Operator heisenberg_sy(const JointContext& ctx);
/// (I (x) Sy) cos 2g + (sigma_z (x) Sx) sin 2g.
Operator heisenberg_sy_closed_form(double g, const StokesSet& stokes);

/// (I (x) Sy)_T / (<Sx>_xi sin 2g). Throws CalibrationSingular when
/// |sin 2g| <= tol::calibration_singular, ZeroMeanSx when <Sx>_xi ~ 0.
Operator calibrated_meter(const JointContext& ctx);
/// The calibration factor 1 / (<Sx>_xi sin 2g), with the same guards.
double calibration_factor(const JointContext& ctx);

/// U^dagger (sigma_x (x) I) U, by matrix products.
Operator heisenberg_bx(const JointContext& ctx);
/// sigma_x (x) cos(2g Sz) - sigma_y (x) sin(2g Sz), with the operator functions
/// taken through a full eigendecomposition of Sz.
Operator heisenberg_bx_closed_form(double g, const StokesSet& stokes);

// Operations on joint kets (spin index outer, meter index inner).
Ket apply_spin(const Operator& spin_op, const Ket& joint);
Ket apply_meter(const Operator& meter_op, const Ket& joint);

}  // namespace fedr
