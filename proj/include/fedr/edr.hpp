#pragma once

#include <optional>
#include <string>

#include "fedr/faraday.hpp"

namespace fedr {

/// One sample of square error and square disturbance.
struct EDRPoint {
  double g = 0.0;
  double alpha2 = 0.0;
  double r = 0.0;
  int cutoff = 0;

  // Empty when sin 2g vanishes (calibration singular).
  std::optional<double> eps2;
  std::optional<double> eps2_analytic;
  double eta2 = 0.0;
  double eta2_analytic = 0.0;

  double bias_noise = 0.0;        // max |<N>| over the Pauli eigenstates
  double bias_disturbance = 0.0;  // max |<D>| over the Pauli eigenstates
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double c_ab = 0.0;
  double norm_deficit = 0.0;

  bool singular() const { return !eps2.has_value(); }
  std::optional<double> eps2_gap() const;  // relative numeric/analytic gap
  double eta2_gap() const;
};

/// N = M_T - sigma_z (x) I. Propagates CalibrationSingular.
Operator noise_operator(const JointContext& ctx);
/// D = B_T - sigma_x (x) I.
Operator disturbance_operator(const JointContext& ctx);

/// N |Psi> and D |Psi> without materializing joint operators: the state is
/// evolved, acted on, and evolved back (Heisenberg-picture operators applied
/// to the initial state).
Ket apply_noise(const JointContext& ctx, const Ket& joint);
Ket apply_disturbance(const JointContext& ctx, const Ket& joint);

/// eps^2 = <Psi|N^2|Psi> = ||N Psi||^2 for Psi = psi (x) xi.
double square_error_numeric(const JointContext& ctx, const Ket& psi, const Ket& xi);
/// eta^2 = <Psi|D^2|Psi> = ||D Psi||^2.
double square_disturbance_numeric(const JointContext& ctx, const Ket& psi, const Ket& xi);

/// Same quantities recomputed in the Schroedinger picture: the evolved state
/// U Psi is measured against Y / c - U A0 U^dagger (resp. U B0 U^dagger - B0
/// rotated into the evolved frame).
double square_error_schrodinger(const JointContext& ctx, const Ket& psi, const Ket& xi);
double square_disturbance_schrodinger(const JointContext& ctx, const Ket& psi,
                                      const Ket& xi);

Complex noise_mean(const JointContext& ctx, const Ket& psi, const Ket& xi);
Complex disturbance_mean(const JointContext& ctx, const Ket& psi, const Ket& xi);

/// 1 / (alpha2 sin^2 2g); CalibrationSingular when |sin 2g| is below tolerance.
double square_error_analytic(double g, double alpha2);
/// 2 (1 - exp(-2 alpha2 sin^2 g)).
double square_disturbance_analytic(double g, double alpha2);
/// exp(-2 alpha2 sin^2 g) - 1: coefficient of sigma_x in <D>_xi.
double disturbance_bias_coefficient(double g, double alpha2);

/// Square error for a meter with <Sy> = <{Sx,Sy}> = 0 in terms of its moments:
/// (Var Sy cot^2 2g + <Sx^2>) / <Sx>^2 - 1.
double square_error_from_moments(double g, double mean_sx, double var_sy, double mean_sx2);

/// Fills every field for the sigma_y eigenstate system preparation. Singular
/// calibration leaves eps2 empty rather than throwing.
EDRPoint edr_point(const std::shared_ptr<const MeterSetup>& meter, double g);
EDRPoint edr_point(const MeasurementConfig& cfg);

}  // namespace fedr
