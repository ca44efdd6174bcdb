#pragma once

#include <array>
#include <utility>
#include <vector>

#include "fedr/linalg.hpp"

namespace fedr {

/// Two-mode (H, V) Fock basis truncated at total photon number n_max.
/// States are ordered by (n_H + n_V, n_H), so each photon-number shell is a
/// contiguous block of n + 1 states.
class MeterBasis {
 public:
  explicit MeterBasis(int n_max);

  int n_max() const { return n_max_; }
  Index size() const { return meter_dim(n_max_); }
  BasisTag tag() const { return BasisTag::meter(n_max_); }

  /// (n_H, n_V) of basis state i.
  std::pair<int, int> state(Index i) const { return states_[static_cast<size_t>(i)]; }
  const std::vector<std::pair<int, int>>& states() const { return states_; }

  static Index index(int n_h, int n_v) {
    const Index n = n_h + n_v;
    return n * (n + 1) / 2 + n_h;
  }
  static Index shell_offset(int n) { return static_cast<Index>(n) * (n + 1) / 2; }

 private:
  int n_max_;
  std::vector<std::pair<int, int>> states_;
};

struct StokesSet {
  Operator s0;
  Operator sx;
  Operator sy;
  Operator sz;
};

/// S0 = n_H + n_V, Sx = n_H - n_V, Sy = a_H^+ a_V + a_H a_V^+,
/// Sz = -i (a_H^+ a_V - a_H a_V^+). All four conserve total photon number, so
/// the truncated algebra [Sx, Sy] = 2i Sz (and cyclic) closes.
StokesSet build_stokes(const MeterBasis& basis);

/// Eigendecomposition of Sz one photon-number shell at a time. The spectrum
/// of Sz on shell n is {-n, -n+2, ..., n} (circular-mode number difference);
/// eigenvalues are snapped to those integers.
class ShellSpectrum {
 public:
  explicit ShellSpectrum(const Operator& number_conserving);

  const BasisTag& basis() const { return tag_; }
  /// All eigenvalues, shell by shell.
  Eigen::VectorXd values() const;

  /// f(op) as a dense operator (block diagonal by shell).
  template <class F>
  Operator function(F&& f) const {
    Matrix out = Matrix::Zero(tag_.dim(), tag_.dim());
    for (const auto& s : shells_) {
      Vector d(s.values.size());
      for (Index i = 0; i < d.size(); ++i) d[i] = Complex(f(s.values[i]));
      out.block(s.offset, s.offset, s.vectors.rows(), s.vectors.rows()) =
          s.vectors * d.asDiagonal() * s.vectors.adjoint();
    }
    return Operator(std::move(out), tag_);
  }

  /// f(op) applied to a vector segment living on this space.
  template <class F>
  void apply_function(F&& f, Eigen::Ref<Vector> x) const {
    for (const auto& s : shells_) {
      const Index n = s.vectors.rows();
      Vector c = s.vectors.adjoint() * x.segment(s.offset, n);
      for (Index i = 0; i < n; ++i) c[i] *= Complex(f(s.values[i]));
      x.segment(s.offset, n) = s.vectors * c;
    }
  }

 private:
  struct Shell {
    Index offset;
    Eigen::VectorXd values;
    Matrix vectors;
  };
  std::vector<Shell> shells_;
  BasisTag tag_;
};

/// Squeezing z = r e^{i theta}. Meter preparation enforces the
/// amplitude-squeezing phase convention phi - theta/2 = 0 with phi = arg(alpha).
struct SqueezeSpec {
  double r = 0.0;
  double theta = 0.0;

  /// Same magnitude with theta = 2 arg(alpha).
  SqueezeSpec aligned_with(Complex alpha) const;
};

struct PreparationOptions {
  double tail_tol = tol::default_tail;
  int ceiling = tol::default_cutoff_ceiling;
  /// Extra single-mode levels used while exponentiating squeeze/displacement
  /// generators: max(padding_min, ceil(padding_fraction * n_max)).
  double padding_fraction = 0.4;
  int padding_min = 10;
};

int working_cutoff(int n_max, const PreparationOptions& opt = {});

/// Smallest n_max whose prepared state has norm deficit <= tail_tol.
/// Throws std::invalid_argument for alpha2 < 0 or tail_tol outside (0, 1e-6],
/// CutoffCeilingExceeded when no n_max <= ceiling works.
int choose_cutoff(double alpha2, double r, double tail_tol = tol::default_tail,
                  int ceiling = tol::default_cutoff_ceiling);

/// |alpha>_H |0>_V projected on the basis, not renormalized.
/// Throws NormDeficitExceeded when the truncation loses more than tail_tol.
Ket coherent_state(Complex alpha, const MeterBasis& basis,
                   double tail_tol = tol::default_tail);

/// D_H(alpha) S_H(z) S_V(z) |0>_H |0>_V, not renormalized. Each mode is
/// prepared in a padded single-mode space by exponentiating its generator
/// spectrally, then the product is projected onto the total-number basis.
Ket squeezed_coherent_state(Complex alpha, SqueezeSpec z, const MeterBasis& basis,
                            const PreparationOptions& opt = {});

struct StokesMoments {
  // Order: S0, Sx, Sy, Sz.
  std::array<double, 4> mean{};
  std::array<double, 4> variance{};
  double norm_deficit = 0.0;
};

StokesMoments stokes_moments(const Ket& state, const StokesSet& stokes);

/// Closed-form moments of the displaced squeezed state (r = 0: coherent).
StokesMoments predicted_moments(double alpha2, double r);

}  // namespace fedr
