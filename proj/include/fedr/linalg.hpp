#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <type_traits>

#include "fedr/errors.hpp"
#include "fedr/tolerances.hpp"

namespace fedr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Identifies which Hilbert space an operator or ket lives on.
/// Meter spaces are two-mode Fock spaces truncated at total photon number
/// n_max; joint spaces are spin (outer index) times meter (inner index).
struct BasisTag {
  enum class Kind { Spin, Meter, Joint, Generic };

  Kind kind = Kind::Generic;
  int n_max = 0;
  Index generic_dim = 0;

  static BasisTag spin() { return {Kind::Spin, 0, 0}; }
  static BasisTag meter(int n_max) { return {Kind::Meter, n_max, 0}; }
  static BasisTag joint(int n_max) { return {Kind::Joint, n_max, 0}; }
  static BasisTag generic(Index dim) { return {Kind::Generic, 0, dim}; }

  Index dim() const;
  std::string label() const;

  friend bool operator==(const BasisTag&, const BasisTag&) = default;
};

inline Index meter_dim(int n_max) {
  return static_cast<Index>(n_max + 1) * (n_max + 2) / 2;
}

class Ket {
 public:
  Ket(Vector amplitudes, BasisTag tag);

  Index dim() const { return amps_.size(); }
  const BasisTag& basis() const { return tag_; }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](Index i) const { return amps_[i]; }

  double norm() const { return amps_.norm(); }
  /// 1 - <ket|ket>: probability mass missing from a truncated state.
  double norm_deficit() const { return 1.0 - amps_.squaredNorm(); }

 private:
  Vector amps_;
  BasisTag tag_;
};

class Operator {
 public:
  /// Throws DimensionMismatch for non-square input or a tag of the wrong size,
  /// std::invalid_argument for non-finite entries. With assert_hermitian the
  /// matrix is checked against tol::hermiticity and flagged.
  Operator(Matrix entries, BasisTag tag, bool assert_hermitian = false);

  static Operator identity(BasisTag tag);
  static Operator zero(BasisTag tag);

  Index dim() const { return m_.rows(); }
  const BasisTag& basis() const { return tag_; }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  bool flagged_hermitian() const { return hermitian_; }
  bool is_hermitian(double tol = tol::hermiticity) const;

  Operator adjoint() const;
  Ket apply(const Ket& ket) const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);
  friend Operator operator*(const Operator& a, Complex s) { return s * a; }
  friend Operator operator/(const Operator& a, Complex s) { return (1.0 / s) * a; }

 private:
  Matrix m_;
  BasisTag tag_;
  bool hermitian_ = false;
};

/// Kronecker product: result[(i,k),(j,l)] = a[i,j] * b[k,l].
Operator tensor(const Operator& a, const Operator& b);
Ket tensor(const Ket& a, const Ket& b);

/// <state|op|state>, no renormalization.
Complex expectation(const Operator& op, const Ket& state);

Operator commutator(const Operator& a, const Operator& b);

double max_abs_diff(const Operator& a, const Operator& b);
double max_abs_entry(const Operator& a);

/// Spectral decomposition op = V diag(values) V^dagger of a Hermitian operator.
class HermitianSpectrum {
 public:
  explicit HermitianSpectrum(const Operator& op);

  const Eigen::VectorXd& values() const { return values_; }
  const Matrix& vectors() const { return vectors_; }
  const BasisTag& basis() const { return tag_; }

  /// V f(Lambda) V^dagger; f maps double to double or to Complex.
  template <class F>
  Operator function(F&& f) const {
    return Operator(vectors_ * diag(f).asDiagonal() * vectors_.adjoint(), tag_);
  }

  template <class F>
  Ket apply_function(F&& f, const Ket& ket) const {
    if (!(ket.basis() == tag_)) {
      throw DimensionMismatch("spectrum/ket basis mismatch: " + tag_.label() +
                              " vs " + ket.basis().label());
    }
    Vector coeffs = vectors_.adjoint() * ket.amplitudes();
    coeffs = diag(f).cwiseProduct(coeffs);
    return Ket(vectors_ * coeffs, tag_);
  }

 private:
  template <class F>
  Vector diag(F&& f) const {
    Vector d(values_.size());
    for (Index i = 0; i < values_.size(); ++i) d[i] = Complex(f(values_[i]));
    return d;
  }

  Eigen::VectorXd values_;
  Matrix vectors_;
  BasisTag tag_;
};

/// f(op) through a full Hermitian eigendecomposition. Throws NotHermitian.
template <class F>
Operator hermitian_function(const Operator& op, F&& f) {
  return HermitianSpectrum(op).function(std::forward<F>(f));
}

namespace pauli {
Operator identity();
Operator x();
Operator y();
Operator z();

Ket up();    // |0>, sigma_z = +1
Ket down();  // |1>, sigma_z = -1
/// The six Pauli eigenstates: z+, z-, x+, x-, y+, y-.
std::array<Ket, 6> eigenstates();
/// (|0> + i|1>)/sqrt(2), the +1 eigenstate of sigma_y.
Ket y_plus();
}  // namespace pauli

}  // namespace fedr
