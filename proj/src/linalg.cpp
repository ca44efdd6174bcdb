#include "fedr/linalg.hpp"

#include <cmath>
#include <sstream>

namespace fedr {

NormDeficitExceeded::NormDeficitExceeded(double deficit, double tail_tol, int n_max)
    : Error([&] {
        std::ostringstream os;
        os << "norm deficit " << deficit << " exceeds tail tolerance " << tail_tol
           << " at cutoff n_max=" << n_max;
        return os.str();
      }()),
      deficit_(deficit) {}

Index BasisTag::dim() const {
  switch (kind) {
    case Kind::Spin: return 2;
    case Kind::Meter: return meter_dim(n_max);
    case Kind::Joint: return 2 * meter_dim(n_max);
    case Kind::Generic: return generic_dim;
  }
  return 0;
}

std::string BasisTag::label() const {
  switch (kind) {
    case Kind::Spin: return "spin";
    case Kind::Meter: return "meter(" + std::to_string(n_max) + ")";
    case Kind::Joint: return "joint(" + std::to_string(n_max) + ")";
    case Kind::Generic: return "generic(" + std::to_string(generic_dim) + ")";
  }
  return "?";
}

namespace {

void check_tag(Index dim, const BasisTag& tag) {
  if (tag.dim() != dim) {
    throw DimensionMismatch("basis " + tag.label() + " has dimension " +
                            std::to_string(tag.dim()) + ", data has " +
                            std::to_string(dim));
  }
}

void require_same_basis(const BasisTag& a, const BasisTag& b, const char* what) {
  if (!(a == b)) {
    throw DimensionMismatch(std::string(what) + ": " + a.label() + " vs " + b.label());
  }
}

BasisTag tensor_tag(const BasisTag& a, const BasisTag& b) {
  if (a.kind == BasisTag::Kind::Spin && b.kind == BasisTag::Kind::Meter) {
    return BasisTag::joint(b.n_max);
  }
  return BasisTag::generic(a.dim() * b.dim());
}

}  // namespace

Ket::Ket(Vector amplitudes, BasisTag tag) : amps_(std::move(amplitudes)), tag_(tag) {
  check_tag(amps_.size(), tag_);
  if (!amps_.allFinite()) throw std::invalid_argument("ket has non-finite amplitudes");
}

Operator::Operator(Matrix entries, BasisTag tag, bool assert_hermitian)
    : m_(std::move(entries)), tag_(tag) {
  if (m_.rows() != m_.cols()) {
    throw DimensionMismatch("operator must be square, got " + std::to_string(m_.rows()) +
                            "x" + std::to_string(m_.cols()));
  }
  check_tag(m_.rows(), tag_);
  if (!m_.allFinite()) throw std::invalid_argument("operator has non-finite entries");
  if (assert_hermitian) {
    if (!is_hermitian()) {
      throw NotHermitian("operator on " + tag_.label() + " is not Hermitian");
    }
    hermitian_ = true;
  }
}

Operator Operator::identity(BasisTag tag) {
  return Operator(Matrix::Identity(tag.dim(), tag.dim()), tag, true);
}

Operator Operator::zero(BasisTag tag) {
  return Operator(Matrix::Zero(tag.dim(), tag.dim()), tag, true);
}

bool Operator::is_hermitian(double tol) const {
  if (m_.size() == 0) return true;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::adjoint() const { return Operator(m_.adjoint(), tag_, hermitian_); }

Ket Operator::apply(const Ket& ket) const {
  require_same_basis(tag_, ket.basis(), "apply");
  return Ket(m_ * ket.amplitudes(), tag_);
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_basis(a.tag_, b.tag_, "operator +");
  return Operator(a.m_ + b.m_, a.tag_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_basis(a.tag_, b.tag_, "operator -");
  return Operator(a.m_ - b.m_, a.tag_);
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_basis(a.tag_, b.tag_, "operator *");
  return Operator(a.m_ * b.m_, a.tag_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.m_, a.tag_); }

Operator tensor(const Operator& a, const Operator& b) {
  const Index na = a.dim();
  const Index nb = b.dim();
  Matrix out(na * nb, na * nb);
  for (Index i = 0; i < na; ++i) {
    for (Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out), tensor_tag(a.basis(), b.basis()));
}

Ket tensor(const Ket& a, const Ket& b) {
  const Index nb = b.dim();
  Vector out(a.dim() * nb);
  for (Index i = 0; i < a.dim(); ++i) out.segment(i * nb, nb) = a[i] * b.amplitudes();
  return Ket(std::move(out), tensor_tag(a.basis(), b.basis()));
}

Complex expectation(const Operator& op, const Ket& state) {
  require_same_basis(op.basis(), state.basis(), "expectation");
  return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_basis(a.basis(), b.basis(), "max_abs_diff");
  if (a.dim() == 0) return 0.0;
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

double max_abs_entry(const Operator& a) {
  return a.dim() == 0 ? 0.0 : a.matrix().cwiseAbs().maxCoeff();
}

HermitianSpectrum::HermitianSpectrum(const Operator& op) : tag_(op.basis()) {
  if (!op.is_hermitian()) {
    throw NotHermitian("spectral decomposition needs a Hermitian operator on " +
                       tag_.label());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed on " + tag_.label());
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

namespace pauli {

using namespace std::complex_literals;

Operator identity() { return Operator::identity(BasisTag::spin()); }

Operator x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(m, BasisTag::spin(), true);
}

Operator y() {
  Matrix m(2, 2);
  m << 0, -1i, 1i, 0;
  return Operator(m, BasisTag::spin(), true);
}

Operator z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(m, BasisTag::spin(), true);
}

Ket up() { return Ket(Vector::Unit(2, 0), BasisTag::spin()); }
Ket down() { return Ket(Vector::Unit(2, 1), BasisTag::spin()); }

namespace {
Ket spin_ket(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return Ket(v / std::sqrt(2.0), BasisTag::spin());
}
}  // namespace

Ket y_plus() { return spin_ket(1.0, 1i); }

std::array<Ket, 6> eigenstates() {
  return {up(),
          down(),
          spin_ket(1.0, 1.0),
          spin_ket(1.0, -1.0),
          spin_ket(1.0, 1i),
          spin_ket(1.0, -1i)};
}

}  // namespace pauli

}  // namespace fedr
