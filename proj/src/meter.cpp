#include "fedr/meter.hpp"

#include <cmath>
#include <stdexcept>

namespace fedr {

MeterBasis::MeterBasis(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("meter cutoff must be non-negative");
  states_.reserve(static_cast<size_t>(meter_dim(n_max)));
  for (int n = 0; n <= n_max; ++n) {
    for (int n_h = 0; n_h <= n; ++n_h) states_.emplace_back(n_h, n - n_h);
  }
}

StokesSet build_stokes(const MeterBasis& basis) {
  using namespace std::complex_literals;
  const Index dim = basis.size();
  Matrix s0 = Matrix::Zero(dim, dim);
  Matrix sx = Matrix::Zero(dim, dim);
  Matrix sy = Matrix::Zero(dim, dim);
  Matrix sz = Matrix::Zero(dim, dim);

  for (Index col = 0; col < dim; ++col) {
    const auto [n_h, n_v] = basis.state(col);
    s0(col, col) = n_h + n_v;
    sx(col, col) = n_h - n_v;
    // a_H^+ a_V |n_h, n_v> = sqrt((n_h+1) n_v) |n_h+1, n_v-1>
    if (n_v > 0) {
      const Index row = MeterBasis::index(n_h + 1, n_v - 1);
      const double amp = std::sqrt(static_cast<double>(n_h + 1) * n_v);
      sy(row, col) += amp;
      sz(row, col) += -1i * amp;
    }
    // a_H a_V^+ |n_h, n_v> = sqrt(n_h (n_v+1)) |n_h-1, n_v+1>
    if (n_h > 0) {
      const Index row = MeterBasis::index(n_h - 1, n_v + 1);
      const double amp = std::sqrt(static_cast<double>(n_h) * (n_v + 1));
      sy(row, col) += amp;
      sz(row, col) += 1i * amp;
    }
  }

  const BasisTag tag = basis.tag();
  return {Operator(std::move(s0), tag, true), Operator(std::move(sx), tag, true),
          Operator(std::move(sy), tag, true), Operator(std::move(sz), tag, true)};
}

ShellSpectrum::ShellSpectrum(const Operator& op) : tag_(op.basis()) {
  if (tag_.kind != BasisTag::Kind::Meter) {
    throw DimensionMismatch("shell decomposition needs a meter operator, got " +
                            tag_.label());
  }
  if (!op.is_hermitian()) throw NotHermitian("shell decomposition needs a Hermitian operator");

  const Matrix& m = op.matrix();
  for (int n = 0; n <= tag_.n_max; ++n) {
    const Index off = MeterBasis::shell_offset(n);
    const Index size = n + 1;
    // Everything outside the diagonal block must vanish.
    const double outside = (m.block(off, 0, size, m.cols()).cwiseAbs().sum()) -
                           m.block(off, off, size, size).cwiseAbs().sum();
    if (outside > tol::hermiticity) {
      throw std::invalid_argument("operator does not conserve total photon number");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.block(off, off, size, size));
    Eigen::VectorXd values = solver.eigenvalues();
    for (Index i = 0; i < size; ++i) {
      const double nearest = std::round(values[i]);
      if (std::abs(values[i] - nearest) <= 1e-9) values[i] = nearest;
    }
    shells_.push_back({off, std::move(values), solver.eigenvectors()});
  }
}

Eigen::VectorXd ShellSpectrum::values() const {
  Eigen::VectorXd out(tag_.dim());
  for (const auto& s : shells_) out.segment(s.offset, s.values.size()) = s.values;
  return out;
}

SqueezeSpec SqueezeSpec::aligned_with(Complex alpha) const {
  SqueezeSpec out = *this;
  out.theta = alpha == Complex(0.0) ? 0.0 : 2.0 * std::arg(alpha);
  return out;
}

int working_cutoff(int n_max, const PreparationOptions& opt) {
  const int pad = std::max(opt.padding_min,
                           static_cast<int>(std::ceil(opt.padding_fraction * n_max)));
  return n_max + pad;
}

namespace {

void check_tail_tol(double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol <= tol::max_tail)) {
    throw std::invalid_argument("tail_tol must lie in (0, 1e-6]");
  }
}

Operator annihilation(int levels) {
  Matrix a = Matrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(a), BasisTag::generic(levels));
}

/// exp(generator) |v> for an anti-Hermitian generator: exp(G) = exp(-i H), H = iG.
Ket exponentiate_on(const Operator& generator, const Ket& v) {
  using namespace std::complex_literals;
  const Operator h = 1i * generator;
  const Operator hermitian(h.matrix(), h.basis(), true);
  return HermitianSpectrum(hermitian).apply_function(
      [](double lambda) { return std::exp(Complex(0.0, -lambda)); }, v);
}

struct ModeStates {
  Vector h;
  Vector v;
};

ModeStates prepare_modes(Complex alpha, SqueezeSpec z, int levels) {
  const Operator a = annihilation(levels);
  const Operator ad = a.adjoint();
  const Operator a2 = a * a;
  const Operator ad2 = ad * ad;
  const Complex zc = std::polar(z.r, z.theta);

  const Ket vac(Vector::Unit(levels, 0), BasisTag::generic(levels));
  const Operator squeeze_gen = 0.5 * std::conj(zc) * a2 - 0.5 * zc * ad2;
  const Ket squeezed = z.r == 0.0 ? vac : exponentiate_on(squeeze_gen, vac);

  const Operator displace_gen = alpha * ad - std::conj(alpha) * a;
  const Ket displaced =
      alpha == Complex(0.0) ? squeezed : exponentiate_on(displace_gen, squeezed);
  return {displaced.amplitudes(), squeezed.amplitudes()};
}

}  // namespace

Ket coherent_state(Complex alpha, const MeterBasis& basis, double tail_tol) {
  check_tail_tol(tail_tol);
  Vector amps = Vector::Zero(basis.size());
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n <= basis.n_max(); ++n) {
    if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
    amps[MeterBasis::index(n, 0)] = c;
  }
  Ket ket(std::move(amps), basis.tag());
  if (ket.norm_deficit() > tail_tol) {
    throw NormDeficitExceeded(ket.norm_deficit(), tail_tol, basis.n_max());
  }
  return ket;
}

Ket squeezed_coherent_state(Complex alpha, SqueezeSpec z, const MeterBasis& basis,
                            const PreparationOptions& opt) {
  check_tail_tol(opt.tail_tol);
  if (!std::isfinite(z.r)) throw std::invalid_argument("squeezing magnitude must be finite");
  if (basis.n_max() > opt.ceiling) {
    throw CutoffCeilingExceeded("cutoff " + std::to_string(basis.n_max()) +
                                " exceeds ceiling " + std::to_string(opt.ceiling));
  }
  const ModeStates modes =
      prepare_modes(alpha, z.aligned_with(alpha), working_cutoff(basis.n_max(), opt) + 1);

  Vector amps(basis.size());
  for (Index i = 0; i < basis.size(); ++i) {
    const auto [n_h, n_v] = basis.state(i);
    amps[i] = modes.h[n_h] * modes.v[n_v];
  }
  Ket ket(std::move(amps), basis.tag());
  if (ket.norm_deficit() > opt.tail_tol) {
    throw NormDeficitExceeded(ket.norm_deficit(), opt.tail_tol, basis.n_max());
  }
  return ket;
}

int choose_cutoff(double alpha2, double r, double tail_tol, int ceiling) {
  if (!(alpha2 >= 0.0) || !std::isfinite(alpha2)) {
    throw std::invalid_argument("alpha2 must be finite and non-negative");
  }
  check_tail_tol(tail_tol);
  const Complex alpha(std::sqrt(alpha2), 0.0);

  // Below the mean photon number the deficit is far above any admissible tol.
  int n_max = static_cast<int>(std::floor(alpha2));
  PreparationOptions opt;
  opt.tail_tol = tail_tol;
  opt.ceiling = ceiling;
  for (; n_max <= ceiling; ++n_max) {
    const MeterBasis basis(n_max);
    try {
      if (r == 0.0) {
        coherent_state(alpha, basis, tail_tol);
      } else {
        squeezed_coherent_state(alpha, SqueezeSpec{r, 0.0}, basis, opt);
      }
      return n_max;
    } catch (const NormDeficitExceeded&) {
    }
  }
  throw CutoffCeilingExceeded("cutoff ceiling " + std::to_string(ceiling) +
                              " exceeded: no cutoff reaches the tail tolerance for alpha2=" +
                              std::to_string(alpha2) + ", r=" + std::to_string(r));
}

StokesMoments stokes_moments(const Ket& state, const StokesSet& stokes) {
  StokesMoments out;
  out.norm_deficit = state.norm_deficit();
  const std::array<const Operator*, 4> ops{&stokes.s0, &stokes.sx, &stokes.sy, &stokes.sz};
  for (size_t k = 0; k < ops.size(); ++k) {
    if (!(ops[k]->basis() == state.basis())) {
      throw DimensionMismatch("moments: " + ops[k]->basis().label() + " vs " +
                              state.basis().label());
    }
    const Vector applied = ops[k]->matrix() * state.amplitudes();
    const double mean = state.amplitudes().dot(applied).real();
    out.mean[k] = mean;
    out.variance[k] = applied.squaredNorm() - mean * mean;
  }
  return out;
}

StokesMoments predicted_moments(double alpha2, double r) {
  const double sh = std::sinh(r);
  const double sh2r = std::sinh(2.0 * r);
  const double squeezed_var = alpha2 * std::exp(-2.0 * r) + sh2r * sh2r;
  StokesMoments out;
  out.mean = {alpha2 + 2.0 * sh * sh, alpha2, 0.0, 0.0};
  out.variance = {squeezed_var, squeezed_var, squeezed_var, alpha2 * std::exp(2.0 * r)};
  return out;
}

}  // namespace fedr
