#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fedr/edr.hpp"
#include "fedr/psa.hpp"

namespace fedr {

// Sweep kernels. Every kernel has a serial reference and an OpenMP variant;
// both return samples in grid order and must agree bit for bit.

enum class Execution { Serial, Parallel };

/// Worker cap from FEDR_NUM_THREADS, otherwise the number of logical processors.
int worker_count();

std::vector<EDRPoint> sweep_g(const std::shared_ptr<const MeterSetup>& meter,
                              std::span<const double> g_grid, Execution exec);

struct PsaSample {
  double chi = 0.0;
  double g = 0.0;
  double sigma = 1.0;
  std::optional<double> eps2;         // closed form, empty at chi = 0
  double eta2 = 0.0;                  // closed form
  std::optional<double> eps2_oracle;  // Gaussian quadrature
  double eta2_oracle = 0.0;
  int nodes = 0;
};

/// Phase-space model over a chi grid at fixed |alpha|^2 and sigma
/// (g = chi sigma / |alpha|), cross-checked by gaussian_oracle.
std::vector<PsaSample> sweep_psa(std::span<const double> chi_grid, double alpha2,
                                 double sigma, Execution exec);

}  // namespace fedr
