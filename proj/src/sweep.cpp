#include "fedr/sweep.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>

namespace fedr {

int worker_count() {
  if (const char* env = std::getenv("FEDR_NUM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_num_procs();
}

namespace {

// Runs body(i) for i in [0, n). Exceptions are captured per index and the
// first one in grid order is rethrown, so failures are deterministic too.
template <class Body>
void for_each_index(size_t n, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
  if (exec == Execution::Serial) {
    for (long i = 0; i < count; ++i) {
      try {
        body(static_cast<size_t>(i));
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (long i = 0; i < count; ++i) {
      try {
        body(static_cast<size_t>(i));
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<EDRPoint> sweep_g(const std::shared_ptr<const MeterSetup>& meter,
                              std::span<const double> g_grid, Execution exec) {
  std::vector<EDRPoint> out(g_grid.size());
  for_each_index(g_grid.size(), exec, [&](size_t i) { out[i] = edr_point(meter, g_grid[i]); });
  return out;
}

std::vector<PsaSample> sweep_psa(std::span<const double> chi_grid, double alpha2,
                                 double sigma, Execution exec) {
  if (!(alpha2 > 0.0)) throw std::invalid_argument("psa sweep needs alpha2 > 0");
  const double alpha_mag = std::sqrt(alpha2);
  std::vector<PsaSample> out(chi_grid.size());
  for_each_index(chi_grid.size(), exec, [&](size_t i) {
    const double chi = chi_grid[i];
    const PsaConfig cfg(chi * sigma / alpha_mag, alpha_mag, sigma);
    PsaSample s;
    s.chi = chi;
    s.g = cfg.g;
    s.sigma = sigma;
    s.eta2 = eta2_psa(chi);
    const GaussianMoments m = gaussian_oracle(cfg);
    s.nodes = m.nodes;
    s.eta2_oracle = 2.0 * (1.0 - m.cos_mean);
    if (chi > 0.0) {
      s.eps2 = eps2_psa(chi);
      const double ga = cfg.g * cfg.alpha_mag;
      s.eps2_oracle = m.q2_mean / (4.0 * ga * ga);
    }
    out[i] = s;
  });
  return out;
}

}  // namespace fedr
