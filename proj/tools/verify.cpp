#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "fedr/edr.hpp"
#include "fedr/psa.hpp"
#include "fedr/sweep.hpp"

namespace fedr::cli {

namespace {

constexpr double kEdrTolerance = 1e-6;
constexpr double kBiasTolerance = 1e-10;
constexpr double kBchTolerance = 1e-10;
constexpr double kVarianceTolerance = 1e-4;
constexpr double kMeanTolerance = 1e-8;

double rel(double numeric, double analytic) {
  return std::abs(numeric - analytic) / std::abs(analytic);
}

std::string sci(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

// Tracks the largest error and the first check that broke its tolerance.
struct Tracker {
  SuiteResult& out;

  void check(double err, double tolerance, const std::string& what) {
    out.max_error = std::max(out.max_error, err);
    out.tolerance = std::max(out.tolerance, tolerance);
    if (!(err <= tolerance) && out.passed) {
      out.passed = false;
      out.detail = what + ": error " + sci(err) + " > " + sci(tolerance);
    }
  }
};

std::vector<double> fig_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 60; ++k) {
    const double g = std::numbers::pi * k / 61.0;
    if (std::abs(std::sin(2.0 * g)) > 1e-3) grid.push_back(g);
  }
  return grid;
}

SuiteResult edr_suite(const SweepRequest& req) {
  SuiteResult res{"edr-agreement", true, 0.0, kEdrTolerance, ""};
  Tracker t{res};
  const std::vector<double> alphas =
      req.alpha2.empty() ? std::vector<double>{2.0, 6.0, 12.0} : req.alpha2;
  try {
    for (double alpha2 : alphas) {
      MeasurementConfig cfg;
      cfg.alpha = Complex(std::sqrt(alpha2), 0.0);
      cfg.tail_tol = req.tail_tol;
      cfg.ceiling = req.ceiling;
      if (req.cutoff) {
        cfg.cutoff = *req.cutoff;
        cfg.auto_cutoff = false;
      }
      const auto meter = prepare_meter(cfg);
      const std::string tag = "alpha2=" + sci(alpha2);
      for (const EDRPoint& p : sweep_g(meter, fig_grid(), Execution::Parallel)) {
        const std::string at = tag + " g=" + sci(p.g);
        t.check(p.eps2_gap().value_or(HUGE_VAL), kEdrTolerance,
                "eps2 vs 1/(alpha2 sin^2 2g) at " + at);
        t.check(p.eta2_gap(), kEdrTolerance, "eta2 vs 2(1-exp(-2 alpha2 sin^2 g)) at " + at);
        t.check(p.bias_noise, kBiasTolerance, "noise bias |<N>| at " + at);
      }
    }
  } catch (const NormDeficitExceeded& e) {
    res.passed = false;
    res.detail = std::string("meter state truncated: ") + e.what();
  } catch (const Error& e) {
    res.passed = false;
    res.detail = e.what();
  }
  return res;
}

SuiteResult bch_suite() {
  SuiteResult res{"bch-vs-spectral", true, 0.0, kBchTolerance, ""};
  Tracker t{res};
  const double pi = std::numbers::pi;
  for (int cutoff : {8, 16, 24}) {
    const MeterBasis basis(cutoff);
    const StokesSet s = build_stokes(basis);
    const Operator sy = tensor(pauli::identity(), s.sy);
    const Operator bx = tensor(pauli::x(), Operator::identity(basis.tag()));
    for (double g : {0.1, 0.5, pi / 4, 1.3, pi / 2, 2.5, pi}) {
      const std::string at = "n_max=" + std::to_string(cutoff) + " g=" + sci(g);
      const Operator u = build_unitary_generic(g, s);
      const Operator ud = u.adjoint();
      t.check(max_abs_diff(ud * sy * u, heisenberg_sy_closed_form(g, s)), kBchTolerance,
              "(I x Sy)_T at " + at);
      t.check(max_abs_diff(ud * bx * u, heisenberg_bx_closed_form(g, s)), kBchTolerance,
              "(sigma_x x I)_T at " + at);
    }
  }
  return res;
}

SuiteResult stokes_suite() {
  SuiteResult res{"stokes-algebra", true, 0.0, tol::hermiticity, ""};
  Tracker t{res};
  const Complex two_i(0.0, 2.0);
  for (int cutoff : {1, 8, 24}) {
    const MeterBasis basis(cutoff);
    const StokesSet s = build_stokes(basis);
    const std::string at = " at n_max=" + std::to_string(cutoff);
    t.check(max_abs_entry(commutator(s.sx, s.sy) - two_i * s.sz), tol::hermiticity,
            "[Sx,Sy] = 2i Sz" + at);
    t.check(max_abs_entry(commutator(s.sy, s.sz) - two_i * s.sx), tol::hermiticity,
            "[Sy,Sz] = 2i Sx" + at);
    t.check(max_abs_entry(commutator(s.sz, s.sx) - two_i * s.sy), tol::hermiticity,
            "[Sz,Sx] = 2i Sy" + at);
    for (const Operator* op : {&s.sx, &s.sy, &s.sz}) {
      t.check(max_abs_entry(commutator(s.s0, *op)), tol::hermiticity, "S0 conservation" + at);
    }
  }
  return res;
}

SuiteResult moments_suite(const SweepRequest& req) {
  SuiteResult res{"squeezed-moments", true, 0.0, kVarianceTolerance, ""};
  Tracker t{res};
  try {
    for (const auto& [alpha2, r] : {std::pair{9.0, 0.3}, std::pair{25.0, 0.2}}) {
      MeasurementConfig cfg;
      cfg.alpha = Complex(std::sqrt(alpha2), 0.0);
      cfg.squeeze = SqueezeSpec{r, 0.0};
      cfg.tail_tol = req.tail_tol;
      cfg.ceiling = req.ceiling;
      const auto meter = prepare_meter(cfg);
      const StokesMoments m = stokes_moments(meter->xi, meter->stokes);
      const StokesMoments p = predicted_moments(alpha2, r);
      const std::string at = " at alpha2=" + sci(alpha2) + " r=" + sci(r);
      t.check(rel(m.variance[3], p.variance[3]), kVarianceTolerance, "var Sz" + at);
      t.check(rel(m.variance[2], p.variance[2]), kVarianceTolerance, "var Sy" + at);
      t.check(rel(m.mean[1], alpha2), kMeanTolerance, "<Sx>" + at);
    }
  } catch (const Error& e) {
    res.passed = false;
    res.detail = e.what();
  }
  return res;
}

SuiteResult quadrature_suite() {
  SuiteResult res{"gaussian-quadrature", true, 0.0, tol::oracle_relative, ""};
  Tracker t{res};
  try {
    for (double sigma : linear_grid(0.5, 2.0, 10)) {
      for (double ga : linear_grid(0.05, 1.0, 10)) {
        const PsaConfig cfg(ga, 1.0, sigma);
        const GaussianMoments m = gaussian_oracle(cfg);
        const std::string at = " at sigma=" + sci(sigma) + " g|alpha|=" + sci(ga);
        t.check(rel(m.q2_mean / (4.0 * ga * ga), eps2_psa(cfg.chi())), tol::oracle_relative,
                "eps2" + at);
        t.check(rel(2.0 * (1.0 - m.cos_mean), eta2_psa(cfg.chi())), tol::oracle_relative,
                "eta2" + at);
      }
    }
  } catch (const Error& e) {
    res.passed = false;
    res.detail = e.what();
  }
  return res;
}

double wia_residual() {
  double worst = 0.0;
  for (double chi : linear_grid(0.01, 0.3, 300)) {
    const BoundsRecord b = evaluate_bounds(eps2_wia(chi), eta2_wia(chi));
    worst = std::max(worst, std::abs(b.hak - 1.0));
  }
  return worst;
}

template <class Suite>
SuiteResult guarded(const char* name, double tolerance, Suite suite) {
  try {
    return suite();
  } catch (const std::exception& e) {
    return SuiteResult{name, false, 0.0, tolerance, e.what()};
  }
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& s : suites) {
    if (!s.passed) return false;
  }
  return true;
}

VerifyReport run_verify(const SweepRequest& req) {
  VerifyReport report;
  report.suites.push_back(
      guarded("edr-agreement", kEdrTolerance, [&] { return edr_suite(req); }));
  report.suites.push_back(guarded("bch-vs-spectral", kBchTolerance, bch_suite));
  report.suites.push_back(guarded("stokes-algebra", tol::hermiticity, stokes_suite));
  report.suites.push_back(
      guarded("squeezed-moments", kVarianceTolerance, [&] { return moments_suite(req); }));
  report.suites.push_back(guarded("gaussian-quadrature", tol::oracle_relative, quadrature_suite));
  report.wia_residual = wia_residual();
  return report;
}

void print_report(const VerifyReport& report, std::ostream& out) {
  size_t failed = 0;
  for (const auto& s : report.suites) {
    out << (s.passed ? "pass " : "FAIL ") << s.name << ": max error " << sci(s.max_error)
        << " (tolerance " << sci(s.tolerance) << ")";
    if (!s.passed) {
      ++failed;
      out << "\n     " << s.detail;
    }
    out << "\n";
  }
  out << "wia: max |hak - 1| = " << (report.wia_residual == 0.0 ? "0" : sci(report.wia_residual))
      << "\n";
  if (failed == 0) {
    out << "all " << report.suites.size() << " suites pass\n";
  } else {
    out << failed << " of " << report.suites.size() << " suites failed\n";
  }
}

}  // namespace fedr::cli
