// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fedr/edr.hpp"
#include "fedr/psa.hpp"
#include "fedr/relations.hpp"
#include "fedr/sweep.hpp"

using namespace fedr;

namespace {

constexpr double pi = std::numbers::pi;
const double kAlphas[] = {2.0, 6.0, 12.0};

struct Outcome {
  bool pass;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::shared_ptr<const MeterSetup> coherent(double alpha2) {
  MeasurementConfig cfg;
  cfg.alpha = Complex(std::sqrt(alpha2), 0.0);
  cfg.tail_tol = 1e-12;
  return prepare_meter(cfg);
}

std::vector<double> fig_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 60; ++k) {
    const double x = pi * k / 61.0;
    if (std::abs(std::sin(2 * x)) > 1e-3) g.push_back(x);
  }
  return g;
}

// Shared sweep data for criteria 1, 5 and 8.
struct ExactSweeps {
  std::vector<std::vector<EDRPoint>> points;  // per alpha2
  double seconds = 0.0;
  size_t grid_size = 0;
};

const ExactSweeps& exact_sweeps() {
  static const ExactSweeps s = [] {
    ExactSweeps out;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid = fig_grid();
    out.grid_size = grid.size();
    for (double a : kAlphas) out.points.push_back(sweep_g(coherent(a), grid, Execution::Parallel));
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }();
  return s;
}

struct PsaSampleSet {
  std::vector<PsaConfig> configs;
  std::vector<GaussianMoments> oracle;
  double seconds = 0.0;
};

const PsaSampleSet& psa_grid() {
  static const PsaSampleSet s = [] {
    PsaSampleSet out;
    const auto t0 = std::chrono::steady_clock::now();
    for (double sigma : linear_grid(0.5, 2.0, 10)) {
      for (double ga : linear_grid(0.05, 1.0, 10)) {
        out.configs.emplace_back(ga, 1.0, sigma);
        out.oracle.push_back(gaussian_oracle(out.configs.back()));
      }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }();
  return s;
}

Outcome criterion1() {
  const ExactSweeps& s = exact_sweeps();
  double worst_e = 0.0, worst_d = 0.0;
  for (const auto& pts : s.points) {
    for (const EDRPoint& p : pts) {
      worst_e = std::max(worst_e, p.eps2_gap().value_or(HUGE_VAL));
      worst_d = std::max(worst_d, p.eta2_gap());
    }
  }
  const bool pass = worst_e <= 1e-6 && worst_d <= 1e-6 && s.seconds < 120.0;
  return {pass, std::to_string(s.grid_size) + " g x 3 alpha2, max rel err eps2 " + sci(worst_e) +
                    ", eta2 " + sci(worst_d) + " (tol 1e-6), " + sci(s.seconds) + " s"};
}

Outcome criterion2() {
  double worst = 0.0;
  for (double a : kAlphas) {
    const EDRPoint p = edr_point(coherent(a), pi / 4);
    worst = std::max(worst, p.eps2 ? rel(*p.eps2, 1.0 / a) : HUGE_VAL);
  }
  return {worst <= 1e-8, "max rel err of eps2(pi/4) vs 1/alpha2 " + sci(worst) + " (tol 1e-8)"};
}

Outcome criterion3() {
  double worst = 0.0;
  for (double a : kAlphas) worst = std::max(worst, edr_point(coherent(a), pi).eta2);
  return {worst <= 1e-10, "max eta2(pi) " + sci(worst) + " (tol 1e-10)"};
}

Outcome criterion4() {
  double worst = 0.0;
  for (int cutoff : {8, 16, 24}) {
    const StokesSet s = build_stokes(MeterBasis(cutoff));
    const Operator sy = tensor(pauli::identity(), s.sy);
    const Operator bx = tensor(pauli::x(), Operator::identity(BasisTag::meter(cutoff)));
    for (double g : {0.1, 0.5, pi / 4, 1.3, pi / 2, 2.5, pi}) {
      const Operator u = build_unitary_generic(g, s);
      const Operator ud = u.adjoint();
      worst = std::max(worst, max_abs_diff(ud * sy * u, heisenberg_sy_closed_form(g, s)));
      worst = std::max(worst, max_abs_diff(ud * bx * u, heisenberg_bx_closed_form(g, s)));
    }
  }
  return {worst <= 1e-10, "cutoffs {8,16,24} x 7 g, max entry err " + sci(worst) +
                              " (tol 1e-10)"};
}

Outcome criterion5() {
  const ExactSweeps& s = exact_sweeps();
  double noise = 0.0;
  for (const auto& pts : s.points)
    for (const EDRPoint& p : pts) noise = std::max(noise, p.bias_noise);

  double law = 0.0;
  const std::vector<double> grid = fig_grid();
  for (double a : kAlphas) {
    const auto m = coherent(a);
    for (double g : grid) {
      const JointContext ctx(g, m);
      const double coeff = disturbance_bias_coefficient(g, a);
      for (const Ket& st : pauli::eigenstates()) {
        const Complex expected = coeff * expectation(pauli::x(), st);
        law = std::max(law, std::abs(disturbance_mean(ctx, st, m->xi) - expected));
      }
    }
  }
  return {noise <= 1e-10 && law <= 1e-8, "max |<N>| " + sci(noise) +
                                             " (tol 1e-10), max |<D> - coeff <sigma_x>| " +
                                             sci(law) + " (tol 1e-8)"};
}

Outcome criterion6() {
  double sz = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& [a, r] : {std::pair{9.0, 0.3}, std::pair{25.0, 0.2}}) {
    MeasurementConfig cfg;
    cfg.alpha = Complex(std::sqrt(a), 0.0);
    cfg.squeeze = SqueezeSpec{r, 0.0};
    const auto m = prepare_meter(cfg);
    const StokesMoments mom = stokes_moments(m->xi, m->stokes);
    sz = std::max(sz, rel(mom.variance[3], a * std::exp(2 * r)));
    sx = std::max(sx, rel(mom.mean[1], a));
    const double sh = std::sinh(2 * r);
    sy = std::max(sy, rel(mom.variance[2], a * std::exp(-2 * r) + sh * sh));
  }
  return {sz <= 1e-4 && sx <= 1e-8 && sy <= 1e-4,
          "var Sz rel " + sci(sz) + " (tol 1e-4), <Sx> rel " + sci(sx) +
              " (tol 1e-8), var Sy vs alpha2 e^-2r + sinh^2 2r rel " + sci(sy)};
}

Outcome criterion7() {
  const PsaSampleSet& s = psa_grid();
  double worst = 0.0;
  for (size_t i = 0; i < s.configs.size(); ++i) {
    const PsaConfig& c = s.configs[i];
    const double ga = c.g * c.alpha_mag;
    worst = std::max(worst, rel(s.oracle[i].q2_mean / (4 * ga * ga), eps2_psa(c.chi())));
    worst = std::max(worst, rel(2 * (1 - s.oracle[i].cos_mean), eta2_psa(c.chi())));
  }
  return {worst <= 1e-9, "10x10 (sigma, g|alpha|), max rel err " + sci(worst) +
                             " (tol 1e-9), " + sci(s.seconds) + " s"};
}

Outcome criterion8() {
  double min_bot = HUGE_VAL, min_ozawa = HUGE_VAL;
  size_t violated = 0, samples = 0;
  auto take = [&](double e, double d) {
    const BoundsRecord b = evaluate_bounds(e, d);
    min_bot = std::min(min_bot, b.bot_lhs);
    min_ozawa = std::min(min_ozawa, b.ozawa_lhs);
    if (b.hak < 1.0) ++violated;
    ++samples;
  };
  for (const auto& pts : exact_sweeps().points)
    for (const EDRPoint& p : pts) take(*p.eps2, p.eta2);
  const PsaSampleSet& s = psa_grid();
  for (size_t i = 0; i < s.configs.size(); ++i) {
    const double chi = s.configs[i].chi();
    take(eps2_psa(chi), eta2_psa(chi));
  }

  const EDRPoint ref = edr_point(coherent(6.0), pi / 4);
  const double hak_ref = evaluate_bounds(*ref.eps2, ref.eta2).hak;
  take(*ref.eps2, ref.eta2);

  // Weak interaction series on the chi values of the phase-space grid.
  double wia_residual = 0.0;
  size_t wia_exact = 0;
  for (const PsaConfig& c : s.configs) {
    const double hak = evaluate_bounds(eps2_wia(c.chi()), eta2_wia(c.chi())).hak;
    wia_residual = std::max(wia_residual, std::abs(hak - 1.0));
    if (hak == 1.0) ++wia_exact;
  }
  // The emitted CSV carries the identity exactly.
  std::ostringstream csv;
  cli::SweepRequest req;
  req.command = cli::Command::SweepChi;
  req.model = Model::Wia;
  req.start = 0.05;
  req.stop = 0.3;
  req.steps = 60;
  req.alpha2 = {6.0};
  req.r = {0.0};
  cli::run_sweep_chi(req, csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  size_t csv_rows = 0, csv_ones = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    ++csv_rows;
    if (f.size() > 9 && f[9] == "1") ++csv_ones;
  }

  const bool pass = min_bot >= 1 - 1e-9 && min_ozawa >= 1 - 1e-9 && violated > 0 &&
                    std::abs(hak_ref - 0.332507) <= 1e-5 && wia_residual <= DBL_EPSILON &&
                    csv_ones == csv_rows;
  return {pass, std::to_string(samples) + " samples: min bot_lhs " + sci(min_bot) +
                    ", min ozawa_lhs " + sci(min_ozawa) + ", hak < 1 on " +
                    std::to_string(violated) + ", hak(pi/4, 6) = " + std::to_string(hak_ref) +
                    "; wia hak == 1.0 bitwise on " + std::to_string(wia_exact) + "/" +
                    std::to_string(s.configs.size()) + ", max |hak-1| " + sci(wia_residual) +
                    " (1 ulp), CSV hak field \"1\" on " + std::to_string(csv_ones) + "/" +
                    std::to_string(csv_rows) + " rows"};
}

Outcome criterion9() {
  const auto dir = std::filesystem::temp_directory_path() / "fedr_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"sweep-g", "--alpha2", "6", "--steps", "40"},
      {"sweep-g", "--model", "exact-squeezed", "--alpha2", "9", "--r", "0.3", "--steps", "20"},
      {"sweep-chi", "--model", "psa", "--steps", "50"},
      {"sweep-chi", "--model", "wia", "--steps", "50"},
      {"moments", "--alpha2", "6,9", "--model", "exact-squeezed", "--r", "0,0.3"},
      {"tradeoff", "--alpha2", "6", "--steps", "40"},
      {"tradeoff", "--model", "psa"}};
  size_t identical = 0;
  for (size_t c = 0; c < commands.size(); ++c) {
    std::string text[2];
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / ("run" + std::to_string(c) + "_" + std::to_string(run) + ".csv");
      std::vector<std::string> args = {"fedr"};
      args.insert(args.end(), commands[c].begin(), commands[c].end());
      args.insert(args.end(), {"-o", path.string()});
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      // Second run pinned to one worker so completion order differs.
      if (run == 1) setenv("FEDR_NUM_THREADS", "1", 1);
      std::ostringstream out, err;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      unsetenv("FEDR_NUM_THREADS");
      if (code != 0) return {false, "command failed: " + err.str()};
      std::ifstream f(path, std::ios::binary);
      text[run].assign(std::istreambuf_iterator<char>(f), {});
    }
    if (!text[0].empty() && text[0] == text[1]) ++identical;
  }
  return {identical == commands.size(), std::to_string(identical) + "/" +
                                            std::to_string(commands.size()) +
                                            " sweep commands byte-identical across two runs"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"closed-form reproduction", criterion1},
      {"minimum error at g = pi/4", criterion2},
      {"disturbance revival at g = pi", criterion3},
      {"BCH closed forms vs spectral evolution", criterion4},
      {"noise unbiasedness and disturbance bias law", criterion5},
      {"squeezed meter moments", criterion6},
      {"phase-space closed forms vs quadrature", criterion7},
      {"uncertainty relation claims", criterion8},
      {"sweep determinism", criterion9}};
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/9 criteria pass\n", 9 - failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
