#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <new>
#include <numbers>
#include <sstream>

#include "csv.hpp"
#include "fedr/edr.hpp"
#include "fedr/psa.hpp"
#include "fedr/sweep.hpp"

namespace fedr::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::SweepG: return "sweep-g";
    case Command::SweepChi: return "sweep-chi";
    case Command::Tradeoff: return "tradeoff";
    case Command::Verify: return "verify";
    case Command::Moments: return "moments";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_real(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string_view s = trim(text);
  const auto bad = [&] { return UsageError("cannot parse angle '" + std::string(text) + "'"); };
  const size_t pi = s.find("pi");
  if (pi == std::string_view::npos) {
    double v = 0.0;
    if (!parse_real(s, v)) throw bad();
    return v;
  }

  double coeff = 1.0;
  std::string_view head = trim(s.substr(0, pi));
  if (head == "-") {
    coeff = -1.0;
  } else if (!head.empty() && head != "+") {
    if (head.back() != '*' || !parse_real(head.substr(0, head.size() - 1), coeff)) throw bad();
  }

  double denom = 1.0;
  std::string_view tail = trim(s.substr(pi + 2));
  if (!tail.empty()) {
    if (tail.front() != '/' || !parse_real(tail.substr(1), denom) || denom == 0.0) throw bad();
  }
  return coeff * std::numbers::pi / denom;
}

namespace {

struct RawOptions {
  std::string model;
  std::string start;
  std::string stop;
  int steps = 0;
  std::vector<double> alpha2;
  std::vector<double> r;
  double tail_tol = tol::default_tail;
  int ceiling = tol::default_cutoff_ceiling;
  int cutoff = 0;
  std::string output;
};

struct Defaults {
  Model model;
  const char* start;
  const char* stop;
  int steps;
};

Defaults defaults_for(Command c, std::optional<Model> model) {
  switch (c) {
    case Command::SweepG: return {Model::ExactCoherent, "0.02", "pi", 120};
    case Command::SweepChi: return {Model::Psa, "0.05", "2", 100};
    case Command::Tradeoff: {
      const Model m = model.value_or(Model::ExactCoherent);
      if (m == Model::Psa || m == Model::Wia) return {m, "0.05", "2", 100};
      return {m, "0.02", "1.55", 120};
    }
    case Command::Verify:
    case Command::Moments: return {Model::ExactCoherent, "0", "1", 2};
  }
  return {Model::ExactCoherent, "0", "1", 2};
}

bool is_exact(Model m) { return m == Model::ExactCoherent || m == Model::ExactSqueezed; }

void check_request(const SweepRequest& req, bool model_given) {
  const bool sweep = req.command == Command::SweepG || req.command == Command::SweepChi ||
                     req.command == Command::Tradeoff;
  if (req.command == Command::SweepG && !is_exact(req.model)) {
    throw UsageError("sweep-g needs model exact-coherent or exact-squeezed");
  }
  if (req.command == Command::SweepChi && is_exact(req.model)) {
    throw UsageError("sweep-chi needs model psa or wia");
  }
  if (req.command == Command::Moments && !is_exact(req.model)) {
    throw UsageError("moments needs model exact-coherent or exact-squeezed");
  }
  if (req.command == Command::Verify && model_given) {
    throw UsageError("verify runs every model; --model does not apply");
  }
  if (sweep) {
    if (req.steps < 2) throw UsageError("--steps must be at least 2");
    if (req.alpha2.size() != 1 || req.r.size() != 1) {
      throw UsageError(std::string(to_string(req.command)) +
                       " takes a single --alpha2 and --r; run once per value");
    }
  }
  if (sweep && !is_exact(req.model) && (req.start < 0.0 || req.stop < 0.0)) {
    throw UsageError("measurement strength chi must be non-negative");
  }
  for (double a : req.alpha2) {
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("--alpha2 must be positive");
  }
  for (double r : req.r) {
    if (!std::isfinite(r)) throw UsageError("--r must be finite");
    if (r != 0.0 && req.model == Model::ExactCoherent && req.command != Command::Verify) {
      throw UsageError("squeezing needs --model exact-squeezed");
    }
  }
  if (!(req.tail_tol > 0.0) || req.tail_tol > tol::max_tail) {
    throw UsageError("--tail-tol must lie in (0, 1e-6]");
  }
  if (req.cutoff && *req.cutoff < 0) throw UsageError("--cutoff must be non-negative");
  if (req.ceiling < 0) throw UsageError("--ceiling must be non-negative");
  if (req.command == Command::Tradeoff && req.output_path.empty()) {
    throw UsageError("tradeoff writes a CSV and a plot script; give --output");
  }
}

}  // namespace

SweepRequest parse_request(int argc, const char* const* argv) {
  CLI::App app{"Faraday-interaction error-disturbance simulator", "fedr"};
  app.fallthrough();
  app.require_subcommand(1);

  RawOptions raw;
  app.add_option("--model", raw.model, "exact-coherent | exact-squeezed | psa | wia");
  app.add_option("--start", raw.start, "first grid value (g or chi); accepts pi tokens");
  app.add_option("--stop", raw.stop, "last grid value, inclusive");
  app.add_option("--steps", raw.steps, "grid points (>= 2)");
  app.add_option("--alpha2", raw.alpha2, "mean photon number |alpha|^2")->delimiter(',');
  app.add_option("--r", raw.r, "squeezing magnitude r (sigma = e^-r)")->delimiter(',');
  app.add_option("--tail-tol", raw.tail_tol, "allowed norm deficit of the meter state");
  app.add_option("--ceiling", raw.ceiling, "largest photon cutoff to try");
  auto* cutoff_opt = app.add_option("--cutoff", raw.cutoff, "fixed photon cutoff");
  app.add_option("--output,-o", raw.output, "output file (default: stdout)");
  app.set_config("--config", "", "flat 'key = value' file; flags override it");

  auto* sweep_g = app.add_subcommand("sweep-g", "exact models over a g grid");
  auto* sweep_chi = app.add_subcommand("sweep-chi", "psa / wia over a chi grid");
  auto* tradeoff = app.add_subcommand("tradeoff", "(eps2, eta2) curve plus bound frontiers");
  auto* verify = app.add_subcommand("verify", "run the numeric-vs-analytic suites");
  auto* moments = app.add_subcommand("moments", "Stokes moments of the meter state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    if (code == 0) throw HelpRequested(out.str());
    throw UsageError(e.what());
  }

  SweepRequest req;
  if (sweep_g->parsed()) req.command = Command::SweepG;
  if (sweep_chi->parsed()) req.command = Command::SweepChi;
  if (tradeoff->parsed()) req.command = Command::Tradeoff;
  if (verify->parsed()) req.command = Command::Verify;
  if (moments->parsed()) req.command = Command::Moments;

  std::optional<Model> model;
  if (!raw.model.empty()) {
    model = parse_model(raw.model);
    if (!model) throw UsageError("unknown model '" + raw.model + "'");
  }
  const Defaults d = defaults_for(req.command, model);
  req.model = model.value_or(d.model);
  req.start = parse_angle(raw.start.empty() ? d.start : raw.start);
  req.stop = parse_angle(raw.stop.empty() ? d.stop : raw.stop);
  req.steps = raw.steps != 0 ? raw.steps : d.steps;
  req.alpha2 = raw.alpha2;
  if (req.alpha2.empty() && req.command != Command::Verify) req.alpha2 = {6.0};
  req.r = raw.r.empty() ? std::vector<double>{0.0} : raw.r;
  req.tail_tol = raw.tail_tol;
  req.ceiling = raw.ceiling;
  if (cutoff_opt->count() > 0 || raw.cutoff != 0) req.cutoff = raw.cutoff;
  req.output_path = raw.output;
  check_request(req, model.has_value());
  return req;
}

namespace {

MeasurementConfig meter_config(const SweepRequest& req, double alpha2, double r) {
  MeasurementConfig cfg;
  cfg.alpha = Complex(std::sqrt(alpha2), 0.0);
  if (r != 0.0) cfg.squeeze = SqueezeSpec{r, 0.0};
  cfg.tail_tol = req.tail_tol;
  cfg.ceiling = req.ceiling;
  if (req.cutoff) {
    cfg.cutoff = *req.cutoff;
    cfg.auto_cutoff = false;
  }
  return cfg;
}

void finish_row(CsvRow& row, bool use_analytic) {
  const auto& eps2 = use_analytic ? row.eps2_analytic : row.eps2_numeric;
  const double eta2 = use_analytic ? row.eta2_analytic : row.eta2_numeric;
  if (!eps2) {
    row.flags.insert(row.flags.begin(), std::string(kSingular));
    return;
  }
  row.bounds = evaluate_bounds(*eps2, eta2);
  append_bound_flags(*row.bounds, row.flags);
}

}  // namespace

void run_sweep_g(const SweepRequest& req, std::ostream& csv) {
  const double alpha2 = req.alpha2.front();
  const double r = req.r.front();
  const auto meter = prepare_meter(meter_config(req, alpha2, r));
  const std::vector<double> grid = linear_grid(req.start, req.stop, req.steps);
  const std::vector<EDRPoint> points = sweep_g(meter, grid, Execution::Parallel);

  const double alpha_over_sigma = std::sqrt(alpha2) * std::exp(r);
  write_line(csv, CsvRow::header());
  for (const EDRPoint& p : points) {
    CsvRow row;
    row.model = std::string(to_string(req.model));
    row.g = p.g;
    row.chi = p.g * alpha_over_sigma;
    row.alpha2 = alpha2;
    row.r = r;
    row.eps2_numeric = p.eps2;
    row.eps2_analytic = p.eps2_analytic;
    row.eta2_numeric = p.eta2;
    row.eta2_analytic = p.eta2_analytic;
    finish_row(row, false);
    write_line(csv, row.fields());
  }
}

void run_sweep_chi(const SweepRequest& req, std::ostream& csv) {
  const double alpha2 = req.alpha2.front();
  const double r = req.r.front();
  const double sigma = std::exp(-r);
  const std::vector<double> grid = linear_grid(req.start, req.stop, req.steps);

  std::vector<CsvRow> rows(grid.size());
  if (req.model == Model::Psa) {
    const std::vector<PsaSample> samples = sweep_psa(grid, alpha2, sigma, Execution::Parallel);
    for (size_t i = 0; i < samples.size(); ++i) {
      const PsaSample& s = samples[i];
      CsvRow& row = rows[i];
      row.g = s.g;
      row.eps2_numeric = s.eps2_oracle;
      row.eps2_analytic = s.eps2;
      row.eta2_numeric = s.eta2_oracle;
      row.eta2_analytic = s.eta2;
    }
  } else {
    const double alpha_mag = std::sqrt(alpha2);
    for (size_t i = 0; i < grid.size(); ++i) {
      const double chi = grid[i];
      CsvRow& row = rows[i];
      row.g = chi * sigma / alpha_mag;
      if (chi > 0.0) row.eps2_numeric = row.eps2_analytic = eps2_wia(chi);
      row.eta2_numeric = row.eta2_analytic = eta2_wia(chi);
      if (!wia_valid(chi)) row.flags.push_back("WIA_INVALID");
    }
  }

  write_line(csv, CsvRow::header());
  for (size_t i = 0; i < rows.size(); ++i) {
    CsvRow& row = rows[i];
    row.model = std::string(to_string(req.model));
    row.chi = grid[i];
    row.alpha2 = alpha2;
    row.r = r;
    finish_row(row, true);
    write_line(csv, row.fields());
  }
}

const std::vector<std::string>& tradeoff_header() {
  static const std::vector<std::string> h = {"series", "parameter", "eps2",   "eta2",   "hak",
                                             "ozawa_lhs", "bo_lhs", "bot_lhs", "flags"};
  return h;
}

void run_tradeoff(const SweepRequest& req, std::ostream& csv, std::ostream& plot,
                  std::string_view csv_name) {
  TradeoffRequest tr;
  tr.model = req.model;
  tr.start = req.start;
  tr.stop = req.stop;
  tr.steps = req.steps;
  tr.alpha2 = req.alpha2.front();
  tr.r = req.r.front();
  tr.tail_tol = req.tail_tol;
  const TradeoffCurve curve = tradeoff_curve(tr);

  const std::string series(to_string(req.model));
  write_line(csv, tradeoff_header());
  for (const TradeoffSample& s : curve.samples) {
    std::vector<std::string> flags;
    if (!s.bounds) flags.push_back(std::string(kSingular));
    if (s.bounds) append_bound_flags(*s.bounds, flags);
    if (req.model == Model::Wia && !wia_valid(s.parameter)) flags.push_back("WIA_INVALID");
    std::string joined;
    for (const auto& f : flags) joined += (joined.empty() ? "" : ";") + f;
    auto bound = [&](double BoundsRecord::*m) {
      return s.bounds ? format_number((*s.bounds).*m) : std::string(kSingular);
    };
    write_line(csv, {series, format_number(s.parameter), format_optional(s.eps2),
                     format_number(s.eta2), bound(&BoundsRecord::hak),
                     bound(&BoundsRecord::ozawa_lhs), bound(&BoundsRecord::bo_lhs),
                     bound(&BoundsRecord::bot_lhs), joined});
  }
  for (const auto& [name, points] :
       {std::pair{"hak_bound", &curve.hak_bound}, std::pair{"bot_bound", &curve.bot_bound}}) {
    for (const FrontierPoint& f : *points) {
      write_line(csv, {name, format_number(f.eps2), format_number(f.eps2), format_number(f.eta2),
                       "", "", "", "", ""});
    }
  }

  plot << "# Error-disturbance tradeoff: " << series << " samples with the HAK and tight\n"
       << "# Branciard-Ozawa frontiers. Reads only " << csv_name << ".\n"
       << "import csv\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "series = {}\n"
       << "with open(\"" << csv_name << "\", newline=\"\") as f:\n"
       << "    for row in csv.DictReader(f):\n"
       << "        if row[\"eps2\"] == \"" << kSingular << "\":\n"
       << "            continue\n"
       << "        series.setdefault(row[\"series\"], []).append(\n"
       << "            (float(row[\"eps2\"]), float(row[\"eta2\"])))\n\n"
       << "styles = {\"hak_bound\": \"k--\", \"bot_bound\": \"k:\"}\n"
       << "fig, ax = plt.subplots()\n"
       << "for name, pts in series.items():\n"
       << "    if name in styles:\n"
       << "        pts.sort()\n"
       << "    ax.plot([p[0] for p in pts], [p[1] for p in pts], styles.get(name, \"-\"), "
          "label=name)\n"
       << "ax.set_xlabel(\"eps^2\")\n"
       << "ax.set_ylabel(\"eta^2\")\n"
       << "ax.set_xlim(0, 2)\n"
       << "ax.set_ylim(0, 2.2)\n"
       << "ax.legend()\n"
       << "plt.show()\n";
}

const std::vector<std::string>& moments_header() {
  static const std::vector<std::string> h = [] {
    std::vector<std::string> cols = {"model", "alpha2", "r", "cutoff", "norm_deficit"};
    for (const std::string s : {"s0", "sx", "sy", "sz"}) {
      for (const std::string stat : {"mean_", "var_"}) {
        cols.push_back(stat + s);
        cols.push_back(stat + s + "_analytic");
        cols.push_back(stat + s + "_gap");
      }
    }
    return cols;
  }();
  return h;
}

namespace {
double gap(double numeric, double analytic) {
  const double d = std::abs(numeric - analytic);
  return analytic != 0.0 ? d / std::abs(analytic) : d;
}
}  // namespace

void run_moments(const SweepRequest& req, std::ostream& csv) {
  write_line(csv, moments_header());
  for (double alpha2 : req.alpha2) {
    for (double r : req.r) {
      const auto meter = prepare_meter(meter_config(req, alpha2, r));
      const StokesMoments m = stokes_moments(meter->xi, meter->stokes);
      const StokesMoments p = predicted_moments(alpha2, r);
      std::vector<std::string> row = {std::string(to_string(req.model)), format_number(alpha2),
                                      format_number(r), std::to_string(meter->basis.n_max()),
                                      format_number(m.norm_deficit)};
      for (size_t k = 0; k < 4; ++k) {
        row.push_back(format_number(m.mean[k]));
        row.push_back(format_number(p.mean[k]));
        row.push_back(format_number(gap(m.mean[k], p.mean[k])));
        row.push_back(format_number(m.variance[k]));
        row.push_back(format_number(p.variance[k]));
        row.push_back(format_number(gap(m.variance[k], p.variance[k])));
      }
      write_line(csv, row);
    }
  }
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  f << text;
  if (!f.flush()) throw std::ios_base::failure("write to " + path.string() + " failed");
}

void emit(const SweepRequest& req, const std::string& text, std::ostream& out) {
  if (req.output_path.empty()) {
    out << text;
  } else {
    write_file(req.output_path, text);
  }
}

std::filesystem::path plot_path_for(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_filename(csv.stem().string() + "_plot.py");
  return p;
}

int dispatch(const SweepRequest& req, std::ostream& out) {
  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  switch (req.command) {
    case Command::SweepG:
      run_sweep_g(req, csv);
      break;
    case Command::SweepChi:
      run_sweep_chi(req, csv);
      break;
    case Command::Moments:
      run_moments(req, csv);
      break;
    case Command::Tradeoff: {
      const std::filesystem::path path(req.output_path);
      std::ostringstream plot;
      run_tradeoff(req, csv, plot, path.filename().string());
      write_file(path, csv.str());
      write_file(plot_path_for(path), plot.str());
      return kOk;
    }
    case Command::Verify: {
      const VerifyReport report = run_verify(req);
      std::ostringstream text;
      print_report(report, text);
      emit(req, text.str(), out);
      return report.passed() ? kOk : kVerifyFailed;
    }
  }
  emit(req, csv.str(), out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse_request(argc, argv), out);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kOk;
  } catch (const UsageError& e) {
    err << "fedr: " << e.what() << "\n";
    return kUsage;
  } catch (const CutoffCeilingExceeded& e) {
    err << "fedr: " << e.what() << "\n";
    return kResource;
  } catch (const NormDeficitExceeded& e) {
    err << "fedr: " << e.what() << "\n";
    return kResource;
  } catch (const QuadratureNotConverged& e) {
    err << "fedr: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "fedr: out of memory\n";
    return kResource;
  } catch (const std::ios_base::failure& e) {
    err << "fedr: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "fedr: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace fedr::cli
