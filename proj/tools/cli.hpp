#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fedr/relations.hpp"
#include "fedr/tolerances.hpp"

namespace fedr::cli {

enum ExitCode { kOk = 0, kUsage = 1, kResource = 2, kVerifyFailed = 3 };

enum class Command { SweepG, SweepChi, Tradeoff, Verify, Moments };

std::string_view to_string(Command c);

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepRequest {
  Command command = Command::SweepG;
  Model model = Model::ExactCoherent;
  // Swept parameter: g for exact models, chi for psa / wia.
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
  std::vector<double> alpha2;  // one value for sweeps, any number for moments / verify
  std::vector<double> r;
  double tail_tol = tol::default_tail;
  int ceiling = tol::default_cutoff_ceiling;
  std::optional<int> cutoff;  // fixed cutoff; disables the automatic choice
  std::string output_path;    // empty: standard output
};

/// --help was given; carries the formatted help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain reals, "pi", "pi/M", "N*pi", "N*pi/M", with an optional sign.
/// Throws UsageError.
double parse_angle(std::string_view text);

/// argv -> request with defaults resolved and model/command compatibility
/// checked. Flags take precedence over --config values, which take precedence
/// over built-in defaults. Throws UsageError or HelpRequested.
SweepRequest parse_request(int argc, const char* const* argv);

void run_sweep_g(const SweepRequest& req, std::ostream& csv);
void run_sweep_chi(const SweepRequest& req, std::ostream& csv);
/// csv_name is how the plot script refers to the data file.
void run_tradeoff(const SweepRequest& req, std::ostream& csv, std::ostream& plot,
                  std::string_view csv_name);
void run_moments(const SweepRequest& req, std::ostream& csv);

const std::vector<std::string>& tradeoff_header();
const std::vector<std::string>& moments_header();

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;  // failing invariant or diagnostic
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  double wia_residual = 0.0;  // max |hak - 1| over the weak interaction series
  bool passed() const;
};

VerifyReport run_verify(const SweepRequest& req);
void print_report(const VerifyReport& report, std::ostream& out);

/// Full command line entry point; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fedr::cli
