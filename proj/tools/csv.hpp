#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fedr/relations.hpp"

namespace fedr::cli {

inline constexpr std::string_view kSingular = "SINGULAR";

/// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);

/// Joins fields with ',' and terminates with '\n'.
void write_line(std::ostream& out, const std::vector<std::string>& fields);

struct CsvRow {
  std::string model;
  double g = 0.0;
  double chi = 0.0;
  double alpha2 = 0.0;
  double r = 0.0;
  std::optional<double> eps2_numeric;  // empty prints SINGULAR
  std::optional<double> eps2_analytic;
  double eta2_numeric = 0.0;
  double eta2_analytic = 0.0;
  std::optional<BoundsRecord> bounds;  // empty prints SINGULAR
  std::vector<std::string> flags;

  static const std::vector<std::string>& header();
  std::vector<std::string> fields() const;
};

/// Flag tokens for a bounds record: HAK_VIOLATED, BOT_BOUNDARY, ...
void append_bound_flags(const BoundsRecord& b, std::vector<std::string>& flags);

}  // namespace fedr::cli
