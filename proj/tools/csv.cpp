#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fedr::cli {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value in CSV output");
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string(kSingular);
}

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

const std::vector<std::string>& CsvRow::header() {
  static const std::vector<std::string> h = {
      "model",         "g",             "chi",          "alpha2", "r",
      "eps2_numeric",  "eps2_analytic", "eta2_numeric", "eta2_analytic",
      "hak",           "ozawa_lhs",     "bo_lhs",       "bot_lhs", "flags"};
  return h;
}

std::vector<std::string> CsvRow::fields() const {
  std::string joined;
  for (const auto& f : flags) {
    if (!joined.empty()) joined += ';';
    joined += f;
  }
  auto bound = [this](double BoundsRecord::*m) {
    return bounds ? format_number((*bounds).*m) : std::string(kSingular);
  };
  return {model,
          format_number(g),
          format_number(chi),
          format_number(alpha2),
          format_number(r),
          format_optional(eps2_numeric),
          format_optional(eps2_analytic),
          format_number(eta2_numeric),
          format_number(eta2_analytic),
          bound(&BoundsRecord::hak),
          bound(&BoundsRecord::ozawa_lhs),
          bound(&BoundsRecord::bo_lhs),
          bound(&BoundsRecord::bot_lhs),
          joined};
}

void append_bound_flags(const BoundsRecord& b, std::vector<std::string>& flags) {
  const std::pair<const char*, RelationStatus> items[] = {
      {"HAK", b.hak_status},
      {"OZAWA", b.ozawa_status},
      {"BO", b.bo_status},
      {"BOT", b.bot_status}};
  for (const auto& [name, status] : items) {
    if (status == RelationStatus::Violated) flags.push_back(std::string(name) + "_VIOLATED");
    if (status == RelationStatus::Boundary) flags.push_back(std::string(name) + "_BOUNDARY");
  }
}

}  // namespace fedr::cli
