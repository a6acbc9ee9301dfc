#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace renyi::cli {

/// Inclusive `start:stop:step` grid. Endpoints and step are parsed as exact
/// decimals (an exponent suffix is allowed), so 1.1:2.0:0.1 yields the same
/// doubles as the literals 1.1, ..., 2.0.
/// A plain number yields a one-element grid; comma-separated lists are also accepted.
std::vector<double> parse_grid(const std::string& text);

/// 15 significant digits; inf and nan spelled out.
std::string format_number(double v);

using Cell = std::variant<double, std::int64_t, std::string>;

/// Header plus rows; rendered as CSV (RFC 4180 quoting) or as a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

}  // namespace renyi::cli
