#include "cli_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace renyi::cli {

namespace {

struct Decimal {
  std::int64_t digits = 0;  // value = digits / 10^scale
  int scale = 0;
};

Decimal parse_decimal(const std::string& s) {
  Decimal d;
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  bool any = false, point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.' && !point) {
      point = true;
      continue;
    }
    if ((c == 'e' || c == 'E') && any) {
      std::size_t used = 0;
      int exp = 0;
      try {
        exp = std::stoi(s.substr(i + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || i + 1 + used != s.size()) throw std::invalid_argument("bad exponent: '" + s + "'");
      d.scale -= exp;
      for (; d.scale < 0; ++d.scale) {
        if (std::abs(d.digits) > INT64_MAX / 10) throw std::invalid_argument("too large: '" + s + "'");
        d.digits *= 10;
      }
      if (d.scale > 22) throw std::invalid_argument("too many decimal places: '" + s + "'");
      break;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal number: '" + s + "'");
    if (d.digits > (INT64_MAX - 9) / 10 || d.scale > 15)
      throw std::invalid_argument("too many digits: '" + s + "'");
    d.digits = d.digits * 10 + (c - '0');
    if (point) ++d.scale;
    any = true;
  }
  if (!any) throw std::invalid_argument("not a decimal number: '" + s + "'");
  if (neg) d.digits = -d.digits;
  return d;
}

std::int64_t rescale(const Decimal& d, int scale) {
  std::int64_t v = d.digits;
  for (int k = d.scale; k < scale; ++k) v *= 10;
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t from = 0;
  for (;;) {
    const auto at = s.find(sep, from);
    out.push_back(s.substr(from, at - from));
    if (at == std::string::npos) break;
    from = at + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

double to_double(std::int64_t digits, int scale) {
  // Both operands are exact, so the quotient is correctly rounded.
  return static_cast<double>(digits) / std::pow(10.0, scale);
}

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  for (const auto& raw : split(text, ',')) {
    const std::string item = trim(raw);
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      const Decimal d = parse_decimal(item);
      out.push_back(to_double(d.digits, d.scale));
      continue;
    }
    if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:step, got '" + item + "'");
    const Decimal a = parse_decimal(parts[0]), b = parse_decimal(parts[1]), h = parse_decimal(parts[2]);
    const int scale = std::max({a.scale, b.scale, h.scale});
    const std::int64_t lo = rescale(a, scale), hi = rescale(b, scale), step = rescale(h, scale);
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    if (hi < lo) throw std::invalid_argument("grid stop is below start");
    if ((hi - lo) / step > 100000) throw std::invalid_argument("grid has too many points");
    for (std::int64_t v = lo; v <= hi; v += step) out.push_back(to_double(v, scale));
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(row[k]);
    os << '\n';
  }
}

void Table::write_json(std::ostream& os) const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t k = 0; k < row.size() && k < header.size(); ++k) {
      const Cell& c = row[k];
      if (const auto* d = std::get_if<double>(&c)) {
        // Same digits as the CSV; non-finite values become strings.
        if (std::isfinite(*d))
          obj[header[k]] = std::stod(format_number(*d));
        else
          obj[header[k]] = format_number(*d);
      } else if (const auto* i = std::get_if<std::int64_t>(&c)) {
        obj[header[k]] = *i;
      } else {
        obj[header[k]] = std::get<std::string>(c);
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace renyi::cli
