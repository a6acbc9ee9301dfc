#pragma once

#include <string>

#include <json.hpp>

#include "renyi/quantum.hpp"

namespace renyi::io {

using json = nlohmann::json;

/// {"dim": n, "entries": [[re, im], ...]} with n*n row-major pairs.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

/// A PSD operator in the matrix schema.
HermitianOperator state_from_json(const json& j);

/// {"dim_in", "dim_out", "kraus": [matrix, ...]} or {"dim_in", "dim_out", "choi": matrix}.
QChannel channel_from_json(const json& j);
json channel_to_json(const QChannel& ch);

/// Parses text; syntax errors carry line and column.
json parse_text(const std::string& text, const std::string& origin = "<input>");
json read_file(const std::string& path);

HermitianOperator load_state(const std::string& path);

/// Named channels ad:<gamma>, depol:<p>, identity:<d>; anything else is a JSON path.
QChannel load_channel(const std::string& spec);

}  // namespace renyi::io
