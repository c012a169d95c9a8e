#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace rsequil::jsonio {

using ordered_json = nlohmann::ordered_json;

/// %.17g — enough digits to reproduce any double exactly on re-parse.
std::string format_double(double v);

/// Serializes with keys in stored (insertion/document) order and floats at 17
/// significant digits, so parse + re-serialize is byte-identical.
std::string to_canonical_string(const ordered_json& j);

/// Writes content to path atomically (temp file in the same directory + rename).
void write_atomic(const std::string& path, std::string_view content);

}  // namespace rsequil::jsonio
