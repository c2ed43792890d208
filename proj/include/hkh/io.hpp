#pragma once

#include "hkh/diagram.hpp"

#include <string>
#include <string_view>

namespace hkh {

/// Reads the JSON diagram format:
///   {"genus": g, "edges": [{"id": 0, "word": "a1 B2"}], "crossings":
///    [{"id": 0, "slots": [e0, e1, e2, e3], "sign": 1}], "free_loops": ["a"]}
/// "sign" is optional and only needed for components that pass over at
/// every crossing. Throws Error(parse_error) naming the line or field, or
/// Error(malformed_word).
Diagram parse_diagram_json(std::string_view text);

Diagram load_diagram(const std::string& path);

/// Inverse of parse_diagram_json; always writes the crossing signs.
std::string diagram_to_json(const Diagram& d);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace hkh
