#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "toric/graph.hpp"
#include "toric/membership.hpp"
#include "toric/reductions.hpp"

namespace toric::cli {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path);

// {"A": [[...], ...], "b": [...], "c": [...], "lower": [...], "upper": [... | null], "hint": [...]}
// Entries of b and c may be JSON integers or decimal strings.
IntegerProgram parse_ip_json(const std::string& text);
Json ip_to_json(const IntegerProgram& ip);

// "u v" per line, 0-based, '#' comments. The vertex count is one more than
// the largest endpoint unless a "vertices N" line is present.
Graph parse_edge_list(const std::string& text);

// Whitespace- or comma-separated column indices.
Permutation parse_ordering(const std::string& text);

// "3:1,0 -2:0,1": coefficient, colon, exponent CSV; terms separated by
// whitespace or ';'.
Polynomial parse_polynomial(const std::string& text);

Json to_json(const IntVector& v);
Json to_json(const Polynomial& p);
std::string big_string(const BigInt& v);

// Dense rows separated by ';', entries by ','.
std::vector<IntVector> parse_rows(const std::string& text);

}  // namespace toric::cli
