#include "io.hpp"

#include <fstream>
#include <sstream>

namespace toric::cli {

namespace {

BigInt json_big(const Json& v, const std::string& what) {
  try {
    if (v.is_number_integer()) return BigInt(v.get<long long>());
    if (v.is_string()) return BigInt(v.get<std::string>());
  } catch (const std::exception&) {
  }
  throw ParseError(what + " must be an integer or a decimal string");
}

Int json_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
  return v.get<Int>();
}

IntVector json_vector(const Json& v, const std::string& what) {
  if (!v.is_array()) throw ParseError(what + " must be an array");
  IntVector out;
  for (const auto& x : v) out.push_back(json_int(x, what));
  return out;
}

std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (seps.find(ch) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IntegerProgram parse_ip_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid IP JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("A") || !j.contains("b") || !j.contains("c"))
    throw ParseError("IP JSON needs the keys A, b and c");
  std::vector<IntVector> rows;
  for (const auto& r : j["A"]) rows.push_back(json_vector(r, "A row"));
  const std::size_t n = j["c"].size();
  for (const auto& r : rows)
    if (r.size() != n) throw ParseError("every row of A needs " + std::to_string(n) + " entries");
  IntegerProgram ip{SparseIntMatrix::from_dense(rows.size(), n, rows), {}, {}, {}, {}, std::nullopt};
  for (const auto& x : j["b"]) ip.b.push_back(json_big(x, "b entry"));
  for (const auto& x : j["c"]) ip.c.push_back(json_big(x, "c entry"));
  if (j.contains("lower") && !j["lower"].is_null()) ip.lower = json_vector(j["lower"], "lower");
  if (j.contains("upper") && !j["upper"].is_null()) {
    for (const auto& x : j["upper"])
      ip.upper.push_back(x.is_null() ? std::nullopt : std::optional<Int>(json_int(x, "upper entry")));
  }
  if (j.contains("hint") && !j["hint"].is_null()) ip.hint = json_vector(j["hint"], "hint");
  try {
    ip.validate();
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
  return ip;
}

Json ip_to_json(const IntegerProgram& ip) {
  Json j;
  j["A"] = Json::array();
  for (const auto& row : ip.a.dense()) j["A"].push_back(to_json(row));
  j["b"] = Json::array();
  for (const auto& v : ip.b) j["b"].push_back(big_string(v));
  j["c"] = Json::array();
  for (const auto& v : ip.c) j["c"].push_back(big_string(v));
  if (!ip.lower.empty()) j["lower"] = to_json(ip.lower);
  if (!ip.upper.empty()) {
    j["upper"] = Json::array();
    for (const auto& u : ip.upper) j["upper"].push_back(u ? Json(*u) : Json(nullptr));
  }
  if (ip.hint) j["hint"] = to_json(*ip.hint);
  return j;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Edge> edges;
  std::size_t vertices = 0;
  bool explicit_count = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "vertices") {
      if (!(ls >> vertices)) throw ParseError("line " + std::to_string(lineno) + ": expected a vertex count");
      explicit_count = true;
      continue;
    }
    std::size_t u = 0, v = 0;
    try {
      std::size_t pos = 0;
      u = std::stoul(first, &pos);
      if (pos != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
    }
    std::string rest;
    if (!(ls >> v) || (ls >> rest)) throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
    edges.emplace_back(u, v);
    if (!explicit_count) vertices = std::max(vertices, std::max(u, v) + 1);
  }
  for (const auto& [u, v] : edges)
    if (u >= vertices || v >= vertices) throw ParseError("edge endpoint exceeds the vertex count");
  try {
    return Graph(vertices, edges);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Permutation parse_ordering(const std::string& text) {
  Permutation p;
  for (const auto& tok : split(text, " \t\r\n,")) {
    try {
      std::size_t pos = 0;
      unsigned long v = std::stoul(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      p.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad ordering entry '" + tok + "'");
    }
  }
  return p;
}

Polynomial parse_polynomial(const std::string& text) {
  Polynomial f;
  for (const auto& term : split(text, " \t\r\n;")) {
    auto colon = term.find(':');
    if (colon == std::string::npos) throw ParseError("term '" + term + "' must look like coefficient:exponents");
    Term t;
    try {
      t.coefficient = BigInt(term.substr(0, colon));
    } catch (const std::exception&) {
      throw ParseError("bad coefficient in term '" + term + "'");
    }
    t.exponent = parse_csv(term.substr(colon + 1));
    f.push_back(std::move(t));
  }
  if (f.empty()) throw ParseError("empty polynomial");
  return f;
}

Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (Int x : v) j.push_back(x);
  return j;
}

Json to_json(const Polynomial& p) {
  Json j = Json::array();
  for (const auto& t : p) j.push_back(Json{{"coefficient", big_string(t.coefficient)}, {"exponent", to_json(t.exponent)}});
  return j;
}

std::string big_string(const BigInt& v) { return v.str(); }

std::vector<IntVector> parse_rows(const std::string& text) {
  std::vector<IntVector> rows;
  for (const auto& r : split(text, ";")) rows.push_back(parse_csv(r));
  if (rows.empty()) throw ParseError("expected at least one row");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw ParseError("rows have different lengths");
  return rows;
}

}  // namespace toric::cli
