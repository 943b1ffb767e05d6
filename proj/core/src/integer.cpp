#include "toric/binomial.hpp"
#include "toric/integer.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace toric {
namespace {

void require_same_size(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size())
    throw DimensionError("vector lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
}

}  // namespace

IntVector positive_part(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0 ? v[i] : 0;
  return out;
}

IntVector negative_part(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < 0 ? checked_sub(0, v[i]) : 0;
  return out;
}

IntVector add(const IntVector& a, const IntVector& b) {
  require_same_size(a, b);
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
  return out;
}

IntVector subtract(const IntVector& a, const IntVector& b) {
  require_same_size(a, b);
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_sub(a[i], b[i]);
  return out;
}

IntVector negate(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = checked_sub(0, v[i]);
  return out;
}

bool is_zero(const IntVector& v) {
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

bool is_nonnegative(const IntVector& v) {
  for (Int x : v)
    if (x < 0) return false;
  return true;
}

bool divides(const IntVector& a, const IntVector& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Int infinity_norm(const IntVector& v) {
  Int m = 0;
  for (Int x : v) {
    Int ax = x < 0 ? checked_sub(0, x) : x;
    if (ax > m) m = ax;
  }
  return m;
}

BigInt one_norm(const IntVector& v) {
  BigInt s = 0;
  for (Int x : v) s += x < 0 ? -BigInt(x) : BigInt(x);
  return s;
}

bool conformal_leq(const IntVector& u, const IntVector& v) {
  require_same_size(u, v);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    if (u[i] > 0 ? (v[i] < u[i]) : (v[i] > u[i])) return false;
  }
  return true;
}

std::string to_csv(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

IntVector parse_csv(const std::string& text) {
  IntVector out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    Int value = 0;
    try {
      value = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw ParseError("not an integer: '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw ParseError("not an integer: '" + item + "'");
    out.push_back(value);
  }
  if (!text.empty() && text.back() == ',') throw ParseError("trailing comma in '" + text + "'");
  return out;
}

Binomial::Binomial(IntVector h, IntVector t) : head(std::move(h)), tail(std::move(t)) {
  require_same_size(head, tail);
  if (!is_nonnegative(head) || !is_nonnegative(tail))
    throw DomainError("binomial exponents must be nonnegative");
  if (head == tail) throw DomainError("binomial head and tail coincide");
}

Binomial Binomial::from_kernel_vector(const IntVector& v) {
  return Binomial(positive_part(v), negative_part(v));
}

}  // namespace toric
