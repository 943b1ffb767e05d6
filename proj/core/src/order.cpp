#include "toric/order.hpp"

#include <sstream>

namespace toric {

MonomialOrder::MonomialOrder(std::vector<BigInt> weights) : weights_(std::move(weights)) {
  for (const BigInt& w : weights_)
    if (w < 0) throw DomainError("monomial order weights must be nonnegative");
}

MonomialOrder MonomialOrder::lex(std::size_t n) { return MonomialOrder(std::vector<BigInt>(n, 0)); }

MonomialOrder MonomialOrder::grlex(std::size_t n) { return MonomialOrder(std::vector<BigInt>(n, 1)); }

MonomialOrder MonomialOrder::parse(const std::string& spec, std::size_t n) {
  if (spec == "lex") return lex(n);
  if (spec == "grlex") return grlex(n);
  const std::string prefix = "weights:";
  if (spec.rfind(prefix, 0) != 0)
    throw ParseError("unknown order '" + spec + "' (expected lex, grlex or weights:<csv>)");
  std::vector<BigInt> w;
  std::stringstream ss(spec.substr(prefix.size()));
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      w.emplace_back(item);
    } catch (const std::exception&) {
      throw ParseError("bad weight '" + item + "'");
    }
  }
  if (w.size() != n)
    throw ParseError("order has " + std::to_string(w.size()) + " weights for " + std::to_string(n) +
                     " variables");
  try {
    return MonomialOrder(std::move(w));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

bool MonomialOrder::is_lex() const {
  for (const BigInt& w : weights_)
    if (w != 0) return false;
  return true;
}

bool MonomialOrder::is_grlex() const {
  for (const BigInt& w : weights_)
    if (w != 1) return false;
  return true;
}

BigInt MonomialOrder::weight(const IntVector& v) const {
  if (v.size() != weights_.size())
    throw DimensionError("vector of length " + std::to_string(v.size()) + " for an order on " +
                         std::to_string(weights_.size()) + " variables");
  BigInt s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0 && weights_[i] != 0) s += weights_[i] * v[i];
  return s;
}

std::strong_ordering MonomialOrder::compare(const IntVector& u, const IntVector& v) const {
  if (u.size() != v.size()) throw DimensionError("compared vectors differ in length");
  BigInt wu = weight(u), wv = weight(v);
  if (wu != wv) return wu < wv ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) return u[i] < v[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::vector<BigInt> MonomialOrder::key(const IntVector& v) const {
  std::vector<BigInt> k;
  k.reserve(v.size() + 1);
  k.push_back(weight(v));
  for (Int x : v) k.emplace_back(x);
  return k;
}

std::string MonomialOrder::describe() const {
  if (is_lex()) return "lex";
  if (is_grlex()) return "grlex";
  std::string out = "weights:";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) out += ',';
    out += weights_[i].str();
  }
  return out;
}

}  // namespace toric
