#pragma once

#include <compare>
#include <vector>

#include "toric/integer.hpp"

namespace toric {

// The weight order ≺_ω: compare ω·u first, break ties lexicographically with
// the convention that u ≺ v when the first nonzero entry of u - v is negative.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<BigInt> weights);

  static MonomialOrder lex(std::size_t n);
  static MonomialOrder grlex(std::size_t n);
  // "lex", "grlex" or "weights:w1,w2,...".
  static MonomialOrder parse(const std::string& spec, std::size_t n);

  std::size_t size() const { return weights_.size(); }
  const std::vector<BigInt>& weights() const { return weights_; }
  bool is_lex() const;
  // ω = 1.
  bool is_grlex() const;

  std::strong_ordering compare(const IntVector& u, const IntVector& v) const;
  BigInt weight(const IntVector& v) const;
  // (ω·v, v_1, ..., v_n); additive and lexicographically order-preserving.
  std::vector<BigInt> key(const IntVector& v) const;

  std::string describe() const;

 private:
  std::vector<BigInt> weights_;
};

inline std::strong_ordering compare(const MonomialOrder& order, const IntVector& u,
                                    const IntVector& v) {
  return order.compare(u, v);
}

inline std::vector<BigInt> order_key(const MonomialOrder& order, const IntVector& v) {
  return order.key(v);
}

}  // namespace toric
