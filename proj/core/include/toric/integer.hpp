#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toric/error.hpp"

namespace toric {

using BigInt = boost::multiprecision::cpp_int;

// Exponent and kernel-vector coordinates. Every operation on them goes
// through the checked helpers below, so an overflow is reported instead of
// wrapping.
using Int = std::int64_t;
using IntVector = std::vector<Int>;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

// Narrowing from BigInt; throws when the value does not fit.
inline Int to_int(const BigInt& v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw OverflowError("value " + v.str() + " does not fit in 64 bits");
  return static_cast<Int>(v);
}

// Componentwise helpers on IntVector.
IntVector positive_part(const IntVector& v);
IntVector negative_part(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
IntVector negate(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_nonnegative(const IntVector& v);
// a <= b componentwise (divisibility of monomials x^a | x^b).
bool divides(const IntVector& a, const IntVector& b);
Int infinity_norm(const IntVector& v);
BigInt one_norm(const IntVector& v);
// u ⊑ v: sign-compatible and |u_i| <= |v_i|.
bool conformal_leq(const IntVector& u, const IntVector& v);

std::string to_csv(const IntVector& v);
IntVector parse_csv(const std::string& text);

}  // namespace toric
