#include "toric/membership.hpp"

#include <map>

namespace toric {

bool ideal_membership(const SparseIntMatrix& a, const Polynomial& poly) {
  std::map<IntVector, BigInt> image_sums;
  for (const Term& t : poly) {
    if (!is_nonnegative(t.exponent)) throw DomainError("exponents must be nonnegative");
    image_sums[a.multiply(t.exponent)] += t.coefficient;
  }
  for (const auto& [image, sum] : image_sums)
    if (sum != 0) return false;
  return true;
}

}  // namespace toric
