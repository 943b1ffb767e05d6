#pragma once

#include <vector>

#include "toric/integer.hpp"
#include "toric/matrix.hpp"

namespace toric {

struct Term {
  BigInt coefficient;
  IntVector exponent;

  friend bool operator==(const Term&, const Term&) = default;
};

using Polynomial = std::vector<Term>;

// f ∈ ideal(A) iff φ_A(f) = 0 where φ_A(x^u) = t^{Au}: group terms by Au and
// check that each group's coefficients cancel.
bool ideal_membership(const SparseIntMatrix& a, const Polynomial& poly);

}  // namespace toric
