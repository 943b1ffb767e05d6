#pragma once

#include "toric/integer.hpp"

namespace toric {

// x^head - x^tail, both exponents nonnegative and distinct.
struct Binomial {
  IntVector head;
  IntVector tail;

  Binomial() = default;
  Binomial(IntVector head, IntVector tail);

  // head = v+, tail = v-.
  static Binomial from_kernel_vector(const IntVector& v);
  // head - tail
  IntVector exponent_difference() const { return subtract(head, tail); }

  friend auto operator<=>(const Binomial&, const Binomial&) = default;
};

}  // namespace toric
