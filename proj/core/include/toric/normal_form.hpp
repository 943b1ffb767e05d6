#pragma once

#include <cstddef>
#include <vector>

#include "toric/binomial.hpp"
#include "toric/lattice.hpp"
#include "toric/membership.hpp"
#include "toric/order.hpp"

namespace toric {

struct NormalFormResult {
  IntVector input;
  IntVector normal;
  bool was_standard = false;
};

// Normal form of x^u by descent through the lattice: z <- z + argmin key(v)
// over v ∈ L with z + v >= 0, until the minimiser is 0. Exact whenever L
// contains the Graver basis (box lattice with g >= g∞) or, for a truncated
// lattice under grlex, when deg(u) <= d.
//
// Requires u >= 0 and |u|_∞ <= g (box lattice) or deg(u) <= d with a grlex
// order (truncated lattice); BoundError otherwise.
NormalFormResult normal_form_bounded(const KernelLattice& l, const MonomialOrder& order,
                                     const IntVector& u);

// No v ∈ L with u + v >= 0 and u + v ≺ u.
bool is_standard(const KernelLattice& l, const MonomialOrder& order, const IntVector& u);

// Same test without the bound precondition; used internally for exponents
// that leave the box during descent.
bool is_lattice_standard(const KernelLattice& l, const MonomialOrder& order, const IntVector& u);

// Classical division by a binomial Gröbner basis whose elements are oriented
// head ≻ tail. Elements are tried in ascending order of their heads.
IntVector reduce_by_basis(const std::vector<Binomial>& gb, const MonomialOrder& order,
                          const IntVector& u, std::size_t max_steps = 10'000'000);

// Termwise normal forms with like monomials collected; zero terms dropped,
// result sorted by descending monomial.
Polynomial reduce_polynomial(const std::vector<Binomial>& gb, const MonomialOrder& order,
                             const Polynomial& f);
Polynomial normal_form_polynomial(const KernelLattice& l, const MonomialOrder& order,
                                  const Polynomial& f);

}  // namespace toric
