#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/binomial.hpp"
#include "toric/lattice.hpp"
#include "toric/order.hpp"

namespace toric {

enum class BasisKind { ReducedGroebner, Graver, TruncatedGroebner, TruncatedGraver };

struct BasisReport {
  BasisKind kind = BasisKind::Graver;
  std::optional<MonomialOrder> order;
  std::vector<Binomial> binomials;  // Gröbner kinds, sorted
  std::vector<IntVector> vectors;   // Graver kinds, sorted
  std::size_t scanned = 0;          // lattice elements examined
  Int bound_used = 0;               // g or d
};

// x^u - x^w (u ≻ w) belongs to the reduced Gröbner basis relative to L:
// w is standard, u - e_i is standard for every i in supp(u), and w - u is the
// minimiser over L_u. Equals the true reduced Gröbner basis test whenever L
// contains the Graver basis.
bool in_reduced_gb(const KernelLattice& l, const MonomialOrder& order, const Binomial& b);

// Scan L, orient each {v, -v} once, keep members.
BasisReport reduced_groebner_basis(const KernelLattice& l, const MonomialOrder& order);

// z is ⊑-minimal among nonzero elements of L.
bool in_graver(const KernelLattice& l, const IntVector& z);

BasisReport graver_basis(const KernelLattice& l);

// Degree-<= d part of the grlex reduced Gröbner basis (order given) or of the
// Graver basis (no order), from the truncated lattice L_d.
BasisReport truncated_bases(const SparseIntMatrix& a, Int d, const std::optional<MonomialOrder>& order,
                            const Permutation& ordering, const LatticeOptions& options = {});

// No term of any element is divisible by the head of another.
bool is_reduced(const std::vector<Binomial>& basis);

}  // namespace toric
