#pragma once

// Brute-force reference implementations and instance generators. Nothing in
// here calls the core algorithms; only the plain data types are shared.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "toric/integer.hpp"
#include "toric/matrix.hpp"

namespace toric::oracle {

inline constexpr std::size_t kDefaultBudget = 100'000'000;

// All v with Av = 0 and |v_j| <= g, ascending lexicographically.
std::vector<IntVector> enumerate_kernel(const SparseIntMatrix& a, Int g,
                                        std::size_t budget = kDefaultBudget);
std::vector<IntVector> enumerate_kernel(const SparseIntMatrix& a, const IntVector& bounds,
                                        std::size_t budget = kDefaultBudget);
// All v with Av = 0, |v+|_1 <= d and |v-|_1 <= d.
std::vector<IntVector> enumerate_truncated(const SparseIntMatrix& a, Int d,
                                           std::size_t budget = kDefaultBudget);

// x^u ≺_ω x^v straight from the definition.
bool precedes(const std::vector<BigInt>& omega, const IntVector& u, const IntVector& v);

// ⊑-minimal nonzero elements of a candidate set.
std::vector<IntVector> conformal_minimal(const std::vector<IntVector>& kernel);
std::vector<IntVector> graver_bruteforce(const SparseIntMatrix& a, Int g,
                                         std::size_t budget = kDefaultBudget);

// Graver basis by the completion procedure: start from a symmetric lattice
// basis, add conformal remainders of pairwise sums until closed, then keep
// the ⊑-minimal elements. Independent of any box bound.
std::vector<IntVector> graver_completion(const SparseIntMatrix& a, std::size_t budget = 1'000'000);

// Integer basis of ker(A) via unimodular column operations.
std::vector<IntVector> kernel_basis(const SparseIntMatrix& a);

// ≺_ω-minimum of {z : 0 <= z_j <= box, Az = Au}.
IntVector normal_form_bruteforce(const SparseIntMatrix& a, const std::vector<BigInt>& omega,
                                 const IntVector& u, Int box, std::size_t budget = kDefaultBudget);

struct OrientedPair {
  IntVector head;
  IntVector tail;
  friend auto operator<=>(const OrientedPair&, const OrientedPair&) = default;
};

// Reduced Gröbner basis relative to a move set K (a kernel sample closed
// under negation): z is standard iff no v ∈ K has z + v >= 0 and z + v ≺ z;
// (u, w) is kept iff w is standard, every u - e_i is standard and u + v ≺ u + v'
// for v = w - u against every other admissible move v'. Linear scans only.
std::vector<OrientedPair> reduced_gb_from_moves(const std::vector<IntVector>& moves,
                                                const std::vector<BigInt>& omega);
std::vector<OrientedPair> reduced_gb_bruteforce(const SparseIntMatrix& a, const std::vector<BigInt>& omega,
                                                Int g, std::size_t budget = kDefaultBudget);

// Instance generators.
using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

// Rows are vertices, columns are edges.
SparseIntMatrix graph_incidence(std::size_t vertices, const EdgeList& edges);
// [[A1 A1 ... A1], [A2 0 ... 0], ..., [0 ... 0 A2]].
SparseIntMatrix nfold(const std::vector<IntVector>& a1, const std::vector<IntVector>& a2, std::size_t n);
// m-fold product of the bimatrix (I_l ; 1_l^T): incidence of K_{l,m} with
// columns x_{1,1}, ..., x_{l,1}, ..., x_{1,m}, ..., x_{l,m}.
SparseIntMatrix two_by_two_minors(std::size_t l, std::size_t m);
// n-fold product of (I_{lm} ; minors(l, m)).
SparseIntMatrix threeway_table(std::size_t l, std::size_t m, std::size_t n);
// Each entry nonzero with probability `density`, value uniform in
// [-a, a] \ {0}; rows that come out empty are redrawn.
SparseIntMatrix random_sparse(std::size_t m, std::size_t n, Int a, double density, std::uint64_t seed);
// Random simple graph G(n, p).
EdgeList random_graph(std::size_t vertices, double p, std::uint64_t seed);

}  // namespace toric::oracle
