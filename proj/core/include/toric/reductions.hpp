#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/graph.hpp"
#include "toric/integer.hpp"
#include "toric/lattice.hpp"
#include "toric/matrix.hpp"
#include "toric/order.hpp"

namespace toric {

// min c·z  s.t.  Az = b,  lower <= z <= upper.
// Empty `lower` means z >= 0; empty `upper` or a missing entry means no
// upper bound for that variable.
struct IntegerProgram {
  SparseIntMatrix a;
  std::vector<BigInt> b;
  std::vector<BigInt> c;
  IntVector lower;
  std::vector<std::optional<Int>> upper;
  std::optional<IntVector> hint;

  std::size_t variables() const { return a.cols(); }
  Int lower_bound(std::size_t j) const { return lower.empty() ? 0 : lower[j]; }
  std::optional<Int> upper_bound(std::size_t j) const {
    return upper.empty() ? std::nullopt : upper[j];
  }
  // Throws DimensionError on inconsistent lengths.
  void validate() const;
  bool is_feasible(const IntVector& z) const;
  BigInt objective(const IntVector& z) const;
};

// c = r^n·ω + (r^{n-1}, ..., r, 1). For |v - u|_∞ <= r - 1,
// u ≺_ω v  iff  c·u < c·v.
std::vector<BigInt> weight_vector(const std::vector<BigInt>& omega, const BigInt& r, std::size_t n);

// min{c·z : z >= 0, Az = Au} with r = (2ma+1)^m + 1. Every optimum is the
// normal form of x^u. Carries the box z_j <= floor(c·u / c_j), which holds
// for every point with c·z <= c·u, and u itself as the hint.
IntegerProgram normalform_to_ip(const SparseIntMatrix& a, const MonomialOrder& order, const IntVector& u);

struct NormalFormInstance {
  SparseIntMatrix a_prime;      // [[-1, c-, c+], [0, 0, A], [0, I, I]]
  std::vector<BigInt> b_prime;  // (0, b, t)
  IntVector u;                  // (c-·ȳ + c+·z̄, ȳ, z̄), ȳ = t - z̄
  MonomialOrder order;          // lex on (r, y, z)
  BigInt offset;                // c-·t
  IntVector bounds;             // per-variable box containing the whole fiber of u
};

// Requires lower = 0, finite upper bounds t and a feasible hint z̄.
NormalFormInstance ip_to_normalform(const IntegerProgram& ip, bool graded = false);

enum class IpStatus { Optimal, Infeasible, NoBox };

struct IpSolution {
  IpStatus status = IpStatus::Infeasible;
  IntVector z;
  BigInt objective;
  std::size_t nodes = 0;
};

struct ReducedSolution {
  IpSolution solution;
  IntVector normal_form;  // v = (r, y, z)
  Int r = 0;
};

// Solve the IP through the normal form of x^u in ideal(A'), computed on a
// lattice whose box contains every fiber difference.
ReducedSolution solve_via_normal_form(const IntegerProgram& ip, bool graded = false,
                                      OrderingStrategy strategy = OrderingStrategy::MinFill,
                                      const LatticeOptions& options = {});

// Variables z_i (vertices) then z_ij (edges, in g.edges() order); rows
// z_i + z_j - z_ij = 1; objective sum z_i; 0 <= z <= 1; hint all ones.
IntegerProgram vertex_cover_ip(const Graph& g);

// Depth-first branch-and-bound with interval propagation on the equality
// rows. Most constrained variable first, lowest index on ties, values
// ascending; among optimal points the lexicographically smallest is returned.
IpSolution solve_ip(const IntegerProgram& ip, std::size_t node_budget = 100'000'000);

}  // namespace toric
