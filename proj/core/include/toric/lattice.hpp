#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "toric/graph.hpp"
#include "toric/integer.hpp"
#include "toric/matrix.hpp"
#include "toric/order.hpp"

namespace toric {

enum class LatticeKind {
  // {v : Av = 0, |v_j| <= g_j}
  InfinityBounded,
  // {v : Av = 0, |v+|_1 <= d, |v-|_1 <= d}
  DegreeTruncated,
};

struct LatticeOptions {
  // Upper limit on bag rows generated before consistency filtering.
  std::size_t max_rows = 50'000'000;
};

// Per-coordinate interval restriction lo_j <= v_j <= hi_j. Used to carve
// L_u (shift to the nonnegative orthant) and S_z (conformal predecessors)
// out of a lattice without rebuilding it.
struct DomainFilter {
  IntVector lo;
  IntVector hi;

  static DomainFilter unrestricted(std::size_t n);
  // v with u + v >= 0.
  static DomainFilter shift_nonneg(const IntVector& u);
  // v ⊑ z.
  static DomainFilter conformal(const IntVector& z);

  bool accepts(std::size_t coord, Int value) const { return lo[coord] <= value && value <= hi[coord]; }
  bool accepts(const IntVector& v) const;
};

// Backtrack-free join tree over the constraint network {Av = 0} plus box or
// degree constraints. Bags are the cliques X_l of the chordal completion of
// the constraint graph along an elimination ordering; the tree is the
// elimination tree. After construction every bag row extends into every
// child bag and is used by some parent row, so reading full assignments
// needs no backtracking.
//
// The degree-truncated variant adds saturating running-sum counters
// y_k = min(y_{k-1} + v+_{σ_k}, d + 1) and z_k (same for v-), interleaved
// with the coordinates in elimination order; its elements are projected
// back onto the n coordinates.
class KernelLattice {
 public:
  LatticeKind kind() const { return kind_; }
  const SparseIntMatrix& matrix() const { return *matrix_; }
  std::size_t dimension() const { return n_; }

  // Box half-widths per coordinate (InfinityBounded) or d repeated.
  const IntVector& coordinate_bounds() const { return coord_bound_; }
  // max_j g_j, or d.
  Int bound() const { return bound_; }
  Int degree() const { return kind_ == LatticeKind::DegreeTruncated ? bound_ : -1; }

  // Column ordering the lattice was built along.
  const Permutation& column_ordering() const { return column_ordering_; }
  // κ + 1 for the column graph completed along column_ordering().
  std::size_t column_clique_number() const { return column_clique_number_; }
  // Largest bag actually used (includes counters for the truncated kind).
  std::size_t clique_number() const { return clique_number_; }
  std::size_t bag_count() const { return bags_.size(); }
  std::size_t variable_count() const { return vars_.size(); }
  std::size_t stored_rows() const;
  bool empty() const { return empty_; }

  bool contains(const IntVector& v) const;
  // Depth-first, backtrack-free enumeration in a fixed order.
  void for_each(const std::function<void(const IntVector&)>& visit) const;
  std::vector<IntVector> elements() const;
  BigInt count() const;
  BigInt count(const DomainFilter& filter) const;

  // New lattice restricted to the filter, re-made backtrack-free.
  KernelLattice restrict(const DomainFilter& filter) const;

  // The element with the smallest order key among those passing the filter.
  std::optional<IntVector> minimize(const MonomialOrder& order,
                                    const DomainFilter* filter = nullptr) const;
  // Up to two smallest elements, ascending.
  std::vector<IntVector> two_smallest(const MonomialOrder& order,
                                      const DomainFilter* filter = nullptr) const;

  // Validator walks used by tests.
  bool check_backtrack_free() const;
  bool check_running_intersection() const;

  struct Variable {
    Int lo = 0;
    Int hi = 0;
    std::ptrdiff_t coord = -1;  // projected coordinate, -1 for counters
  };

  // y_out = min(y_prev + part(v_coord), cap), part = v+ or v-.
  struct Counter {
    std::size_t out = 0;
    std::ptrdiff_t prev = -1;
    std::size_t input = 0;
    bool positive = true;
    Int cap = 0;
  };

  struct Bag {
    // Separator variables (ascending id) followed by the owner variable.
    std::vector<std::size_t> scope;
    std::size_t sep_size = 0;
    std::ptrdiff_t parent = -1;
    std::vector<std::size_t> children;
    std::vector<std::size_t> sep_pos_in_parent;
    std::vector<Int> rows;  // row-major, width scope.size(), sorted
    std::size_t row_count = 0;
    std::vector<std::size_t> group_start;  // rows grouped by separator prefix

    std::size_t width() const { return scope.size(); }
    const Int* row(std::size_t r) const { return rows.data() + r * scope.size(); }
  };

 private:
  friend class LatticeBuilder;
  friend struct LatticeDp;

  KernelLattice() = default;

  void make_consistent();
  void index_groups();
  std::ptrdiff_t find_group(const Bag& child, const Int* parent_row) const;
  bool find_row(const Bag& bag, const IntVector& full) const;
  IntVector complete_assignment(const IntVector& v) const;
  IntVector project(const IntVector& full) const;

  LatticeKind kind_ = LatticeKind::InfinityBounded;
  std::shared_ptr<const SparseIntMatrix> matrix_;
  std::size_t n_ = 0;
  IntVector coord_bound_;
  Int bound_ = 0;
  Permutation column_ordering_;
  std::size_t column_clique_number_ = 0;
  std::size_t clique_number_ = 0;

  std::vector<Variable> vars_;
  std::vector<Counter> counters_;         // in evaluation order
  std::vector<std::size_t> coord_var_;    // coordinate -> variable id
  std::vector<Bag> bags_;                 // one per variable, by elimination position
  std::vector<std::size_t> preorder_;     // parents before children
  std::vector<std::size_t> roots_;
  bool empty_ = false;
};

// (2ma + 1)^m with a = max |A_ij|.
BigInt graver_infinity_bound(const SparseIntMatrix& a);

// L = {v : Av = 0, |v|_∞ <= g}, bags from the column graph completed along
// `ordering` (a permutation of the columns).
KernelLattice build_lattice(const SparseIntMatrix& a, Int g, const Permutation& ordering,
                            const LatticeOptions& options = {});
// Per-coordinate box |v_j| <= bounds[j].
KernelLattice build_lattice(const SparseIntMatrix& a, const IntVector& bounds,
                            const Permutation& ordering, const LatticeOptions& options = {});
// L_d = {v : Av = 0, |v+|_1 <= d, |v-|_1 <= d}.
KernelLattice build_truncated_lattice(const SparseIntMatrix& a, Int d, const Permutation& ordering,
                                      const LatticeOptions& options = {});

// Column ordering chosen by a greedy heuristic on the column graph.
Permutation column_ordering(const SparseIntMatrix& a, OrderingStrategy strategy);

inline bool contains(const KernelLattice& l, const IntVector& v) { return l.contains(v); }
inline BigInt count(const KernelLattice& l) { return l.count(); }
// L_u = {v ∈ L : u + v >= 0}.
KernelLattice restrict_shift_nonneg(const KernelLattice& l, const IntVector& u);
// S_z = {v ∈ L : v ⊑ z}.
KernelLattice restrict_conformal(const KernelLattice& l, const IntVector& z);
inline std::optional<IntVector> minimize(const KernelLattice& l, const MonomialOrder& order) {
  return l.minimize(order);
}
inline std::vector<IntVector> two_smallest(const KernelLattice& l, const MonomialOrder& order) {
  return l.two_smallest(order);
}

}  // namespace toric
