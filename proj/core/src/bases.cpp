#include "toric/bases.hpp"

#include <algorithm>
#include <map>

#include "toric/normal_form.hpp"

namespace toric {

namespace {

bool fits(const KernelLattice& l, const IntVector& v) {
  if (l.kind() == LatticeKind::InfinityBounded) {
    const auto& b = l.coordinate_bounds();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] > b[j] || v[j] < -b[j]) return false;
    return true;
  }
  return one_norm(positive_part(v)) <= l.degree() && one_norm(negative_part(v)) <= l.degree();
}

class StandardCache {
 public:
  StandardCache(const KernelLattice& l, const MonomialOrder& order) : l_(l), order_(order) {}
  bool operator()(const IntVector& u) {
    auto it = memo_.find(u);
    if (it != memo_.end()) return it->second;
    bool s = is_lattice_standard(l_, order_, u);
    memo_.emplace(u, s);
    return s;
  }

 private:
  const KernelLattice& l_;
  const MonomialOrder& order_;
  std::map<IntVector, bool> memo_;
};

bool reduced_gb_member(const KernelLattice& l, const MonomialOrder& order, const Binomial& b,
                       StandardCache& standard) {
  const IntVector& u = b.head;
  const IntVector& w = b.tail;
  const IntVector move = subtract(w, u);
  if (!standard(w)) return false;
  const DomainFilter filter = DomainFilter::shift_nonneg(u);
  const auto low = l.two_smallest(order, &filter);
  if (low.empty() || low.front() != move) return false;
  bool disjoint = true;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u[j] > 0 && w[j] > 0) disjoint = false;
  // Lower set {u, w} with disjoint supports already forces every u - e_i to
  // be standard.
  if (disjoint && low.size() == 2 && is_zero(low[1])) return true;
  IntVector smaller = u;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] == 0) continue;
    --smaller[j];
    bool s = standard(smaller);
    ++smaller[j];
    if (!s) return false;
  }
  return true;
}

void check_pair(const KernelLattice& l, const MonomialOrder& order, const Binomial& b) {
  const std::size_t n = l.dimension();
  if (b.head.size() != n || b.tail.size() != n) throw DimensionError("binomial dimension mismatch");
  if (order.size() != n) throw DimensionError("order dimension mismatch");
  if (!is_nonnegative(b.head) || !is_nonnegative(b.tail))
    throw DomainError("binomial exponents must be nonnegative");
  if (!is_zero(l.matrix().multiply(subtract(b.head, b.tail))))
    throw DomainError("not a kernel pair: A·head != A·tail");
  if (order.compare(b.head, b.tail) != std::strong_ordering::greater)
    throw DomainError("binomial must be oriented head > tail");
  if (l.kind() == LatticeKind::InfinityBounded) {
    if (std::max(infinity_norm(b.head), infinity_norm(b.tail)) > l.bound())
      throw BoundError("binomial exponents exceed the lattice bound");
  } else {
    if (!order.is_grlex()) throw DomainError("truncated Groebner bases require the grlex order");
    if (one_norm(b.head) > l.degree()) throw BoundError("binomial degree exceeds the truncation degree");
  }
}

std::vector<Binomial> scan_groebner(const KernelLattice& l, const MonomialOrder& order,
                                    std::size_t& scanned) {
  StandardCache standard(l, order);
  std::vector<Binomial> out;
  l.for_each([&](const IntVector& v) {
    ++scanned;
    if (is_zero(v)) return;
    IntVector head = positive_part(v), tail = negative_part(v);
    if (order.compare(head, tail) != std::strong_ordering::greater) return;
    Binomial b(std::move(head), std::move(tail));
    if (reduced_gb_member(l, order, b, standard)) out.push_back(std::move(b));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> scan_graver(const KernelLattice& l, std::size_t& scanned) {
  std::vector<IntVector> out;
  l.for_each([&](const IntVector& v) {
    ++scanned;
    if (!is_zero(v) && l.count(DomainFilter::conformal(v)) == 2) out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool in_reduced_gb(const KernelLattice& l, const MonomialOrder& order, const Binomial& b) {
  check_pair(l, order, b);
  StandardCache standard(l, order);
  return reduced_gb_member(l, order, b, standard);
}

BasisReport reduced_groebner_basis(const KernelLattice& l, const MonomialOrder& order) {
  if (order.size() != l.dimension()) throw DimensionError("order dimension mismatch");
  BasisReport r;
  r.kind = l.kind() == LatticeKind::InfinityBounded ? BasisKind::ReducedGroebner
                                                     : BasisKind::TruncatedGroebner;
  if (r.kind == BasisKind::TruncatedGroebner && !order.is_grlex())
    throw DomainError("truncated Groebner bases require the grlex order");
  r.order = order;
  r.bound_used = l.bound();
  r.binomials = scan_groebner(l, order, r.scanned);
  return r;
}

bool in_graver(const KernelLattice& l, const IntVector& z) {
  if (z.size() != l.dimension()) throw DimensionError("vector dimension mismatch");
  if (is_zero(z)) throw DomainError("the zero vector is never a Graver element");
  if (!is_zero(l.matrix().multiply(z))) throw DomainError("vector is not in the kernel of A");
  if (!fits(l, z)) throw BoundError("vector exceeds the lattice bound");
  return l.count(DomainFilter::conformal(z)) == 2;
}

BasisReport graver_basis(const KernelLattice& l) {
  BasisReport r;
  r.kind = l.kind() == LatticeKind::InfinityBounded ? BasisKind::Graver : BasisKind::TruncatedGraver;
  r.bound_used = l.bound();
  r.vectors = scan_graver(l, r.scanned);
  return r;
}

BasisReport truncated_bases(const SparseIntMatrix& a, Int d, const std::optional<MonomialOrder>& order,
                            const Permutation& ordering, const LatticeOptions& options) {
  if (order && !order->is_grlex()) throw DomainError("truncated Groebner bases require the grlex order");
  if (order && order->size() != a.cols()) throw DimensionError("order dimension mismatch");
  const KernelLattice l = build_truncated_lattice(a, d, ordering, options);
  return order ? reduced_groebner_basis(l, *order) : graver_basis(l);
}

bool is_reduced(const std::vector<Binomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (divides(basis[j].head, basis[i].head) || divides(basis[j].head, basis[i].tail)) return false;
    }
  return true;
}

}  // namespace toric
