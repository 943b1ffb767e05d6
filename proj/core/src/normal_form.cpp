#include "toric/normal_form.hpp"

#include <algorithm>
#include <map>

namespace toric {

namespace {

void check_monomial(const KernelLattice& l, const MonomialOrder& order, const IntVector& u) {
  if (u.size() != l.dimension())
    throw DimensionError("monomial has " + std::to_string(u.size()) + " exponents, expected " +
                         std::to_string(l.dimension()));
  if (order.size() != l.dimension()) throw DimensionError("order dimension mismatch");
  if (!is_nonnegative(u)) throw DomainError("exponent vector must be nonnegative");
}

void check_bound(const KernelLattice& l, const MonomialOrder& order, const IntVector& u) {
  if (l.kind() == LatticeKind::InfinityBounded) {
    const auto& b = l.coordinate_bounds();
    for (std::size_t j = 0; j < u.size(); ++j)
      if (u[j] > b[j])
        throw BoundError("exponent " + std::to_string(u[j]) + " at position " + std::to_string(j) +
                         " exceeds the lattice bound " + std::to_string(b[j]));
  } else {
    if (!order.is_grlex()) throw DomainError("truncated lattices support the grlex order only");
    if (one_norm(u) > l.degree())
      throw BoundError("monomial degree exceeds the truncation degree " + std::to_string(l.degree()));
  }
}

IntVector descend(const KernelLattice& l, const MonomialOrder& order, IntVector z) {
  while (true) {
    const DomainFilter filter = DomainFilter::shift_nonneg(z);
    auto best = l.minimize(order, &filter);
    if (!best || is_zero(*best)) return z;
    z = add(z, *best);
  }
}

}  // namespace

NormalFormResult normal_form_bounded(const KernelLattice& l, const MonomialOrder& order,
                                     const IntVector& u) {
  check_monomial(l, order, u);
  check_bound(l, order, u);
  NormalFormResult r;
  r.input = u;
  r.normal = descend(l, order, u);
  r.was_standard = r.normal == u;
  return r;
}

bool is_standard(const KernelLattice& l, const MonomialOrder& order, const IntVector& u) {
  check_monomial(l, order, u);
  check_bound(l, order, u);
  return is_lattice_standard(l, order, u);
}

bool is_lattice_standard(const KernelLattice& l, const MonomialOrder& order, const IntVector& u) {
  check_monomial(l, order, u);
  const DomainFilter filter = DomainFilter::shift_nonneg(u);
  auto best = l.minimize(order, &filter);
  return !best || is_zero(*best);
}

IntVector reduce_by_basis(const std::vector<Binomial>& gb, const MonomialOrder& order,
                          const IntVector& u, std::size_t max_steps) {
  if (u.size() != order.size()) throw DimensionError("monomial dimension differs from the order");
  if (!is_nonnegative(u)) throw DomainError("exponent vector must be nonnegative");
  std::vector<const Binomial*> sorted;
  for (const auto& b : gb) {
    if (b.head.size() != u.size() || b.tail.size() != u.size())
      throw DimensionError("basis element dimension mismatch");
    if (order.compare(b.head, b.tail) != std::strong_ordering::greater)
      throw DomainError("basis element " + to_csv(b.head) + " -> " + to_csv(b.tail) +
                        " is not oriented head > tail");
    sorted.push_back(&b);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Binomial* x, const Binomial* y) {
    return order.compare(x->head, y->head) == std::strong_ordering::less;
  });
  IntVector z = u;
  for (std::size_t step = 0;; ++step) {
    const Binomial* hit = nullptr;
    for (const Binomial* b : sorted)
      if (divides(b->head, z)) {
        hit = b;
        break;
      }
    if (!hit) return z;
    if (step == max_steps)
      throw BudgetError("division did not terminate after " + std::to_string(max_steps) +
                        " steps starting from " + to_csv(u) + "; the basis is not a Groebner basis");
    for (std::size_t j = 0; j < z.size(); ++j)
      z[j] = checked_add(checked_sub(z[j], hit->head[j]), hit->tail[j]);
  }
}

namespace {

template <class Reduce>
Polynomial collect(const MonomialOrder& order, const Polynomial& f, Reduce reduce) {
  auto less = [&](const IntVector& a, const IntVector& b) {
    return order.compare(a, b) == std::strong_ordering::greater;
  };
  std::map<IntVector, BigInt, decltype(less)> acc(less);
  for (const auto& t : f) {
    if (t.coefficient == 0) continue;
    acc[reduce(t.exponent)] += t.coefficient;
  }
  Polynomial out;
  for (auto& [e, c] : acc)
    if (c != 0) out.push_back({c, e});
  return out;
}

}  // namespace

Polynomial reduce_polynomial(const std::vector<Binomial>& gb, const MonomialOrder& order,
                             const Polynomial& f) {
  return collect(order, f, [&](const IntVector& e) { return reduce_by_basis(gb, order, e); });
}

Polynomial normal_form_polynomial(const KernelLattice& l, const MonomialOrder& order,
                                  const Polynomial& f) {
  return collect(order, f, [&](const IntVector& e) { return normal_form_bounded(l, order, e).normal; });
}

}  // namespace toric
