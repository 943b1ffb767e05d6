#include "toric/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace toric {

namespace {

constexpr Int kIntMin = std::numeric_limits<Int>::min();
constexpr Int kIntMax = std::numeric_limits<Int>::max();

// Three-way comparison of two rows' first `len` entries.
int compare_prefix(const Int* a, const Int* b, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    if (a[k] < b[k]) return -1;
    if (a[k] > b[k]) return 1;
  }
  return 0;
}

// Index of the first row whose prefix is >= key.
std::size_t lower_row(const KernelLattice::Bag& bag, const Int* key, std::size_t len) {
  std::size_t lo = 0, hi = bag.row_count;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (compare_prefix(bag.row(mid), key, len) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

bool has_prefix(const KernelLattice::Bag& bag, const Int* key, std::size_t len) {
  std::size_t r = lower_row(bag, key, len);
  return r < bag.row_count && compare_prefix(bag.row(r), key, len) == 0;
}

Int counter_value(Int prev, Int input, bool positive, Int cap) {
  Int part = positive ? std::max<Int>(input, 0) : std::max<Int>(-input, 0);
  return std::min(checked_add(prev, part), cap);
}

}  // namespace

DomainFilter DomainFilter::unrestricted(std::size_t n) {
  return DomainFilter{IntVector(n, kIntMin), IntVector(n, kIntMax)};
}

DomainFilter DomainFilter::shift_nonneg(const IntVector& u) {
  DomainFilter f = unrestricted(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] < 0) throw DomainError("shift vector must be nonnegative");
    f.lo[j] = -u[j];
  }
  return f;
}

DomainFilter DomainFilter::conformal(const IntVector& z) {
  DomainFilter f{IntVector(z.size()), IntVector(z.size())};
  for (std::size_t j = 0; j < z.size(); ++j) {
    f.lo[j] = std::min<Int>(0, z[j]);
    f.hi[j] = std::max<Int>(0, z[j]);
  }
  return f;
}

bool DomainFilter::accepts(const IntVector& v) const {
  if (v.size() != lo.size()) throw DimensionError("filter dimension mismatch");
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!accepts(j, v[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Construction

class LatticeBuilder {
 public:
  static KernelLattice build(const SparseIntMatrix& a, LatticeKind kind, const IntVector& bounds,
                             Int degree, const Permutation& ordering,
                             const LatticeOptions& options);

 private:
  struct Constraint {
    bool linear = true;
    std::vector<std::size_t> vars;
    std::vector<Int> coeffs;
    std::size_t counter = 0;
  };

  // A constraint restated in bag-local positions.
  struct Check {
    bool linear = true;
    std::vector<std::pair<std::size_t, Int>> terms;  // (position, coefficient), ascending
    std::vector<Int> rest_min, rest_max;             // bounds of sum over terms[k..]
    std::ptrdiff_t out = -1, prev = -1, in = -1;
    bool positive = true;
    Int cap = 0;
    std::size_t last = 0;
  };

  static void generate(KernelLattice& lat, KernelLattice::Bag& bag,
                       const std::vector<const Constraint*>& constraints,
                       std::size_t& budget_left);
};

KernelLattice LatticeBuilder::build(const SparseIntMatrix& a, LatticeKind kind,
                                    const IntVector& bounds, Int degree,
                                    const Permutation& ordering, const LatticeOptions& options) {
  const std::size_t n = a.cols();
  if (!is_permutation_of(ordering, n))
    throw DimensionError("ordering is not a permutation of the " + std::to_string(n) + " columns");

  KernelLattice lat;
  lat.kind_ = kind;
  lat.matrix_ = std::make_shared<const SparseIntMatrix>(a);
  lat.n_ = n;
  lat.column_ordering_ = ordering;
  lat.column_clique_number_ = n ? eliminate(column_graph(a), ordering).clique_number : 0;
  lat.coord_var_.assign(n, 0);

  Permutation var_order;
  std::vector<Constraint> constraints;
  if (kind == LatticeKind::InfinityBounded) {
    lat.coord_bound_ = bounds;
    lat.bound_ = bounds.empty() ? 0 : *std::max_element(bounds.begin(), bounds.end());
    for (std::size_t j = 0; j < n; ++j) {
      lat.vars_.push_back({-bounds[j], bounds[j], static_cast<std::ptrdiff_t>(j)});
      lat.coord_var_[j] = j;
    }
    var_order = ordering;
  } else {
    lat.coord_bound_.assign(n, degree);
    lat.bound_ = degree;
    std::ptrdiff_t prev_y = -1, prev_z = -1;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t col = ordering[k];
      const Int counter_hi = k + 1 == n ? degree : degree + 1;
      const std::size_t v = lat.vars_.size();
      lat.vars_.push_back({-degree, degree, static_cast<std::ptrdiff_t>(col)});
      lat.coord_var_[col] = v;
      const std::size_t y = lat.vars_.size();
      lat.vars_.push_back({0, counter_hi, -1});
      const std::size_t z = lat.vars_.size();
      lat.vars_.push_back({0, counter_hi, -1});
      lat.counters_.push_back({y, prev_y, v, true, degree + 1});
      lat.counters_.push_back({z, prev_z, v, false, degree + 1});
      prev_y = static_cast<std::ptrdiff_t>(y);
      prev_z = static_cast<std::ptrdiff_t>(z);
      var_order.insert(var_order.end(), {v, y, z});
    }
  }

  for (std::size_t i = 0; i < a.rows(); ++i) {
    Constraint c;
    for (const auto& e : a.row(i)) {
      c.vars.push_back(lat.coord_var_[e.col]);
      c.coeffs.push_back(e.value);
    }
    if (!c.vars.empty()) constraints.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < lat.counters_.size(); ++k) {
    const auto& ctr = lat.counters_[k];
    Constraint c;
    c.linear = false;
    c.counter = k;
    if (ctr.prev >= 0) c.vars.push_back(static_cast<std::size_t>(ctr.prev));
    c.vars.push_back(ctr.input);
    c.vars.push_back(ctr.out);
    constraints.push_back(std::move(c));
  }

  const std::size_t nv = lat.vars_.size();
  Graph constraint_graph(nv);
  for (const auto& c : constraints)
    for (std::size_t x = 0; x < c.vars.size(); ++x)
      for (std::size_t y = x + 1; y < c.vars.size(); ++y)
        constraint_graph.add_edge(c.vars[x], c.vars[y]);
  const EliminationStructure es = eliminate(constraint_graph, var_order);
  lat.clique_number_ = es.clique_number;

  lat.bags_.resize(nv);
  for (std::size_t l = 0; l < nv; ++l) {
    const Vertex owner = var_order[l];
    auto& bag = lat.bags_[l];
    std::vector<std::size_t> sep(es.cliques[owner].begin() + 1, es.cliques[owner].end());
    std::sort(sep.begin(), sep.end());
    bag.scope = sep;
    bag.scope.push_back(owner);
    bag.sep_size = sep.size();
    if (es.parent[owner] != kNoVertex)
      bag.parent = static_cast<std::ptrdiff_t>(es.position[es.parent[owner]]);
  }
  for (std::size_t l = 0; l < nv; ++l) {
    auto& bag = lat.bags_[l];
    if (bag.parent < 0) {
      lat.roots_.push_back(l);
      continue;
    }
    auto& parent = lat.bags_[static_cast<std::size_t>(bag.parent)];
    parent.children.push_back(l);
    for (std::size_t k = 0; k < bag.sep_size; ++k) {
      auto it = std::find(parent.scope.begin(), parent.scope.end(), bag.scope[k]);
      if (it == parent.scope.end()) throw Error("internal: separator not covered by parent bag");
      bag.sep_pos_in_parent.push_back(static_cast<std::size_t>(it - parent.scope.begin()));
    }
  }
  std::vector<std::size_t> stack(lat.roots_.rbegin(), lat.roots_.rend());
  while (!stack.empty()) {
    std::size_t b = stack.back();
    stack.pop_back();
    lat.preorder_.push_back(b);
    const auto& ch = lat.bags_[b].children;
    stack.insert(stack.end(), ch.rbegin(), ch.rend());
  }

  std::vector<std::vector<const Constraint*>> assigned(nv);
  for (const auto& c : constraints) {
    std::size_t first = nv;
    for (std::size_t v : c.vars) first = std::min(first, es.position[v]);
    assigned[first].push_back(&c);
  }

  std::size_t budget_left = options.max_rows;
  for (std::size_t l = 0; l < nv; ++l) generate(lat, lat.bags_[l], assigned[l], budget_left);

  lat.make_consistent();
  lat.index_groups();
  return lat;
}

void LatticeBuilder::generate(KernelLattice& lat, KernelLattice::Bag& bag,
                              const std::vector<const Constraint*>& constraints,
                              std::size_t& budget_left) {
  const std::size_t w = bag.width();
  auto pos_of = [&](std::size_t var) -> std::size_t {
    auto it = std::find(bag.scope.begin(), bag.scope.end(), var);
    if (it == bag.scope.end()) throw Error("internal: constraint not covered by its bag");
    return static_cast<std::size_t>(it - bag.scope.begin());
  };

  std::vector<Int> lo(w), hi(w);
  for (std::size_t p = 0; p < w; ++p) {
    lo[p] = lat.vars_[bag.scope[p]].lo;
    hi[p] = lat.vars_[bag.scope[p]].hi;
  }

  std::vector<Check> checks;
  for (const Constraint* c : constraints) {
    Check ck;
    ck.linear = c->linear;
    if (c->linear) {
      for (std::size_t k = 0; k < c->vars.size(); ++k) ck.terms.emplace_back(pos_of(c->vars[k]), c->coeffs[k]);
      std::sort(ck.terms.begin(), ck.terms.end());
      const std::size_t t = ck.terms.size();
      ck.rest_min.assign(t + 1, 0);
      ck.rest_max.assign(t + 1, 0);
      for (std::size_t k = t; k-- > 0;) {
        auto [p, coef] = ck.terms[k];
        Int x = checked_mul(coef, lo[p]), y = checked_mul(coef, hi[p]);
        ck.rest_min[k] = checked_add(ck.rest_min[k + 1], std::min(x, y));
        ck.rest_max[k] = checked_add(ck.rest_max[k + 1], std::max(x, y));
      }
      ck.last = ck.terms.back().first;
    } else {
      const auto& ctr = lat.counters_[c->counter];
      ck.out = static_cast<std::ptrdiff_t>(pos_of(ctr.out));
      ck.in = static_cast<std::ptrdiff_t>(pos_of(ctr.input));
      if (ctr.prev >= 0) ck.prev = static_cast<std::ptrdiff_t>(pos_of(static_cast<std::size_t>(ctr.prev)));
      ck.positive = ctr.positive;
      ck.cap = ctr.cap;
      ck.last = static_cast<std::size_t>(std::max({ck.out, ck.in, ck.prev}));
    }
    checks.push_back(std::move(ck));
  }

  std::vector<std::vector<const Check*>> closing(w), pruning(w);
  for (const auto& ck : checks) {
    closing[ck.last].push_back(&ck);
    if (ck.linear)
      for (std::size_t k = 0; k + 1 < ck.terms.size(); ++k) pruning[ck.terms[k].first].push_back(&ck);
  }

  std::vector<Int> vals(w, 0);
  auto partial = [&](const Check& ck, std::size_t upto, std::size_t& next) {
    Int s = 0;
    next = 0;
    while (next < ck.terms.size() && ck.terms[next].first <= upto) {
      s = checked_add(s, checked_mul(ck.terms[next].second, vals[ck.terms[next].first]));
      ++next;
    }
    return s;
  };
  auto counter_eval = [&](const Check& ck) {
    Int prev = ck.prev >= 0 ? vals[static_cast<std::size_t>(ck.prev)] : 0;
    return counter_value(prev, vals[static_cast<std::size_t>(ck.in)], ck.positive, ck.cap);
  };

  auto dfs = [&](auto&& self, std::size_t p) -> void {
    if (p == w) {
      if (budget_left == 0) throw BudgetError("lattice tables exceed the row budget");
      --budget_left;
      bag.rows.insert(bag.rows.end(), vals.begin(), vals.end());
      ++bag.row_count;
      return;
    }
    bool forced = false;
    Int fv = 0;
    for (const Check* ck : closing[p]) {
      Int x;
      if (ck->linear) {
        if (ck->terms.back().first != p) continue;
        std::size_t next;
        Int s = 0;
        for (next = 0; next + 1 < ck->terms.size(); ++next)
          s = checked_add(s, checked_mul(ck->terms[next].second, vals[ck->terms[next].first]));
        Int coef = ck->terms.back().second;
        if (s % coef != 0) return;
        x = -(s / coef);
      } else {
        if (static_cast<std::size_t>(ck->out) != p) continue;
        x = counter_eval(*ck);
      }
      if (forced && x != fv) return;
      forced = true;
      fv = x;
    }
    Int from = lo[p], to = hi[p];
    if (forced) {
      if (fv < from || fv > to) return;
      from = to = fv;
    }
    for (Int x = from;; ++x) {
      vals[p] = x;
      bool ok = true;
      for (const Check* ck : closing[p]) {
        if (ck->linear) {
          std::size_t next;
          if (partial(*ck, p, next) != 0) ok = false;
        } else if (counter_eval(*ck) != vals[static_cast<std::size_t>(ck->out)]) {
          ok = false;
        }
        if (!ok) break;
      }
      if (ok) {
        for (const Check* ck : pruning[p]) {
          std::size_t next;
          Int s = partial(*ck, p, next);
          if (checked_add(s, ck->rest_min[next]) > 0 || checked_add(s, ck->rest_max[next]) < 0) {
            ok = false;
            break;
          }
        }
      }
      if (ok) self(self, p + 1);
      if (x == to) break;
    }
  };
  if (w > 0) dfs(dfs, 0);
}

// ---------------------------------------------------------------------------
// Consistency

void KernelLattice::make_consistent() {
  auto wipe = [this] {
    empty_ = true;
    for (auto& bag : bags_) {
      bag.rows.clear();
      bag.row_count = 0;
    }
  };
  if (empty_) return wipe();
  for (const auto& bag : bags_)
    if (bag.row_count == 0) return wipe();

  std::vector<Int> key;
  auto keep_rows = [](Bag& bag, const std::vector<char>& keep) {
    const std::size_t w = bag.width();
    std::size_t out = 0;
    for (std::size_t r = 0; r < bag.row_count; ++r) {
      if (!keep[r]) continue;
      if (out != r) std::copy_n(bag.rows.begin() + r * w, w, bag.rows.begin() + out * w);
      ++out;
    }
    bag.row_count = out;
    bag.rows.resize(out * w);
  };

  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    const Bag& child = bags_[*it];
    if (child.parent < 0) continue;
    Bag& parent = bags_[static_cast<std::size_t>(child.parent)];
    key.resize(child.sep_size);
    std::vector<char> keep(parent.row_count, 0);
    for (std::size_t r = 0; r < parent.row_count; ++r) {
      const Int* row = parent.row(r);
      for (std::size_t k = 0; k < child.sep_size; ++k) key[k] = row[child.sep_pos_in_parent[k]];
      keep[r] = has_prefix(child, key.data(), child.sep_size);
    }
    keep_rows(parent, keep);
    if (parent.row_count == 0) return wipe();
  }

  for (std::size_t b : preorder_) {
    Bag& child = bags_[b];
    if (child.parent < 0) continue;
    const Bag& parent = bags_[static_cast<std::size_t>(child.parent)];
    const std::size_t s = child.sep_size;
    std::vector<Int> proj;
    proj.reserve(parent.row_count * s);
    std::vector<std::size_t> order(parent.row_count);
    for (std::size_t r = 0; r < parent.row_count; ++r) {
      const Int* row = parent.row(r);
      for (std::size_t k = 0; k < s; ++k) proj.push_back(row[child.sep_pos_in_parent[k]]);
      order[r] = r;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return compare_prefix(proj.data() + x * s, proj.data() + y * s, s) < 0;
    });
    std::vector<char> keep(child.row_count, 0);
    for (std::size_t r = 0; r < child.row_count; ++r) {
      const Int* row = child.row(r);
      auto it = std::lower_bound(order.begin(), order.end(), row, [&](std::size_t x, const Int* k) {
        return compare_prefix(proj.data() + x * s, k, s) < 0;
      });
      keep[r] = it != order.end() && compare_prefix(proj.data() + *it * s, row, s) == 0;
    }
    keep_rows(child, keep);
    if (child.row_count == 0) return wipe();
  }
}

void KernelLattice::index_groups() {
  for (auto& bag : bags_) {
    bag.group_start.clear();
    for (std::size_t r = 0; r < bag.row_count; ++r)
      if (r == 0 || compare_prefix(bag.row(r - 1), bag.row(r), bag.sep_size) != 0)
        bag.group_start.push_back(r);
    bag.group_start.push_back(bag.row_count);
  }
}

std::ptrdiff_t KernelLattice::find_group(const Bag& child, const Int* parent_row) const {
  Int key_buf[16];
  std::vector<Int> heap_key;
  Int* key = key_buf;
  if (child.sep_size > 16) {
    heap_key.resize(child.sep_size);
    key = heap_key.data();
  }
  for (std::size_t k = 0; k < child.sep_size; ++k) key[k] = parent_row[child.sep_pos_in_parent[k]];
  const std::size_t groups = child.group_start.size() - 1;
  std::size_t lo = 0, hi = groups;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    int c = compare_prefix(child.row(child.group_start[mid]), key, child.sep_size);
    if (c == 0) return static_cast<std::ptrdiff_t>(mid);
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return -1;
}

bool KernelLattice::find_row(const Bag& bag, const IntVector& full) const {
  std::vector<Int> row(bag.width());
  for (std::size_t k = 0; k < bag.width(); ++k) row[k] = full[bag.scope[k]];
  return has_prefix(bag, row.data(), bag.width());
}

IntVector KernelLattice::complete_assignment(const IntVector& v) const {
  IntVector full(vars_.size(), 0);
  for (std::size_t j = 0; j < n_; ++j) full[coord_var_[j]] = v[j];
  for (const auto& ctr : counters_) {
    Int prev = ctr.prev >= 0 ? full[static_cast<std::size_t>(ctr.prev)] : 0;
    full[ctr.out] = counter_value(prev, full[ctr.input], ctr.positive, ctr.cap);
  }
  return full;
}

IntVector KernelLattice::project(const IntVector& full) const {
  IntVector v(n_);
  for (std::size_t j = 0; j < n_; ++j) v[j] = full[coord_var_[j]];
  return v;
}

// ---------------------------------------------------------------------------
// Queries

std::size_t KernelLattice::stored_rows() const {
  std::size_t total = 0;
  for (const auto& bag : bags_) total += bag.row_count;
  return total;
}

bool KernelLattice::contains(const IntVector& v) const {
  if (v.size() != n_) throw DimensionError("vector has length " + std::to_string(v.size()) +
                                           ", lattice dimension is " + std::to_string(n_));
  if (empty_) return false;
  for (std::size_t j = 0; j < n_; ++j) {
    const auto& var = vars_[coord_var_[j]];
    if (v[j] < var.lo || v[j] > var.hi) return false;
  }
  const IntVector full = complete_assignment(v);
  for (std::size_t x = 0; x < vars_.size(); ++x)
    if (full[x] < vars_[x].lo || full[x] > vars_[x].hi) return false;
  for (const auto& bag : bags_)
    if (!find_row(bag, full)) return false;
  return true;
}

void KernelLattice::for_each(const std::function<void(const IntVector&)>& visit) const {
  if (empty_) return;
  const std::size_t depth = preorder_.size();
  if (depth == 0) {
    visit(IntVector(n_, 0));
    return;
  }
  std::vector<std::size_t> cur(depth), end(depth), chosen(bags_.size());
  IntVector full(vars_.size(), 0);
  auto set_range = [&](std::size_t k) {
    const Bag& bag = bags_[preorder_[k]];
    if (bag.parent < 0) {
      cur[k] = 0;
      end[k] = bag.row_count;
      return;
    }
    const Bag& parent = bags_[static_cast<std::size_t>(bag.parent)];
    std::ptrdiff_t g = find_group(bag, parent.row(chosen[static_cast<std::size_t>(bag.parent)]));
    if (g < 0) {
      cur[k] = end[k] = 0;
      return;
    }
    cur[k] = bag.group_start[static_cast<std::size_t>(g)];
    end[k] = bag.group_start[static_cast<std::size_t>(g) + 1];
  };
  std::size_t k = 0;
  set_range(0);
  while (true) {
    if (cur[k] < end[k]) {
      const std::size_t b = preorder_[k];
      const Bag& bag = bags_[b];
      chosen[b] = cur[k];
      full[bag.scope.back()] = bag.row(cur[k])[bag.sep_size];
      if (k + 1 == depth) {
        visit(project(full));
        ++cur[k];
      } else {
        ++k;
        set_range(k);
      }
    } else {
      if (k == 0) break;
      --k;
      ++cur[k];
    }
  }
}

std::vector<IntVector> KernelLattice::elements() const {
  std::vector<IntVector> out;
  for_each([&](const IntVector& v) { out.push_back(v); });
  return out;
}

BigInt KernelLattice::count() const { return count(DomainFilter::unrestricted(n_)); }

BigInt KernelLattice::count(const DomainFilter& filter) const {
  if (filter.lo.size() != n_ || filter.hi.size() != n_) throw DimensionError("filter dimension mismatch");
  if (empty_) return 0;
  // group_sum[b][g] = number of subtree assignments below bag b's group g.
  std::vector<std::vector<BigInt>> group_sum(bags_.size());
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    const Bag& bag = bags_[*it];
    const auto& owner = vars_[bag.scope.back()];
    std::vector<BigInt> sums(bag.group_start.size() - 1);
    std::size_t g = 0;
    for (std::size_t r = 0; r < bag.row_count; ++r) {
      while (bag.group_start[g + 1] <= r) ++g;
      const Int* row = bag.row(r);
      if (owner.coord >= 0 && !filter.accepts(static_cast<std::size_t>(owner.coord), row[bag.sep_size]))
        continue;
      BigInt value = 1;
      for (std::size_t c : bag.children) {
        std::ptrdiff_t cg = find_group(bags_[c], row);
        if (cg < 0) {
          value = 0;
          break;
        }
        value *= group_sum[c][static_cast<std::size_t>(cg)];
        if (value == 0) break;
      }
      sums[g] += value;
    }
    group_sum[*it] = std::move(sums);
    for (std::size_t c : bag.children) std::vector<BigInt>().swap(group_sum[c]);
  }
  BigInt total = 1;
  for (std::size_t r : roots_) total *= group_sum[r].empty() ? BigInt(0) : group_sum[r][0];
  return total;
}

KernelLattice KernelLattice::restrict(const DomainFilter& filter) const {
  if (filter.lo.size() != n_ || filter.hi.size() != n_) throw DimensionError("filter dimension mismatch");
  KernelLattice out = *this;
  if (out.empty_) return out;
  for (auto& bag : out.bags_) {
    const auto& owner = vars_[bag.scope.back()];
    if (owner.coord < 0) continue;
    const std::size_t w = bag.width(), c = static_cast<std::size_t>(owner.coord);
    std::size_t kept = 0;
    for (std::size_t r = 0; r < bag.row_count; ++r) {
      if (!filter.accepts(c, bag.rows[r * w + bag.sep_size])) continue;
      if (kept != r) std::copy_n(bag.rows.begin() + r * w, w, bag.rows.begin() + kept * w);
      ++kept;
    }
    bag.row_count = kept;
    bag.rows.resize(kept * w);
  }
  out.make_consistent();
  out.index_groups();
  return out;
}

bool KernelLattice::check_backtrack_free() const {
  if (empty_) return stored_rows() == 0;
  for (const auto& bag : bags_) {
    if (bag.row_count == 0) return false;
    if (bag.parent < 0) continue;
    const Bag& parent = bags_[static_cast<std::size_t>(bag.parent)];
    for (std::size_t r = 0; r < parent.row_count; ++r)
      if (find_group(bag, parent.row(r)) < 0) return false;
    // every child row is used by some parent row
    std::vector<char> used(bag.group_start.size() - 1, 0);
    for (std::size_t r = 0; r < parent.row_count; ++r)
      used[static_cast<std::size_t>(find_group(bag, parent.row(r)))] = 1;
    if (std::find(used.begin(), used.end(), 0) != used.end()) return false;
  }
  return true;
}

bool KernelLattice::check_running_intersection() const {
  for (std::size_t x = 0; x < vars_.size(); ++x) {
    auto in_bag = [&](std::size_t b) {
      const auto& s = bags_[b].scope;
      return std::find(s.begin(), s.end(), x) != s.end();
    };
    std::size_t tops = 0;
    for (std::size_t b = 0; b < bags_.size(); ++b) {
      if (!in_bag(b)) continue;
      const auto p = bags_[b].parent;
      if (p < 0 || !in_bag(static_cast<std::size_t>(p))) ++tops;
    }
    if (tops != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// K-best minimisation of the additive key (ω·v, v_1, ..., v_n).

struct LatticeDp {
  template <class W>
  struct Entry {
    W weight;
    IntVector v;
  };

  template <class W>
  static bool less(const Entry<W>& a, const Entry<W>& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.v < b.v;
  }

  template <class W>
  static void add_into(Entry<W>& acc, const Entry<W>& x) {
    acc.weight += x.weight;
    for (std::size_t j = 0; j < acc.v.size(); ++j) acc.v[j] += x.v[j];
  }

  // The k smallest of {a_i + b_j} for ascending lists a, b of length <= k <= 2.
  template <class W>
  static std::vector<Entry<W>> combine(const std::vector<Entry<W>>& a, const std::vector<Entry<W>>& b,
                                       std::size_t k) {
    std::vector<Entry<W>> cand;
    for (std::size_t i = 0; i < a.size() && i < k; ++i)
      for (std::size_t j = 0; j < b.size() && i + j < k; ++j) {
        Entry<W> e = a[i];
        add_into(e, b[j]);
        cand.push_back(std::move(e));
      }
    std::sort(cand.begin(), cand.end(), less<W>);
    if (cand.size() > k) cand.resize(k);
    return cand;
  }

  template <class W>
  static void merge_top(std::vector<Entry<W>>& top, std::vector<Entry<W>>&& add, std::size_t k) {
    for (auto& e : add) top.push_back(std::move(e));
    std::sort(top.begin(), top.end(), less<W>);
    if (top.size() > k) top.resize(k);
  }

  template <class W>
  static std::vector<IntVector> run(const KernelLattice& lat, const std::vector<W>& weights,
                                    const DomainFilter* filter, std::size_t k) {
    std::vector<IntVector> out;
    if (lat.empty_) return out;
    const std::size_t n = lat.n_;
    std::vector<std::vector<std::vector<Entry<W>>>> tops(lat.bags_.size());
    for (auto it = lat.preorder_.rbegin(); it != lat.preorder_.rend(); ++it) {
      const auto& bag = lat.bags_[*it];
      const auto& owner = lat.vars_[bag.scope.back()];
      std::vector<std::vector<Entry<W>>> group_top(bag.group_start.size() - 1);
      std::size_t g = 0;
      for (std::size_t r = 0; r < bag.row_count; ++r) {
        while (bag.group_start[g + 1] <= r) ++g;
        const Int* row = bag.row(r);
        const Int value = row[bag.sep_size];
        Entry<W> base{W(0), IntVector(n, 0)};
        if (owner.coord >= 0) {
          const auto c = static_cast<std::size_t>(owner.coord);
          if (filter && !filter->accepts(c, value)) continue;
          base.weight = weights[c] * W(value);
          base.v[c] = value;
        }
        std::vector<Entry<W>> list{std::move(base)};
        for (std::size_t child : bag.children) {
          std::ptrdiff_t cg = lat.find_group(lat.bags_[child], row);
          if (cg < 0) {
            list.clear();
            break;
          }
          const auto& t = tops[child][static_cast<std::size_t>(cg)];
          if (t.empty()) {
            list.clear();
            break;
          }
          list = combine(list, t, k);
        }
        if (!list.empty()) merge_top(group_top[g], std::move(list), k);
      }
      tops[*it] = std::move(group_top);
      for (std::size_t child : bag.children) tops[child] = {};
    }
    std::vector<Entry<W>> list{Entry<W>{W(0), IntVector(n, 0)}};
    for (std::size_t root : lat.roots_) {
      if (tops[root].empty() || tops[root][0].empty()) return out;
      list = combine(list, tops[root][0], k);
    }
    for (auto& e : list) out.push_back(std::move(e.v));
    return out;
  }
};

namespace {

std::vector<IntVector> k_smallest(const KernelLattice& lat, const MonomialOrder& order,
                                  const DomainFilter* filter, std::size_t k) {
  const std::size_t n = lat.dimension();
  if (order.size() != n) throw DimensionError("order has " + std::to_string(order.size()) +
                                              " weights, lattice dimension is " + std::to_string(n));
  if (filter && (filter->lo.size() != n || filter->hi.size() != n))
    throw DimensionError("filter dimension mismatch");
  // Worst-case |ω·v| over the box decides whether 64-bit weights are safe.
  BigInt worst = 0;
  for (std::size_t j = 0; j < n; ++j) worst += order.weights()[j] * BigInt(lat.coordinate_bounds()[j]);
  if (worst < (BigInt(1) << 62)) {
    std::vector<Int> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = static_cast<Int>(order.weights()[j]);
    return LatticeDp::run<Int>(lat, w, filter, k);
  }
  return LatticeDp::run<BigInt>(lat, order.weights(), filter, k);
}

}  // namespace

std::optional<IntVector> KernelLattice::minimize(const MonomialOrder& order,
                                                 const DomainFilter* filter) const {
  auto best = k_smallest(*this, order, filter, 1);
  if (best.empty()) return std::nullopt;
  return best.front();
}

std::vector<IntVector> KernelLattice::two_smallest(const MonomialOrder& order,
                                                   const DomainFilter* filter) const {
  return k_smallest(*this, order, filter, 2);
}

// ---------------------------------------------------------------------------

BigInt graver_infinity_bound(const SparseIntMatrix& a) {
  const BigInt base = BigInt(2) * a.rows() * BigInt(a.max_abs()) + 1;
  return boost::multiprecision::pow(base, static_cast<unsigned>(a.rows()));
}

KernelLattice build_lattice(const SparseIntMatrix& a, Int g, const Permutation& ordering,
                            const LatticeOptions& options) {
  if (g < 0) throw DomainError("lattice bound must be nonnegative");
  return build_lattice(a, IntVector(a.cols(), g), ordering, options);
}

KernelLattice build_lattice(const SparseIntMatrix& a, const IntVector& bounds,
                            const Permutation& ordering, const LatticeOptions& options) {
  if (bounds.size() != a.cols()) throw DimensionError("bounds length differs from column count");
  for (Int b : bounds)
    if (b < 0) throw DomainError("lattice bound must be nonnegative");
  return LatticeBuilder::build(a, LatticeKind::InfinityBounded, bounds, 0, ordering, options);
}

KernelLattice build_truncated_lattice(const SparseIntMatrix& a, Int d, const Permutation& ordering,
                                      const LatticeOptions& options) {
  if (d < 0) throw DomainError("degree bound must be nonnegative");
  return LatticeBuilder::build(a, LatticeKind::DegreeTruncated, {}, d, ordering, options);
}

Permutation column_ordering(const SparseIntMatrix& a, OrderingStrategy strategy) {
  return heuristic_ordering(column_graph(a), strategy);
}

KernelLattice restrict_shift_nonneg(const KernelLattice& l, const IntVector& u) {
  if (u.size() != l.dimension()) throw DimensionError("shift vector dimension mismatch");
  return l.restrict(DomainFilter::shift_nonneg(u));
}

KernelLattice restrict_conformal(const KernelLattice& l, const IntVector& z) {
  if (z.size() != l.dimension()) throw DimensionError("conformal bound dimension mismatch");
  return l.restrict(DomainFilter::conformal(z));
}

}  // namespace toric
