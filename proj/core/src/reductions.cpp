#include "toric/reductions.hpp"

#include <algorithm>
#include <deque>

#include "toric/normal_form.hpp"

namespace toric {

namespace {

__extension__ typedef __int128 I128;
__extension__ typedef unsigned __int128 U128;

BigInt dot(const std::vector<BigInt>& c, const IntVector& z) {
  BigInt s = 0;
  for (std::size_t j = 0; j < z.size(); ++j) s += c[j] * z[j];
  return s;
}

template <class T>
T floor_div(T a, T b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

template <class T>
T ceil_div(T a, T b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

I128 to_i128(const BigInt& v) {
  const bool neg = v < 0;
  BigInt m = neg ? BigInt(-v) : v;
  const BigInt mask = (BigInt(1) << 64) - 1;
  auto lo = static_cast<unsigned long long>(m & mask);
  auto hi = static_cast<unsigned long long>(m >> 64);
  I128 r = static_cast<I128>((static_cast<U128>(hi) << 64) | lo);
  return neg ? -r : r;
}

BigInt from_i128(I128 v) {
  const bool neg = v < 0;
  U128 m = neg ? U128(0) - static_cast<U128>(v) : static_cast<U128>(v);
  BigInt r = (BigInt(static_cast<unsigned long long>(m >> 64)) << 64) | BigInt(static_cast<unsigned long long>(m));
  return neg ? BigInt(-r) : r;
}

template <class T>
BigInt to_big(const T& v) {
  if constexpr (std::is_same_v<T, BigInt>)
    return v;
  else
    return from_i128(v);
}

template <class T>
T convert(const BigInt& v) {
  if constexpr (std::is_same_v<T, BigInt>)
    return v;
  else
    return to_i128(v);
}

struct LinearRow {
  std::vector<std::pair<std::size_t, BigInt>> terms;
  BigInt rhs;
};

// The equality rows plus the rows of their reduced echelon form, scaled to
// coprime integers. Combinations such as z_3 = b_1 + b_2 are then visible to
// single-row propagation.
std::vector<LinearRow> implied_rows(const IntegerProgram& ip) {
  const std::size_t m = ip.a.rows(), n = ip.variables();
  std::vector<LinearRow> out(m);
  std::vector<std::vector<BigInt>> dense(m, std::vector<BigInt>(n + 1));
  for (const auto& e : ip.a.entries()) {
    out[e.row].terms.emplace_back(e.col, BigInt(e.value));
    dense[e.row][e.col] = e.value;
  }
  for (std::size_t i = 0; i < m; ++i) {
    out[i].rhs = ip.b[i];
    dense[i][n] = ip.b[i];
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t p = rank;
    while (p < m && dense[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(dense[p], dense[rank]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || dense[i][col] == 0) continue;
      const BigInt f = dense[i][col], g = dense[rank][col];
      BigInt common = 0;
      for (std::size_t j = 0; j <= n; ++j) {
        dense[i][j] = dense[i][j] * g - dense[rank][j] * f;
        common = gcd(common, dense[i][j]);
      }
      if (common > 1)
        for (auto& x : dense[i]) x /= common;
    }
    ++rank;
  }
  for (std::size_t i = 0; i < m; ++i) {
    LinearRow r;
    for (std::size_t j = 0; j < n; ++j)
      if (dense[i][j] != 0) r.terms.emplace_back(j, dense[i][j]);
    r.rhs = dense[i][n];
    if (r.terms.empty()) {
      if (r.rhs != 0) out.push_back(std::move(r));  // 0 = rhs: infeasible
      continue;
    }
    bool duplicate = false;
    for (const auto& o : out)
      duplicate = duplicate || (o.terms == r.terms && o.rhs == r.rhs);
    if (!duplicate) out.push_back(std::move(r));
  }
  return out;
}

// Depth-first branch-and-bound over a finite box.
template <class T>
class BranchAndBound {
 public:
  BranchAndBound(const IntegerProgram& ip, const std::vector<LinearRow>& rows, const std::vector<BigInt>& lo,
                 const std::vector<BigInt>& hi, std::size_t budget)
      : n_(ip.variables()), budget_(budget), big_rows_(rows), col_rows_(n_) {
    rows_.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& [j, a] : rows[i].terms) {
        rows_[i].emplace_back(j, convert<T>(a));
        col_rows_[j].push_back(i);
      }
      b_.push_back(convert<T>(rows[i].rhs));
    }
    for (const auto& v : ip.c) c_.push_back(convert<T>(v));
    for (std::size_t j = 0; j < n_; ++j) {
      lo_.push_back(convert<T>(lo[j]));
      hi_.push_back(convert<T>(hi[j]));
    }
    if (ip.hint && ip.is_feasible(*ip.hint)) consider(*ip.hint);
  }

  IpSolution run() {
    search(lo_, hi_);
    IpSolution s;
    s.nodes = nodes_;
    if (best_) {
      s.status = IpStatus::Optimal;
      s.z = best_z_;
    }
    return s;
  }

 private:
  T cost(const IntVector& z) const {
    T s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += c_[j] * T(z[j]);
    return s;
  }

  void consider(const IntVector& z) {
    T value = cost(z);
    if (!best_ || value < *best_ || (value == *best_ && z < best_z_)) {
      best_ = value;
      best_z_ = z;
    }
  }

  static bool tighten_lo(std::vector<T>& lo, std::size_t j, const T& v) {
    if (v > lo[j]) {
      lo[j] = v;
      return true;
    }
    return false;
  }
  static bool tighten_hi(std::vector<T>& hi, std::size_t j, const T& v) {
    if (v < hi[j]) {
      hi[j] = v;
      return true;
    }
    return false;
  }

  bool propagate_row(std::size_t i, std::vector<T>& lo, std::vector<T>& hi, std::vector<std::size_t>& changed) {
    const auto& row = rows_[i];
    T mn = 0, mx = 0;
    for (const auto& [j, a] : row) {
      if (a > 0) {
        mn += a * lo[j];
        mx += a * hi[j];
      } else {
        mn += a * hi[j];
        mx += a * lo[j];
      }
    }
    const T& b = b_[i];
    if (b < mn || b > mx) return false;
    for (const auto& [j, a] : row) {
      T cmin = a > 0 ? T(a * lo[j]) : T(a * hi[j]);
      T cmax = a > 0 ? T(a * hi[j]) : T(a * lo[j]);
      T low = b - (mx - cmax), high = b - (mn - cmin);  // a·z_j within [low, high]
      bool ch = false;
      if (a > 0) {
        ch |= tighten_lo(lo, j, ceil_div<T>(low, a));
        ch |= tighten_hi(hi, j, floor_div<T>(high, a));
      } else {
        ch |= tighten_lo(lo, j, ceil_div<T>(high, a));
        ch |= tighten_hi(hi, j, floor_div<T>(low, a));
      }
      if (lo[j] > hi[j]) return false;
      if (ch) changed.push_back(j);
    }
    return true;
  }

  bool propagate_cost(std::vector<T>& lo, std::vector<T>& hi, std::vector<std::size_t>& changed) {
    if (!best_) return true;
    T mn = 0;
    for (std::size_t j = 0; j < n_; ++j) mn += c_[j] > 0 ? T(c_[j] * lo[j]) : T(c_[j] * hi[j]);
    if (mn > *best_) return false;
    for (std::size_t j = 0; j < n_; ++j) {
      const T& c = c_[j];
      if (c == 0) continue;
      T own = c > 0 ? T(c * lo[j]) : T(c * hi[j]);
      T room = *best_ - (mn - own);  // c·z_j <= room
      bool ch = c > 0 ? tighten_hi(hi, j, floor_div<T>(room, c)) : tighten_lo(lo, j, ceil_div<T>(room, c));
      if (lo[j] > hi[j]) return false;
      if (ch) changed.push_back(j);
    }
    return true;
  }

  // Gauss-Jordan on the rows with fixed variables substituted. Detects
  // contradictions and forced values that single-row propagation only
  // approaches one unit per round.
  bool eliminate(std::vector<T>& lo, std::vector<T>& hi) {
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n_; ++j)
      if (lo[j] < hi[j]) free.push_back(j);
    const std::size_t k = free.size();
    std::vector<std::vector<BigInt>> dense;
    for (const auto& row : big_rows_) {
      std::vector<BigInt> d(k + 1);
      d[k] = row.rhs;
      for (const auto& [j, a] : row.terms) {
        auto it = std::lower_bound(free.begin(), free.end(), j);
        if (it != free.end() && *it == j)
          d[static_cast<std::size_t>(it - free.begin())] = a;
        else
          d[k] -= a * to_big(lo[j]);
      }
      dense.push_back(std::move(d));
    }
    const std::size_t m = dense.size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < k && rank < m; ++col) {
      std::size_t p = rank;
      while (p < m && dense[p][col] == 0) ++p;
      if (p == m) continue;
      std::swap(dense[p], dense[rank]);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == rank || dense[i][col] == 0) continue;
        const BigInt f = dense[i][col], g = dense[rank][col];
        BigInt common = 0;
        for (std::size_t j = 0; j <= k; ++j) {
          dense[i][j] = dense[i][j] * g - dense[rank][j] * f;
          common = gcd(common, dense[i][j]);
        }
        if (common > 1)
          for (auto& x : dense[i]) x /= common;
      }
      ++rank;
    }
    for (const auto& d : dense) {
      std::size_t nz = 0, at = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (d[j] != 0) ++nz, at = j;
      if (nz == 0 && d[k] != 0) return false;
      if (nz != 1) continue;
      if (d[k] % d[at] != 0) return false;
      const BigInt v = d[k] / d[at];
      const std::size_t j = free[at];
      if (v < to_big(lo[j]) || v > to_big(hi[j])) return false;
      lo[j] = hi[j] = convert<T>(v);
    }
    return true;
  }

  bool propagate(std::vector<T>& lo, std::vector<T>& hi) {
    std::vector<char> queued(rows_.size(), 1);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < rows_.size(); ++i) queue.push_back(i);
    std::vector<std::size_t> changed;
    // Bounds can creep toward the fixpoint one unit at a time; stop early,
    // the search itself stays exact.
    std::size_t steps = 64 * (rows_.size() + 1);
    bool eliminated = false;
    while (true) {
      while (!queue.empty()) {
        if (steps-- == 0) {
          if (eliminated) return true;
          eliminated = true;
          steps = 64 * (rows_.size() + 1);
          if (!eliminate(lo, hi)) return false;
          for (std::size_t r = 0; r < rows_.size(); ++r)
            if (!queued[r]) {
              queued[r] = 1;
              queue.push_back(r);
            }
        }
        std::size_t i = queue.front();
        queue.pop_front();
        queued[i] = 0;
        changed.clear();
        if (!propagate_row(i, lo, hi, changed)) return false;
        for (std::size_t j : changed)
          for (std::size_t r : col_rows_[j])
            if (!queued[r]) {
              queued[r] = 1;
              queue.push_back(r);
            }
      }
      changed.clear();
      if (!propagate_cost(lo, hi, changed)) return false;
      for (std::size_t j : changed)
        for (std::size_t r : col_rows_[j])
          if (!queued[r]) {
            queued[r] = 1;
            queue.push_back(r);
          }
      if (queue.empty()) return true;
    }
  }

  void search(std::vector<T> lo, std::vector<T> hi) {
    if (++nodes_ > budget_) throw BudgetError("branch-and-bound exceeded its node budget");
    if (!propagate(lo, hi)) return;
    std::size_t pick = n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (lo[j] < hi[j] && (pick == n_ || hi[j] - lo[j] < hi[pick] - lo[pick])) pick = j;
    if (pick == n_) {
      IntVector z(n_);
      for (std::size_t j = 0; j < n_; ++j) z[j] = static_cast<Int>(lo[j]);
      consider(z);
      return;
    }
    T rest = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (j != pick) rest += c_[j] > 0 ? T(c_[j] * lo[j]) : T(c_[j] * hi[j]);
    const T from = lo[pick], to = hi[pick];
    for (T v = from; v <= to; ++v) {
      if (best_ && c_[pick] >= 0 && rest + c_[pick] * v > *best_) break;
      lo[pick] = hi[pick] = v;
      search(lo, hi);
    }
  }

  std::size_t n_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<LinearRow> big_rows_;
  std::vector<std::vector<std::pair<std::size_t, T>>> rows_;
  std::vector<std::vector<std::size_t>> col_rows_;
  std::vector<T> b_, c_, lo_, hi_;
  std::optional<T> best_;
  IntVector best_z_;
};

}  // namespace

void IntegerProgram::validate() const {
  const std::size_t n = a.cols();
  if (b.size() != a.rows()) throw DimensionError("b has length " + std::to_string(b.size()) +
                                                 ", A has " + std::to_string(a.rows()) + " rows");
  if (c.size() != n) throw DimensionError("c has length " + std::to_string(c.size()) +
                                          ", A has " + std::to_string(n) + " columns");
  if (!lower.empty() && lower.size() != n) throw DimensionError("lower bounds length mismatch");
  if (!upper.empty() && upper.size() != n) throw DimensionError("upper bounds length mismatch");
  if (hint && hint->size() != n) throw DimensionError("hint length mismatch");
}

bool IntegerProgram::is_feasible(const IntVector& z) const {
  if (z.size() != a.cols()) return false;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] < lower_bound(j)) return false;
    if (auto u = upper_bound(j); u && z[j] > *u) return false;
  }
  std::vector<BigInt> az(a.rows(), 0);
  for (const auto& e : a.entries()) az[e.row] += BigInt(e.value) * z[e.col];
  return az == b;
}

BigInt IntegerProgram::objective(const IntVector& z) const { return dot(c, z); }

std::vector<BigInt> weight_vector(const std::vector<BigInt>& omega, const BigInt& r, std::size_t n) {
  if (omega.size() != n) throw DimensionError("weight vector length mismatch");
  if (r < 1) throw DomainError("r must be at least 1");
  std::vector<BigInt> powers(n + 1, 1);
  for (std::size_t k = 1; k <= n; ++k) powers[k] = powers[k - 1] * r;
  std::vector<BigInt> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = powers[n] * omega[j] + powers[n - 1 - j];
  return c;
}

IntegerProgram normalform_to_ip(const SparseIntMatrix& a, const MonomialOrder& order, const IntVector& u) {
  const std::size_t n = a.cols();
  if (u.size() != n || order.size() != n) throw DimensionError("monomial or order dimension mismatch");
  if (!is_nonnegative(u)) throw DomainError("exponent vector must be nonnegative");
  IntegerProgram ip{a, {}, weight_vector(order.weights(), graver_infinity_bound(a) + 1, n), {}, {}, u};
  for (Int v : a.multiply(u)) ip.b.push_back(v);
  const BigInt budget = dot(ip.c, u);
  ip.upper.resize(n);
  for (std::size_t j = 0; j < n; ++j) ip.upper[j] = to_int(budget / ip.c[j]);
  return ip;
}

NormalFormInstance ip_to_normalform(const IntegerProgram& ip, bool graded) {
  ip.validate();
  const std::size_t n = ip.variables(), m = ip.a.rows();
  IntVector t(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (ip.lower_bound(j) != 0) throw DomainError("the reduction needs lower bounds 0");
    auto u = ip.upper_bound(j);
    if (!u) throw DomainError("the reduction needs a finite upper bound on every variable");
    t[j] = *u;
  }
  if (!ip.hint) throw DomainError("the reduction needs a feasible hint");
  if (!ip.is_feasible(*ip.hint)) throw DomainError("the hint is not feasible");
  const IntVector& zbar = *ip.hint;

  std::vector<SparseIntMatrix::Entry> entries;
  entries.push_back({0, 0, -1});
  IntVector cminus(n), cplus(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (ip.c[j] < 0) cminus[j] = to_int(-ip.c[j]);
    if (ip.c[j] > 0) cplus[j] = to_int(ip.c[j]);
    if (cminus[j]) entries.push_back({0, 1 + j, cminus[j]});
    if (cplus[j]) entries.push_back({0, 1 + n + j, cplus[j]});
  }
  for (const auto& e : ip.a.entries()) entries.push_back({1 + e.row, 1 + n + e.col, e.value});
  for (std::size_t j = 0; j < n; ++j) {
    entries.push_back({1 + m + j, 1 + j, 1});
    entries.push_back({1 + m + j, 1 + n + j, 1});
  }

  NormalFormInstance inst{SparseIntMatrix(1 + m + n, 1 + 2 * n, entries), {}, {}, {}, 0, {}};
  inst.b_prime.push_back(0);
  for (const auto& v : ip.b) inst.b_prime.push_back(v);
  for (Int v : t) inst.b_prime.push_back(v);

  Int r0 = 0, rmax = 0;
  inst.offset = 0;
  for (std::size_t j = 0; j < n; ++j) {
    r0 = checked_add(r0, checked_add(checked_mul(cminus[j], t[j] - zbar[j]), checked_mul(cplus[j], zbar[j])));
    rmax = checked_add(rmax, checked_mul(checked_add(cminus[j], cplus[j]), t[j]));
    inst.offset += BigInt(cminus[j]) * t[j];
  }
  inst.u.push_back(r0);
  for (std::size_t j = 0; j < n; ++j) inst.u.push_back(t[j] - zbar[j]);
  for (std::size_t j = 0; j < n; ++j) inst.u.push_back(zbar[j]);
  inst.order = graded ? MonomialOrder::grlex(1 + 2 * n) : MonomialOrder::lex(1 + 2 * n);
  inst.bounds.push_back(rmax);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t j = 0; j < n; ++j) inst.bounds.push_back(t[j]);
  return inst;
}

ReducedSolution solve_via_normal_form(const IntegerProgram& ip, bool graded, OrderingStrategy strategy,
                                      const LatticeOptions& options) {
  const NormalFormInstance inst = ip_to_normalform(ip, graded);
  const std::size_t n = ip.variables();
  const KernelLattice lat =
      build_lattice(inst.a_prime, inst.bounds, column_ordering(inst.a_prime, strategy), options);
  ReducedSolution out;
  out.normal_form = normal_form_bounded(lat, inst.order, inst.u).normal;
  out.r = out.normal_form[0];
  out.solution.status = IpStatus::Optimal;
  out.solution.z.assign(out.normal_form.begin() + 1 + static_cast<std::ptrdiff_t>(n), out.normal_form.end());
  out.solution.objective = BigInt(out.r) - inst.offset;
  return out;
}

IntegerProgram vertex_cover_ip(const Graph& g) {
  const std::size_t nv = g.vertex_count();
  const auto edges = g.edges();
  const std::size_t n = nv + edges.size();
  std::vector<SparseIntMatrix::Entry> entries;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    entries.push_back({e, edges[e].first, 1});
    entries.push_back({e, edges[e].second, 1});
    entries.push_back({e, nv + e, -1});
  }
  IntegerProgram ip{SparseIntMatrix(edges.size(), n, entries), std::vector<BigInt>(edges.size(), 1),
                    std::vector<BigInt>(n, 0), {}, std::vector<std::optional<Int>>(n, Int{1}),
                    IntVector(n, 1)};
  for (std::size_t i = 0; i < nv; ++i) ip.c[i] = 1;
  return ip;
}

IpSolution solve_ip(const IntegerProgram& ip, std::size_t node_budget) {
  ip.validate();
  const std::size_t n = ip.variables();
  if (ip.hint && !ip.is_feasible(*ip.hint)) throw DomainError("the hint is not feasible");

  // Derive missing upper bounds from the equality rows where possible.
  std::vector<BigInt> lo(n);
  std::vector<std::optional<BigInt>> hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = ip.lower_bound(j);
    if (auto u = ip.upper_bound(j)) hi[j] = BigInt(*u);
    if (hi[j] && *hi[j] < lo[j]) return IpSolution{};
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < ip.a.rows(); ++i) {
      const auto row = ip.a.row(i);
      for (const auto& e : row) {
        if (hi[e.col]) continue;
        // e.value·z_j = b_i - Σ others; need the others bounded in the right direction.
        BigInt rest_min = 0;
        bool ok = true;
        for (const auto& f : row) {
          if (f.col == e.col) continue;
          const bool want_lo = (f.value > 0) == (e.value > 0);
          if (want_lo)
            rest_min += BigInt(f.value) * lo[f.col];
          else if (hi[f.col])
            rest_min += BigInt(f.value) * *hi[f.col];
          else
            ok = false;
        }
        if (!ok) continue;
        if (e.value > 0)
          hi[e.col] = floor_div<BigInt>(ip.b[i] - rest_min, BigInt(e.value));
        else
          hi[e.col] = floor_div<BigInt>(rest_min - ip.b[i], BigInt(-e.value));
        progress = true;
      }
    }
  }
  std::vector<BigInt> hib(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!hi[j]) {
      IpSolution s;
      s.status = IpStatus::NoBox;
      return s;
    }
    if (*hi[j] < lo[j]) return IpSolution{};
    hib[j] = *hi[j];
  }

  // Magnitude check for the 128-bit fast path.
  BigInt worst = 0;
  auto extent = [&](std::size_t j) { return BigInt(std::max(BigInt(abs(lo[j])), BigInt(abs(hib[j])))); };
  const std::vector<LinearRow> rows = implied_rows(ip);
  for (const auto& row : rows) {
    BigInt s = abs(row.rhs);
    for (const auto& [j, a] : row.terms) s += abs(a) * extent(j);
    worst = std::max(worst, BigInt(s));
  }
  BigInt s = 0;
  for (std::size_t j = 0; j < n; ++j) s += abs(ip.c[j]) * extent(j);
  worst = std::max(worst, BigInt(2 * s));
  IpSolution sol = worst < (BigInt(1) << 120) ? BranchAndBound<I128>(ip, rows, lo, hib, node_budget).run()
                                                : BranchAndBound<BigInt>(ip, rows, lo, hib, node_budget).run();
  if (sol.status == IpStatus::Optimal) sol.objective = ip.objective(sol.z);
  return sol;
}

}  // namespace toric
