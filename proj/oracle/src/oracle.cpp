#include "toric_oracle/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace toric::oracle {

namespace {

std::vector<BigInt> apply(const SparseIntMatrix& a, const IntVector& v) {
  std::vector<BigInt> out(a.rows(), 0);
  for (const auto& e : a.entries()) out[e.row] += BigInt(e.value) * v[e.col];
  return out;
}

bool all_zero(const std::vector<BigInt>& x) {
  return std::all_of(x.begin(), x.end(), [](const BigInt& y) { return y == 0; });
}

bool nonzero(const IntVector& v) {
  return std::any_of(v.begin(), v.end(), [](Int x) { return x != 0; });
}

// u ⊑ v
bool conformal(const IntVector& u, const IntVector& v) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] == 0) continue;
    if ((u[j] > 0) != (v[j] > 0) || v[j] == 0) return false;
    if ((u[j] > 0 ? u[j] : -u[j]) > (v[j] > 0 ? v[j] : -v[j])) return false;
  }
  return true;
}

void check_budget(const IntVector& lo, const IntVector& hi, std::size_t budget) {
  double size = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) size *= static_cast<double>(hi[j] - lo[j] + 1);
  if (size > static_cast<double>(budget))
    throw BudgetError("oracle box has " + std::to_string(size) + " points, budget is " +
                      std::to_string(budget));
}

// Odometer over lo <= v <= hi in ascending lexicographic order.
template <class Visit>
void for_box(const IntVector& lo, const IntVector& hi, Visit visit) {
  const std::size_t n = lo.size();
  for (std::size_t j = 0; j < n; ++j)
    if (lo[j] > hi[j]) return;
  IntVector v = lo;
  while (true) {
    visit(v);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (v[j] < hi[j]) {
        ++v[j];
        for (std::size_t k = j + 1; k < n; ++k) v[k] = lo[k];
        break;
      }
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace

std::vector<IntVector> enumerate_kernel(const SparseIntMatrix& a, Int g, std::size_t budget) {
  return enumerate_kernel(a, IntVector(a.cols(), g), budget);
}

std::vector<IntVector> enumerate_kernel(const SparseIntMatrix& a, const IntVector& bounds,
                                        std::size_t budget) {
  IntVector lo(bounds.size());
  for (std::size_t j = 0; j < bounds.size(); ++j) lo[j] = -bounds[j];
  check_budget(lo, bounds, budget);
  std::vector<IntVector> out;
  for_box(lo, bounds, [&](const IntVector& v) {
    if (all_zero(apply(a, v))) out.push_back(v);
  });
  return out;
}

std::vector<IntVector> enumerate_truncated(const SparseIntMatrix& a, Int d, std::size_t budget) {
  std::vector<IntVector> out;
  for (const auto& v : enumerate_kernel(a, d, budget)) {
    Int pos = 0, neg = 0;
    for (Int x : v) (x > 0 ? pos : neg) += x > 0 ? x : -x;
    if (pos <= d && neg <= d) out.push_back(v);
  }
  return out;
}

bool precedes(const std::vector<BigInt>& omega, const IntVector& u, const IntVector& v) {
  BigInt wu = 0, wv = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    wu += omega[j] * u[j];
    wv += omega[j] * v[j];
  }
  if (wu != wv) return wu < wv;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u[j] != v[j]) return u[j] < v[j];
  return false;
}

std::vector<IntVector> conformal_minimal(const std::vector<IntVector>& kernel) {
  std::vector<IntVector> out;
  for (const auto& v : kernel) {
    if (!nonzero(v)) continue;
    bool minimal = true;
    for (const auto& w : kernel)
      if (nonzero(w) && w != v && conformal(w, v)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> graver_bruteforce(const SparseIntMatrix& a, Int g, std::size_t budget) {
  return conformal_minimal(enumerate_kernel(a, g, budget));
}

std::vector<IntVector> kernel_basis(const SparseIntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<BigInt>> mat(m, std::vector<BigInt>(n, 0));
  for (const auto& e : a.entries()) mat[e.row][e.col] = e.value;
  std::vector<std::vector<BigInt>> u(n, std::vector<BigInt>(n, 0));  // u[col] = column vector
  for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // col dst -= q·col src
    for (std::size_t i = 0; i < m; ++i) mat[i][dst] -= q * mat[i][src];
    for (std::size_t k = 0; k < n; ++k) u[dst][k] -= q * u[src][k];
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m; ++i) std::swap(mat[i][x], mat[i][y]);
    std::swap(u[x], u[y]);
  };
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < m && pivot < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = pivot; j < n; ++j)
        if (mat[i][j] != 0 && (best == n || abs(mat[i][j]) < abs(mat[i][best]))) best = j;
      if (best == n) break;
      swap_cols(pivot, best);
      bool done = true;
      for (std::size_t j = pivot + 1; j < n; ++j) {
        if (mat[i][j] == 0) continue;
        BigInt q = mat[i][j] / mat[i][pivot];
        col_op(j, pivot, q);
        if (mat[i][j] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  std::vector<IntVector> out;
  for (std::size_t j = pivot; j < n; ++j) {
    IntVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = to_int(u[j][k]);
    out.push_back(v);
  }
  return out;
}

std::vector<IntVector> graver_completion(const SparseIntMatrix& a, std::size_t budget) {
  std::vector<IntVector> g;
  for (const auto& b : kernel_basis(a)) {
    g.push_back(b);
    IntVector neg(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) neg[k] = -b[k];
    g.push_back(neg);
  }
  auto sum = [](const IntVector& x, const IntVector& y) {
    IntVector s(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) s[k] = checked_add(x[k], y[k]);
    return s;
  };
  std::vector<IntVector> pending;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j) pending.push_back(sum(g[i], g[j]));
  std::size_t work = 0;
  while (!pending.empty()) {
    if (++work > budget) throw BudgetError("Graver completion exceeded its budget");
    IntVector s = std::move(pending.back());
    pending.pop_back();
    for (bool reduced = true; reduced && nonzero(s);) {
      reduced = false;
      for (const auto& h : g)
        if (conformal(h, s)) {
          for (std::size_t k = 0; k < s.size(); ++k) s[k] -= h[k];
          reduced = true;
          break;
        }
    }
    if (!nonzero(s)) continue;
    for (const auto& h : g) pending.push_back(sum(s, h));
    g.push_back(s);
  }
  return conformal_minimal(g);
}

IntVector normal_form_bruteforce(const SparseIntMatrix& a, const std::vector<BigInt>& omega,
                                 const IntVector& u, Int box, std::size_t budget) {
  const std::size_t n = u.size();
  const auto target = apply(a, u);
  IntVector lo(n, 0), hi(n, box);
  check_budget(lo, hi, budget);
  IntVector best = u;
  for_box(lo, hi, [&](const IntVector& z) {
    if (apply(a, z) == target && precedes(omega, z, best)) best = z;
  });
  return best;
}

std::vector<OrientedPair> reduced_gb_from_moves(const std::vector<IntVector>& moves,
                                                const std::vector<BigInt>& omega) {
  std::map<IntVector, bool> memo;
  auto shifted = [](const IntVector& z, const IntVector& v, IntVector& out) {
    for (std::size_t k = 0; k < z.size(); ++k) {
      out[k] = z[k] + v[k];
      if (out[k] < 0) return false;
    }
    return true;
  };
  auto standard = [&](const IntVector& z) {
    auto it = memo.find(z);
    if (it != memo.end()) return it->second;
    IntVector y(z.size());
    bool s = true;
    for (const auto& v : moves)
      if (shifted(z, v, y) && precedes(omega, y, z)) {
        s = false;
        break;
      }
    memo.emplace(z, s);
    return s;
  };
  std::vector<OrientedPair> out;
  for (const auto& v : moves) {
    if (!nonzero(v)) continue;
    IntVector u(v.size()), w(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      u[k] = v[k] > 0 ? v[k] : 0;
      w[k] = v[k] < 0 ? -v[k] : 0;
    }
    if (!precedes(omega, w, u)) continue;
    if (!standard(w)) continue;
    bool ok = true;
    for (std::size_t k = 0; k < u.size() && ok; ++k) {
      if (u[k] == 0) continue;
      --u[k];
      ok = standard(u);
      ++u[k];
    }
    if (!ok) continue;
    IntVector y(u.size());
    for (const auto& m : moves)
      if (shifted(u, m, y) && y != w && precedes(omega, y, w)) {
        ok = false;
        break;
      }
    if (ok) out.push_back({u, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OrientedPair> reduced_gb_bruteforce(const SparseIntMatrix& a, const std::vector<BigInt>& omega,
                                                Int g, std::size_t budget) {
  return reduced_gb_from_moves(enumerate_kernel(a, g, budget), omega);
}

SparseIntMatrix graph_incidence(std::size_t vertices, const EdgeList& edges) {
  std::vector<SparseIntMatrix::Entry> entries;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    entries.push_back({edges[e].first, e, 1});
    entries.push_back({edges[e].second, e, 1});
  }
  return SparseIntMatrix(vertices, edges.size(), entries);
}

SparseIntMatrix nfold(const std::vector<IntVector>& a1, const std::vector<IntVector>& a2, std::size_t n) {
  const std::size_t s1 = a1.size(), s2 = a2.size();
  const std::size_t t = s1 ? a1[0].size() : (s2 ? a2[0].size() : 0);
  std::vector<SparseIntMatrix::Entry> entries;
  for (std::size_t blk = 0; blk < n; ++blk) {
    for (std::size_t i = 0; i < s1; ++i)
      for (std::size_t j = 0; j < t; ++j)
        if (a1[i][j]) entries.push_back({i, blk * t + j, a1[i][j]});
    for (std::size_t i = 0; i < s2; ++i)
      for (std::size_t j = 0; j < t; ++j)
        if (a2[i][j]) entries.push_back({s1 + blk * s2 + i, blk * t + j, a2[i][j]});
  }
  return SparseIntMatrix(s1 + n * s2, n * t, entries);
}

SparseIntMatrix two_by_two_minors(std::size_t l, std::size_t m) {
  std::vector<IntVector> a1(l, IntVector(l, 0)), a2(1, IntVector(l, 1));
  for (std::size_t i = 0; i < l; ++i) a1[i][i] = 1;
  return nfold(a1, a2, m);
}

SparseIntMatrix threeway_table(std::size_t l, std::size_t m, std::size_t n) {
  const std::size_t t = l * m;
  std::vector<IntVector> b1(t, IntVector(t, 0));
  for (std::size_t i = 0; i < t; ++i) b1[i][i] = 1;
  const auto b2 = two_by_two_minors(l, m).dense();
  return nfold(b1, b2, n);
}

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SparseIntMatrix random_sparse(std::size_t m, std::size_t n, Int a, double density, std::uint64_t seed) {
  if (a < 1 || n == 0) throw DomainError("random_sparse needs a >= 1 and n >= 1");
  if (!(density > 0)) throw DomainError("random_sparse needs a positive density");
  std::mt19937_64 rng(seed);
  std::vector<SparseIntMatrix::Entry> entries;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<SparseIntMatrix::Entry> row;
    while (row.empty()) {
      for (std::size_t j = 0; j < n; ++j) {
        if (unit(rng) >= density) continue;
        Int mag = 1 + static_cast<Int>(rng() % static_cast<std::uint64_t>(a));
        Int value = (rng() & 1) ? mag : -mag;
        row.push_back({i, j, value});
      }
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return SparseIntMatrix(m, n, entries);
}

EdgeList random_graph(std::size_t vertices, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EdgeList edges;
  for (std::size_t x = 0; x < vertices; ++x)
    for (std::size_t y = x + 1; y < vertices; ++y)
      if (unit(rng) < p) edges.emplace_back(x, y);
  return edges;
}

}  // namespace toric::oracle
