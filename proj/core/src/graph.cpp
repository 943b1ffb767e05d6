#include "toric/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <unordered_set>

namespace toric {

Graph::Graph(std::size_t vertices, const std::vector<Edge>& edges) : adj_(vertices) {
  for (const auto& [a, b] : edges) add_edge(a, b);
}

void Graph::add_edge(Vertex a, Vertex b) {
  if (a >= adj_.size() || b >= adj_.size()) throw DimensionError("edge endpoint out of range");
  if (a == b) throw DomainError("self-loop on vertex " + std::to_string(a));
  auto insert = [](std::vector<Vertex>& list, Vertex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
  };
  insert(adj_[a], b);
  insert(adj_[b], a);
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  const auto& list = adj_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adj_) twice += list.size();
  return twice / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex a = 0; a < adj_.size(); ++a)
    for (Vertex b : adj_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

namespace {

Graph clique_union(std::size_t vertices, const std::vector<std::vector<Vertex>>& groups) {
  Graph g(vertices);
  for (const auto& group : groups)
    for (std::size_t x = 0; x < group.size(); ++x)
      for (std::size_t y = x + 1; y < group.size(); ++y) g.add_edge(group[x], group[y]);
  return g;
}

}  // namespace

Graph column_graph(const SparseIntMatrix& a) {
  std::vector<std::vector<Vertex>> supports(a.rows());
  for (const auto& e : a.entries()) supports[e.row].push_back(e.col);
  return clique_union(a.cols(), supports);
}

Graph row_graph(const SparseIntMatrix& a) {
  std::vector<std::vector<Vertex>> supports(a.cols());
  for (const auto& e : a.entries()) supports[e.col].push_back(e.row);
  return clique_union(a.rows(), supports);
}

bool is_permutation_of(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

EliminationStructure eliminate(const Graph& g, const Permutation& ordering) {
  const std::size_t n = g.vertex_count();
  if (!is_permutation_of(ordering, n))
    throw DimensionError("ordering is not a permutation of the " + std::to_string(n) + " vertices");

  EliminationStructure s;
  s.ordering = ordering;
  s.position.assign(n, 0);
  for (std::size_t l = 0; l < n; ++l) s.position[ordering[l]] = l;

  std::vector<std::set<Vertex>> filled(n);
  for (Vertex v = 0; v < n; ++v) filled[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());

  s.cliques.assign(n, {});
  s.parent.assign(n, kNoVertex);
  for (std::size_t l = 0; l < n; ++l) {
    Vertex v = ordering[l];
    std::vector<Vertex> later;
    for (Vertex w : filled[v])
      if (s.position[w] > l) later.push_back(w);
    std::sort(later.begin(), later.end(),
              [&](Vertex a, Vertex b) { return s.position[a] < s.position[b]; });
    for (std::size_t x = 0; x < later.size(); ++x) {
      for (std::size_t y = x + 1; y < later.size(); ++y) {
        Vertex a = later[x], b = later[y];
        if (filled[a].insert(b).second) {
          filled[b].insert(a);
          s.fill_edges.emplace_back(std::min(a, b), std::max(a, b));
        }
      }
    }
    if (!later.empty()) s.parent[v] = later.front();
    auto& clique = s.cliques[v];
    clique.push_back(v);
    clique.insert(clique.end(), later.begin(), later.end());
    s.clique_number = std::max(s.clique_number, clique.size());
  }

  // Parents are eliminated after their children, so a reverse sweep sees
  // every parent's depth first.
  std::vector<std::size_t> depth(n, 0);
  for (std::size_t l = n; l-- > 0;) {
    Vertex v = ordering[l];
    depth[v] = s.parent[v] == kNoVertex ? 1 : depth[s.parent[v]] + 1;
    s.height = std::max(s.height, depth[v]);
  }
  return s;
}

Permutation heuristic_ordering(const Graph& g, OrderingStrategy strategy) {
  const std::size_t n = g.vertex_count();
  Permutation order;
  order.reserve(n);
  if (strategy == OrderingStrategy::Given) {
    for (Vertex v = 0; v < n; ++v) order.push_back(v);
    return order;
  }

  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::vector<char> alive(n, 1);

  auto fill_count = [&](Vertex v) {
    std::size_t missing = 0;
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
      for (auto b = std::next(a); b != adj[v].end(); ++b)
        if (!adj[*a].count(*b)) ++missing;
    return missing;
  };

  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = kNoVertex;
    std::size_t best_score = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::size_t score = strategy == OrderingStrategy::MinDegree ? adj[v].size() : fill_count(v);
      if (best == kNoVertex || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    for (auto a = adj[best].begin(); a != adj[best].end(); ++a)
      for (auto b = std::next(a); b != adj[best].end(); ++b) {
        adj[*a].insert(*b);
        adj[*b].insert(*a);
      }
    for (Vertex w : adj[best]) adj[w].erase(best);
    adj[best].clear();
    alive[best] = 0;
    order.push_back(best);
  }
  return order;
}

namespace {

using Mask = std::uint64_t;

std::vector<Mask> neighbour_masks(const Graph& g) {
  std::vector<Mask> masks(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Vertex w : g.neighbors(v)) masks[v] |= Mask{1} << w;
  return masks;
}

// Vertices outside `eliminated` reachable from v through eliminated ones:
// exactly the later neighbours of v once `eliminated` has been eliminated.
Mask later_neighbours(const std::vector<Mask>& nb, Mask eliminated, Vertex v) {
  Mask visited = Mask{1} << v;
  Mask frontier = visited;
  Mask result = 0;
  while (frontier) {
    Vertex x = static_cast<Vertex>(std::countr_zero(frontier));
    frontier &= frontier - 1;
    Mask next = nb[x] & ~visited;
    visited |= next;
    result |= next & ~eliminated;
    frontier |= next & eliminated;
  }
  return result;
}

struct WidthSearch {
  const std::vector<Mask>& nb;
  std::size_t n;
  std::size_t k;
  std::unordered_set<Mask> failed;
  Permutation prefix;

  bool run(Mask eliminated) {
    if (prefix.size() == n) return true;
    if (failed.count(eliminated)) return false;
    for (Vertex v = 0; v < n; ++v) {
      if (eliminated >> v & 1) continue;
      Mask later = later_neighbours(nb, eliminated, v);
      if (static_cast<std::size_t>(std::popcount(later)) > k) continue;
      prefix.push_back(v);
      if (run(eliminated | Mask{1} << v)) return true;
      prefix.pop_back();
    }
    failed.insert(eliminated);
    return false;
  }
};

}  // namespace

std::optional<Permutation> exact_width_ordering(const Graph& g, std::size_t k) {
  const std::size_t n = g.vertex_count();
  if (n > 64) throw BudgetError("exact width search supports at most 64 vertices");
  auto nb = neighbour_masks(g);
  WidthSearch search{nb, n, k, {}, {}};
  if (search.run(0)) return search.prefix;
  return std::nullopt;
}

std::size_t exact_treewidth(const Graph& g) {
  if (g.vertex_count() == 0) return 0;
  for (std::size_t k = 0;; ++k)
    if (exact_width_ordering(g, k)) return k;
}

namespace {

struct DepthSearch {
  const std::vector<Mask>& nb;
  std::vector<int> memo;  // -1 = unknown
  std::vector<int> root;  // chosen last vertex for connected sets

  std::vector<Mask> components(Mask set) const {
    std::vector<Mask> out;
    while (set) {
      Mask seed = set & (~set + 1);
      Mask comp = seed, frontier = seed;
      while (frontier) {
        Vertex x = static_cast<Vertex>(std::countr_zero(frontier));
        frontier &= frontier - 1;
        Mask next = nb[x] & set & ~comp;
        comp |= next;
        frontier |= next;
      }
      out.push_back(comp);
      set &= ~comp;
    }
    return out;
  }

  int depth(Mask set) {
    if (!set) return 0;
    if (memo[set] >= 0) return memo[set];
    auto comps = components(set);
    int best = 0;
    if (comps.size() > 1) {
      for (Mask c : comps) best = std::max(best, depth(c));
    } else {
      best = -1;
      for (Mask rest = set; rest; rest &= rest - 1) {
        Vertex v = static_cast<Vertex>(std::countr_zero(rest));
        int d = 1 + depth(set & ~(Mask{1} << v));
        if (best < 0 || d < best) {
          best = d;
          root[set] = static_cast<int>(v);
        }
      }
    }
    return memo[set] = best;
  }

  // Children subtrees first, chosen root last.
  void emit(Mask set, Permutation& out) {
    if (!set) return;
    auto comps = components(set);
    if (comps.size() > 1) {
      for (Mask c : comps) emit(c, out);
      return;
    }
    depth(set);
    Vertex v = static_cast<Vertex>(root[set]);
    emit(set & ~(Mask{1} << v), out);
    out.push_back(v);
  }
};

}  // namespace

TreedepthResult exact_treedepth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 12) throw BudgetError("exact treedepth is limited to graphs with at most 12 vertices");
  auto nb = neighbour_masks(g);
  DepthSearch search{nb, std::vector<int>(std::size_t{1} << n, -1),
                     std::vector<int>(std::size_t{1} << n, -1)};
  Mask all = n == 0 ? 0 : (Mask{1} << n) - 1;
  TreedepthResult r;
  r.treedepth = static_cast<std::size_t>(search.depth(all));
  search.emit(all, r.ordering);
  return r;
}

std::size_t treedepth_estimate(const Graph& g, const Permutation& ordering) {
  return eliminate(g, ordering).height;
}

std::size_t treewidth_estimate(const Graph& g, const Permutation& ordering) {
  auto s = eliminate(g, ordering);
  return s.clique_number == 0 ? 0 : s.clique_number - 1;
}

}  // namespace toric
