#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "toric/matrix.hpp"

namespace toric {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;
// ordering[l] is the l-th vertex to be eliminated.
using Permutation = std::vector<Vertex>;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// Simple undirected graph; adjacency lists are kept sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertices) : adj_(vertices) {}
  Graph(std::size_t vertices, const std::vector<Edge>& edges);

  // Self-loops are rejected, repeated edges are ignored.
  void add_edge(Vertex a, Vertex b);
  bool has_edge(Vertex a, Vertex b) const;

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  // Sorted (a < b) edge list.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
};

// Edge {j1, j2} iff some row has nonzeros in both columns.
Graph column_graph(const SparseIntMatrix& a);
// Edge {i1, i2} iff some column has nonzeros in both rows.
Graph row_graph(const SparseIntMatrix& a);

struct EliminationStructure {
  Permutation ordering;
  std::vector<std::size_t> position;  // position[v] = index of v in ordering
  std::vector<Edge> fill_edges;
  // cliques[v] = X_v: v first, then its later neighbours in the completed
  // graph in elimination order.
  std::vector<std::vector<Vertex>> cliques;
  std::size_t clique_number = 0;
  std::vector<Vertex> parent;  // kNoVertex for roots
  std::size_t height = 0;
};

// Chordal completion along `ordering`, with the elimination tree.
EliminationStructure eliminate(const Graph& g, const Permutation& ordering);

enum class OrderingStrategy { MinDegree, MinFill, Given };

// Greedy elimination orderings; ties go to the lowest vertex index. `Given`
// returns the identity permutation.
Permutation heuristic_ordering(const Graph& g, OrderingStrategy strategy);

// Branch-and-bound over elimination prefixes, memoised on eliminated sets.
// Finds an ordering whose completion has clique number <= k + 1, if any.
// Exponential; intended for graphs with at most ~20 vertices (hard cap 64).
std::optional<Permutation> exact_width_ordering(const Graph& g, std::size_t k);

// Minimum treewidth via exact_width_ordering with increasing k.
std::size_t exact_treewidth(const Graph& g);

struct TreedepthResult {
  std::size_t treedepth = 0;
  Permutation ordering;  // eliminate(g, ordering).height == treedepth
};

// Exhaustive treedepth for graphs with at most 12 vertices.
TreedepthResult exact_treedepth(const Graph& g);

// Height and clique number - 1 of eliminate(g, ordering).
std::size_t treedepth_estimate(const Graph& g, const Permutation& ordering);
std::size_t treewidth_estimate(const Graph& g, const Permutation& ordering);

bool is_permutation_of(const Permutation& p, std::size_t n);

}  // namespace toric
