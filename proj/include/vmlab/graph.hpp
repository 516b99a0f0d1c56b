#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmlab/f2core.hpp"

namespace vmlab {

/// Simple labeled graph stored as a symmetric zero-diagonal GF(2)
/// adjacency matrix. Vertices are addressed by stable integer labels,
/// not positions, so induced subgraphs and rewriting sequences keep
/// talking about "the same" vertices.
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph with labels 0..n-1.
  explicit Graph(std::size_t n);
  Graph(std::vector<int> labels, F2Matrix adjacency);

  static Graph from_edges(std::size_t n,
                          const std::vector<std::pair<int, int>>& edges);
  static Graph complete(std::size_t n);

  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  const F2Matrix& adjacency() const { return adj_; }

  /// Position of a label; throws std::invalid_argument if absent.
  std::size_t index_of(int label) const;
  bool has_label(int label) const;

  bool has_edge(int u, int v) const;
  bool has_edge_at(std::size_t i, std::size_t j) const {
    return adj_.get(i, j);
  }
  void set_edge(int u, int v, bool present);
  void set_edge_at(std::size_t i, std::size_t j, bool present);

  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& other) const {
    return labels_ == other.labels_ && adj_ == other.adj_;
  }

 private:
  std::vector<int> labels_;
  F2Matrix adj_;
};

/// G*v: toggle every pair of distinct neighbors of v. Edges incident to v
/// (and everything outside N(v)) are untouched. Involution at each vertex.
Graph local_complement(const Graph& g, int v);

/// Same rewrite applied directly to a symmetric adjacency matrix at a
/// vertex position; allocation-free path for sampling loops.
void local_complement_inplace(F2Matrix& adj, std::size_t v);

/// G×uv = G*u*v*u; requires uv to be an edge. Symmetric in u and v.
/// Labels stay attached to their vertices (no relabeling here).
Graph pivot(const Graph& g, int u, int v);

/// Independent second route to the pivot: symmetric difference with the
/// complete tripartite graph on N(u)∩N(v), N(v)\(N(u)∪{u}), N(u)\(N(v)∪{v}),
/// followed by exchanging the adjacencies of u and v. Kept separate from
/// pivot() so the two can cross-check each other.
Graph pivot_tripartite(const Graph& g, int u, int v);

/// Induced subgraph on the given labels, in the given order.
Graph induced(const Graph& g, const std::vector<int>& u_set);

/// Edgewise XOR; both graphs must carry the identical label sequence.
Graph symmetric_difference(const Graph& g, const Graph& h);

/// graph6 text encoding (canonical bit layout, n up to 258047).
std::string to_graph6(const Graph& g);
/// Throws std::invalid_argument with a byte position on malformed input.
Graph from_graph6(const std::string& text);

/// Position of edge {i,j} (i<j positions) in the lexicographic pair order
/// (0,1),(0,2),...,(0,n-1),(1,2),...; shared by every edge-bitmask consumer.
std::size_t edge_bit_index(std::size_t i, std::size_t j, std::size_t n);
std::size_t pair_count(std::size_t n);

/// Upper-triangle edge bitmask of a graph with <= 16 vertices, in
/// edge_bit_index order.
std::uint64_t edge_mask(const Graph& g);
/// Rebuild a graph (labels 0..n-1) from an edge bitmask.
Graph graph_from_edge_mask(std::size_t n, std::uint64_t mask);

}  // namespace vmlab
