#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vmlab/f2core.hpp"
#include "vmlab/graph.hpp"

namespace vmlab {

/// Bipartite graph whose two sides are ordered label sequences; edges only
/// run across. Pivoting moves the pivoted pair between the sides.
struct OrderedBipartiteGraph {
  std::vector<int> left;
  std::vector<int> right;
  F2Matrix biadj;  // |left| x |right|

  OrderedBipartiteGraph() = default;
  OrderedBipartiteGraph(std::vector<int> l, std::vector<int> r, F2Matrix b);

  std::size_t left_index(int label) const;
  std::size_t right_index(int label) const;
  bool on_left(int label) const;
  bool on_right(int label) const;
  bool has_edge(int u, int v) const;  // u left, v right

  /// The same graph forgotten to an unordered labeled graph on left+right.
  Graph unordered() const;

  bool operator==(const OrderedBipartiteGraph& other) const = default;
};

/// Pivot at a current edge (u on the left, v on the right): the cross
/// pattern between the other neighbors of v and of u is complemented and
/// u, v exchange sides (each takes the other's slot in the side order).
OrderedBipartiteGraph bipartite_pivot(const OrderedBipartiteGraph& g, int u,
                                      int v);

struct PivotStep {
  int left_vertex;
  int right_vertex;
  bool edge_certified;        // was an edge when its turn came
  bool remainder_invertible;  // the updated working block stayed invertible
};

/// A maximal sequence of disjoint pivotable pairs plus per-step evidence.
struct PivotPairing {
  std::vector<std::pair<int, int>> pairs;
  std::vector<PivotStep> steps;
  bool all_certified() const;
};

/// Greedy pairing on an invertible rank-profile submatrix: always returns
/// exactly rank(biadj) vertex-disjoint pairs, each one an actual edge at
/// the moment it is pivoted (verified by simulation). Tie-breaks are
/// first-one-in-row-major order throughout, so the result is deterministic.
PivotPairing find_pivot_pairs(const OrderedBipartiteGraph& g);

/// Outcome of checking the closed-form description of the cross-block
/// toggle pattern for a pivot sequence. The z-outer-product identity is
/// expected to hold always; the unit-triangular solve route is recorded
/// separately, and any mismatch is reported as data, not as a crash.
struct BipDeltaCertificate {
  F2Matrix x_left;   // |U_L| x r' original edges U_L vs paired right vertices
  F2Matrix x_right;  // |U_R| x r' original edges U_R vs paired left vertices
  std::vector<F2Vector> z_left;
  std::vector<F2Vector> z_right;
  F2Matrix delta;  // |U_L| x |U_R| toggle pattern of the cross block
  bool delta_matches_zsum = false;
  bool q_left_solved = false;
  bool q_right_solved = false;
  std::optional<F2Matrix> m;  // Q_L Q_R^T when both solves succeed
  bool delta_matches_m = false;

  bool refutation() const {
    return !delta_matches_zsum || (m.has_value() && !delta_matches_m);
  }
};

/// Runs the pairing's pivots, collects the per-step cross indicators, and
/// verifies delta = sum z_i^L (z_i^R)^T plus, when the unit-triangular
/// solves succeed, delta = X_L (Q_L Q_R^T) X_R^T.
BipDeltaCertificate bipartite_delta_via_m(const OrderedBipartiteGraph& g,
                                          const std::vector<int>& u_left,
                                          const std::vector<int>& u_right,
                                          const PivotPairing& pairing);

/// Tail bound r (1-q)^(r-gamma0) / (r-gamma0) on P[rank <= gamma0] for an
/// r x r Bernoulli(q-biased) matrix; needs 0 < gamma0 < r.
double rank_tail_bound(std::size_t r, double q, std::size_t gamma0);

struct RankTailResult {
  std::size_t r = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t low_rank_count = 0;
  double frequency = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
};

/// Frequency of rank <= r/2 over sampled r x r Bernoulli(p) matrices,
/// against rank_tail_bound(r, q, r/2). Deterministic per seed.
RankTailResult rank_tail_experiment(std::size_t r, double p,
                                    std::uint64_t trials, std::uint64_t seed);

}  // namespace vmlab
