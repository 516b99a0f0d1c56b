#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vmlab/bippivot.hpp"
#include "vmlab/graph.hpp"

namespace vmlab {

/// Edge bitmask wide enough for 16-vertex graphs (120 pair bits).
struct EdgeMask128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool operator==(const EdgeMask128&) const = default;
};

EdgeMask128 edge_mask128(const Graph& g);
Graph graph_from_mask128(std::size_t n, EdgeMask128 mask,
                         const std::vector<int>& labels);

/// Closure of a graph under single-vertex complementations, explored
/// breadth first so every member's recorded word is shortest (ties broken
/// by label order). Members are labeled graphs; no isomorphism folding.
struct Orbit {
  Graph seed;
  std::vector<EdgeMask128> members;      // BFS discovery order, seed first
  std::vector<std::int32_t> parent;      // -1 for the seed
  std::vector<int> via_vertex;           // complemented label, -1 for seed
  std::vector<std::size_t> layer_sizes;  // members per BFS depth
  bool truncated = false;
  std::size_t cap = 0;

  bool contains(const EdgeMask128& mask) const;
  /// Complementation word from the seed to members[idx].
  std::vector<int> word(std::size_t idx) const;
  Graph member_graph(std::size_t idx) const;
};

constexpr std::size_t kDefaultOrbitCap = std::size_t(1) << 20;

/// Truncation past member_cap is flagged on the result, never thrown;
/// graphs above 16 vertices are rejected outright.
Orbit lc_orbit(const Graph& g, std::size_t member_cap = kDefaultOrbitCap);

enum class Verdict { kYes, kNo, kUnknown };

struct MinorWitness {
  std::vector<int> word;  // complementations from the seed
  Graph member;           // the orbit member whose induced subgraph matches
};

struct MinorDecision {
  Verdict verdict = Verdict::kUnknown;
  std::optional<MinorWitness> witness;
};

/// Is h (a graph on a subset of g's labels) an induced subgraph of some
/// member of g's complementation orbit? Unknown when the orbit truncated.
MinorDecision is_vertex_minor(const Graph& g, const Graph& h,
                              std::size_t member_cap = kDefaultOrbitCap);

struct UniversalCounterexample {
  std::vector<int> subset;
  Graph missing;  // a graph on `subset` not realized there
};

struct UniversalResult {
  Verdict verdict = Verdict::kUnknown;
  std::optional<UniversalCounterexample> counterexample;
  std::size_t orbit_size = 0;
  std::size_t subsets_checked = 0;
};

/// Does every k-subset of vertices realize all 2^C(k,2) graphs as induced
/// subgraphs across the orbit? Throws when the estimated work exceeds
/// `budget`; reports Unknown when the orbit truncated.
UniversalResult is_k_vm_universal(const Graph& g, std::size_t k,
                                  std::size_t member_cap = kDefaultOrbitCap,
                                  std::uint64_t budget = 2'000'000'000ULL);

/// Per-subset realization record: did this k-subset attain every graph,
/// and if not, which one is missing.
struct SubsetCoverage {
  std::vector<int> subset;
  bool complete = false;
  std::optional<Graph> missing;
};

/// Coverage of every k-subset in lexicographic order over one shared orbit
/// (the union-bound bookkeeping, one verdict per subset). Optionally stops
/// after the first incomplete subset. Same caps as is_k_vm_universal.
std::vector<SubsetCoverage> universality_scan(
    const Graph& g, std::size_t k, std::size_t member_cap, std::uint64_t budget,
    bool stop_at_first_failure, bool* truncated = nullptr,
    std::size_t* orbit_size = nullptr);

/// Pivot-closure analogue for ordered bipartite graphs: members carry both
/// the underlying edges and the evolving side assignment.
struct PivotOrbit {
  OrderedBipartiteGraph seed;
  std::vector<std::pair<EdgeMask128, std::uint32_t>> members;  // edges, sides
  std::vector<std::int32_t> parent;
  std::vector<std::pair<int, int>> via_pivot;
  bool truncated = false;
  std::size_t cap = 0;

  OrderedBipartiteGraph member_graph(std::size_t idx) const;
  std::vector<std::pair<int, int>> word(std::size_t idx) const;
};

PivotOrbit pivot_orbit(const OrderedBipartiteGraph& g,
                       std::size_t member_cap = kDefaultOrbitCap);

struct PivotMinorWitness {
  std::vector<std::pair<int, int>> word;
  OrderedBipartiteGraph member;
};

struct PivotMinorDecision {
  Verdict verdict = Verdict::kUnknown;
  std::optional<PivotMinorWitness> witness;
};

/// Is h obtainable on its own labeled, side-respecting vertex set from g by
/// pivots followed by deletions?
PivotMinorDecision is_pivot_minor(const OrderedBipartiteGraph& g,
                                  const OrderedBipartiteGraph& h,
                                  std::size_t member_cap = kDefaultOrbitCap);

}  // namespace vmlab
