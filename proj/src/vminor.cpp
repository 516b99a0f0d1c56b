#include "vmlab/vminor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace vmlab {

namespace {

// Adjacency rows packed into one word per vertex; enough for the
// enumeration ceiling of 16 vertices and much faster to copy than a
// full matrix during orbit expansion.
struct SmallGraph {
  std::size_t n = 0;
  std::array<std::uint16_t, 16> rows{};

  static SmallGraph from(const Graph& g) {
    if (g.vertex_count() > 16)
      throw std::invalid_argument("orbit exploration is capped at 16 vertices");
    SmallGraph s;
    s.n = g.vertex_count();
    for (std::size_t i = 0; i < s.n; ++i)
      for (std::size_t j = 0; j < s.n; ++j)
        if (i != j && g.has_edge_at(i, j)) s.rows[i] |= std::uint16_t(1) << j;
    return s;
  }

  void complement_at(std::size_t v) {
    const std::uint16_t nv = rows[v];
    std::uint16_t rest = nv;
    while (rest) {
      const unsigned x = std::countr_zero(rest);
      rest &= rest - 1;
      rows[x] ^= nv;
      rows[x] &= static_cast<std::uint16_t>(~(std::uint16_t(1) << x));
    }
  }

  EdgeMask128 mask() const {
    EdgeMask128 m;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++bit)
        if ((rows[i] >> j) & 1) {
          if (bit < 64)
            m.lo |= std::uint64_t(1) << bit;
          else
            m.hi |= std::uint64_t(1) << (bit - 64);
        }
    return m;
  }

  static SmallGraph from_mask(std::size_t n, EdgeMask128 m) {
    SmallGraph s;
    s.n = n;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++bit) {
        const bool e = bit < 64 ? (m.lo >> bit) & 1 : (m.hi >> (bit - 64)) & 1;
        if (e) {
          s.rows[i] |= std::uint16_t(1) << j;
          s.rows[j] |= std::uint16_t(1) << i;
        }
      }
    return s;
  }
};

struct MaskHash {
  std::size_t operator()(const EdgeMask128& m) const {
    std::uint64_t h = m.lo * 0x9E3779B97F4A7C15ULL;
    h ^= m.hi + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct SidedMaskHash {
  std::size_t operator()(const std::pair<EdgeMask128, std::uint32_t>& k) const {
    return MaskHash{}(k.first) ^ (std::uint64_t(k.second) * 0xBF58476D1CE4E5B9ULL);
  }
};

}  // namespace

EdgeMask128 edge_mask128(const Graph& g) { return SmallGraph::from(g).mask(); }

Graph graph_from_mask128(std::size_t n, EdgeMask128 mask,
                         const std::vector<int>& labels) {
  const SmallGraph s = SmallGraph::from_mask(n, mask);
  F2Matrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((s.rows[i] >> j) & 1) {
        adj.set(i, j, true);
        adj.set(j, i, true);
      }
  return Graph(labels, std::move(adj));
}

bool Orbit::contains(const EdgeMask128& mask) const {
  return std::find(members.begin(), members.end(), mask) != members.end();
}

std::vector<int> Orbit::word(std::size_t idx) const {
  std::vector<int> w;
  for (std::int32_t at = static_cast<std::int32_t>(idx); parent[at] >= 0;
       at = parent[at])
    w.push_back(via_vertex[at]);
  std::reverse(w.begin(), w.end());
  return w;
}

Graph Orbit::member_graph(std::size_t idx) const {
  return graph_from_mask128(seed.vertex_count(), members[idx], seed.labels());
}

Orbit lc_orbit(const Graph& g, std::size_t member_cap) {
  Orbit orbit;
  orbit.seed = g;
  orbit.cap = member_cap;
  const std::size_t n = g.vertex_count();

  // Vertices are expanded in increasing label order so BFS words are
  // canonical, not just shortest.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.labels()[a] < g.labels()[b];
  });

  const SmallGraph start = SmallGraph::from(g);
  std::unordered_map<EdgeMask128, std::int32_t, MaskHash> seen;
  std::vector<std::int32_t> depth;

  orbit.members.push_back(start.mask());
  orbit.parent.push_back(-1);
  orbit.via_vertex.push_back(-1);
  depth.push_back(0);
  seen.emplace(orbit.members[0], 0);

  for (std::size_t at = 0; at < orbit.members.size(); ++at) {
    const SmallGraph base = SmallGraph::from_mask(n, orbit.members[at]);
    for (std::size_t v : order) {
      SmallGraph next = base;
      next.complement_at(v);
      const EdgeMask128 key = next.mask();
      if (seen.contains(key)) continue;
      if (orbit.members.size() >= member_cap) {
        orbit.truncated = true;
        break;
      }
      seen.emplace(key, static_cast<std::int32_t>(orbit.members.size()));
      orbit.members.push_back(key);
      orbit.parent.push_back(static_cast<std::int32_t>(at));
      orbit.via_vertex.push_back(g.labels()[v]);
      depth.push_back(depth[at] + 1);
    }
    if (orbit.truncated) break;
  }

  for (std::int32_t d : depth) {
    if (orbit.layer_sizes.size() <= static_cast<std::size_t>(d))
      orbit.layer_sizes.resize(d + 1, 0);
    ++orbit.layer_sizes[d];
  }
  return orbit;
}

namespace {

// Bits of h's edge mask laid out in h's own label order, and the matching
// position pairs inside g.
struct InducedProbe {
  std::vector<std::pair<std::size_t, std::size_t>> host_pairs;
  std::uint32_t target = 0;

  static InducedProbe make(const Graph& g, const Graph& h) {
    InducedProbe probe;
    const std::size_t k = h.vertex_count();
    if (pair_count(k) > 32)
      throw std::invalid_argument("induced probe: target has too many pairs");
    std::vector<std::size_t> pos(k);
    for (std::size_t a = 0; a < k; ++a) pos[a] = g.index_of(h.labels()[a]);
    std::size_t bit = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b, ++bit) {
        probe.host_pairs.emplace_back(pos[a], pos[b]);
        if (h.has_edge_at(a, b)) probe.target |= std::uint32_t(1) << bit;
      }
    return probe;
  }

  std::uint32_t extract(const SmallGraph& s) const {
    std::uint32_t mask = 0;
    for (std::size_t bit = 0; bit < host_pairs.size(); ++bit) {
      const auto [i, j] = host_pairs[bit];
      if ((s.rows[i] >> j) & 1) mask |= std::uint32_t(1) << bit;
    }
    return mask;
  }
};

}  // namespace

MinorDecision is_vertex_minor(const Graph& g, const Graph& h,
                              std::size_t member_cap) {
  const InducedProbe probe = InducedProbe::make(g, h);
  const Orbit orbit = lc_orbit(g, member_cap);
  const std::size_t n = g.vertex_count();

  MinorDecision decision;
  for (std::size_t idx = 0; idx < orbit.members.size(); ++idx) {
    const SmallGraph s = SmallGraph::from_mask(n, orbit.members[idx]);
    if (probe.extract(s) == probe.target) {
      decision.verdict = Verdict::kYes;
      decision.witness =
          MinorWitness{orbit.word(idx), orbit.member_graph(idx)};
      return decision;
    }
  }
  decision.verdict = orbit.truncated ? Verdict::kUnknown : Verdict::kNo;
  return decision;
}

std::vector<SubsetCoverage> universality_scan(const Graph& g, std::size_t k,
                                              std::size_t member_cap,
                                              std::uint64_t budget,
                                              bool stop_at_first_failure,
                                              bool* truncated,
                                              std::size_t* orbit_size) {
  const std::size_t n = g.vertex_count();
  if (k > n)
    throw std::invalid_argument("universality_scan: k exceeds vertex count");
  if (k <= 1)
    throw std::invalid_argument("universality_scan: k must be at least 2");
  const std::size_t kbits = pair_count(k);
  if (kbits > 20)
    throw std::invalid_argument("universality_scan: 2^C(k,2) out of reach");

  const Orbit orbit = lc_orbit(g, member_cap);
  if (orbit_size) *orbit_size = orbit.members.size();
  if (truncated) *truncated = orbit.truncated;
  if (orbit.truncated) return {};

  double subsets = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    subsets = subsets * double(n - i) / double(i + 1);
  const double work =
      subsets * (double(orbit.members.size()) * double(kbits) +
                 double(std::uint64_t(1) << kbits));
  if (work > double(budget))
    throw std::invalid_argument("universality_scan: budget exceeded");

  std::vector<SmallGraph> small;
  small.reserve(orbit.members.size());
  for (const EdgeMask128& m : orbit.members)
    small.push_back(SmallGraph::from_mask(n, m));

  std::vector<SubsetCoverage> report;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  const std::size_t want = std::size_t(1) << kbits;
  std::vector<bool> hit(want);

  while (true) {
    std::fill(hit.begin(), hit.end(), false);
    std::size_t found = 0;
    for (const SmallGraph& s : small) {
      std::uint32_t mask = 0;
      std::size_t bit = 0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b, ++bit)
          if ((s.rows[pick[a]] >> pick[b]) & 1)
            mask |= std::uint32_t(1) << bit;
      if (!hit[mask]) {
        hit[mask] = true;
        if (++found == want) break;
      }
    }
    SubsetCoverage cov;
    cov.subset.resize(k);
    for (std::size_t a = 0; a < k; ++a) cov.subset[a] = g.labels()[pick[a]];
    cov.complete = (found == want);
    if (!cov.complete) {
      std::uint32_t missing = 0;
      while (hit[missing]) ++missing;
      Graph miss(cov.subset, F2Matrix(k, k));
      std::size_t bit = 0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b, ++bit)
          if ((missing >> bit) & 1) miss.set_edge_at(a, b, true);
      cov.missing = std::move(miss);
    }
    const bool failed = !cov.complete;
    report.push_back(std::move(cov));
    if (failed && stop_at_first_failure) break;

    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return report;
}

UniversalResult is_k_vm_universal(const Graph& g, std::size_t k,
                                  std::size_t member_cap,
                                  std::uint64_t budget) {
  UniversalResult result;
  if (k <= 1) {  // single-vertex (and empty) targets are automatic
    if (k > g.vertex_count())
      throw std::invalid_argument("is_k_vm_universal: k exceeds vertex count");
    result.verdict = Verdict::kYes;
    return result;
  }
  bool truncated = false;
  const std::vector<SubsetCoverage> report = universality_scan(
      g, k, member_cap, budget, /*stop_at_first_failure=*/true, &truncated,
      &result.orbit_size);
  if (truncated) {
    result.verdict = Verdict::kUnknown;
    return result;
  }
  result.subsets_checked = report.size();
  for (const SubsetCoverage& cov : report) {
    if (!cov.complete) {
      result.verdict = Verdict::kNo;
      result.counterexample =
          UniversalCounterexample{cov.subset, *cov.missing};
      return result;
    }
  }
  result.verdict = Verdict::kYes;
  return result;
}

OrderedBipartiteGraph PivotOrbit::member_graph(std::size_t idx) const {
  const std::size_t n = seed.left.size() + seed.right.size();
  std::vector<int> labels = seed.left;
  labels.insert(labels.end(), seed.right.begin(), seed.right.end());
  const SmallGraph s = SmallGraph::from_mask(n, members[idx].first);
  const std::uint32_t sides = members[idx].second;

  std::vector<int> left, right;
  std::vector<std::size_t> lpos, rpos;
  for (std::size_t v = 0; v < n; ++v) {
    if ((sides >> v) & 1) {
      left.push_back(labels[v]);
      lpos.push_back(v);
    } else {
      right.push_back(labels[v]);
      rpos.push_back(v);
    }
  }
  F2Matrix biadj(left.size(), right.size());
  for (std::size_t a = 0; a < lpos.size(); ++a)
    for (std::size_t b = 0; b < rpos.size(); ++b)
      if ((s.rows[lpos[a]] >> rpos[b]) & 1) biadj.set(a, b, true);
  return OrderedBipartiteGraph(std::move(left), std::move(right),
                               std::move(biadj));
}

std::vector<std::pair<int, int>> PivotOrbit::word(std::size_t idx) const {
  std::vector<std::pair<int, int>> w;
  for (std::int32_t at = static_cast<std::int32_t>(idx); parent[at] >= 0;
       at = parent[at])
    w.push_back(via_pivot[at]);
  std::reverse(w.begin(), w.end());
  return w;
}

PivotOrbit pivot_orbit(const OrderedBipartiteGraph& g,
                       std::size_t member_cap) {
  PivotOrbit orbit;
  orbit.seed = g;
  orbit.cap = member_cap;
  const std::size_t nl = g.left.size();
  const std::size_t n = nl + g.right.size();
  if (n > 16)
    throw std::invalid_argument("pivot orbit exploration is capped at 16 vertices");

  std::vector<int> labels = g.left;
  labels.insert(labels.end(), g.right.begin(), g.right.end());

  const SmallGraph start = SmallGraph::from(g.unordered());
  const std::uint32_t start_sides = (std::uint32_t(1) << nl) - 1;

  std::unordered_map<std::pair<EdgeMask128, std::uint32_t>, std::int32_t,
                     SidedMaskHash>
      seen;
  orbit.members.emplace_back(start.mask(), start_sides);
  orbit.parent.push_back(-1);
  orbit.via_pivot.emplace_back(-1, -1);
  seen.emplace(orbit.members[0], 0);

  for (std::size_t at = 0; at < orbit.members.size(); ++at) {
    const SmallGraph base = SmallGraph::from_mask(n, orbit.members[at].first);
    const std::uint32_t sides = orbit.members[at].second;
    for (std::size_t u = 0; u < n && !orbit.truncated; ++u) {
      if (!((sides >> u) & 1)) continue;  // pivots addressed left-to-right
      std::uint16_t nbrs = base.rows[u];
      while (nbrs) {
        const unsigned v = std::countr_zero(nbrs);
        nbrs &= nbrs - 1;
        SmallGraph next = base;
        next.complement_at(u);
        next.complement_at(v);
        next.complement_at(u);
        const std::uint32_t nsides =
            sides ^ (std::uint32_t(1) << u) ^ (std::uint32_t(1) << v);
        const std::pair<EdgeMask128, std::uint32_t> key{next.mask(), nsides};
        if (seen.contains(key)) continue;
        if (orbit.members.size() >= member_cap) {
          orbit.truncated = true;
          break;
        }
        seen.emplace(key, static_cast<std::int32_t>(orbit.members.size()));
        orbit.members.push_back(key);
        orbit.parent.push_back(static_cast<std::int32_t>(at));
        orbit.via_pivot.emplace_back(labels[u], labels[v]);
      }
    }
    if (orbit.truncated) break;
  }
  return orbit;
}

PivotMinorDecision is_pivot_minor(const OrderedBipartiteGraph& g,
                                  const OrderedBipartiteGraph& h,
                                  std::size_t member_cap) {
  const std::size_t n = g.left.size() + g.right.size();
  std::vector<int> labels = g.left;
  labels.insert(labels.end(), g.right.begin(), g.right.end());
  auto pos_of = [&](int label) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    throw std::invalid_argument("is_pivot_minor: target vertex not in host");
  };
  std::vector<std::size_t> hl, hr;
  for (int u : h.left) hl.push_back(pos_of(u));
  for (int v : h.right) hr.push_back(pos_of(v));

  const PivotOrbit orbit = pivot_orbit(g, member_cap);
  PivotMinorDecision decision;
  for (std::size_t idx = 0; idx < orbit.members.size(); ++idx) {
    const std::uint32_t sides = orbit.members[idx].second;
    bool side_ok = true;
    for (std::size_t p : hl)
      if (!((sides >> p) & 1)) side_ok = false;
    for (std::size_t p : hr)
      if ((sides >> p) & 1) side_ok = false;
    if (!side_ok) continue;
    const SmallGraph s = SmallGraph::from_mask(n, orbit.members[idx].first);
    bool match = true;
    for (std::size_t a = 0; a < hl.size() && match; ++a)
      for (std::size_t b = 0; b < hr.size() && match; ++b)
        if (((s.rows[hl[a]] >> hr[b]) & 1) != h.biadj.get(a, b)) match = false;
    if (match) {
      decision.verdict = Verdict::kYes;
      decision.witness =
          PivotMinorWitness{orbit.word(idx), orbit.member_graph(idx)};
      return decision;
    }
  }
  decision.verdict = orbit.truncated ? Verdict::kUnknown : Verdict::kNo;
  return decision;
}

}  // namespace vmlab
