#include "vmlab/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace vmlab {

namespace {

void check_symmetric_hollow(const F2Matrix& adj) {
  if (adj.rows() != adj.cols())
    throw std::invalid_argument("Graph: adjacency matrix must be square");
  for (std::size_t i = 0; i < adj.rows(); ++i) {
    if (adj.get(i, i))
      throw std::invalid_argument("Graph: adjacency diagonal must be zero");
    for (std::size_t j = i + 1; j < adj.cols(); ++j)
      if (adj.get(i, j) != adj.get(j, i))
        throw std::invalid_argument("Graph: adjacency must be symmetric");
  }
}

}  // namespace

Graph::Graph(std::size_t n) : adj_(n, n) {
  labels_.resize(n);
  for (std::size_t i = 0; i < n; ++i) labels_[i] = static_cast<int>(i);
}

Graph::Graph(std::vector<int> labels, F2Matrix adjacency)
    : labels_(std::move(labels)), adj_(std::move(adjacency)) {
  if (adj_.rows() != labels_.size())
    throw std::invalid_argument("Graph: label count does not match adjacency");
  check_symmetric_hollow(adj_);
  std::vector<int> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("Graph: duplicate vertex label");
}

Graph Graph::from_edges(std::size_t n,
                        const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.set_edge(u, v, true);
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.set_edge_at(i, j, true);
  return g;
}

std::size_t Graph::index_of(int label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw std::invalid_argument("Graph: unknown vertex label " +
                              std::to_string(label));
}

bool Graph::has_label(int label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

bool Graph::has_edge(int u, int v) const {
  return adj_.get(index_of(u), index_of(v));
}

void Graph::set_edge(int u, int v, bool present) {
  set_edge_at(index_of(u), index_of(v), present);
}

void Graph::set_edge_at(std::size_t i, std::size_t j, bool present) {
  if (i == j) throw std::invalid_argument("Graph: no self-loops");
  adj_.set(i, j, present);
  adj_.set(j, i, present);
}

std::size_t Graph::edge_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < vertex_count(); ++i)
    for (std::size_t j = i + 1; j < vertex_count(); ++j)
      if (adj_.get(i, j)) ++n;
  return n;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < vertex_count(); ++i)
    for (std::size_t j = i + 1; j < vertex_count(); ++j)
      if (adj_.get(i, j)) out.emplace_back(labels_[i], labels_[j]);
  return out;
}

void local_complement_inplace(F2Matrix& adj, std::size_t v) {
  const std::size_t n = adj.rows();
  // XOR the neighborhood row into every neighbor's row; this toggles all
  // pairs inside N(v) twice-symmetrically and also sets the diagonal bit of
  // each neighbor, which is cleared right after. Row v itself never moves
  // (v is not its own neighbor), so it can be read in place.
  const auto nv = adj.row_words(v);
  for (std::size_t x = 0; x < n; ++x) {
    if (x == v || !adj.get(v, x)) continue;
    auto rx = adj.row_words(x);
    for (std::size_t w = 0; w < nv.size(); ++w) rx[w] ^= nv[w];
    adj.set(x, x, false);
  }
}

Graph local_complement(const Graph& g, int v) {
  F2Matrix adj = g.adjacency();
  local_complement_inplace(adj, g.index_of(v));
  return Graph(g.labels(), std::move(adj));
}

Graph pivot(const Graph& g, int u, int v) {
  if (!g.has_edge(u, v))
    throw std::invalid_argument("pivot: uv is not an edge");
  return local_complement(local_complement(local_complement(g, u), v), u);
}

Graph pivot_tripartite(const Graph& g, int u, int v) {
  if (!g.has_edge(u, v))
    throw std::invalid_argument("pivot_tripartite: uv is not an edge");
  const std::size_t ui = g.index_of(u);
  const std::size_t vi = g.index_of(v);
  const std::size_t n = g.vertex_count();
  const F2Vector nu = g.adjacency().row(ui);
  const F2Vector nv = g.adjacency().row(vi);

  // Parts: common neighbors, private neighbors of v, private neighbors of u
  // (closed neighborhoods excluded, so u and v sit in no part).
  std::vector<int> part(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    if (x == ui || x == vi) continue;
    const bool in_u = nu.get(x), in_v = nv.get(x);
    if (in_u && in_v)
      part[x] = 0;
    else if (in_v)
      part[x] = 1;
    else if (in_u)
      part[x] = 2;
  }

  F2Matrix adj = g.adjacency();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (part[x] >= 0 && part[y] >= 0 && part[x] != part[y]) {
        adj.flip(x, y);
        adj.flip(y, x);
      }

  // Exchange the adjacencies of u and v (the label swap).
  for (std::size_t x = 0; x < n; ++x) {
    if (x == ui || x == vi) continue;
    const bool eu = adj.get(ui, x), ev = adj.get(vi, x);
    adj.set(ui, x, ev);
    adj.set(x, ui, ev);
    adj.set(vi, x, eu);
    adj.set(x, vi, eu);
  }
  return Graph(g.labels(), std::move(adj));
}

Graph induced(const Graph& g, const std::vector<int>& u_set) {
  std::vector<std::size_t> idx(u_set.size());
  for (std::size_t a = 0; a < u_set.size(); ++a) idx[a] = g.index_of(u_set[a]);
  F2Matrix adj(u_set.size(), u_set.size());
  for (std::size_t a = 0; a < u_set.size(); ++a)
    for (std::size_t b = a + 1; b < u_set.size(); ++b)
      if (g.adjacency().get(idx[a], idx[b])) {
        adj.set(a, b, true);
        adj.set(b, a, true);
      }
  return Graph(u_set, std::move(adj));
}

Graph symmetric_difference(const Graph& g, const Graph& h) {
  if (g.labels() != h.labels())
    throw std::invalid_argument(
        "symmetric_difference: vertex sets do not match");
  F2Matrix adj = add(g.adjacency(), h.adjacency());
  return Graph(g.labels(), std::move(adj));
}

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

std::size_t edge_bit_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::uint64_t edge_mask(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (pair_count(n) > 64)
    throw std::invalid_argument("edge_mask: graph too large for 64-bit mask");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.has_edge_at(i, j))
        mask |= std::uint64_t(1) << edge_bit_index(i, j, n);
  return mask;
}

Graph graph_from_edge_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((mask >> edge_bit_index(i, j, n)) & 1) g.set_edge_at(i, j, true);
  return g;
}

namespace {

[[noreturn]] void g6_fail(std::size_t pos, const std::string& what) {
  throw std::invalid_argument("graph6: byte " + std::to_string(pos) + ": " +
                              what);
}

}  // namespace

std::string to_graph6(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  } else {
    throw std::invalid_argument("graph6: graph too large to encode");
  }
  // Upper triangle in column order x(0,1), x(0,2), x(1,2), x(0,3), ...
  int group = 0, nbits = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      group = (group << 1) | (g.has_edge_at(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(group + 63));
        group = 0;
        nbits = 0;
      }
    }
  if (nbits) out.push_back(static_cast<char>((group << (6 - nbits)) + 63));
  return out;
}

Graph from_graph6(const std::string& text) {
  std::size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= text.size()) g6_fail(pos, "unexpected end of input");
    const unsigned char c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126) g6_fail(pos, "byte outside graph6 range 63..126");
    ++pos;
    return c - 63;
  };

  std::size_t n;
  int first = next();
  if (first < 63) {
    n = static_cast<std::size_t>(first);
  } else {
    // 126 prefix: 18-bit size. The 8-byte (126,126) form is out of range
    // for this library anyway.
    if (pos < text.size() && text[pos] == 126)
      g6_fail(pos, "graph too large to decode");
    std::size_t a = next(), b = next(), c = next();
    n = (a << 12) | (b << 6) | c;
  }

  Graph g(n);
  const std::size_t bits = pair_count(n);
  int group = 0, have = 0;
  for (std::size_t k = 0; k < bits; ++k) {
    if (have == 0) {
      group = next();
      have = 6;
    }
    const bool bit = (group >> (have - 1)) & 1;
    --have;
    if (bit) {
      // Invert k -> (i, j) in column order.
      std::size_t j = 1;
      std::size_t kk = k;
      while (kk >= j) {
        kk -= j;
        ++j;
      }
      g.set_edge_at(kk, j, true);
    }
  }
  if (have > 0 && (group & ((1 << have) - 1)) != 0)
    g6_fail(pos - 1, "nonzero padding bits");
  if (pos != text.size()) g6_fail(pos, "trailing characters after graph data");
  return g;
}

}  // namespace vmlab
