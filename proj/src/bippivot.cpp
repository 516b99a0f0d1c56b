#include "vmlab/bippivot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmlab/rng.hpp"

namespace vmlab {

OrderedBipartiteGraph::OrderedBipartiteGraph(std::vector<int> l,
                                             std::vector<int> r, F2Matrix b)
    : left(std::move(l)), right(std::move(r)), biadj(std::move(b)) {
  if (biadj.rows() != left.size() || biadj.cols() != right.size())
    throw std::invalid_argument(
        "OrderedBipartiteGraph: biadjacency shape does not match the sides");
  std::vector<int> all = left;
  all.insert(all.end(), right.begin(), right.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("OrderedBipartiteGraph: sides overlap");
}

std::size_t OrderedBipartiteGraph::left_index(int label) const {
  for (std::size_t i = 0; i < left.size(); ++i)
    if (left[i] == label) return i;
  throw std::invalid_argument("OrderedBipartiteGraph: label " +
                              std::to_string(label) + " is not on the left");
}

std::size_t OrderedBipartiteGraph::right_index(int label) const {
  for (std::size_t j = 0; j < right.size(); ++j)
    if (right[j] == label) return j;
  throw std::invalid_argument("OrderedBipartiteGraph: label " +
                              std::to_string(label) + " is not on the right");
}

bool OrderedBipartiteGraph::on_left(int label) const {
  return std::find(left.begin(), left.end(), label) != left.end();
}

bool OrderedBipartiteGraph::on_right(int label) const {
  return std::find(right.begin(), right.end(), label) != right.end();
}

bool OrderedBipartiteGraph::has_edge(int u, int v) const {
  return biadj.get(left_index(u), right_index(v));
}

Graph OrderedBipartiteGraph::unordered() const {
  std::vector<int> labels = left;
  labels.insert(labels.end(), right.begin(), right.end());
  const std::size_t a = left.size();
  F2Matrix adj(labels.size(), labels.size());
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      if (biadj.get(i, j)) {
        adj.set(i, a + j, true);
        adj.set(a + j, i, true);
      }
  return Graph(std::move(labels), std::move(adj));
}

OrderedBipartiteGraph bipartite_pivot(const OrderedBipartiteGraph& g, int u,
                                      int v) {
  const std::size_t i = g.left_index(u);
  const std::size_t j = g.right_index(v);
  if (!g.biadj.get(i, j))
    throw std::invalid_argument("bipartite_pivot: uv is not an edge");

  OrderedBipartiteGraph out = g;
  // Complement the cross pattern between v's other left neighbors and u's
  // other right neighbors; in a bipartite graph those are the only pairs
  // the pivot touches.
  F2Vector toggle = g.biadj.row(i);
  toggle.set(j, false);
  for (std::size_t x = 0; x < g.left.size(); ++x)
    if (x != i && g.biadj.get(x, j)) out.biadj.xor_row_with(x, toggle);

  // u and v trade places (and slots) across the sides; the matrix already
  // holds the right entries for the traded slots.
  std::swap(out.left[i], out.right[j]);
  return out;
}

bool PivotPairing::all_certified() const {
  for (const PivotStep& s : steps)
    if (!s.edge_certified || !s.remainder_invertible) return false;
  return true;
}

namespace {

// Lexicographically-first column rank profile.
std::vector<std::size_t> pivot_columns(const F2Matrix& a) {
  F2Matrix w = a;
  std::vector<std::size_t> cols;
  std::size_t piv = 0;
  for (std::size_t c = 0; c < w.cols() && piv < w.rows(); ++c) {
    std::size_t r = piv;
    while (r < w.rows() && !w.get(r, c)) ++r;
    if (r == w.rows()) continue;
    w.swap_rows(piv, r);
    for (std::size_t x = piv + 1; x < w.rows(); ++x)
      if (w.get(x, c)) w.xor_row(x, piv);
    cols.push_back(c);
    ++piv;
  }
  return cols;
}

// First rows of `a` that are linearly independent (all of them when `a`
// has full column rank on those rows).
std::vector<std::size_t> independent_rows(const F2Matrix& a,
                                          std::size_t want) {
  std::vector<F2Vector> basis;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < a.rows() && rows.size() < want; ++i) {
    F2Vector v = a.row(i);
    for (const F2Vector& b : basis) {
      std::size_t p = 0;
      while (p < b.size() && !b.get(p)) ++p;
      if (p < b.size() && v.get(p)) v.xor_with(b);
    }
    if (!v.is_zero()) {
      basis.push_back(v);
      rows.push_back(i);
    }
  }
  return rows;
}

}  // namespace

PivotPairing find_pivot_pairs(const OrderedBipartiteGraph& g) {
  PivotPairing pairing;
  const std::vector<std::size_t> cols = pivot_columns(g.biadj);
  const std::size_t gamma = cols.size();
  if (gamma == 0) return pairing;

  F2Matrix restricted(g.biadj.rows(), gamma);
  for (std::size_t i = 0; i < g.biadj.rows(); ++i)
    for (std::size_t c = 0; c < gamma; ++c)
      if (g.biadj.get(i, cols[c])) restricted.set(i, c, true);
  const std::vector<std::size_t> rows = independent_rows(restricted, gamma);

  F2Matrix block(gamma, gamma);
  for (std::size_t x = 0; x < gamma; ++x)
    for (std::size_t y = 0; y < gamma; ++y)
      if (g.biadj.get(rows[x], cols[y])) block.set(x, y, true);

  std::vector<int> row_labels(gamma), col_labels(gamma);
  for (std::size_t x = 0; x < gamma; ++x) row_labels[x] = g.left[rows[x]];
  for (std::size_t y = 0; y < gamma; ++y) col_labels[y] = g.right[cols[y]];

  OrderedBipartiteGraph sim = g;
  while (!row_labels.empty()) {
    const std::size_t k = row_labels.size();
    std::size_t px = k, py = k;
    for (std::size_t x = 0; x < k && px == k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        if (block.get(x, y)) {
          px = x;
          py = y;
          break;
        }
    if (px == k)
      throw std::logic_error("find_pivot_pairs: invertible block has no one");

    PivotStep step;
    step.left_vertex = row_labels[px];
    step.right_vertex = col_labels[py];
    step.edge_certified = sim.on_left(step.left_vertex) &&
                          sim.on_right(step.right_vertex) &&
                          sim.has_edge(step.left_vertex, step.right_vertex);
    if (step.edge_certified)
      sim = bipartite_pivot(sim, step.left_vertex, step.right_vertex);

    // Working block update: remaining entries pick up the outer product of
    // the pivot row and column, then the pivot row/column is dropped.
    F2Matrix next(k - 1, k - 1);
    for (std::size_t x = 0, xx = 0; x < k; ++x) {
      if (x == px) continue;
      for (std::size_t y = 0, yy = 0; y < k; ++y) {
        if (y == py) continue;
        const bool val =
            block.get(x, y) ^ (block.get(x, py) && block.get(px, y));
        if (val) next.set(xx, yy, true);
        ++yy;
      }
      ++xx;
    }
    step.remainder_invertible =
        next.rows() == 0 || invert(next).has_value();
    pairing.pairs.emplace_back(step.left_vertex, step.right_vertex);
    pairing.steps.push_back(step);

    row_labels.erase(row_labels.begin() + px);
    col_labels.erase(col_labels.begin() + py);
    block = std::move(next);
  }
  return pairing;
}

BipDeltaCertificate bipartite_delta_via_m(const OrderedBipartiteGraph& g,
                                          const std::vector<int>& u_left,
                                          const std::vector<int>& u_right,
                                          const PivotPairing& pairing) {
  for (int u : u_left) (void)g.left_index(u);
  for (int u : u_right) (void)g.right_index(u);
  for (auto [w, wp] : pairing.pairs) {
    if (std::find(u_left.begin(), u_left.end(), w) != u_left.end() ||
        std::find(u_right.begin(), u_right.end(), wp) != u_right.end())
      throw std::invalid_argument(
          "bipartite_delta_via_m: pairing touches the watched sets");
    (void)g.left_index(w);
    (void)g.right_index(wp);
  }

  const std::size_t sl = u_left.size(), sr = u_right.size();
  const std::size_t rp = pairing.pairs.size();

  BipDeltaCertificate cert;
  cert.x_left = F2Matrix(sl, rp);
  cert.x_right = F2Matrix(sr, rp);
  for (std::size_t i = 0; i < rp; ++i) {
    for (std::size_t a = 0; a < sl; ++a)
      if (g.has_edge(u_left[a], pairing.pairs[i].second))
        cert.x_left.set(a, i, true);
    for (std::size_t b = 0; b < sr; ++b)
      if (g.has_edge(pairing.pairs[i].first, u_right[b]))
        cert.x_right.set(b, i, true);
  }

  // Simulate, reading each step's cross indicators just before its pivot
  // (after the swap those edges sit inside one side and vanish).
  OrderedBipartiteGraph cur = g;
  for (std::size_t i = 0; i < rp; ++i) {
    const auto [w, wp] = pairing.pairs[i];
    F2Vector zl(sl), zr(sr);
    for (std::size_t a = 0; a < sl; ++a)
      if (cur.has_edge(u_left[a], wp)) zl.set(a, true);
    for (std::size_t b = 0; b < sr; ++b)
      if (cur.has_edge(w, u_right[b])) zr.set(b, true);
    cert.z_left.push_back(std::move(zl));
    cert.z_right.push_back(std::move(zr));
    cur = bipartite_pivot(cur, w, wp);
  }

  cert.delta = F2Matrix(sl, sr);
  for (std::size_t a = 0; a < sl; ++a)
    for (std::size_t b = 0; b < sr; ++b) {
      const bool before = g.has_edge(u_left[a], u_right[b]);
      const bool after = cur.has_edge(u_left[a], u_right[b]);
      if (before != after) cert.delta.set(a, b, true);
    }

  F2Matrix zsum(sl, sr);
  for (std::size_t i = 0; i < rp; ++i)
    for (std::size_t a = 0; a < sl; ++a)
      if (cert.z_left[i].get(a))
        for (std::size_t b = 0; b < sr; ++b)
          if (cert.z_right[i].get(b)) zsum.flip(a, b);
  cert.delta_matches_zsum = (zsum == cert.delta);

  F2Matrix zl_mat(sl, rp), zr_mat(sr, rp);
  for (std::size_t i = 0; i < rp; ++i) {
    zl_mat.set_column(i, cert.z_left[i]);
    zr_mat.set_column(i, cert.z_right[i]);
  }
  const auto q_left = solve_unit_upper_triangular(cert.x_left, zl_mat);
  const auto q_right = solve_unit_upper_triangular(cert.x_right, zr_mat);
  cert.q_left_solved = q_left.has_value();
  cert.q_right_solved = q_right.has_value();
  if (q_left && q_right) {
    cert.m = multiply(*q_left, transpose(*q_right));
    const F2Matrix via_m =
        multiply(multiply(cert.x_left, *cert.m), transpose(cert.x_right));
    cert.delta_matches_m = (via_m == cert.delta);
  }
  return cert;
}

double rank_tail_bound(std::size_t r, double q, std::size_t gamma0) {
  if (gamma0 == 0 || gamma0 >= r)
    throw std::invalid_argument("rank_tail_bound: need 0 < gamma0 < r");
  return double(r) * std::pow(1.0 - q, double(r - gamma0)) /
         double(r - gamma0);
}

RankTailResult rank_tail_experiment(std::size_t r, double p,
                                    std::uint64_t trials,
                                    std::uint64_t seed) {
  if (trials == 0)
    throw std::invalid_argument("rank_tail_experiment: trials must be >= 1");
  const std::size_t gamma0 = r / 2;
  const double q = std::min(p, 1.0 - p);
  RankTailResult res;
  res.r = r;
  res.p = p;
  res.trials = trials;
  res.bound = rank_tail_bound(r, q, gamma0);  // throws for degenerate r

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    F2Matrix a(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rng.bernoulli(p)) a.set(i, j, true);
    if (rank(a) <= gamma0) ++res.low_rank_count;
  }
  res.frequency = double(res.low_rank_count) / double(trials);
  res.std_error =
      std::sqrt(res.frequency * (1.0 - res.frequency) / double(trials));
  return res;
}

}  // namespace vmlab
