#include "vmlab/gfourier.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "vmlab/rng.hpp"

namespace vmlab {

namespace {

std::size_t dist_size(std::size_t s) {
  const std::size_t bits = pair_count(s);
  if (bits > 24)
    throw std::invalid_argument("GraphDist: C(s,2) exceeds the 2^24 cap");
  return std::size_t(1) << bits;
}

std::vector<double> bernoulli_weights(std::size_t m, double p) {
  std::vector<double> w(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    w[k] = std::pow(p, double(k)) * std::pow(1.0 - p, double(m - k));
  return w;
}

}  // namespace

GraphDist GraphDist::uniform(std::size_t s) {
  GraphDist d;
  d.u_size = s;
  const std::size_t n = dist_size(s);
  d.probs.assign(n, 1.0 / double(n));
  return d;
}

GraphDist GraphDist::point_mass(std::size_t s, std::uint64_t edge_mask) {
  GraphDist d;
  d.u_size = s;
  d.probs.assign(dist_size(s), 0.0);
  d.probs.at(edge_mask) = 1.0;
  return d;
}

void GraphDist::validate() const {
  if (probs.size() != dist_size(u_size))
    throw std::invalid_argument("GraphDist: wrong number of outcomes");
  double total = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("GraphDist: negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("GraphDist: mass does not sum to one");
}

namespace {

// In-place Walsh-Hadamard butterfly; transform of a transform is 2^n id.
void wht(std::vector<double>& a) {
  for (std::size_t half = 1; half < a.size(); half <<= 1)
    for (std::size_t base = 0; base < a.size(); base += half << 1)
      for (std::size_t k = base; k < base + half; ++k) {
        const double u = a[k], v = a[k + half];
        a[k] = u + v;
        a[k + half] = u - v;
      }
}

}  // namespace

FourierSpectrum fourier_transform(const GraphDist& d) {
  FourierSpectrum spec;
  spec.u_size = d.u_size;
  spec.coeffs = d.probs;
  wht(spec.coeffs);
  return spec;
}

GraphDist inverse_fourier(const FourierSpectrum& spec) {
  GraphDist d;
  d.u_size = spec.u_size;
  d.probs = spec.coeffs;
  wht(d.probs);
  const double scale = 1.0 / double(d.probs.size());
  for (double& p : d.probs) p *= scale;
  return d;
}

double tv_to_uniform(const GraphDist& d) {
  const double u = 1.0 / double(d.probs.size());
  double acc = 0.0;
  for (double p : d.probs) acc += std::abs(p - u);
  return acc / 2.0;
}

double fourier_tv_bound(const GraphDist& d) {
  const FourierSpectrum spec = fourier_transform(d);
  double acc = 0.0;
  for (std::size_t f = 1; f < spec.coeffs.size(); ++f)
    acc += std::abs(spec.coeffs[f]);
  return acc / 2.0;
}

GraphDist delta_distribution_exact(std::size_t u_size, const Graph& w_graph,
                                   double p) {
  const std::size_t s = u_size;
  const std::size_t r = w_graph.vertex_count();
  const std::size_t nout = dist_size(s);
  GraphDist d;
  d.u_size = s;
  d.probs.assign(nout, 0.0);
  if (s < 2 || r == 0) {
    d.probs[0] = 1.0;
    return d;
  }
  if (s * r > 24)
    throw std::invalid_argument(
        "delta_distribution_exact: s*r exceeds the 2^24 enumeration cap; "
        "use delta_distribution_mc");

  const F2Matrix m = mixing_matrix(w_graph);
  std::vector<std::uint32_t> mrow(r, 0);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < r; ++l)
      if (m.get(j, l)) mrow[j] |= std::uint32_t(1) << l;

  std::vector<std::uint32_t> edge_bit(s * s, 0);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      if (a != b)
        edge_bit[a * s + b] = std::uint32_t(1)
                              << edge_bit_index(std::min(a, b), std::max(a, b), s);

  const std::size_t nvars = s * r;
  const std::vector<double> w = bernoulli_weights(nvars, p);
  std::vector<double> comp(nout, 0.0);
  auto kahan_add = [&](std::size_t idx, double term) {
    const double y = term - comp[idx];
    const double t = d.probs[idx] + y;
    comp[idx] = (t - d.probs[idx]) - y;
    d.probs[idx] = t;
  };

  // Gray-code walk over the cross-edge matrix; flipping entry (i,j) moves
  // only row i of X M X^T, so at most s-1 toggle bits change per step.
  std::vector<std::uint32_t> xrow(s, 0);
  std::uint32_t dmask = 0;
  int popx = 0;
  kahan_add(0, w[0]);
  const std::uint64_t total = std::uint64_t(1) << nvars;
  for (std::uint64_t t = 1; t < total; ++t) {
    const unsigned v = std::countr_zero(t);
    const std::size_t i = v / r, j = v % r;
    xrow[i] ^= std::uint32_t(1) << j;
    popx += (xrow[i] >> j) & 1 ? 1 : -1;
    for (std::size_t b = 0; b < s; ++b) {
      if (b == i) continue;
      if (std::popcount(mrow[j] & xrow[b]) & 1) dmask ^= edge_bit[i * s + b];
    }
    kahan_add(dmask, w[popx]);
  }
  return d;
}

GraphDist delta_distribution_exact(const LCInstance& inst,
                                   const Graph& conditioned_gw, double p) {
  inst.validate();
  return delta_distribution_exact(inst.u_set.size(),
                                  induced(conditioned_gw, inst.w_order), p);
}

GraphDist delta_distribution_mc(std::size_t u_size, std::size_t w_size,
                                double p, std::uint64_t samples,
                                std::uint64_t seed) {
  const std::size_t s = u_size;
  const std::size_t r = w_size;
  const std::size_t bits = pair_count(s);
  if (bits > 20)
    throw std::invalid_argument("delta_distribution_mc: C(s,2) exceeds 20");
  if (samples == 0)
    throw std::invalid_argument("delta_distribution_mc: samples must be >= 1");
  std::vector<std::uint64_t> counts(std::size_t(1) << bits, 0);

  Rng rng(seed);
  F2Matrix h(r, r);
  F2Matrix lt(r, r);  // transposed accumulation entries: lt(i,j)=1, j<i
  std::vector<std::uint32_t> xcol(r, 0), zs(r, 0);
  for (std::uint64_t t = 0; t < samples; ++t) {
    // Internal graph first (lexicographic pairs), then cross edges
    // (row-major), nothing else.
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        if (a < b) {
          const bool e = rng.bernoulli(p);
          h.set(a, b, e);
          h.set(b, a, e);
        }
    for (std::size_t j = 0; j < r; ++j) xcol[j] = 0;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rng.bernoulli(p)) xcol[j] |= std::uint32_t(1) << i;

    for (std::size_t i = 0; i < r; ++i) {
      auto row = lt.row_words(i);
      for (auto& wd : row) wd = 0;
    }
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = j + 1; i < r; ++i)
        if (h.get(j, i)) lt.set(i, j, true);
      local_complement_inplace(h, j);
    }

    std::uint32_t dmask = 0;
    for (std::size_t i = 0; i < r; ++i) {
      std::uint32_t z = xcol[i];
      auto deps = lt.row_words(i);
      for (std::size_t wd = 0; wd < deps.size(); ++wd) {
        std::uint64_t bitsleft = deps[wd];
        while (bitsleft) {
          const unsigned j = std::countr_zero(bitsleft);
          bitsleft &= bitsleft - 1;
          z ^= zs[wd * 64 + j];
        }
      }
      zs[i] = z;
      // The i-th complementation toggles every pair inside z's support.
      std::uint32_t za = z;
      while (za) {
        const unsigned a = std::countr_zero(za);
        za &= za - 1;
        std::uint32_t zb = za;
        while (zb) {
          const unsigned b = std::countr_zero(zb);
          zb &= zb - 1;
          dmask ^= std::uint32_t(1) << edge_bit_index(a, b, s);
        }
      }
    }
    ++counts[dmask];
  }

  GraphDist d;
  d.u_size = s;
  d.probs.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k)
    d.probs[k] = double(counts[k]) / double(samples);
  return d;
}

double delta_fourier_bound(std::size_t f_rank, std::size_t r, double q) {
  const double base = 1.0 - 2.0 * q * q;
  return std::pow(base, double(r) * double(f_rank) / 6.0 - 1.0);
}

double delta_fourier_bound_floor(std::size_t f_rank, std::size_t r, double q) {
  const double base = 1.0 - 2.0 * q * q;
  return std::pow(base, double((r * f_rank) / 6));
}

QuadPoly delta_indicator_poly(std::size_t u_size, const F2Matrix& mixing,
                              std::uint64_t f_mask) {
  const std::size_t s = u_size;
  const std::size_t r = mixing.rows();
  QuadPoly f(s * r);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = i + 1; k < s; ++k) {
      if (!((f_mask >> edge_bit_index(i, k, s)) & 1)) continue;
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t l = 0; l < r; ++l)
          if (mixing.get(j, l)) f.flip_pair(i * r + j, k * r + l);
    }
  return f;
}

TensorCheck tensor_structure_check(std::size_t u_size, const Graph& w_graph,
                                   double p, std::uint64_t f_mask) {
  const std::size_t s = u_size;
  const std::size_t r = w_graph.vertex_count();
  if (s * r > 24)
    throw std::invalid_argument("tensor_structure_check: s*r exceeds 24");

  const F2Matrix m = mixing_matrix(w_graph);
  const QuadPoly f = delta_indicator_poly(s, m, f_mask);

  TensorCheck check;
  const F2Matrix a_f = graph_from_edge_mask(s, f_mask).adjacency();
  check.coef2_matches = (f.coef2() == tensor(a_f, m));

  check.expectation = sign_expectation_exact(f, p);
  const GraphDist dist = delta_distribution_exact(s, w_graph, p);
  check.mu_hat = fourier_transform(dist).coeffs.at(f_mask);
  check.expectation_matches =
      std::abs(check.expectation - check.mu_hat) <= 1e-12;
  return check;
}

std::optional<double> uniformity_tv_bound(std::size_t s, std::size_t r,
                                          double q) {
  const double exponent = q * q * double(r) / 6.0;
  if (double(s) > exponent) return std::nullopt;
  return std::exp2(-exponent);
}

GraphDist coupled_final_distribution(const GraphDist& d_delta, double p) {
  d_delta.validate();
  FourierSpectrum spec = fourier_transform(d_delta);
  // Convolution in the Walsh domain; a Bernoulli(1/2) edge factor zeroes
  // every nonempty coefficient, which is the p = 1/2 coupling fact.
  const double bias = 1.0 - 2.0 * p;
  for (std::size_t f = 0; f < spec.coeffs.size(); ++f)
    spec.coeffs[f] *= std::pow(bias, double(std::popcount(std::uint64_t(f))));
  return inverse_fourier(spec);
}

double edge_marginal_closed_form(double p, std::size_t r) {
  return (1.0 - (1.0 - 2.0 * p) * std::pow(1.0 - 2.0 * p * p, double(r))) / 2.0;
}

}  // namespace vmlab
