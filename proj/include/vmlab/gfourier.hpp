#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vmlab/graph.hpp"
#include "vmlab/lcdelta.hpp"
#include "vmlab/quadpoly.hpp"

namespace vmlab {

/// Probability distribution over all graphs on a fixed labeled s-vertex
/// set, indexed by edge bitmask (edge_bit_index order). Needs C(s,2) <= 24.
struct GraphDist {
  std::size_t u_size = 0;
  std::vector<double> probs;

  static GraphDist uniform(std::size_t s);
  static GraphDist point_mass(std::size_t s, std::uint64_t edge_mask);
  /// Throws unless probs has length 2^C(s,2), entries >= -1e-12 and the
  /// total is within 1e-12 of one.
  void validate() const;
};

/// Walsh coefficients of a distribution: coeff(F) = sum_H p(H) (-1)^|H&F|.
struct FourierSpectrum {
  std::size_t u_size = 0;
  std::vector<double> coeffs;
};

FourierSpectrum fourier_transform(const GraphDist& d);
GraphDist inverse_fourier(const FourierSpectrum& spec);

/// Half L1 distance to the uniform distribution.
double tv_to_uniform(const GraphDist& d);

/// (1/2) sum over nonempty F of |coeff(F)|; always >= tv_to_uniform.
double fourier_tv_bound(const GraphDist& d);

/// Exact conditional law of the induced-subgraph toggle pattern after the
/// complementation sweep, given the internal graph on W. w_graph's stored
/// vertex order is the complementation order; the cross edges are i.i.d.
/// Bernoulli(p). Enumerates all 2^(s*r) cross-edge patterns (cap s*r <= 24).
GraphDist delta_distribution_exact(std::size_t u_size, const Graph& w_graph,
                                   double p);
GraphDist delta_distribution_exact(const LCInstance& inst,
                                   const Graph& conditioned_gw, double p);

/// Empirical law of the toggle pattern over the full randomness (internal
/// graph and cross edges both sampled). Deterministic per seed.
GraphDist delta_distribution_mc(std::size_t u_size, std::size_t w_size,
                                double p, std::uint64_t samples,
                                std::uint64_t seed);

/// Rank-decay envelope (1-2q^2)^(r*rank(F)/6 - 1) for the Walsh
/// coefficients of the toggle law.
double delta_fourier_bound(std::size_t f_rank, std::size_t r, double q);
/// Tighter floor-exponent form (1-2q^2)^floor(r*rank(F)/6).
double delta_fourier_bound_floor(std::size_t f_rank, std::size_t r, double q);

/// The quadratic form indicator polynomial over the s*r cross-edge
/// variables: f(X) = sum over edges {i,k} of F of x_i M x_k^T, variables
/// flattened row-major. Its pair-coefficient matrix is adj(F) (x) M.
QuadPoly delta_indicator_poly(std::size_t u_size, const F2Matrix& mixing,
                              std::uint64_t f_mask);

struct TensorCheck {
  bool coef2_matches = false;
  double expectation = 0.0;  // sign expectation of the indicator polynomial
  double mu_hat = 0.0;       // Walsh coefficient from the exact law
  bool expectation_matches = false;
  bool passed() const { return coef2_matches && expectation_matches; }
};

/// Verifies, for one F, that the indicator polynomial's pair coefficients
/// equal the tensor product and that its sign expectation reproduces the
/// Walsh coefficient of the exact law (tolerance 1e-12).
TensorCheck tensor_structure_check(std::size_t u_size, const Graph& w_graph,
                                   double p, std::uint64_t f_mask);

/// TV-to-uniform guarantee 2^(-q^2 r / 6) for the post-sweep induced law,
/// claimed only under s <= q^2 r / 6; nullopt marks a hypothesis violation.
std::optional<double> uniformity_tv_bound(std::size_t s, std::size_t r,
                                          double q);

/// Law of (original induced graph) xor (toggle pattern): convolution of
/// d_delta with the product-Bernoulli(p) edge law, done in the Walsh domain
/// where the Bernoulli factor is (1-2p)^|F|.
GraphDist coupled_final_distribution(const GraphDist& d_delta, double p);

/// Closed-form marginal edge probability after r complementations across an
/// edgeless internal set: (1 - (1-2p)(1-2p^2)^r) / 2.
double edge_marginal_closed_form(double p, std::size_t r);

}  // namespace vmlab
