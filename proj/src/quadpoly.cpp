#include "vmlab/quadpoly.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vmlab/rng.hpp"

namespace vmlab {

void QuadPoly::set_linear(F2Vector v) {
  if (v.size() != m_)
    throw std::invalid_argument("QuadPoly::set_linear: length mismatch");
  linear_ = std::move(v);
}

void QuadPoly::flip_pair(std::size_t i, std::size_t j) {
  if (i == j)
    throw std::invalid_argument("QuadPoly::flip_pair: diagonal is fixed zero");
  coef2_.flip(i, j);
  coef2_.flip(j, i);
}

bool QuadPoly::evaluate(const F2Vector& x) const {
  if (x.size() != m_)
    throw std::invalid_argument("QuadPoly::evaluate: length mismatch");
  bool acc = constant_ ^ linear_.dot(x);
  // Each unordered pair once: row i against the suffix j > i.
  for (std::size_t i = 0; i < m_; ++i) {
    if (!x.get(i)) continue;
    F2Vector row = coef2_.row(i);
    std::uint64_t parity = 0;
    auto rw = row.words();
    auto xw = x.words();
    for (std::size_t w = (i + 1) >> 6; w < rw.size(); ++w) {
      std::uint64_t mask = ~std::uint64_t(0);
      if (w == ((i + 1) >> 6)) mask <<= ((i + 1) & 63);
      parity ^= rw[w] & xw[w] & mask;
    }
    acc ^= std::popcount(parity) & 1;
  }
  return acc;
}

namespace {

// Row masks packed into single words; only valid for m <= 64.
struct PackedPoly {
  std::size_t m;
  std::uint64_t linear;
  std::vector<std::uint64_t> rows;

  explicit PackedPoly(const QuadPoly& f) : m(f.variable_count()), linear(0) {
    rows.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (f.linear().get(i)) linear |= std::uint64_t(1) << i;
      for (std::size_t j = 0; j < m; ++j)
        if (f.coef2().get(i, j)) rows[i] |= std::uint64_t(1) << j;
    }
  }
};

std::vector<double> bernoulli_weights(std::size_t m, double p) {
  std::vector<double> w(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    w[k] = std::pow(p, double(k)) * std::pow(1.0 - p, double(m - k));
  return w;
}

}  // namespace

double sign_expectation_exact(const QuadPoly& f, double p, std::size_t cap) {
  const std::size_t m = f.variable_count();
  if (m > cap)
    throw std::invalid_argument(
        "sign_expectation_exact: variable count exceeds the exhaustive cap; "
        "use sign_expectation_mc");
  const PackedPoly pf(f);
  const std::vector<double> w = bernoulli_weights(m, p);

  // Gray-code walk: each step flips one coordinate, and the multilinear
  // derivative along coordinate b is linear_b + <row_b, x>.
  std::uint64_t x = 0;
  bool fx = f.constant_term();
  int pop = 0;
  double sum = 0.0, comp = 0.0;
  auto kahan_add = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  kahan_add(fx ? -w[0] : w[0]);
  const std::uint64_t total = std::uint64_t(1) << m;
  for (std::uint64_t t = 1; t < total; ++t) {
    const unsigned b = std::countr_zero(t);
    const bool delta = ((pf.linear >> b) & 1) ^
                       (std::popcount(pf.rows[b] & x) & 1);
    x ^= std::uint64_t(1) << b;
    pop += (x >> b) & 1 ? 1 : -1;
    fx ^= delta;
    kahan_add(fx ? -w[pop] : w[pop]);
  }
  return sum;
}

McEstimate sign_expectation_mc(const QuadPoly& f, double p,
                               std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0)
    throw std::invalid_argument("sign_expectation_mc: samples must be >= 1");
  const std::size_t m = f.variable_count();
  Rng rng(seed);
  std::int64_t signed_sum = 0;
  F2Vector x(m);
  for (std::uint64_t t = 0; t < samples; ++t) {
    for (std::size_t i = 0; i < m; ++i) x.set(i, rng.bernoulli(p));
    signed_sum += f.evaluate(x) ? -1 : 1;
  }
  McEstimate est;
  est.samples = samples;
  est.mean = double(signed_sum) / double(samples);
  if (samples > 1) {
    // Values are +-1, so the sample variance is determined by the mean.
    const double var =
        (1.0 - est.mean * est.mean) * double(samples) / double(samples - 1);
    est.std_error = std::sqrt(std::max(0.0, var) / double(samples));
  }
  return est;
}

double rank_sign_bound_from_rank(std::size_t coef2_rank, double p) {
  const double q = std::min(p, 1.0 - p);
  return std::pow(1.0 - 2.0 * q * q, double(coef2_rank / 6));
}

double rank_sign_bound(const QuadPoly& f, double p) {
  return rank_sign_bound_from_rank(rank(f.coef2()), p);
}

QuadPoly multilinearize_product(const AffineForm& f1, const AffineForm& f2) {
  if (f1.linear.size() != f2.linear.size())
    throw std::invalid_argument(
        "multilinearize_product: forms have different variable counts");
  const std::size_t m = f1.linear.size();
  QuadPoly g(m);
  g.set_constant(f1.constant && f2.constant);
  for (std::size_t i = 0; i < m; ++i) {
    const bool ai = f1.linear.get(i), bi = f2.linear.get(i);
    // x_i^2 collapses to x_i; cross terms with the constants stay linear.
    const bool lin = (ai && bi) ^ (ai && f2.constant) ^ (bi && f1.constant);
    g.set_linear(i, lin);
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool aj = f1.linear.get(j), bj = f2.linear.get(j);
      if ((ai && bj) ^ (aj && bi)) g.flip_pair(i, j);
    }
  }
  return g;
}

}  // namespace vmlab
