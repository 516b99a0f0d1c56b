#include "vmlab/rankcensus.hpp"

#include <cmath>
#include <stdexcept>

#include "vmlab/f2core.hpp"
#include "vmlab/graph.hpp"

namespace vmlab {

RankCensus census_exhaustive(std::size_t s) {
  if (s > 6)
    throw std::invalid_argument("census_exhaustive: s must be <= 6");
  RankCensus census;
  census.s = s;
  const std::size_t bits = pair_count(s);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
    const Graph g = graph_from_edge_mask(s, mask);
    census.counts[rank(g.adjacency())] += 1;
  }
  return census;
}

BigInt census_formula(std::size_t s, std::size_t a) {
  if (a > s) throw std::invalid_argument("census_formula: need 0 <= a <= s");
  if (a % 2 == 1) return 0;
  const std::size_t b = a / 2;
  BigInt num = 1, den = 1;
  for (std::size_t i = 1; i <= b; ++i) {
    num <<= 2 * i - 2;
    den *= (BigInt(1) << (2 * i)) - 1;
  }
  for (std::size_t i = 0; i + 1 <= 2 * b; ++i) num *= (BigInt(1) << (s - i)) - 1;
  if (num % den != 0)
    throw std::logic_error("census_formula: product is not integral");
  return num / den;
}

double census_bound(std::size_t s, std::size_t a) {
  return std::ldexp(0.25, static_cast<int>(s * a));
}

bool census_bound_holds(std::size_t s, std::size_t a) {
  // 4 * count <= 2^(s*a), all exact.
  return census_formula(s, a) * 4 <= (BigInt(1) << (s * a));
}

}  // namespace vmlab
