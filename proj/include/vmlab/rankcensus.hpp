#pragma once

#include <cstdint>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

namespace vmlab {

using BigInt = boost::multiprecision::cpp_int;

/// Distribution of GF(2) adjacency ranks over all labeled graphs on s
/// vertices. Counts sum to 2^C(s,2); odd ranks never occur.
struct RankCensus {
  std::size_t s = 0;
  std::map<std::size_t, BigInt> counts;
};

/// Brute-force census: enumerate all 2^C(s,2) graphs and bucket by rank.
/// Capped at s <= 6.
RankCensus census_exhaustive(std::size_t s);

/// Exact closed-form count of labeled graphs on s vertices with adjacency
/// rank a; zero for odd a. Arbitrary precision, enforced-integral.
BigInt census_formula(std::size_t s, std::size_t a);

/// The 2^(s*a-2) envelope as a double (inf once past the double range).
double census_bound(std::size_t s, std::size_t a);

/// Exact-integer check census_formula(s,a) <= 2^(s*a-2); meaningful for
/// a >= 1 (at a = 0 the envelope dips below the true count of 1).
bool census_bound_holds(std::size_t s, std::size_t a);

}  // namespace vmlab
