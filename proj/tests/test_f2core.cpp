#include <doctest.h>

#include <stdexcept>

#include <set>

#include "vmlab/f2core.hpp"
#include "vmlab/rng.hpp"

using namespace vmlab;

namespace {

F2Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng,
                       double density = 0.5) {
  F2Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rng.bernoulli(density)) m.set(i, j, true);
  return m;
}

// Independent rank oracle: the span of the rows has 2^rank elements.
std::size_t rank_by_span(const F2Matrix& m) {
  std::set<std::vector<std::uint64_t>> span;
  std::vector<std::vector<std::uint64_t>> elems;
  F2Vector zero(m.cols());
  span.insert({zero.words().begin(), zero.words().end()});
  elems.push_back({zero.words().begin(), zero.words().end()});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const F2Vector row = m.row(i);
    std::vector<std::vector<std::uint64_t>> next = elems;
    for (const auto& e : elems) {
      F2Vector v(m.cols());
      for (std::size_t w = 0; w < e.size(); ++w) v.words()[w] = e[w];
      v.xor_with(row);
      std::vector<std::uint64_t> key(v.words().begin(), v.words().end());
      if (span.insert(key).second) next.push_back(key);
    }
    elems = std::move(next);
  }
  std::size_t r = 0;
  while ((std::size_t(1) << r) < span.size()) ++r;
  return r;
}

// Entrywise schoolbook product, no bit tricks.
F2Matrix multiply_naive(const F2Matrix& a, const F2Matrix& b) {
  F2Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool acc = false;
      for (std::size_t k = 0; k < a.cols(); ++k)
        acc ^= a.get(i, k) && b.get(k, j);
      out.set(i, j, acc);
    }
  return out;
}

}  // namespace

TEST_SUITE("f2core") {

TEST_CASE("rank basics") {
  CHECK(rank(F2Matrix(3, 3)) == 0);
  CHECK(rank(F2Matrix::identity(4)) == 4);
  const F2Matrix triangle = F2Matrix::parse({"011", "101", "110"});
  CHECK(rank(triangle) == 2);
  CHECK(rank_by_span(triangle) == 2);
}

TEST_CASE("rank agrees with the span oracle and transposition") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
    const F2Matrix m = random_matrix(rows, cols, rng);
    const std::size_t r = rank(m);
    CHECK(r == rank_by_span(m));
    CHECK(r == rank(transpose(m)));
  }
}

TEST_CASE("invert basics") {
  CHECK(invert(F2Matrix::identity(3)).value().is_identity());
  const F2Matrix u = F2Matrix::parse({"11", "01"});
  CHECK(invert(u).value() == u);  // self-inverse
  CHECK(!invert(F2Matrix(2, 2)).has_value());
  CHECK_THROWS_AS((void)invert(F2Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("invert succeeds exactly at full rank and yields an inverse") {
  Rng rng(12);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = 1 + rng.below(8);
    const F2Matrix m = random_matrix(n, n, rng);
    const auto inv = invert(m);
    CHECK(inv.has_value() == (rank(m) == n));
    if (inv) {
      CHECK(multiply(*inv, m).is_identity());
      CHECK(multiply(m, *inv).is_identity());
    }
  }
}

TEST_CASE("multiply basics") {
  Rng rng(13);
  const F2Matrix b = random_matrix(4, 5, rng);
  CHECK(multiply(F2Matrix::identity(4), b) == b);
  CHECK(multiply(F2Matrix::parse({"11"}), F2Matrix::parse({"1", "1"})) ==
        F2Matrix::parse({"0"}));
  CHECK_THROWS_AS(multiply(F2Matrix(2, 3), F2Matrix(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("multiply matches the naive product and associates") {
  Rng rng(14);
  for (int t = 0; t < 40; ++t) {
    const F2Matrix a = random_matrix(5, 5, rng);
    const F2Matrix b = random_matrix(5, 5, rng);
    const F2Matrix c = random_matrix(5, 5, rng);
    CHECK(multiply(a, b) == multiply_naive(a, b));
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("tensor basics") {
  Rng rng(15);
  const F2Matrix a = random_matrix(3, 4, rng);
  CHECK(tensor(a, F2Matrix::parse({"1"})) == a);
  CHECK(tensor(F2Matrix::identity(2), F2Matrix::identity(2)) ==
        F2Matrix::identity(4));
}

TEST_CASE("tensor rank is multiplicative") {
  // Exhaustive over all 2x2 pairs, then random 3x3.
  for (std::uint32_t am = 0; am < 16; ++am)
    for (std::uint32_t bm = 0; bm < 16; ++bm) {
      F2Matrix a(2, 2), b(2, 2);
      for (int i = 0; i < 4; ++i) {
        if ((am >> i) & 1) a.set(i / 2, i % 2, true);
        if ((bm >> i) & 1) b.set(i / 2, i % 2, true);
      }
      CHECK(rank(tensor(a, b)) == rank(a) * rank(b));
    }
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    const F2Matrix a = random_matrix(3, 3, rng);
    const F2Matrix b = random_matrix(3, 3, rng);
    CHECK(rank(tensor(a, b)) == rank(a) * rank(b));
  }
}

TEST_CASE("off_diag") {
  CHECK(off_diag(F2Matrix::identity(3)).is_zero());
  const F2Matrix hollow = F2Matrix::parse({"01", "10"});
  CHECK(off_diag(hollow) == hollow);
  CHECK(off_diag(F2Matrix::parse({"11", "11"})) == hollow);
  CHECK_THROWS_AS(off_diag(F2Matrix(2, 3)), std::invalid_argument);

  // Adding any diagonal leaves the result unchanged.
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const F2Matrix m = random_matrix(5, 5, rng);
    F2Matrix md = m;
    for (std::size_t i = 0; i < 5; ++i)
      if (rng.bernoulli(0.5)) md.flip(i, i);
    CHECK(off_diag(md) == off_diag(m));
  }
}

TEST_CASE("solve_unit_upper_triangular") {
  Rng rng(18);
  SUBCASE("z equal to x gives the identity") {
    const F2Matrix x = random_matrix(5, 4, rng);
    const auto q = solve_unit_upper_triangular(x, x);
    REQUIRE(q.has_value());
    CHECK(q->is_identity());
  }
  SUBCASE("construct-then-solve recovers the matrix at full column rank") {
    for (int t = 0; t < 40; ++t) {
      // Build x with full column rank by stacking I on random rows.
      const std::size_t r = 1 + rng.below(5);
      F2Matrix x(r + 3, r);
      for (std::size_t i = 0; i < r; ++i) x.set(i, i, true);
      for (std::size_t i = r; i < r + 3; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (rng.bernoulli(0.5)) x.set(i, j, true);
      F2Matrix q0 = F2Matrix::identity(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
          if (rng.bernoulli(0.5)) q0.set(i, j, true);
      const auto q = solve_unit_upper_triangular(x, multiply(x, q0));
      REQUIRE(q.has_value());
      CHECK(*q == q0);
    }
  }
  SUBCASE("no solution when x cannot reach z") {
    F2Matrix zero(3, 2);
    F2Matrix z(3, 2);
    z.set(0, 1, true);
    CHECK(!solve_unit_upper_triangular(zero, z).has_value());
  }
  SUBCASE("underdetermined systems still satisfy x*Q = z") {
    for (int t = 0; t < 60; ++t) {
      const std::size_t rows = 1 + rng.below(5);
      const std::size_t cols = 1 + rng.below(5);
      const F2Matrix x = random_matrix(rows, cols, rng);
      F2Matrix q0 = F2Matrix::identity(cols);
      for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i + 1; j < cols; ++j)
          if (rng.bernoulli(0.5)) q0.set(i, j, true);
      const F2Matrix z = multiply(x, q0);
      const auto q = solve_unit_upper_triangular(x, z);
      REQUIRE(q.has_value());
      CHECK(q->is_unit_upper_triangular());
      CHECK(multiply(x, *q) == z);
    }
  }
  SUBCASE("shape mismatch throws") {
    CHECK_THROWS_AS(solve_unit_upper_triangular(F2Matrix(2, 2), F2Matrix(3, 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("vector padding stays clean") {
  F2Vector v(70);
  v.set(69, true);
  v.flip(3);
  CHECK(v.popcount() == 2);
  F2Vector w(70);
  w.set(69, true);
  v.xor_with(w);
  CHECK(v.popcount() == 1);
  CHECK(v.get(3));
  CHECK(v.to_string().size() == 70);
}

}  // TEST_SUITE
