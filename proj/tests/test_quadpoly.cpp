#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "vmlab/quadpoly.hpp"
#include "vmlab/rng.hpp"

using namespace vmlab;

namespace {

QuadPoly random_poly(std::size_t m, Rng& rng) {
  QuadPoly f(m);
  f.set_constant(rng.bernoulli(0.5));
  for (std::size_t i = 0; i < m; ++i) {
    f.set_linear(i, rng.bernoulli(0.5));
    for (std::size_t j = i + 1; j < m; ++j)
      if (rng.bernoulli(0.5)) f.flip_pair(i, j);
  }
  return f;
}

// Term-by-term evaluation straight off the coefficient storage.
bool evaluate_naive(const QuadPoly& f, const F2Vector& x) {
  bool acc = f.constant_term();
  for (std::size_t i = 0; i < f.variable_count(); ++i) {
    if (f.linear().get(i) && x.get(i)) acc = !acc;
    for (std::size_t j = i + 1; j < f.variable_count(); ++j)
      if (f.coef2().get(i, j) && x.get(i) && x.get(j)) acc = !acc;
  }
  return acc;
}

// Plain enumeration of the expectation, no Gray code, no compensation.
double expectation_naive(const QuadPoly& f, double p) {
  const std::size_t m = f.variable_count();
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    F2Vector x(m);
    double w = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const bool bit = (mask >> i) & 1;
      x.set(i, bit);
      w *= bit ? p : 1.0 - p;
    }
    sum += f.evaluate(x) ? -w : w;
  }
  return sum;
}

QuadPoly pair_poly(std::size_t m, std::size_t i, std::size_t j) {
  QuadPoly f(m);
  f.flip_pair(i, j);
  return f;
}

}  // namespace

TEST_SUITE("quadpoly") {

TEST_CASE("evaluation") {
  QuadPoly zero(4);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    F2Vector x(4);
    for (std::size_t i = 0; i < 4; ++i) x.set(i, (mask >> i) & 1);
    CHECK(zero.evaluate(x) == false);
  }
  const QuadPoly f = pair_poly(2, 0, 1);
  CHECK(f.evaluate(F2Vector::from_bits({1, 1})) == true);
  CHECK(f.evaluate(F2Vector::from_bits({1, 0})) == false);

  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 1 + rng.below(9);
    const QuadPoly g = random_poly(m, rng);
    for (int k = 0; k < 30; ++k) {
      F2Vector x(m);
      for (std::size_t i = 0; i < m; ++i) x.set(i, rng.bernoulli(0.5));
      CHECK(g.evaluate(x) == evaluate_naive(g, x));
    }
  }
}

TEST_CASE("exact sign expectation") {
  QuadPoly zero(5);
  CHECK(sign_expectation_exact(zero, 0.3) == doctest::Approx(1.0).epsilon(1e-13));

  for (double p : {0.0, 0.1, 0.35, 0.5, 0.8, 1.0}) {
    CHECK(sign_expectation_exact(pair_poly(2, 0, 1), p) ==
          doctest::Approx(1.0 - 2.0 * p * p).epsilon(1e-14));
  }

  // Three disjoint pairs at p = 1/2 multiply out to 1/8.
  QuadPoly triple(6);
  triple.flip_pair(0, 1);
  triple.flip_pair(2, 3);
  triple.flip_pair(4, 5);
  CHECK(sign_expectation_exact(triple, 0.5) ==
        doctest::Approx(0.125).epsilon(1e-14));

  Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 1 + rng.below(8);
    const QuadPoly f = random_poly(m, rng);
    const double p = rng.unit();
    CHECK(sign_expectation_exact(f, p) ==
          doctest::Approx(expectation_naive(f, p)).epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)sign_expectation_exact(QuadPoly(25), 0.5),
                  std::invalid_argument);
}

TEST_CASE("monte carlo estimate") {
  QuadPoly zero(6);
  const McEstimate exact = sign_expectation_mc(zero, 0.4, 1000, 7);
  CHECK(exact.mean == 1.0);
  CHECK(exact.std_error == 0.0);

  const QuadPoly f = pair_poly(2, 0, 1);
  const McEstimate est = sign_expectation_mc(f, 0.5, 1'000'000, 99);
  CHECK(std::abs(est.mean - 0.5) <= 3e-3);

  const McEstimate again = sign_expectation_mc(f, 0.5, 1'000'000, 99);
  CHECK(est.mean == again.mean);
  CHECK(est.std_error == again.std_error);
}

TEST_CASE("rank envelope values") {
  CHECK(rank_sign_bound_from_rank(0, 0.3) == 1.0);
  CHECK(rank_sign_bound_from_rank(6, 0.5) == doctest::Approx(0.5));
  CHECK(rank_sign_bound_from_rank(4, 0.77) == 1.0);
}

TEST_CASE("envelope holds exhaustively for three variables") {
  // Every multilinear polynomial of degree <= 2 on m = 3.
  for (std::uint64_t idx = 0; idx < (1u << 7); ++idx) {
    QuadPoly f(3);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j, ++bit)
        if ((idx >> bit) & 1) f.flip_pair(i, j);
    for (std::size_t i = 0; i < 3; ++i, ++bit)
      if ((idx >> bit) & 1) f.set_linear(i, true);
    f.set_constant((idx >> bit) & 1);
    for (int pi = 1; pi <= 19; ++pi) {
      const double p = 0.05 * pi;
      CHECK(std::abs(sign_expectation_exact(f, p)) <=
            rank_sign_bound(f, p) + 1e-12);
    }
  }
}

TEST_CASE("disjoint-pair family decays as 2^-t") {
  for (std::size_t t = 1; t <= 10; ++t) {
    QuadPoly f(2 * t);
    for (std::size_t i = 0; i < t; ++i) f.flip_pair(2 * i, 2 * i + 1);
    const double exact = sign_expectation_exact(f, 0.5);
    CHECK(exact == doctest::Approx(std::exp2(-double(t))).epsilon(1e-12));
    const double bound = rank_sign_bound(f, 0.5);
    CHECK(bound == doctest::Approx(std::exp2(-double((2 * t) / 6))));
    CHECK(exact < bound);  // strictly inside the envelope
  }
}

TEST_CASE("changing the linear part never touches the pair coefficients") {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    QuadPoly f = random_poly(6, rng);
    const F2Matrix before = f.coef2();
    F2Vector newlin(6);
    for (std::size_t i = 0; i < 6; ++i) newlin.set(i, rng.bernoulli(0.5));
    f.set_linear(newlin);
    f.set_constant(!f.constant_term());
    CHECK(f.coef2() == before);
  }
}

TEST_CASE("multilinearized products") {
  SUBCASE("x1 * x1 collapses to x1") {
    AffineForm x1{F2Vector::from_bits({1, 0}), false};
    const QuadPoly g = multilinearize_product(x1, x1);
    CHECK(g.coef2().is_zero());
    CHECK(g.linear() == F2Vector::from_bits({1, 0}));
    CHECK(g.constant_term() == false);
  }
  SUBCASE("x1 * x2 is the pair monomial with rank-2 coefficients") {
    AffineForm x1{F2Vector::from_bits({1, 0}), false};
    AffineForm x2{F2Vector::from_bits({0, 1}), false};
    const QuadPoly g = multilinearize_product(x1, x2);
    CHECK(rank(g.coef2()) == 2);
    CHECK(g.evaluate(F2Vector::from_bits({1, 1})) == true);
    CHECK(g.evaluate(F2Vector::from_bits({0, 1})) == false);
  }
  SUBCASE("pointwise product everywhere, rank at most 2, hollow diagonal") {
    Rng rng(44);
    for (int t = 0; t < 25; ++t) {
      const std::size_t m = 1 + rng.below(10);
      AffineForm f1{F2Vector(m), rng.bernoulli(0.5)};
      AffineForm f2{F2Vector(m), rng.bernoulli(0.5)};
      for (std::size_t i = 0; i < m; ++i) {
        f1.linear.set(i, rng.bernoulli(0.5));
        f2.linear.set(i, rng.bernoulli(0.5));
      }
      const QuadPoly g = multilinearize_product(f1, f2);
      CHECK(rank(g.coef2()) <= 2);
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        F2Vector x(m);
        for (std::size_t i = 0; i < m; ++i) x.set(i, (mask >> i) & 1);
        CHECK(g.evaluate(x) == (f1.evaluate(x) && f2.evaluate(x)));
      }
    }
  }
}

}  // TEST_SUITE
