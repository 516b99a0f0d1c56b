#pragma once

#include <cstdint>
#include <optional>

#include "vmlab/f2core.hpp"

namespace vmlab {

/// Affine GF(2) form c + sum a_i x_i.
struct AffineForm {
  F2Vector linear;
  bool constant = false;

  bool evaluate(const F2Vector& x) const {
    return constant ^ linear.dot(x);
  }
};

/// Multilinear polynomial of degree <= 2 over GF(2) in m variables.
/// The pair coefficients are stored symmetrically with a zero diagonal;
/// evaluation counts each unordered pair once.
class QuadPoly {
 public:
  explicit QuadPoly(std::size_t m)
      : m_(m), constant_(false), linear_(m), coef2_(m, m) {}

  std::size_t variable_count() const { return m_; }
  bool constant_term() const { return constant_; }
  const F2Vector& linear() const { return linear_; }
  const F2Matrix& coef2() const { return coef2_; }

  void set_constant(bool c) { constant_ = c; }
  void set_linear(std::size_t i, bool b) { linear_.set(i, b); }
  void set_linear(F2Vector v);
  /// Toggle the monomial x_i x_j (i != j); both symmetric entries move.
  void flip_pair(std::size_t i, std::size_t j);

  bool evaluate(const F2Vector& x) const;

 private:
  std::size_t m_;
  bool constant_;
  F2Vector linear_;
  F2Matrix coef2_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Exact E[(-1)^f(X)] for X with i.i.d. Bernoulli(p) coordinates, computed
/// by a Gray-code sweep of all 2^m assignments with compensated summation.
/// Throws std::invalid_argument above the exhaustive cap (default 24); use
/// the Monte-Carlo variant there.
double sign_expectation_exact(const QuadPoly& f, double p,
                              std::size_t cap = 24);

/// Unbiased Monte-Carlo estimate of the same quantity with its standard
/// error; identical seeds give identical estimates.
McEstimate sign_expectation_mc(const QuadPoly& f, double p,
                               std::uint64_t samples, std::uint64_t seed);

/// (1-2q^2)^floor(rank(Coef2(f))/6) with q = min(p, 1-p): the rank-driven
/// envelope that |sign_expectation_exact| never exceeds.
double rank_sign_bound(const QuadPoly& f, double p);
double rank_sign_bound_from_rank(std::size_t coef2_rank, double p);

/// Multilinear g with g(x) = f1(x) * f2(x) pointwise on {0,1}^m (squares
/// collapse to first powers). Coef2(g) is the symmetrized outer product of
/// the two linear parts, hence rank <= 2.
QuadPoly multilinearize_product(const AffineForm& f1, const AffineForm& f2);

}  // namespace vmlab
