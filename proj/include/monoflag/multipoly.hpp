#pragma once

#include "monoflag/exact.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace monoflag {

/// Exponent vector of a monomial, one entry per variable.
using Exponents = std::vector<unsigned>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t variables = 0) : variables_(variables) {}

  static MultiPoly constant(std::size_t variables, const Rational& c);
  static MultiPoly variable(std::size_t variables, std::size_t index);

  std::size_t variables() const { return variables_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  unsigned degree() const;

  /// Coefficient of the given monomial (zero when absent).
  Rational coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  MultiPoly derivative(std::size_t index) const;
  std::vector<Rational> gradient(std::span<const Rational> x) const;

  /// Terms in graded lexicographic order (highest degree first), variables
  /// named x1, x2, ... e.g. "3*x1^3 + 3/2*x1^2 - 3/2*x1 + 3/4".
  std::string str() const;

 private:
  void check_arity(std::size_t n) const;

  std::size_t variables_;
  std::map<Exponents, Rational> terms_;
};

/// Formal gradient and Hessian of a polynomial, evaluated in double precision.
class CompiledPoly {
 public:
  explicit CompiledPoly(const MultiPoly& p);

  std::size_t variables() const { return n_; }
  double value(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> out) const;
  /// Row-major n x n.
  void hessian(std::span<const double> x, std::span<double> out) const;

 private:
  struct Term {
    Exponents exponents;
    double coefficient;
  };
  static double eval_terms(const std::vector<Term>& terms, std::span<const double> x);
  static std::vector<Term> lower(const MultiPoly& p);

  std::size_t n_;
  std::vector<Term> value_;
  std::vector<std::vector<Term>> gradient_;
  std::vector<std::vector<Term>> hessian_;
};

}  // namespace monoflag
