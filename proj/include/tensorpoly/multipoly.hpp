#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace tensorpoly {

// Exact coefficients. Subset sums over 2^20 subgraphs can leave the 64-bit
// range, and golden-value comparisons require exactness.
using Coeff = mpz_class;

using VarId = std::string;

// A monomial maps variable names to positive exponents; the empty map is
// the constant monomial 1. Zero exponents are never stored.
class Monomial {
 public:
  Monomial() = default;

  static Monomial var(const VarId& name, int exponent = 1);

  int exponent(const VarId& name) const;
  int degree() const;
  bool is_constant() const { return exps_.empty(); }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

  void set(const VarId& name, int exponent);
  const std::map<VarId, int>& exponents() const { return exps_; }

 private:
  std::map<VarId, int> exps_;
};

// Lex order on exponent vectors, variables taken in ascending name order
// with absent variables read as exponent 0. Used as the canonical term
// order: iterating a term map in reverse yields the rendering order.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial with exact integer coefficients.
// Canonical form: no zero coefficients stored, terms keyed by monomial.
// Structural equality of the term map is polynomial equality.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Coeff, MonomialOrder>;

  MultiPoly() = default;  // zero polynomial
  explicit MultiPoly(long constant);
  explicit MultiPoly(const Coeff& constant);

  static MultiPoly variable(const VarId& name);
  static MultiPoly monomial(const Monomial& m, Coeff c = 1);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  int total_degree() const;

  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly& operator+=(const MultiPoly& other);

  bool operator==(const MultiPoly& other) const { return terms_ == other.terms_; }

  MultiPoly pow(unsigned exponent) const;

  // Adds c * m to this polynomial in place.
  void add_term(const Monomial& m, const Coeff& c);

  // Adds base * m (a monomial shift of a whole polynomial) in place.
  void add_shifted(const MultiPoly& base, const Monomial& m);

  // Simultaneously replaces every assigned variable by its value and
  // re-canonicalizes. Unassigned variables pass through.
  MultiPoly substitute(const std::map<VarId, MultiPoly>& assignments) const;

  // Names of all variables appearing in the polynomial.
  std::vector<VarId> variables() const;

  // Deterministic rendering; equal polynomials render identically and
  // distinct ones differ. Terms appear in descending canonical order,
  // e.g. "x^2 - 2*x + 1".
  std::string canonical_text() const;

 private:
  TermMap terms_;
};

}  // namespace tensorpoly
