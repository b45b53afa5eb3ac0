#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "newton/linalg.hpp"

namespace newton {

/// Exponent vector m in N^n (negative entries allowed only internally).
using Exponent = IntVector;

int total_degree(const Exponent& m);

/// Finitely supported map exponent -> nonzero rational coefficient.
class SparsePoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const Rational& c);
  static SparsePoly monomial(const Exponent& m, const Rational& c = 1);
  /// x_1 * ... * x_n
  static SparsePoly product_of_variables(std::size_t nvars);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }

  Rational coefficient(const Exponent& m) const;
  /// Adds c * x^m; drops the term if the sum is zero.
  void add_term(const Exponent& m, const Rational& c);

  /// Maximal and minimal total degree of a term; both throw on zero.
  int degree() const;
  int order() const;

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Rational& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const Rational& c) { return a *= c; }
  friend SparsePoly operator*(const Rational& c, SparsePoly a) { return a *= c; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) = default;

  /// Product with terms of total degree > cap dropped.
  SparsePoly truncated_product(const SparsePoly& o, int cap) const;
  SparsePoly truncated(int cap) const;
  SparsePoly shifted(const Exponent& m) const;  // x^m * this
  SparsePoly pow(unsigned k) const;

  /// d/dx_i
  SparsePoly derivative(std::size_t i) const;
  /// x_i d/dx_i
  SparsePoly log_derivative(std::size_t i) const;

  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Parses "c*x1^a*x2^b + ..." (see README). nvars = 0 infers n from the
/// largest variable index. Throws InputError.
SparsePoly parse_poly(std::string_view text, std::size_t nvars = 0);

}  // namespace newton
