#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "newton/polylattice.hpp"

namespace newton {

/// Polynomials modulo m^(D+1) in n variables. Columns are ordered by
/// increasing total degree, degrevlex-descending within a degree, so that
/// echelon pivots are lowest-degree terms.
class TruncatedLocalAlgebra {
 public:
  TruncatedLocalAlgebra(std::size_t nvars, int D);

  std::size_t nvars() const { return n_; }
  int truncation() const { return D_; }
  const std::vector<Exponent>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }
  std::optional<std::size_t> column(const Exponent& m) const;

  /// Terms of degree > D are dropped.
  SparseEchelon::Row row(const SparsePoly& h) const;
  SparsePoly poly(const SparseEchelon::Row& r) const;

 private:
  std::size_t n_;
  int D_;
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t> index_;
};

/// Image of the ideal (g_1..g_k) in P / m^(D+1).
class IdealSpan {
 public:
  IdealSpan(const std::vector<SparsePoly>& gens, int D, bool track_certificates = false);

  const TruncatedLocalAlgebra& algebra() const { return algebra_; }
  const std::vector<SparsePoly>& generators() const { return gens_; }
  int truncation() const { return algebra_.truncation(); }
  /// Smallest D0 <= D with every monomial of degree D0 in the span.
  std::optional<int> m_power_bound() const { return d0_; }
  bool finite_colength() const { return d0_.has_value(); }

  /// Membership of the truncation of h. Throws ResourceError("increase
  /// truncation") when no D0 was certified.
  bool member(const SparsePoly& h) const;
  bool contains_truncated(const SparsePoly& h) const;
  SparsePoly normal_form(const SparsePoly& h) const;

  /// Basis of P/I: non-pivot monomials of degree < D0.
  std::vector<Exponent> standard_monomials() const;
  /// Coordinates of the normal form of h in the standard monomials.
  RatVector coordinates(const SparsePoly& h) const;

  /// Coefficients a_j with h = sum a_j g_j modulo m^(D+1); requires
  /// certificate tracking and membership.
  std::vector<SparsePoly> express(const SparsePoly& h) const;

 private:
  void require_finite() const;

  std::vector<SparsePoly> gens_;
  TruncatedLocalAlgebra algebra_;
  SparseEchelon echelon_;
  std::vector<std::pair<std::size_t, Exponent>> products_;  // inserted rows: (generator, alpha)
  std::optional<int> d0_;
};

IdealSpan build_ideal(const std::vector<SparsePoly>& gens, int D, bool track_certificates = false);

/// Escalates D from max(2, 2 * max degree) until D0 is certified, then
/// rebuilds at D0 + margin (or at D when given). Throws ResourceError past cap.
IdealSpan build_ideal_auto(const std::vector<SparsePoly>& gens, std::optional<int> D = std::nullopt,
                           bool track_certificates = false, int margin = 4, int cap = 60);

/// i = (x_i f_{x_i}) and j = (f_{x_i}).
std::vector<SparsePoly> log_jacobian_generators(const SparsePoly& f);
std::vector<SparsePoly> jacobian_generators(const SparsePoly& f);

/// Basis of the socle {[h] : x_i h in I for all i}, as polynomials in the
/// standard monomials.
std::vector<SparsePoly> socle(const IdealSpan& ideal);

struct SocleOrderReport {
  std::vector<SparsePoly> socle_basis;
  Rational nu_socle;
  Rational n_minus_nu_x;
  bool match = false;
  bool upper_bound_holds = false;  // no nonzero class of order > n - nu(x_1...x_n)
  int truncation = 0;
  int m_power_bound = 0;
};

/// Induced Newton order of the socle of P/i, compared with n - nu(x_1...x_n).
SocleOrderReport socle_newton_order(const SparsePoly& f, std::optional<int> D = std::nullopt);

struct MultiplicationReport {
  bool well_defined = false;
  bool injective = false;
  std::size_t dim_p_mod_j = 0;
  std::size_t dim_p_mod_i = 0;
  std::size_t samples_checked = 0;
  bool samples_ok = true;
};

/// x_1...x_n : P/j -> P/i.
MultiplicationReport jacobian_multiplication_check(const SparsePoly& f, int samples, std::uint64_t seed,
                                                   std::optional<int> D = std::nullopt);

/// Requires supp(x_1...x_n h) in the interior of n*Delta (PreconditionError
/// "g not in nΔ°"); returns whether h lies in i.
bool verify_theorem_0_1_part1(const SparsePoly& f, const SparsePoly& h, std::optional<int> D = std::nullopt);

}  // namespace newton
