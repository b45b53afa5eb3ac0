#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "newton/fan.hpp"
#include "newton/linalg.hpp"
#include "newton/poly.hpp"
#include "newton/polylattice.hpp"

namespace newton {

/// Coefficients c with sum_i c_i * candidates[i] == 1 on the affine space
/// {x : v(x) = 1 for v in constraints}. Free coefficients are set to 0.
struct AffineCombination {
  RatVector c;
  bool unique = false;
  RatVector point;                  // a point of the affine space
  std::vector<RatVector> directions;  // basis of its direction space
};
std::optional<AffineCombination> affine_unit_combination(const std::vector<RatVector>& candidates,
                                                         const std::vector<RatVector>& constraints);

/// A cone sigma_s of the regular fan inside sigma(delta) with dim = r + 1.
struct AdmissibleCone {
  std::vector<std::size_t> rays;  // indices into the fan's rays, sorted
  std::vector<RatVector> l_tilde;  // l / s_Delta(l), same order
};

struct WeightSystem {
  FaceDescriptor delta;
  int r = 0;
  std::vector<RatVector> w;         // w_1..w_n
  std::vector<RatVector> v_basis;   // basis of V = span sigma(delta)
  std::vector<AdmissibleCone> cones;
  int attempts = 0;
};

struct WeightConditions {
  bool newton_polyhedron = false;  // (i)
  bool basis = false;              // (ii)
  bool in_v = false;               // (iii)
  bool affine_bases = false;       // (iv)
  bool normalized = false;         // (v)
  std::vector<std::string> failures;

  bool all() const { return newton_polyhedron && basis && in_v && affine_bases && normalized; }
};

/// g = w(f) = sum_i w_i x_i f_{x_i}.
SparsePoly apply_weight(const RatVector& w, const SparsePoly& f);

/// Cones of the fan inside sigma(delta) of dimension r + 1.
std::vector<AdmissibleCone> admissible_cones(const SparsePoly& f, const FaceDescriptor& face, const Fan& fan);

WeightConditions check_weights(const SparsePoly& f, const WeightSystem& ws);

/// Random small-integer weights satisfying (i)-(v); throws ResourceError
/// naming the last failing condition after max_attempts samples.
WeightSystem choose_weights(const SparsePoly& f, const FaceDescriptor& face, const Fan& fan, std::uint64_t seed,
                            int max_attempts = 100);

struct CSystem {
  std::vector<RatVector> l_tilde_j;  // the covectors cutting out E_J
  std::size_t k = 0;                 // |J|
  RatVector c;                       // c_k..c_n
  AffineCombination solution;
};

/// Throws PreconditionError("(iv) violated") unless the system has a unique solution.
CSystem solve_c(const WeightSystem& ws, const std::vector<RatVector>& l_tilde_j);

/// Rows v_i = sum_j a_ij w_j of an (r+1) x n matrix. Throws
/// PreconditionError unless the rows are linearly independent.
class MinorTable {
 public:
  explicit MinorTable(RatMatrix a);
  const RatMatrix& matrix() const { return a_; }
  std::size_t rows() const { return a_.rows(); }
  std::size_t cols() const { return a_.cols(); }
  /// D(I, J); the empty minor is 1. Index sets are 0-based and sorted.
  Rational minor(const std::vector<std::size_t>& I, const std::vector<std::size_t>& J) const;

 private:
  RatMatrix a_;
};

/// Sign of (i_1..i_k) relative to the increasing order of its entries.
int sequence_sign(const std::vector<std::size_t>& seq);

/// c_k^I..c_n^I by solving sum c_i w_i = 1 on E_I in w-coordinates.
std::optional<RatVector> c_direct(const MinorTable& a, const std::vector<std::size_t>& I);
/// c_k^I..c_n^I from the Cramer expressions in the minors D(I \ {j}, [1, k-1]).
std::optional<RatVector> c_cramer(const MinorTable& a, const std::vector<std::size_t>& I);

struct Lemma31Report {
  std::size_t checked = 0;
  std::size_t skipped = 0;            // hypothesis failed, certified singular
  std::size_t route_mismatches = 0;   // direct and Cramer disagree
  std::size_t failures = 0;           // signed sum != minor
  std::optional<std::string> counterexample;
  bool ok() const { return route_mismatches == 0 && failures == 0; }
};

/// Signed sum over P(I) of c_1^{i_1} ... c_k^{i_1..i_k} against D(I, [1, k])
/// for every I with |I| <= k_max.
Lemma31Report lemma_3_1_check(const MinorTable& a, std::size_t k_max);

struct Corollary32Report {
  bool hypothesis = false;
  Rational signed_sum;           // sum over P(I) of sign * c_1..c_r
  Rational signed_minor_sum;     // sum_i (-1)^(r+1+s(i)) D(I \ {i}, [1, r])
  Rational ones_column_det;      // det of the first r columns bordered by ones
  std::optional<Rational> square_det;  // det of the first r+1 columns, when rows sum to 1 there
  bool ok = false;
};

Corollary32Report corollary_3_2_check(const MinorTable& a);

/// Coordinates of l_tilde_i in the basis w: A = L W^{-1}.
MinorTable weight_coordinates(const std::vector<RatVector>& l_tilde, const std::vector<RatVector>& w);

struct Thm13Report {
  bool valuations = false;     // (2)
  bool no_torus_zero = false;  // (3b) on cones inside sigma(delta)
  bool c_systems = false;      // (4) for every admissible J
  bool cramer_agrees = false;  // (4) solutions match the Cramer expressions
  std::size_t rays_checked = 0;
  std::size_t cones_checked = 0;
  std::size_t systems_checked = 0;
  std::vector<std::string> problems;
  bool all() const { return valuations && no_torus_zero && c_systems && cramer_agrees; }
};

Thm13Report thm_1_3_assumptions(const Fan& fan, const SparsePoly& f, const WeightSystem& ws);

}  // namespace newton
