#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "newton/fan.hpp"

namespace newton {

/// A pointed cone sigma with a grading lambda positive on sigma \ {0}.
/// A_sigma = Q[sigma ∩ Z^n] and K_sigma = Q[interior ∩ Z^n] are graded by lambda.
class GradedCone {
 public:
  /// Throws PreconditionError if lambda is not positive on every ray.
  GradedCone(Cone sigma, RatVector lambda);

  const Cone& sigma() const { return sigma_; }
  const RatVector& lambda() const { return lambda_; }
  /// Smallest d > 0 with d * lambda integral on span(sigma) ∩ Z^n.
  const Integer& denominator() const { return denominator_; }
  int dim() const { return sigma_.dim(); }

  Rational degree(const IntVector& m) const { return dot(lambda_, m); }
  bool in_interior(const IntVector& m) const { return sigma_.contains_relative_interior(m); }

  /// Lattice points of sigma (or its relative interior) of degree <= top, by degree.
  std::map<Rational, std::vector<IntVector>> points_up_to(const Rational& top, bool interior) const;
  std::vector<IntVector> piece(const Rational& degree, bool interior) const;

 private:
  Cone sigma_;
  RatVector lambda_;
  Integer denominator_;
};

struct GradedPiece {
  Rational degree;
  std::vector<IntVector> monomials;
};

/// sigma = R_+ delta for a compact face delta not in a coordinate hyperplane.
struct FaceCone {
  FaceDescriptor delta;
  Cone sigma;
  int r = 0;  // n - 1 - dim delta
};

FaceCone face_cone(const NewtonPolyhedron& delta, const FaceDescriptor& face);

struct GradingForm {
  RatVector l_tilde;  // lies in span(sigma), equals 1 on delta
  Integer denominator;
};

/// Throws PreconditionError("no grading form") when 0 is in aff(delta).
GradingForm grading_form(const NewtonPolyhedron& delta, const FaceCone& fc);

GradedCone graded_face_cone(const NewtonPolyhedron& delta, const FaceCone& fc);

/// f_{i,delta} = x_i d/dx_i (f_delta), i = 1..n.
std::vector<SparsePoly> face_derivatives(const SparsePoly& f, const NewtonPolyhedron& delta,
                                         const FaceDescriptor& face);

struct KbarPresentation {
  std::vector<SparsePoly> parameters;
  std::vector<Rational> parameter_degrees;
  std::map<Rational, std::size_t> graded_dims;            // nonzero dims only
  std::map<Rational, std::vector<IntVector>> basis;       // standard monomials per degree
  Rational socle_degree;
  std::vector<IntVector> socle_basis;

  std::size_t total_dim() const;
};

/// Degree of a homogeneous element; throws PreconditionError otherwise.
Rational homogeneous_degree(const SparsePoly& g, const GradedCone& gc);

/// K_sigma / (params) K_sigma degree by degree up to max(sum + max degree, max_degree).
/// Throws PreconditionError("not a system of parameters") if a component
/// beyond the sum of the parameter degrees is nonzero.
KbarPresentation kbar_quotient(const GradedCone& gc, const std::vector<SparsePoly>& params,
                               std::optional<Rational> max_degree = std::nullopt);

/// Lexicographically first linearly independent subset of size dim sigma,
/// verified to be a regular sequence on K_sigma by dimension count.
/// Throws PreconditionError("degenerate face data").
std::vector<SparsePoly> select_parameters(const std::vector<SparsePoly>& derivs, const GradedCone& gc);

struct PoincareSeries {
  std::map<Rational, std::size_t> a_coefficients;  // dim A_sigma(t), t <= truncation
  std::map<Rational, std::size_t> k_coefficients;  // dim K_sigma(t)
  bool simplicial = false;
  // For simplicial sigma = <m_1..m_k>: P(K) = N(t) / prod (1 - t^{lambda(m_i)})
  std::map<Rational, Integer> numerator;
  std::vector<Rational> denominator_degrees;
  std::optional<Integer> value_at_infinity;
  bool closed_form_matches = false;  // expansion of N/prod agrees with k_coefficients
};

PoincareSeries poincare_series(const GradedCone& gc, const Rational& truncation);

/// Coefficients of P(K) * prod (1 - t^{alpha_i}) through the given degree.
std::map<Rational, Integer> kbar_prediction(const GradedCone& gc, const std::vector<Rational>& alphas,
                                            const Rational& through);

/// [g] != 0 in K_sigma / (params) K_sigma. g must be homogeneous and
/// supported in the interior; g = 0 gives false.
bool class_nonzero(const SparsePoly& g, const GradedCone& gc, const std::vector<SparsePoly>& params);

}  // namespace newton
