#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "newton/polylattice.hpp"

namespace newton {

/// Rational polyhedral cone in R^n, kept in both descriptions:
///   cone = cone(rays) = {a : x(a) >= 0 for x in inequalities, y(a) = 0 for y in equations}.
/// Rays are primitive; for a cone with lineality the rays contain a basis of
/// the lineality space with both signs.
class Cone {
 public:
  static Cone from_generators(const std::vector<IntVector>& gens, std::size_t n);
  static Cone from_inequalities(const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                                std::size_t n);

  std::size_t ambient() const { return n_; }
  int dim() const { return dim_; }
  int lineality_dim() const { return lineality_dim_; }
  bool is_pointed() const { return lineality_dim_ == 0; }
  bool is_simplicial() const { return is_pointed() && static_cast<int>(rays_.size()) == dim_; }

  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& inequalities() const { return ineqs_; }
  const std::vector<IntVector>& equations() const { return eqs_; }
  /// Inequalities followed by each equation with both signs; generates the dual cone.
  std::vector<IntVector> facet_normals() const;

  bool contains(const IntVector& a) const;
  bool contains_relative_interior(const IntVector& a) const;
  bool contains(const Cone& other) const;
  /// Sum of the rays: a point of the relative interior.
  IntVector interior_point() const;

  /// All faces including the cone itself, by increasing dimension.
  std::vector<Cone> faces() const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.contains(b) && b.contains(a); }

 private:
  std::size_t n_ = 0;
  int dim_ = 0;
  int lineality_dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<IntVector> ineqs_;
  std::vector<IntVector> eqs_;
};

Cone dual_cone(const Cone& c);

struct FaceBijectionReport {
  bool ok = true;
  std::size_t faces = 0;
  std::size_t dual_faces = 0;
  std::vector<std::string> problems;
};

/// tau -> tau^perp ∩ dual: bijective, inclusion reversing, dims summing to n.
FaceBijectionReport face_bijection_check(const Cone& c);

/// A fan by rays and cones (sorted ray-index lists), closed under faces.
/// The empty list is the zero cone.
class Fan {
 public:
  Fan() = default;
  /// Builds the face closure of the given cones; throws if a listed ray is
  /// not extremal in its cone.
  Fan(std::size_t n, std::vector<IntVector> rays, const std::vector<std::vector<std::size_t>>& cones);

  std::size_t ambient() const { return n_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }
  Cone cone(std::size_t k) const;
  Cone cone_of(const std::vector<std::size_t>& ray_indices) const;
  int cone_dim(std::size_t k) const { return dims_[k]; }
  std::vector<std::size_t> maximal_cones() const;
  std::optional<std::size_t> find(const std::vector<std::size_t>& ray_indices) const;
  std::optional<std::size_t> ray_index(const IntVector& ray) const;
  /// cones()[i] is a face of cones()[j]
  bool is_face_of(std::size_t i, std::size_t j) const;

  /// Pairwise intersections of maximal cones are common faces.
  bool has_intersection_property() const;
  /// Support equals R_+^n.
  bool covers_orthant() const;

 private:
  std::size_t n_ = 0;
  std::vector<IntVector> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  std::vector<int> dims_;
};

/// Throws PreconditionError("coordinate-axis condition violated") unless every
/// coordinate axis meets the support.
void check_axis_condition(const NewtonPolyhedron& delta);

/// sigma(delta) = {a >= 0 : a(delta) = s_Delta(a)}.
Cone sigma_of_face(const NewtonPolyhedron& delta, const FaceDescriptor& face);

/// The coarsest fan on which s_Delta is linear. With require_axis = false
/// the fan is built even when R_+^n minus Delta is unbounded.
Fan sigma_delta_fan(const NewtonPolyhedron& delta, bool require_axis = true);

/// Regular refinement keeping the coordinate rays (n <= 3).
Fan regularize(const Fan& fan, int max_iterations = 10000);

/// Every cone simplicial with primitive generators extending to a lattice basis.
/// Throws PreconditionError for a non-simplicial cone.
bool is_regular(const Fan& fan);

/// Every cone of fine lies in some cone of coarse.
bool refines(const Fan& fine, const Fan& coarse);

/// min of l over supp(h); throws on h = 0.
std::int64_t multiplicity(const IntVector& l, const SparsePoly& h);

struct Ray {
  IntVector l_lambda;
  std::int64_t v_lambda_f = 0;
  RatVector l_tilde;
};

/// The non-coordinate rays of the fan with their multiplicities for f.
std::vector<Ray> edges_L(const Fan& fan, const SparsePoly& f);

/// Rays of L with v(g) = (n - r) v(f). When a face is given, each is checked
/// to lie in sigma(face) (VerificationFailure otherwise).
std::vector<Ray> pole_components(const SparsePoly& g, const SparsePoly& f, int r, const Fan& fan,
                                 const FaceDescriptor* face = nullptr);

/// Smallest cone of the fan containing both cones; throws InputError if either
/// is not a cone of the fan.
std::optional<std::size_t> orbit_closure_intersection(const Fan& fan, const std::vector<std::size_t>& c1,
                                                      const std::vector<std::size_t>& c2);

}  // namespace newton
