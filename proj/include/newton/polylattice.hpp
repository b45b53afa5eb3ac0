#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "newton/poly.hpp"

namespace newton {

/// Inequality l(m) >= s.
struct Facet {
  IntVector normal;
  std::int64_t offset = 0;
  bool compact = false;  // all entries of the normal positive

  friend bool operator==(const Facet&, const Facet&) = default;
};

/// Gamma_+(f) = conv(supp f) + R_+^n, by vertices and facet inequalities.
/// Facets are sorted by normal, vertices lexicographically.
struct NewtonPolyhedron {
  std::size_t nvars = 0;
  std::vector<Exponent> vertices;
  std::vector<Facet> facets;

  /// m in Delta (all facet inequalities hold).
  bool contains(const IntVector& m) const;
};

NewtonPolyhedron newton_polyhedron(const SparsePoly& f);
NewtonPolyhedron newton_polyhedron(const std::vector<Exponent>& points, std::size_t nvars);

/// s_Delta(a) = min a(Delta). Throws PreconditionError("unbounded below")
/// for a covector with a negative entry.
std::int64_t support_function(const NewtonPolyhedron& delta, const IntVector& a);

struct FaceDescriptor {
  std::vector<std::size_t> vertex_subset;  // indices into vertices
  std::vector<std::size_t> recession;      // coordinate directions e_i in the face
  std::vector<std::size_t> tight_facets;   // indices into facets
  int dim = 0;
  bool compact = false;
  bool in_coordinate_hyperplane = false;
  IntVector normal_certificate;  // face = {x in Delta : a(x) = s_Delta(a)}

  /// r = n - 1 - dim
  int codim_r(std::size_t nvars) const { return static_cast<int>(nvars) - 1 - dim; }
};

/// All nonempty faces including Delta itself, sorted by (dim, vertices, recession).
std::vector<FaceDescriptor> faces(const NewtonPolyhedron& delta);

/// Compact faces that are not contained in a coordinate hyperplane.
std::vector<FaceDescriptor> interior_compact_faces(const NewtonPolyhedron& delta);

bool on_face(const NewtonPolyhedron& delta, const FaceDescriptor& face, const IntVector& m);

/// g_delta: terms of g whose exponent lies on the face.
SparsePoly face_part(const SparsePoly& g, const NewtonPolyhedron& delta, const FaceDescriptor& face);

/// Newton order; +inf for g = 0 or when Delta has no facet with s > 0.
ExtendedRational nu(const SparsePoly& g, const NewtonPolyhedron& delta);
ExtendedRational nu(const IntVector& m, const NewtonPolyhedron& delta);

/// m in a*Delta, or in its interior when strict.
bool in_dilate(const NewtonPolyhedron& delta, const IntVector& m, const Rational& a, bool strict);

/// Compact full-dimensional lattice polytope given by vertices and facets l(m) >= s.
struct Polytope {
  std::size_t dim = 0;
  std::vector<IntVector> vertices;
  std::vector<Facet> facets;

  bool contains(const IntVector& m, std::int64_t dilation = 1, bool strict = false) const;
  /// Vertex sets of all nonempty faces (including the polytope), with dimensions.
  std::vector<std::pair<std::vector<std::size_t>, int>> face_lattice() const;
};

/// Throws PreconditionError("not full-dimensional") on degenerate input.
Polytope polytope_hull(const std::vector<IntVector>& points);

/// n! Vol(conv points) by a pulling triangulation.
Integer normalized_volume(const std::vector<IntVector>& points);
/// Same quantity from Ehrhart counts: the n-th finite difference of t -> |tP ∩ Z^n|.
Integer ehrhart_normalized_volume(const Polytope& p);

/// Lattice points of l*P (or its interior), ordered lexicographically.
std::vector<IntVector> lattice_points(const Polytope& p, std::int64_t l, bool interior);

}  // namespace newton
