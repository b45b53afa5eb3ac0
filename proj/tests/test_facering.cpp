#include <random>

#include "doctest.h"
#include "newton/errors.hpp"
#include "newton/facering.hpp"

using namespace newton;

namespace {

struct Setup {
  SparsePoly f;
  NewtonPolyhedron delta;
  FaceCone fc;
  GradedCone gc;
};

Setup setup(const char* poly, std::size_t face_index) {
  auto f = parse_poly(poly);
  auto delta = newton_polyhedron(f);
  auto face = interior_compact_faces(delta).at(face_index);
  auto fc = face_cone(delta, face);
  auto gc = graded_face_cone(delta, fc);
  return {f, delta, fc, gc};
}

// Oracle: scan a fixed box and test cone membership and degree directly.
std::size_t brute_count(const GradedCone& gc, const Rational& deg, bool interior, int box) {
  const auto n = gc.sigma().ambient();
  std::size_t count = 0;
  IntVector m(n, -box);
  while (true) {
    bool in = interior ? gc.sigma().contains_relative_interior(m) : gc.sigma().contains(m);
    if (in && gc.degree(m) == deg) ++count;
    std::size_t i = n;
    while (i > 0 && m[i - 1] == box) {
      m[i - 1] = -box;
      --i;
    }
    if (i == 0) return count;
    ++m[i - 1];
  }
}

}  // namespace

TEST_CASE("grading forms") {
  auto s = setup("x1^2 + x2^3", 0);
  auto g = grading_form(s.delta, s.fc);
  CHECK(g.l_tilde == RatVector{Rational(1, 2), Rational(1, 3)});
  CHECK(g.denominator == 6);
  CHECK(s.fc.r == 0);

  auto v = setup("x1^2 + x1*x2 + x2^3", 0);
  auto gv = grading_form(v.delta, v.fc);
  CHECK(gv.l_tilde == RatVector{Rational(1, 2), Rational(1, 2)});
  CHECK(dot(gv.l_tilde, IntVector{3, 3}) == 3);
  CHECK(gv.denominator == 1);
  CHECK(v.fc.r == 1);

  auto d = newton_polyhedron(parse_poly("x1*x2*x3"));
  auto face = interior_compact_faces(d).at(0);
  auto gd = grading_form(d, face_cone(d, face));
  CHECK(gd.l_tilde == RatVector{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
}

TEST_CASE("faces in coordinate hyperplanes are rejected") {
  auto delta = newton_polyhedron(parse_poly("x1^2 + x2^3"));
  for (const auto& face : faces(delta)) {
    if (face.compact && face.in_coordinate_hyperplane) CHECK_THROWS(face_cone(delta, face));
  }
}

TEST_CASE("face derivatives") {
  auto s = setup("x1^2 + x2^3", 0);
  auto d = face_derivatives(s.f, s.delta, s.fc.delta);
  CHECK(d[0] == parse_poly("2*x1^2", 2));
  CHECK(d[1] == parse_poly("3*x2^3", 2));
  auto v = setup("x1^2 + x1*x2 + x2^3", 0);
  auto dv = face_derivatives(v.f, v.delta, v.fc.delta);
  CHECK(dv[0] == parse_poly("x1*x2"));
  CHECK(dv[1] == parse_poly("x1*x2"));
  auto mono = setup("x1^2*x2^3", 0);
  auto dm = face_derivatives(mono.f, mono.delta, mono.fc.delta);
  CHECK(dm[0] == parse_poly("2*x1^2*x2^3"));
  CHECK(dm[1] == parse_poly("3*x1^2*x2^3"));
}

TEST_CASE("graded pieces agree with a box scan") {
  for (const char* poly : {"x1^2 + x2^3", "x1^3 + x2^3 + x3^3 + x1*x2*x3", "x1^2 + x2^5 + x3^3 + x1*x2^2"}) {
    auto delta = newton_polyhedron(parse_poly(poly));
    for (const auto& face : interior_compact_faces(delta)) {
      auto gc = graded_face_cone(delta, face_cone(delta, face));
      auto d = gc.denominator();
      for (long k = 0; k <= 2 * d.get_si(); ++k) {
        Rational t(k, d.get_si());
        t.canonicalize();
        CHECK(gc.piece(t, false).size() == brute_count(gc, t, false, 16));
        CHECK(gc.piece(t, true).size() == brute_count(gc, t, true, 16));
      }
    }
  }
}

TEST_CASE("K bar for the edge of x^2 + y^3") {
  auto s = setup("x1^2 + x2^3", 0);
  auto params = select_parameters(face_derivatives(s.f, s.delta, s.fc.delta), s.gc);
  REQUIRE(params.size() == 2);
  auto kb = kbar_quotient(s.gc, params);
  CHECK(kb.total_dim() == 6);
  CHECK(kb.socle_degree == 2);
  CHECK(kb.socle_basis == std::vector<IntVector>{{2, 3}});
  std::vector<IntVector> all;
  for (const auto& [t, b] : kb.basis) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<IntVector>{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3}});

  CHECK(class_nonzero(parse_poly("x1^2*x2^3"), s.gc, params));
  CHECK(class_nonzero(parse_poly("7*x1^2*x2^3"), s.gc, params));
  CHECK_FALSE(class_nonzero(parse_poly("x1^3*x2"), s.gc, params));
  CHECK_FALSE(class_nonzero(SparsePoly(2), s.gc, params));
  CHECK_THROWS(class_nonzero(parse_poly("x1^2*x2^3 + x1*x2"), s.gc, params));
}

TEST_CASE("K bar for the vertex (1,1) of x^2 + xy + y^3") {
  auto v = setup("x1^2 + x1*x2 + x2^3", 0);
  auto params = select_parameters(face_derivatives(v.f, v.delta, v.fc.delta), v.gc);
  REQUIRE(params.size() == 1);
  auto kb = kbar_quotient(v.gc, params);
  CHECK(kb.total_dim() == 1);
  CHECK(kb.socle_degree == 1);
  CHECK(kb.socle_basis == std::vector<IntVector>{{1, 1}});
}

TEST_CASE("degenerate derivative data") {
  auto s = setup("x1^2 + x2^3", 0);
  CHECK_THROWS_WITH(select_parameters({SparsePoly(2), SparsePoly(2)}, s.gc), "degenerate face data");
}

TEST_CASE("simplicial monomial case matches the parallelepiped basis") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> d(0, 3);
  int done = 0;
  while (done < 10) {
    std::vector<IntVector> gens{{1 + d(rng), d(rng)}, {d(rng), 1 + d(rng)}};
    Cone c = Cone::from_generators(gens, 2);
    if (!c.is_simplicial() || c.dim() != 2) continue;
    GradedCone gc(c, {1, 1});
    std::vector<SparsePoly> params;
    for (const auto& r : c.rays()) params.push_back(SparsePoly::monomial(r));
    auto kb = kbar_quotient(gc, params);
    std::vector<IntVector> got;
    for (const auto& [t, b] : kb.basis) got.insert(got.end(), b.begin(), b.end());
    std::sort(got.begin(), got.end());
    // parallelepiped {a1 m1 + a2 m2 : 0 < a_i <= 1}
    std::vector<IntVector> want;
    auto mt = RatMatrix::from_int_rows(c.rays(), 2).transpose();
    for (int x = 0; x <= 8; ++x)
      for (int y = 0; y <= 8; ++y) {
        auto a = solve(mt, to_rational(IntVector{x, y}));
        if ((*a)[0] > 0 && (*a)[0] <= 1 && (*a)[1] > 0 && (*a)[1] <= 1) want.push_back({x, y});
      }
    CHECK(got == want);
    ++done;
  }
}

TEST_CASE("Poincare series") {
  GradedCone plane(Cone::from_generators({{1, 0}, {0, 1}}, 2), {1, 1});
  auto ps = poincare_series(plane, 6);
  CHECK(ps.simplicial);
  CHECK(ps.k_coefficients.at(2) == 1);
  CHECK(ps.k_coefficients.at(5) == 4);
  CHECK(ps.a_coefficients.at(0) == 1);
  REQUIRE(ps.value_at_infinity);
  CHECK(*ps.value_at_infinity == 1);
  CHECK(ps.closed_form_matches);

  GradedCone ray(Cone::from_generators({{1, 1}}, 2), {Rational(1, 2), Rational(1, 2)});
  auto pr = poincare_series(ray, 5);
  REQUIRE(pr.value_at_infinity);
  CHECK(*pr.value_at_infinity == -1);
  CHECK(pr.closed_form_matches);

  auto s = setup("x1^2 + x2^3", 0);
  auto params = select_parameters(face_derivatives(s.f, s.delta, s.fc.delta), s.gc);
  auto kb = kbar_quotient(s.gc, params);
  auto pred = kbar_prediction(s.gc, kb.parameter_degrees, kb.socle_degree);
  CHECK(pred.rbegin()->first == 2);
  CHECK(pred.rbegin()->second == 1);
  for (const auto& [t, c] : pred) CHECK(Integer(static_cast<unsigned long>(kb.graded_dims.at(t))) == c);
}

TEST_CASE("non-positive grading is rejected") {
  CHECK_THROWS(GradedCone(Cone::from_generators({{1, 0}, {0, 1}}, 2), {1, -1}));
}
