#include <random>

#include "doctest.h"
#include "newton/errors.hpp"
#include "newton/localalg.hpp"
#include "newton/residue.hpp"

using namespace newton;

namespace {

const char* const kFamily[] = {"x1^2+x2^3", "x1^2+x2^2", "x1^2+x1*x2+x2^3",
                               "x1^3+x2^3", "x1^2+x2^5", "x1^2+x2^2+x3^2"};

SparsePoly mono(std::initializer_list<std::int64_t> e) { return SparsePoly::monomial(Exponent(e)); }

std::vector<SparsePoly> polys(std::initializer_list<const char*> texts, std::size_t n) {
  std::vector<SparsePoly> out;
  for (const char* t : texts) out.push_back(parse_poly(t, n));
  return out;
}

FaceDescriptor face_with_vertices(const NewtonPolyhedron& delta, const std::vector<IntVector>& pts) {
  for (const auto& face : interior_compact_faces(delta)) {
    std::vector<IntVector> vs;
    for (auto k : face.vertex_subset) vs.push_back(delta.vertices[k]);
    std::sort(vs.begin(), vs.end());
    auto want = pts;
    std::sort(want.begin(), want.end());
    if (vs == want) return face;
  }
  FAIL("face not found");
  return {};
}

SparsePoly random_poly(std::mt19937_64& rng, std::size_t n, int deg) {
  std::uniform_int_distribution<int> c(-4, 4), e(0, deg);
  SparsePoly p(n);
  for (int k = 0; k < 4; ++k) {
    Exponent m(n);
    for (auto& x : m) x = e(rng);
    p.add_term(m, Rational(c(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("monomial residues") {
  CHECK(monomial_residue(SparsePoly::constant(2, 1), {1, 1}) == 1);
  CHECK(monomial_residue(mono({1, 1}), {2, 2}) == 1);
  CHECK(monomial_residue(parse_poly("x1^3+5*x1^2*x2"), {3, 2}) == 5);
  CHECK_THROWS_AS(monomial_residue(mono({1, 1}), {0, 2}), InputError);
}

TEST_CASE("residue examples") {
  auto lin = grothendieck_residue(SparsePoly::constant(2, 1), polys({"2*x1+x2", "x1+2*x2"}, 2));
  CHECK(lin.value == Rational(1, 3));
  CHECK(lin.stable);
  CHECK(grothendieck_residue(mono({1, 2}), polys({"2*x1^2", "3*x2^3"}, 2)).value == Rational(1, 6));
  CHECK(grothendieck_residue(mono({0, 0}), polys({"2*x1^2", "3*x2^3"}, 2)).value == 0);
}

TEST_CASE("monomial systems agree with coefficient extraction") {
  std::mt19937_64 rng(3);
  auto F = polys({"x1^3", "x2^2"}, 2);
  for (int t = 0; t < 10; ++t) {
    auto g = random_poly(rng, 2, 4);
    CHECK(grothendieck_residue(g, F).value == monomial_residue(g, {3, 2}));
  }
}

TEST_CASE("linear form law") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-3, 3);
  int tested = 0;
  while (tested < 12) {
    const std::size_t n = 2 + tested % 2;
    std::vector<IntVector> rows(n, IntVector(n));
    for (auto& r : rows)
      for (auto& x : r) x = c(rng);
    auto det = determinant(RatMatrix::from_int_rows(rows, n));
    if (det == 0) continue;
    std::vector<SparsePoly> F;
    for (const auto& r : rows) {
      SparsePoly p(n);
      for (std::size_t j = 0; j < n; ++j) {
        Exponent e(n, 0);
        e[j] = 1;
        p.add_term(e, Rational(r[j]));
      }
      F.push_back(p);
    }
    CHECK(grothendieck_residue(SparsePoly::constant(n, 1), F).value == Rational(1 / det));
    ++tested;
  }
}

TEST_CASE("residue is linear in g") {
  std::mt19937_64 rng(19);
  auto F = log_jacobian_generators(parse_poly("x1^2+x1*x2+x2^3"));
  for (int t = 0; t < 8; ++t) {
    auto g1 = random_poly(rng, 2, 3);
    auto g2 = random_poly(rng, 2, 3);
    Rational a(t - 3, 2);
    a.canonicalize();
    Rational lhs = grothendieck_residue(g1 * a + g2, F).value;
    Rational rhs = grothendieck_residue(g1, F).value * a + grothendieck_residue(g2, F).value;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("residue is stable under wider truncation") {
  auto F = log_jacobian_generators(parse_poly("x1^3+x2^3"));
  auto g = mono({1, 1});
  auto a = grothendieck_residue(g, F);
  auto b = grothendieck_residue(g, F, a.truncation_used + 3);
  CHECK(a.value == b.value);
}

TEST_CASE("nonvanishing residue examples") {
  auto f = parse_poly("x1^2+x2^3");
  auto d = newton_polyhedron(f);
  CHECK(verify_theorem_0_1_part2(f, face_with_vertices(d, {{2, 0}, {0, 3}}), mono({1, 2}), 0).value ==
        Rational(1, 6));
  auto f2 = parse_poly("x1^2+x2^2");
  auto d2 = newton_polyhedron(f2);
  CHECK(verify_theorem_0_1_part2(f2, face_with_vertices(d2, {{2, 0}, {0, 2}}), mono({1, 1}), 0).value ==
        Rational(1, 4));
  auto f3 = parse_poly("x1^2+x1*x2+x2^3");
  auto d3 = newton_polyhedron(f3);
  CHECK(verify_theorem_0_1_part2(f3, face_with_vertices(d3, {{1, 1}}), mono({0, 0}), 1).value != 0);

  CHECK_THROWS_AS(verify_theorem_0_1_part2(f, face_with_vertices(d, {{2, 0}, {0, 3}}), mono({0, 0}), 0),
                  PreconditionError);
  CHECK_THROWS_AS(verify_theorem_0_1_part2(f, face_with_vertices(d, {{2, 0}, {0, 3}}), mono({1, 2}), 1),
                  PreconditionError);
}

TEST_CASE("nonvanishing residues over the regression family") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> c(-3, 3);
  int checked = 0;
  for (const char* text : kFamily) {
    CAPTURE(text);
    auto f = parse_poly(text);
    const auto n = f.nvars();
    auto delta = newton_polyhedron(f);
    for (const auto& face : interior_compact_faces(delta)) {
      auto fc = face_cone(delta, face);
      auto gc = graded_face_cone(delta, fc);
      auto params = select_parameters(face_derivatives(f, delta, face), gc);
      auto pts = gc.piece(Rational(static_cast<long>(n) - fc.r), true);
      std::vector<SparsePoly> hs;
      SparsePoly combo(n);
      for (const auto& m : pts) {
        Exponent h(m);
        for (auto& x : h) x -= 1;
        hs.push_back(SparsePoly::monomial(h));
        combo.add_term(h, Rational(c(rng)));
      }
      if (!combo.is_zero()) hs.push_back(combo);
      for (const auto& h : hs) {
        auto g = SparsePoly::product_of_variables(n) * h;
        if (!class_nonzero(g, gc, params)) continue;
        CHECK(verify_theorem_0_1_part2(f, face, h, fc.r).value != 0);
        ++checked;
      }
    }
  }
  CHECK(checked >= 6);
}

TEST_CASE("lattice spaces") {
  auto tri = polytope_hull({{0, 0}, {2, 0}, {0, 3}});
  auto l1 = lattice_space(tri, 1, false);
  CHECK(l1.points.size() == 7);
  CHECK(lattice_space(tri, 0, false).points == std::vector<IntVector>{{0, 0}});
  CHECK(lattice_space(tri, 1, true).points == std::vector<IntVector>{{1, 1}});
  // Pick: area 27, boundary 18
  CHECK(lattice_space(tri, 3, true).points.size() == 19);
}

TEST_CASE("koszul top dimension") {
  std::mt19937_64 rng(31);
  auto square = polytope_hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto tri = polytope_hull({{0, 0}, {2, 0}, {0, 3}});
  for (const auto* p : {&square, &tri}) {
    for (int t = 0; t < 10; ++t) {
      auto rep = koszul_random_check(*p, rng);
      CHECK(rep.generic);
      CHECK(rep.dimension == 1);
    }
  }
  auto g = parse_poly("1+x1+x2+x1*x2");
  CHECK(koszul_top_dimension(square, {g, g, g}) != 1);
  CHECK_THROWS_AS(koszul_top_dimension(square, {g, g, parse_poly("x1^2", 2)}), PreconditionError);
}

TEST_CASE("trace equals normalized volume") {
  auto t = trace_volume_check(polytope_hull({{0, 0}, {2, 0}, {0, 3}}));
  CHECK(t.trace == 6);
  CHECK(t.agree);
  CHECK(trace_volume_check(polytope_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).trace == 1);
  CHECK(trace_volume_check(polytope_hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).trace == 2);
}
