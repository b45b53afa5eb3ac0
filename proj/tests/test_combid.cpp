#include <random>

#include "doctest.h"
#include "newton/combid.hpp"
#include "newton/errors.hpp"

using namespace newton;

namespace {

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// Rows are resampled until independent.
RatMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  RatMatrix a(rows, cols);
  do {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = small_rational(rng);
  } while (rank(a) != rows);
  return a;
}

struct Setup {
  SparsePoly f;
  NewtonPolyhedron delta;
  Fan fan;
  FaceDescriptor face;
};

Setup setup(const char* poly, const std::vector<IntVector>& face_vertices) {
  auto f = parse_poly(poly);
  auto delta = newton_polyhedron(f);
  auto fan = regularize(sigma_delta_fan(delta));
  for (const auto& face : interior_compact_faces(delta)) {
    std::vector<IntVector> vs;
    for (auto k : face.vertex_subset) vs.push_back(delta.vertices[k]);
    std::sort(vs.begin(), vs.end());
    auto want = face_vertices;
    std::sort(want.begin(), want.end());
    if (vs == want) return {f, delta, fan, face};
  }
  FAIL("face not found");
  return {f, delta, fan, {}};
}

}  // namespace

TEST_CASE("affine unit combinations") {
  // E = {x : x1/2 + x2/3 = 1}; w1 = (1/2, 1/3), w2 = (1, -1)
  std::vector<RatVector> cands = {{Rational(1, 2), Rational(1, 3)}, {1, -1}};
  auto sol = affine_unit_combination(cands, {{Rational(1, 2), Rational(1, 3)}});
  REQUIRE(sol);
  CHECK(sol->unique);
  CHECK(sol->c == RatVector{1, 0});
  CHECK_FALSE(affine_unit_combination({{1, 0}}, {}));
}

TEST_CASE("sequence signs") {
  CHECK(sequence_sign({0, 1, 2}) == 1);
  CHECK(sequence_sign({1, 0, 2}) == -1);
  CHECK(sequence_sign({4, 7, 2}) == 1);
}

TEST_CASE("Cramer base case is the first column") {
  std::mt19937_64 rng(1);
  MinorTable a(random_matrix(rng, 3, 5));
  for (std::size_t i = 0; i < 3; ++i) {
    auto c = c_cramer(a, {i});
    REQUIRE(c);
    CHECK((*c)[0] == a.matrix()(i, 0));
    CHECK(*c == *c_direct(a, {i}));
  }
}

TEST_CASE("determinant lemma on random matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> rows(1, 4), extra(0, 2);
  std::size_t checked = 0, skipped = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r1 = rows(rng);
    const auto n = std::min<std::size_t>(6, r1 + extra(rng));
    if (n < r1) continue;
    MinorTable a(random_matrix(rng, r1, n));
    auto rep = lemma_3_1_check(a, r1);
    CHECK(rep.ok());
    if (!rep.ok()) MESSAGE(*rep.counterexample);
    checked += rep.checked;
    skipped += rep.skipped;
  }
  CHECK(checked > 5000);
  MESSAGE("subsets checked " << checked << ", skipped " << skipped);
}

TEST_CASE("lemma skips only certified singular subsets") {
  // rows 1 and 2 coincide in the first column: the k = 2 system is singular
  MinorTable a(RatMatrix::from_int_rows({{1, 2, 3}, {1, 5, 7}}, 3));
  auto rep = lemma_3_1_check(a, 2);
  CHECK(rep.ok());
  CHECK(rep.skipped == 1);
  CHECK_FALSE(c_direct(a, {0, 1}));
}

TEST_CASE("corollary: signed minors and the ones column") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r1 = 1 + trial % 4;
    RatMatrix m;
    do {
      m = random_matrix(rng, r1, r1 + trial % 3);
      for (std::size_t i = 0; i < r1; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j + 1 < r1; ++j) s += m(i, j);
        m(i, r1 - 1) = 1 - s;
      }
    } while (rank(m) != r1);
    auto rep = corollary_3_2_check(MinorTable(m));
    CHECK(rep.ok);
    REQUIRE(rep.square_det);
    CHECK(*rep.square_det == rep.ones_column_det);
    if (rep.hypothesis) CHECK(rep.signed_sum == rep.square_det);
  }
  auto two = corollary_3_2_check(MinorTable(RatMatrix::from_int_rows({{3, 5}, {7, 11}}, 2)));
  CHECK(two.signed_minor_sum == 3 - 7);
  CHECK(two.ones_column_det == 3 - 7);
  auto one = corollary_3_2_check(MinorTable(RatMatrix::from_int_rows({{4}}, 1)));
  CHECK(one.signed_sum == 1);
  CHECK(one.ones_column_det == 1);
}

TEST_CASE("weights for an edge") {
  auto s = setup("x1^2+x2^3", {{2, 0}, {0, 3}});
  auto ws = choose_weights(s.f, s.face, s.fan, 5);
  CHECK(ws.r == 0);
  CHECK(ws.w[0] == RatVector{Rational(1, 2), Rational(1, 3)});
  auto again = check_weights(s.f, ws);
  CHECK(again.all());
  REQUIRE(ws.cones.size() == 1);
  auto cs = solve_c(ws, ws.cones[0].l_tilde);
  CHECK(cs.c == RatVector{1, 0});
}

TEST_CASE("weights for a vertex") {
  auto s = setup("x1^2+x1*x2+x2^3", {{1, 1}});
  auto ws = choose_weights(s.f, s.face, s.fan, 9);
  CHECK(ws.r == 1);
  CHECK(ws.v_basis.size() == 2);
  CHECK(check_weights(s.f, ws).all());
  for (int i = 0; i < 2; ++i) CHECK(dot(ws.w[i], IntVector{1, 1}) == 1);
  auto rep = thm_1_3_assumptions(s.fan, s.f, ws);
  CHECK(rep.all());
  CHECK(rep.systems_checked >= 3);
}

TEST_CASE("weights rejected by condition (i)") {
  auto s = setup("x1^2+x2^3", {{2, 0}, {0, 3}});
  auto ws = choose_weights(s.f, s.face, s.fan, 5);
  ws.w[1] = {0, 1};  // kills the vertex x1^2
  auto wc = check_weights(s.f, ws);
  CHECK_FALSE(wc.newton_polyhedron);
  auto rep = thm_1_3_assumptions(s.fan, s.f, ws);
  CHECK_FALSE(rep.valuations);
}

TEST_CASE("solve_c rejects dependent restrictions") {
  auto s = setup("x1^2+x2^3", {{2, 0}, {0, 3}});
  auto ws = choose_weights(s.f, s.face, s.fan, 5);
  ws.w[1] = ws.w[0];
  CHECK_THROWS_WITH_AS(solve_c(ws, {ws.cones[0].l_tilde[0]}), "(iv) violated", PreconditionError);
  CHECK_THROWS_AS(MinorTable(RatMatrix::from_int_rows({{1, 2}, {2, 4}}, 2)), PreconditionError);
}

TEST_CASE("residue-formula assumptions") {
  for (const char* poly : {"x1^2+x2^3", "x1^3+x2^3", "x1^2+x2^5"}) {
    CAPTURE(poly);
    auto f = parse_poly(poly);
    auto delta = newton_polyhedron(f);
    auto fan = regularize(sigma_delta_fan(delta));
    for (const auto& face : interior_compact_faces(delta)) {
      auto ws = choose_weights(f, face, fan, 3);
      auto rep = thm_1_3_assumptions(fan, f, ws);
      CHECK(rep.all());
    }
  }
  auto d = setup("x1^2+2*x1*x2+x2^2", {{2, 0}, {0, 2}});
  auto ws = choose_weights(d.f, d.face, d.fan, 1);
  auto rep = thm_1_3_assumptions(d.fan, d.f, ws);
  CHECK(rep.valuations);
  CHECK_FALSE(rep.no_torus_zero);
}

TEST_CASE("weights in three variables") {
  auto f = parse_poly("x1^2+x2^2+x3^2");
  auto delta = newton_polyhedron(f);
  auto fan = regularize(sigma_delta_fan(delta));
  for (const auto& face : interior_compact_faces(delta)) {
    auto ws = choose_weights(f, face, fan, 4);
    CHECK(check_weights(f, ws).all());
    CHECK(thm_1_3_assumptions(fan, f, ws).all());
  }
}
