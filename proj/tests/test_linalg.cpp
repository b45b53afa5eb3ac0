#include <random>

#include "doctest.h"
#include "newton/linalg.hpp"
#include "newton/poly.hpp"

using namespace newton;

TEST_CASE("rref, nullspace and solve agree") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    RatMatrix m(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = d(rng);
    auto ns = nullspace(m);
    CHECK(ns.size() + rank(m) == 5);
    for (const auto& v : ns) {
      for (const auto& x : m.apply(v)) CHECK(x == 0);
    }
    RatVector x0{1, -2, 0, 3, 1};
    auto b = m.apply(x0);
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m.apply(*x) == b);
  }
}

TEST_CASE("nullspace of an empty matrix is everything") {
  RatMatrix m(0, 3);
  CHECK(nullspace(m).size() == 3);
}

TEST_CASE("determinant matches cofactor expansion on 3x3") {
  RatMatrix m = RatMatrix::from_int_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}, 3);
  // 2(12-1) - 1(4-0) + 0 = 18
  CHECK(determinant(m) == 18);
}

TEST_CASE("integer kernel is a lattice basis") {
  auto k = integer_kernel({{2, 4, 6}}, 3);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK(2 * v[0] + 4 * v[1] + 6 * v[2] == 0);
  // the sublattice generated has index 1 in the kernel: some 2x2 minor of the basis is +-1 after gcd
  auto k2 = integer_kernel({{1, 1, 0}, {0, 2, 2}}, 3);
  REQUIRE(k2.size() == 1);
  CHECK((k2[0] == IntVector{1, -1, 1} || k2[0] == IntVector{-1, 1, -1}));
}

TEST_CASE("sparse echelon membership and certificates") {
  SparseEchelon e(4, true);
  e.insert({{0, 1}, {1, 1}});
  e.insert({{1, 1}, {2, 2}});
  e.insert({{0, 1}, {2, -2}});  // dependent: first - second
  CHECK(e.rank() == 2);
  SparseEchelon::Row v{{0, 3}, {1, 5}, {2, 4}};
  auto red = e.reduce_with_certificate(v);
  CHECK(red.remainder.empty());
  // rebuild v from the certificate
  std::vector<SparseEchelon::Row> gens{{{0, 1}, {1, 1}}, {{1, 1}, {2, 2}}, {{0, 1}, {2, -2}}};
  std::vector<Rational> acc(4);
  for (const auto& [g, c] : red.certificate)
    for (const auto& [col, x] : gens[g]) acc[col] += c * x;
  CHECK(acc == std::vector<Rational>{3, 5, 4, 0});
  CHECK_FALSE(e.contains({{3, 1}}));
}

TEST_CASE("polynomial parsing and printing") {
  auto p = parse_poly("x1^2 + x2^3");
  CHECK(p.nvars() == 2);
  CHECK(p.coefficient({2, 0}) == 1);
  CHECK(parse_poly(p.to_string()) == p);
  auto q = parse_poly("3/2*x1*x2 - 5 + x1*x1", 3);
  CHECK(q.nvars() == 3);
  CHECK(q.coefficient({2, 0, 0}) == 1);
  CHECK(q.coefficient({0, 0, 0}) == -5);
  CHECK(parse_poly(q.to_string(), 3) == q);
  CHECK_THROWS(parse_poly("x1 +"));
  CHECK_THROWS(parse_poly("y^2"));
  CHECK_THROWS(parse_poly("x3", 2));
}

TEST_CASE("log derivative") {
  auto f = parse_poly("x1^2 + x1*x2 + x2^3");
  CHECK(f.log_derivative(0) == parse_poly("2*x1^2 + x1*x2"));
  CHECK(f.derivative(1) == parse_poly("x1 + 3*x2^2"));
}
