#include <random>

#include "doctest.h"
#include "newton/errors.hpp"
#include "newton/localalg.hpp"

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

}  // namespace

TEST_CASE("truncated algebra indexes every monomial once") {
  TruncatedLocalAlgebra a(3, 4);
  CHECK(a.size() == 35);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(*a.column(a.monomials()[k]) == k);
  for (std::size_t k = 1; k < a.size(); ++k) {
    CHECK(total_degree(a.monomials()[k - 1]) <= total_degree(a.monomials()[k]));
  }
  CHECK_FALSE(a.column(Exponent{5, 0, 0}));
}

TEST_CASE("m-power bounds") {
  CHECK(*build_ideal(polys({"2*x1^2", "3*x2^3"}, 2), 8).m_power_bound() == 4);
  CHECK(*build_ideal(polys({"x1", "x2"}, 2), 3).m_power_bound() == 1);
  CHECK(*build_ideal(jacobian_generators(parse_poly("x1^2+x2^2")), 3).m_power_bound() == 1);
  auto provisional = build_ideal(polys({"x1^2"}, 2), 6);
  CHECK_FALSE(provisional.finite_colength());
  CHECK_THROWS_AS(provisional.member(mono({2, 0})), ResourceError);
}

TEST_CASE("membership") {
  auto i = build_ideal(polys({"2*x1^2", "3*x2^3"}, 2), 8, true);
  CHECK(i.member(mono({2, 2})));
  CHECK_FALSE(i.member(mono({1, 2})));
  CHECK(i.member(SparsePoly(2)));
  CHECK(i.member(mono({1, 3})));

  auto a = i.express(mono({2, 2}));
  SparsePoly back(2);
  for (std::size_t j = 0; j < a.size(); ++j) back = back + a[j] * i.generators()[j];
  CHECK(back.truncated(8) == mono({2, 2}));
  CHECK_THROWS_AS(i.express(mono({1, 2})), PreconditionError);
}

TEST_CASE("standard monomials and socles") {
  auto i = build_ideal(polys({"2*x1^2", "3*x2^3"}, 2), 8);
  CHECK(i.standard_monomials().size() == 6);
  auto s = socle(i);
  REQUIRE(s.size() == 1);
  CHECK(s[0].terms().size() == 1);
  CHECK(s[0].terms().begin()->first == Exponent{1, 2});

  auto s2 = socle(build_ideal(polys({"2*x1^2", "2*x2^2"}, 2), 6));
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].terms().begin()->first == Exponent{1, 1});

  auto s3 = socle(build_ideal(polys({"x1", "x2"}, 2), 3));
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].terms().begin()->first == Exponent{0, 0});
}

TEST_CASE("socle annihilated by every variable") {
  for (const char* text : kFamily) {
    auto f = parse_poly(text);
    auto i = build_ideal_auto(log_jacobian_generators(f));
    auto s = socle(i);
    CHECK(!s.empty());
    for (const auto& h : s) {
      CHECK_FALSE(i.member(h));
      for (std::size_t v = 0; v < f.nvars(); ++v) {
        Exponent e(f.nvars(), 0);
        e[v] = 1;
        CHECK(i.member(h * SparsePoly::monomial(e)));
      }
    }
  }
}

TEST_CASE("socle Newton order examples") {
  auto r = socle_newton_order(parse_poly("x1^2+x2^3"));
  CHECK(r.nu_socle == Rational(7, 6));
  CHECK(r.match);
  CHECK(r.upper_bound_holds);
  CHECK(socle_newton_order(parse_poly("x1^2+x2^2")).nu_socle == 1);
  CHECK(socle_newton_order(parse_poly("x1^2+x2^2+x3^2")).nu_socle == Rational(3, 2));
}

TEST_CASE("socle Newton order matches n - nu(x) on the regression family") {
  for (const char* text : kFamily) {
    CAPTURE(text);
    auto f = parse_poly(text);
    auto r = socle_newton_order(f);
    CHECK(r.match);
    CHECK(r.upper_bound_holds);
    auto wider = socle_newton_order(f, r.truncation + 2);
    CHECK(wider.nu_socle == r.nu_socle);
    CHECK(wider.socle_basis.size() == r.socle_basis.size());
  }
}

TEST_CASE("membership is stable under wider truncation") {
  auto f = parse_poly("x1^2+x1*x2+x2^3");
  auto gens = log_jacobian_generators(f);
  auto a = build_ideal_auto(gens);
  auto b = build_ideal(gens, a.truncation() + 2);
  for (const auto& m : b.algebra().monomials()) {
    if (total_degree(m) > a.truncation()) break;
    CHECK(a.member(SparsePoly::monomial(m)) == b.member(SparsePoly::monomial(m)));
  }
  CHECK(a.standard_monomials() == b.standard_monomials());
}

TEST_CASE("strictly interior monomials lie in the log-Jacobian ideal") {
  std::mt19937_64 rng(11);
  for (const char* text : kFamily) {
    CAPTURE(text);
    auto f = parse_poly(text);
    const auto n = f.nvars();
    auto delta = newton_polyhedron(f);
    std::uniform_int_distribution<std::int64_t> e(0, 6);
    int tested = 0, failures = 0;
    while (tested < 200) {
      Exponent h(n);
      Exponent g(n);
      for (std::size_t i = 0; i < n; ++i) {
        h[i] = e(rng);
        g[i] = h[i] + 1;
      }
      if (!in_dilate(delta, g, Rational(static_cast<long>(n)), true)) {
        CHECK_THROWS_AS(verify_theorem_0_1_part1(f, SparsePoly::monomial(h)), PreconditionError);
        continue;
      }
      ++tested;
      if (!verify_theorem_0_1_part1(f, SparsePoly::monomial(h))) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("interior monomials: membership examples") {
  auto f = parse_poly("x1^2+x2^3");
  CHECK(verify_theorem_0_1_part1(f, mono({2, 2})));
  CHECK_THROWS_WITH_AS(verify_theorem_0_1_part1(f, mono({1, 2})), "g not in nΔ°", PreconditionError);
  CHECK(verify_theorem_0_1_part1(f, SparsePoly(2)));
}

TEST_CASE("multiplication by x1...xn from P/j to P/i") {
  auto r = jacobian_multiplication_check(parse_poly("x1^2+x2^3"), 20, 5);
  CHECK(r.well_defined);
  CHECK(r.injective);
  CHECK(r.dim_p_mod_j == 2);
  CHECK(r.samples_ok);

  auto q = jacobian_multiplication_check(parse_poly("x1^2+x1*x2+x2^2"), 10, 5);
  CHECK(q.dim_p_mod_j == 1);
  CHECK(q.injective);

  for (const char* text : kFamily) {
    auto m = jacobian_multiplication_check(parse_poly(text), 10, 3);
    CHECK(m.well_defined);
    CHECK(m.injective);
    CHECK(m.samples_ok);
  }
}
