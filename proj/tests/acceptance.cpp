// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "newton/errors.hpp"
#include "newton/pipeline.hpp"

using namespace newton;

namespace {

// Time limits in seconds. All other comparisons are exact.
constexpr double kFanLimit = 1.0;
constexpr double kSocleLimit = 5.0;
constexpr double kRegularizeTotalLimit = 10.0;

const char* const kFamily[] = {"x1^2+x2^3", "x1^2+x2^2", "x1^2+x1*x2+x2^3",
                               "x1^3+x2^3", "x1^2+x2^5", "x1^2+x2^2+x3^2"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

FaceDescriptor face_with_vertices(const NewtonPolyhedron& delta, std::vector<IntVector> want) {
  std::sort(want.begin(), want.end());
  for (const auto& face : interior_compact_faces(delta)) {
    std::vector<IntVector> vs;
    for (auto k : face.vertex_subset) vs.push_back(delta.vertices[k]);
    std::sort(vs.begin(), vs.end());
    if (vs == want) return face;
  }
  throw VerificationFailure("face not found");
}

std::set<IntVector> ray_set(const Fan& fan) { return {fan.rays().begin(), fan.rays().end()}; }

void c1(Check& c) {
  const std::pair<const char*, std::set<IntVector>> cases[] = {
      {"x1^2+x2^3", {{1, 0}, {0, 1}, {3, 2}}},
      {"x1^2+x1*x2+x2^3", {{1, 0}, {0, 1}, {1, 1}, {2, 1}}},
  };
  for (const auto& [poly, rays] : cases) {
    auto t0 = std::chrono::steady_clock::now();
    auto fan = sigma_delta_fan(newton_polyhedron(parse_poly(poly)));
    const double dt = seconds_since(t0);
    c.require(ray_set(fan) == rays, std::string("rays of ") + poly);
    c.require(dt < kFanLimit, std::string("time for ") + poly);
  }
}

void c2(Check& c) {
  auto cusp = parse_poly("x1^2+x2^3");
  c.require(nu(SparsePoly::product_of_variables(2), newton_polyhedron(cusp)).value() == Rational(5, 6), "nu(x1x2)");
  const std::pair<const char*, Rational> cases[] = {
      {"x1^2+x2^3", Rational(7, 6)}, {"x1^2+x2^2", Rational(1)}, {"x1^2+x2^2+x3^2", Rational(3, 2)}};
  for (const auto& [poly, want] : cases) {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = socle_newton_order(parse_poly(poly));
    const double dt = seconds_since(t0);
    c.require(rep.nu_socle == want && rep.match && rep.upper_bound_holds, std::string("socle order of ") + poly);
    c.require(dt < kSocleLimit, std::string("time for ") + poly);
    c.note << " " << poly << ":" << to_string(rep.nu_socle);
  }
}

KbarPresentation kbar_for(const SparsePoly& f, const FaceDescriptor& face) {
  auto delta = newton_polyhedron(f);
  auto fc = face_cone(delta, face);
  auto gc = graded_face_cone(delta, fc);
  return kbar_quotient(gc, select_parameters(face_derivatives(f, delta, face), gc));
}

void c3(Check& c) {
  auto f = parse_poly("x1^2+x2^3");
  auto edge = kbar_for(f, face_with_vertices(newton_polyhedron(f), {{2, 0}, {0, 3}}));
  c.require(edge.total_dim() == 6, "edge dimension 6");
  c.require(edge.socle_degree == 2 && edge.socle_basis == std::vector<IntVector>{{2, 3}}, "edge socle x1^2x2^3");
  auto g = parse_poly("x1^2+x1*x2+x2^3");
  auto vertex = kbar_for(g, face_with_vertices(newton_polyhedron(g), {{1, 1}}));
  c.require(vertex.total_dim() == 1 && vertex.socle_degree == 1, "vertex dimension 1, socle degree 1");
}

void c4(Check& c) {
  struct Case {
    const char* poly;
    std::vector<IntVector> face;
    IntVector h;
    int r;
    std::optional<Rational> want;
  };
  const Case cases[] = {{"x1^2+x2^3", {{2, 0}, {0, 3}}, {1, 2}, 0, Rational(1, 6)},
                        {"x1^2+x2^2", {{2, 0}, {0, 2}}, {1, 1}, 0, Rational(1, 4)},
                        {"x1^2+x1*x2+x2^3", {{1, 1}}, {0, 0}, 1, std::nullopt}};
  for (const auto& k : cases) {
    auto f = parse_poly(k.poly);
    auto res = verify_theorem_0_1_part2(f, face_with_vertices(newton_polyhedron(f), k.face),
                                        SparsePoly::monomial(k.h), k.r);
    c.require(res.stable, std::string("stable at D and D+2 for ") + k.poly);
    c.require(k.want ? res.value == *k.want : res.value != 0, std::string("residue for ") + k.poly);
    c.note << " " << k.poly << ":" << to_string(res.value);
  }
}

void c5(Check& c) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> e(0, 6);
  std::size_t failures = 0;
  for (const char* poly : kFamily) {
    auto f = parse_poly(poly);
    const auto n = f.nvars();
    auto delta = newton_polyhedron(f);
    auto ideal = build_ideal_auto(log_jacobian_generators(f));
    int tested = 0;
    while (tested < 200) {
      Exponent h(n), g(n);
      for (std::size_t i = 0; i < n; ++i) {
        h[i] = e(rng);
        g[i] = h[i] + 1;
      }
      if (!in_dilate(delta, g, Rational(static_cast<long>(n)), true)) continue;
      ++tested;
      if (!ideal.member(SparsePoly::monomial(h))) ++failures;
    }
  }
  c.require(failures == 0, "membership failures");
  c.note << " 6x200 monomials, failures " << failures;
}

void c6(Check& c) {
  std::size_t checked = 0, skipped = 0, failures = 0, configs = 0;
  for (std::size_t rows = 1; rows <= 4; ++rows) {
    for (std::size_t cols = rows; cols <= 6; ++cols) {
      auto rep = detlemma_trials(rows, cols, 1000, 1000 * rows + cols);
      ++configs;
      checked += rep["subsets_checked"].get<std::size_t>();
      skipped += rep["subsets_skipped_singular"].get<std::size_t>();
      failures += rep["failures"].get<std::size_t>() + rep["corollary_failures"].get<std::size_t>();
    }
  }
  c.require(failures == 0, "identity failures");
  c.note << " " << configs << " shapes x 1000 matrices, subsets " << checked << ", certified singular " << skipped;
}

void c7(Check& c) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> ent(0, 3), lam(1, 3);
  int cones = 0;
  while (cones < 20) {
    const std::size_t k = cones % 2 == 0 ? 2 : 3;
    std::vector<IntVector> gens(k, IntVector(k));
    for (auto& g : gens) {
      for (auto& x : g) x = ent(rng);
      g = primitive(g);
    }
    if (rank(gens, k) != k) continue;
    RatVector lambda(k);
    for (auto& x : lambda) x = Rational(lam(rng));
    GradedCone gc(Cone::from_generators(gens, k), lambda);
    std::vector<SparsePoly> params;
    std::vector<Rational> alphas;
    Rational top = 0;
    for (const auto& m : gc.sigma().rays()) {
      params.push_back(SparsePoly::monomial(m));
      alphas.push_back(gc.degree(m));
      top += alphas.back();
    }
    auto ps = poincare_series(gc, top + 2);
    c.require(ps.simplicial && ps.closed_form_matches, "closed form");
    c.require(ps.value_at_infinity && *ps.value_at_infinity == (k % 2 == 0 ? 1 : -1), "P(K)(inf) = (-1)^k");
    auto kb = kbar_quotient(gc, params);
    auto pred = kbar_prediction(gc, alphas, kb.socle_degree);
    std::map<Rational, Integer> got, want;
    for (const auto& [t, d] : kb.graded_dims) got[t] = Integer(static_cast<unsigned long>(d));
    for (const auto& [t, d] : pred) {
      if (d != 0) want[t] = d;
    }
    c.require(got == want, "P(K) prod(1 - t^a) = P(Kbar)");
    ++cones;
  }
  c.note << " 20 cones";
}

void c8(Check& c) {
  std::mt19937_64 rng(8);
  const std::pair<const char*, std::vector<IntVector>> polys[] = {
      {"square", {{0, 0}, {1, 0}, {0, 1}, {1, 1}}},
      {"triangle", {{0, 0}, {2, 0}, {0, 3}}},
      {"cube", {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}}};
  for (const auto& [name, pts] : polys) {
    auto p = polytope_hull(pts);
    for (int t = 0; t < 10; ++t) {
      auto k = koszul_random_check(p, rng);
      c.require(k.generic && k.dimension == 1, std::string("koszul dimension on ") + name);
    }
    auto tr = trace_volume_check(p);
    c.require(tr.agree && tr.trace == tr.normalized_volume, std::string("trace on ") + name);
    c.note << " " << name << ":" << to_string(tr.trace);
  }
}

void c9(Check& c) {
  c.require(nondegenerate(parse_poly("x1^2+x2^3"), 3, 9), "x^2+y^3 nondegenerate");
  c.require(!nondegenerate(parse_poly("x1^2+2*x1*x2+x2^2"), 3, 9), "(x+y)^2 degenerate");
  for (const char* poly : kFamily) {
    auto rep = nondegeneracy(parse_poly(poly), 3, 9);
    bool agreed = true;
    for (const auto& v : rep.faces) agreed = agreed && (v.monomial || v.primes.size() == 3);
    c.require(rep.nondegenerate && agreed, std::string("3-prime agreement on ") + poly);
  }
}

void c10(Check& c) {
  for (const char* poly : kFamily) {
    auto rep = jacobian_multiplication_check(parse_poly(poly), 20, 10);
    c.require(rep.well_defined && rep.injective && rep.samples_ok, std::string("multiplication map for ") + poly);
  }
}

void c11(Check& c) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> axis(1, 7), coord(0, 6), count(0, 4);
  auto t0 = std::chrono::steady_clock::now();
  for (int t = 0; t < 20; ++t) {
    std::vector<Exponent> pts = {{axis(rng), 0}, {0, axis(rng)}};
    for (auto k = count(rng); k > 0; --k) pts.push_back({coord(rng), coord(rng)});
    auto sigma = sigma_delta_fan(newton_polyhedron(pts, 2));
    auto reg = regularize(sigma);
    c.require(is_regular(reg), "regular");
    c.require(refines(reg, sigma), "refines");
    c.require(reg.covers_orthant(), "support");
    c.require(reg.ray_index({1, 0}) && reg.ray_index({0, 1}), "coordinate rays");
  }
  const double dt = seconds_since(t0);
  c.require(dt < kRegularizeTotalLimit, "total time");
}

void c12(Check& c) {
  PipelineConfig cfg;
  cfg.poly_text = "x1^2+x2^3";
  cfg.seed = 12;
  auto a = emit_report(run_verify_all(cfg).report, "json");
  auto b = emit_report(run_verify_all(cfg).report, "json");
  c.require(a == b, "byte-identical JSON");
  c.require(Json::parse(a)["pass"].get<bool>(), "verify-all passes");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"dual fan rays", c1},
      {"socle Newton order", c2},
      {"Kbar dimensions and socles", c3},
      {"nonvanishing residues", c4},
      {"interior monomials lie in i", c5},
      {"determinant lemma and corollary", c6},
      {"Poincare series", c7},
      {"Koszul model and trace", c8},
      {"nondegeneracy", c9},
      {"multiplication P/j -> P/i", c10},
      {"regularization", c11},
      {"determinism", c12},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.note << " [exception: " << e.what() << "]";
    }
    std::cout << "criterion " << idx << " " << (c.ok ? "PASS" : "FAIL") << ": " << name << " ("
              << seconds_since(t0) << " s)" << c.note.str() << "\n";
    if (!c.ok) ++failed;
  }
  std::cout << (failed == 0 ? "all 12 criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
