#include "newton/pipeline.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "newton/errors.hpp"

namespace newton {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const PreconditionError*>(&e)) return 2;
  if (dynamic_cast<const ResourceError*>(&e)) return 3;
  return 1;
}

namespace {

RatMatrix random_independent(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  RatMatrix a(rows, cols);
  do {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        a(i, j) = Rational(num(rng), den(rng));
        a(i, j).canonicalize();
      }
    }
  } while (rank(a) != rows);
  return a;
}

void flatten(const Json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

Json detlemma_trials(std::size_t rows, std::size_t cols, int trials, std::uint64_t seed) {
  if (rows == 0 || cols < rows) throw InputError("detlemma needs 1 <= rows <= cols");
  std::mt19937_64 rng(seed);
  std::size_t checked = 0, skipped = 0, failures = 0, corollary_failures = 0;
  Json counterexample = nullptr;
  for (int t = 0; t < trials; ++t) {
    auto lemma = lemma_3_1_check(MinorTable(random_independent(rng, rows, cols)), rows);
    checked += lemma.checked;
    skipped += lemma.skipped;
    failures += lemma.failures + lemma.route_mismatches;
    if (!lemma.ok() && counterexample.is_null()) counterexample = *lemma.counterexample;

    RatMatrix sq;
    do {
      sq = random_independent(rng, rows, cols);
      for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j + 1 < rows; ++j) s += sq(i, j);
        sq(i, rows - 1) = 1 - s;
      }
    } while (rank(sq) != rows);
    auto cor = corollary_3_2_check(MinorTable(sq));
    const bool ok = cor.ok && cor.square_det && (!cor.hypothesis || cor.signed_sum == *cor.square_det);
    if (!ok) {
      ++corollary_failures;
      if (counterexample.is_null()) counterexample = "row-stochastic corollary check failed";
    }
  }
  return {{"rows", rows},
          {"cols", cols},
          {"trials", trials},
          {"seed", seed},
          {"subsets_checked", checked},
          {"subsets_skipped_singular", skipped},
          {"failures", failures},
          {"corollary_failures", corollary_failures},
          {"counterexample", counterexample},
          {"pass", failures == 0 && corollary_failures == 0}};
}

PipelineResult run_verify_all(const PipelineConfig& cfg) {
  PipelineResult out;
  Json& rep = out.report;
  Json summary = Json::array();
  bool pass = true;
  std::string stage;

  auto fail = [&](const std::string& what) {
    pass = false;
    summary.push_back("FAIL " + what);
  };

  try {
    if (cfg.truncation && *cfg.truncation < 2) throw InputError("truncation must be at least 2");
    stage = "parse";
    auto f = parse_poly(cfg.poly_text, cfg.nvars);
    const auto n = f.nvars();
    rep["polynomial"] = to_json(f);
    rep["seed"] = cfg.seed;

    stage = "polyhedron";
    auto delta = newton_polyhedron(f);
    rep["polyhedron"] = to_json(delta);

    stage = "nondegeneracy";
    auto nd = nondegeneracy(f, cfg.primes, cfg.seed);
    rep["nondegeneracy"] = to_json(nd, delta);
    if (!nd.axis_condition || !nd.nondegenerate) {
      fail(nd.axis_condition ? "f is degenerate on some compact face" : "coordinate-axis condition violated");
      for (const auto& v : nd.faces) {
        if (v.has_torus_zero) rep["nondegeneracy_diagnostic"].push_back(to_json(delta, v.face));
      }
      rep["summary"] = summary;
      rep["pass"] = false;
      out.pass = false;
      out.exit_code = 1;
      return out;
    }
    summary.push_back("f is nondegenerate (" + std::to_string(cfg.primes) + " primes)");

    stage = "fan";
    auto sigma = sigma_delta_fan(delta);
    Fan fan = cfg.fan ? fan_from_json(*cfg.fan) : regularize(sigma);
    const bool regular = is_regular(fan);
    const bool refines_sigma = refines(fan, sigma);
    rep["fan"] = {{"sigma_delta", to_json(sigma)},
                  {"regular_fan", to_json(fan)},
                  {"regular", regular},
                  {"refines_sigma_delta", refines_sigma}};
    if (!regular || !refines_sigma) fail("supplied fan is not a regular refinement of Sigma_Delta");

    stage = "faces";
    Json faces = Json::array();
    auto compact = interior_compact_faces(delta);
    for (std::size_t idx = 0; idx < compact.size(); ++idx) {
      const auto& face = compact[idx];
      const int r = face.codim_r(n);
      Json fj = {{"index", idx}, {"face", to_json(delta, face)}};
      auto fc = face_cone(delta, face);
      auto gc = graded_face_cone(delta, fc);
      auto params = select_parameters(face_derivatives(f, delta, face), gc);
      auto kbar = kbar_quotient(gc, params);
      fj["kbar"] = to_json(kbar);
      const Rational top(static_cast<long>(n) - r);
      const bool socle_ok = kbar.socle_degree == top;
      fj["socle_degree_is_n_minus_r"] = socle_ok;
      if (!socle_ok) fail("face " + std::to_string(idx) + ": socle degree != n - r");

      Json residues = Json::array();
      bool all_nonzero = true;
      for (const auto& m : kbar.socle_basis) {
        Exponent h(m);
        for (auto& x : h) x -= 1;
        auto res = verify_theorem_0_1_part2(f, face, SparsePoly::monomial(h), r, cfg.truncation);
        auto rj = to_json(res);
        rj["h"] = SparsePoly::monomial(h).to_string();
        residues.push_back(rj);
        all_nonzero = all_nonzero && res.value != 0 && res.stable;
      }
      fj["residues"] = residues;
      if (!all_nonzero) fail("face " + std::to_string(idx) + ": vanishing residue");

      auto ws = choose_weights(f, face, fan, cfg.seed + idx);
      auto thm = thm_1_3_assumptions(fan, f, ws);
      fj["weights"] = to_json(ws);
      fj["assumptions"] = to_json(thm);
      if (!thm.all()) fail("face " + std::to_string(idx) + ": residue-formula assumptions");
      summary.push_back("face " + std::to_string(idx) + " (dim " + std::to_string(face.dim) +
                        "): Kbar dim " + std::to_string(kbar.total_dim()) + ", socle degree " +
                        to_string(kbar.socle_degree) + ", " + std::to_string(residues.size()) +
                        " nonzero residue(s)");
      faces.push_back(fj);
    }
    rep["faces"] = faces;

    stage = "socle_order";
    auto so = socle_newton_order(f, cfg.truncation);
    rep["socle_order"] = to_json(so);
    rep["nu_x"] = to_json(Rational(static_cast<long>(n)) - so.n_minus_nu_x);
    summary.push_back("socle Newton order " + to_string(so.nu_socle) + ", n - nu(x1...xn) = " +
                      to_string(so.n_minus_nu_x));
    if (!so.match || !so.upper_bound_holds) fail("socle Newton order != n - nu(x1...xn)");

    stage = "multiplication";
    auto mult = jacobian_multiplication_check(f, 20, cfg.seed, cfg.truncation);
    rep["multiplication"] = to_json(mult);
    if (!mult.well_defined || !mult.injective || !mult.samples_ok) fail("x1...xn : P/j -> P/i");

    stage = "detlemma";
    Json det = Json::array();
    for (std::size_t rows = 1; rows <= std::min<std::size_t>(n, 4); ++rows) {
      det.push_back(detlemma_trials(rows, n, cfg.det_trials, cfg.seed + rows));
      if (!det.back()["pass"].get<bool>()) fail("determinant lemma with " + std::to_string(rows) + " rows");
    }
    rep["detlemma"] = det;
    out.exit_code = pass ? 0 : 1;
  } catch (const std::exception& e) {
    pass = false;
    out.exit_code = exit_code_for(e);
    rep["error"] = {{"stage", stage}, {"message", e.what()}};
    summary.push_back("ERROR in stage " + stage + ": " + e.what());
  }
  if (pass) summary.push_back("all checks pass");
  rep["summary"] = summary;
  rep["pass"] = pass;
  out.pass = pass;
  return out;
}

std::string emit_report(const Json& report, std::string_view format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format != "text") throw InputError("unknown format '" + std::string(format) + "' (json or text)");
  std::ostringstream os;
  if (report.is_object() && report.contains("summary")) {
    for (const auto& line : report["summary"]) os << line.get<std::string>() << "\n";
    os << "--\n";
  }
  flatten(report, "", os);
  return os.str();
}

}  // namespace newton
