#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "newton/errors.hpp"
#include "newton/pipeline.hpp"

using namespace newton;

namespace {

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

const FaceDescriptor& face_at(const std::vector<FaceDescriptor>& faces, std::size_t idx) {
  if (idx >= faces.size()) {
    throw InputError("face index " + std::to_string(idx) + " out of range (" + std::to_string(faces.size()) +
                     " compact interior faces)");
  }
  return faces[idx];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton polyhedra, log-Jacobian ideals and their socles"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string output;
  std::size_t nvars = 0;
  std::uint64_t seed = 1;
  app.add_option("--format", format, "json or text");
  app.add_option("--output", output, "write the report to FILE instead of stdout");
  app.add_option("--vars", nvars, "number of variables (default: inferred)");
  app.add_option("--seed", seed, "random seed (NEWTON_SOCLE_SEED overrides)");

  std::string poly_path, g_path, h_path, system_path, fan_path, polytope_path;
  std::optional<int> trunc;
  std::size_t face_idx = 0, rows = 2, cols = 4;
  int r = 0, primes = 3, trials = 100, det_trials = 200;

  std::function<Json()> action;
  auto poly = [&]() { return parse_poly(read_text(poly_path), nvars); };

  auto* c_poly = app.add_subcommand("polyhedron", "Newton polyhedron, faces and compact interior faces");
  c_poly->add_option("--poly", poly_path)->required();
  c_poly->callback([&] {
    action = [&] {
      auto delta = newton_polyhedron(poly());
      Json all = Json::array();
      for (const auto& face : faces(delta)) all.push_back(to_json(delta, face));
      Json interior = Json::array();
      for (const auto& face : interior_compact_faces(delta)) interior.push_back(to_json(delta, face));
      return Json{{"polyhedron", to_json(delta)}, {"faces", all}, {"interior_compact_faces", interior}};
    };
  });

  auto* c_fan = app.add_subcommand("fan", "dual fan Sigma_Delta and a regular refinement");
  c_fan->add_option("--poly", poly_path)->required();
  c_fan->callback([&] {
    action = [&] {
      auto delta = newton_polyhedron(poly());
      auto sigma = sigma_delta_fan(delta);
      auto reg = regularize(sigma);
      return Json{{"sigma_delta", to_json(sigma)},
                  {"regular_fan", to_json(reg)},
                  {"regular", is_regular(reg)},
                  {"refines_sigma_delta", refines(reg, sigma)}};
    };
  });

  auto* c_nu = app.add_subcommand("nu", "Newton order of g with respect to Gamma_+(f)");
  c_nu->add_option("--poly", poly_path)->required();
  c_nu->add_option("--g", g_path)->required();
  c_nu->callback([&] {
    action = [&] {
      auto f = poly();
      auto g = parse_poly(read_text(g_path), f.nvars());
      return Json{{"nu", nu(g, newton_polyhedron(f)).to_string()}};
    };
  });

  auto* c_nd = app.add_subcommand("nondeg", "nondegeneracy on every compact face");
  c_nd->add_option("--poly", poly_path)->required();
  c_nd->add_option("--primes", primes);
  c_nd->callback([&] {
    action = [&] {
      auto f = poly();
      auto rep = nondegeneracy(f, primes, seed);
      auto j = to_json(rep, newton_polyhedron(f));
      j["pass"] = rep.axis_condition && rep.nondegenerate;
      return j;
    };
  });

  auto* c_so = app.add_subcommand("socle-order", "Newton order of the socle of P/i");
  c_so->add_option("--poly", poly_path)->required();
  c_so->add_option("--trunc", trunc);
  c_so->callback([&] {
    action = [&] {
      auto rep = socle_newton_order(poly(), trunc);
      auto j = to_json(rep);
      j["pass"] = rep.match && rep.upper_bound_holds;
      return j;
    };
  });

  auto* c_kbar = app.add_subcommand("kbar", "K_sigma modulo the face derivatives for one face");
  c_kbar->add_option("--poly", poly_path)->required();
  c_kbar->add_option("--face", face_idx)->required();
  c_kbar->callback([&] {
    action = [&] {
      auto f = poly();
      auto delta = newton_polyhedron(f);
      auto faces = interior_compact_faces(delta);
      const auto& face = face_at(faces, face_idx);
      auto fc = face_cone(delta, face);
      auto gc = graded_face_cone(delta, fc);
      auto kbar = kbar_quotient(gc, select_parameters(face_derivatives(f, delta, face), gc));
      return Json{{"face", to_json(delta, face)}, {"kbar", to_json(kbar)}};
    };
  });

  auto* c_res = app.add_subcommand("residue", "Grothendieck residue of g against a system F");
  c_res->add_option("--g", g_path)->required();
  c_res->add_option("--system", system_path, "one polynomial per line")->required();
  c_res->add_option("--trunc", trunc);
  c_res->callback([&] {
    action = [&] {
      auto lines = nonempty_lines(read_text(system_path));
      const auto n = nvars ? nvars : lines.size();
      std::vector<SparsePoly> F;
      for (const auto& l : lines) F.push_back(parse_poly(l, n));
      return to_json(grothendieck_residue(parse_poly(read_text(g_path), n), F, trunc));
    };
  });

  auto* c_t1 = app.add_subcommand("verify-thm1", "supp(x1...xn h) in the interior of n Delta implies h in i");
  c_t1->add_option("--poly", poly_path)->required();
  c_t1->set_help_flag("--help", "Print this help message and exit");
  c_t1->add_option("--h", h_path)->required();
  c_t1->add_option("--trunc", trunc);
  c_t1->callback([&] {
    action = [&] {
      auto f = poly();
      auto h = parse_poly(read_text(h_path), f.nvars());
      const bool member = verify_theorem_0_1_part1(f, h, trunc);
      return Json{{"h", h.to_string()}, {"member", member}, {"pass", member}};
    };
  });

  auto* c_t2 = app.add_subcommand("verify-thm2", "nonvanishing residue for a nonzero socle-degree class");
  c_t2->add_option("--poly", poly_path)->required();
  c_t2->add_option("--face", face_idx)->required();
  c_t2->set_help_flag("--help", "Print this help message and exit");
  c_t2->add_option("--h", h_path)->required();
  c_t2->add_option("--r", r)->required();
  c_t2->add_option("--trunc", trunc);
  c_t2->callback([&] {
    action = [&] {
      auto f = poly();
      auto delta = newton_polyhedron(f);
      auto faces = interior_compact_faces(delta);
      auto h = parse_poly(read_text(h_path), f.nvars());
      auto j = to_json(verify_theorem_0_1_part2(f, face_at(faces, face_idx), h, r, trunc));
      j["pass"] = true;
      return j;
    };
  });

  auto* c_det = app.add_subcommand("detlemma", "random checks of the determinant lemma and its corollary");
  c_det->add_option("--rows", rows);
  c_det->add_option("--cols", cols);
  c_det->add_option("--trials", trials);
  c_det->callback([&] { action = [&] { return detlemma_trials(rows, cols, trials, seed); }; });

  auto* c_kz = app.add_subcommand("koszul", "lattice-point Koszul model and trace for a polytope");
  c_kz->add_option("--polytope", polytope_path, "JSON array of lattice points")->required();
  c_kz->add_option("--trials", trials);
  c_kz->callback([&] {
    action = [&] {
      std::vector<IntVector> pts;
      try {
        pts = Json::parse(read_text(polytope_path)).get<std::vector<IntVector>>();
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed polytope JSON: ") + e.what());
      }
      auto p = polytope_hull(pts);
      std::mt19937_64 rng(seed);
      Json reps = Json::array();
      bool ok = true;
      for (int t = 0; t < trials; ++t) {
        auto k = koszul_random_check(p, rng);
        ok = ok && k.generic;
        reps.push_back(to_json(k));
      }
      auto tr = trace_volume_check(p);
      return Json{{"koszul", reps}, {"trace", to_json(tr)}, {"pass", ok && tr.agree}};
    };
  });

  auto* c_all = app.add_subcommand("verify-all", "full verification pipeline");
  c_all->add_option("--poly", poly_path)->required();
  c_all->add_option("--fan", fan_path, "JSON fan {ambient, rays, cones}");
  c_all->add_option("--trunc", trunc);
  c_all->add_option("--primes", primes);
  c_all->add_option("--det-trials", det_trials);
  c_all->callback([&] {
    action = [&] {
      PipelineConfig cfg;
      cfg.poly_text = read_text(poly_path);
      cfg.nvars = nvars;
      if (!fan_path.empty()) {
        try {
          cfg.fan = Json::parse(read_text(fan_path));
        } catch (const nlohmann::json::exception& e) {
          throw InputError(std::string("malformed fan JSON: ") + e.what());
        }
      }
      cfg.truncation = trunc;
      cfg.primes = primes;
      cfg.seed = seed;
      cfg.det_trials = det_trials;
      auto res = run_verify_all(cfg);
      res.report["exit_code"] = res.exit_code;
      return res.report;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (format != "json" && format != "text") {
    std::cerr << "unknown format '" << format << "' (json or text)\n";
    return 2;
  }
  if (const char* env = std::getenv("NEWTON_SOCLE_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "NEWTON_SOCLE_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  Json report;
  int code = 0;
  try {
    report = action();
    if (report.contains("exit_code")) {
      code = report["exit_code"].get<int>();
      report.erase("exit_code");
    } else if (report.contains("pass") && !report["pass"].get<bool>()) {
      code = 1;
    }
  } catch (const std::exception& e) {
    code = exit_code_for(e);
    report = {{"error", e.what()}, {"pass", false}};
  }
  const auto text = emit_report(report, format);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out || !(out << text)) {
      std::cerr << "cannot write " << output << "\n";
      return 2;
    }
  }
  if (code != 0 && report.contains("error")) std::cerr << "error: " << report["error"].dump() << "\n";
  return code;
}
