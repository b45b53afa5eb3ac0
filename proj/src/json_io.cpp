#include "newton/json_io.hpp"

#include "newton/errors.hpp"

namespace newton {

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Integer& z) { return to_string(z); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

Json to_json(const SparsePoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"exponent", m}, {"coefficient", to_json(c)}});
  return {{"nvars", p.nvars()}, {"terms", terms}, {"text", p.to_string()}};
}

Json to_json(const NewtonPolyhedron& delta) {
  Json facets = Json::array();
  for (const auto& f : delta.facets) {
    facets.push_back({{"normal", f.normal}, {"offset", f.offset}, {"compact", f.compact}});
  }
  return {{"nvars", delta.nvars}, {"vertices", delta.vertices}, {"facets", facets}};
}

Json to_json(const NewtonPolyhedron& delta, const FaceDescriptor& face) {
  Json vs = Json::array();
  for (auto k : face.vertex_subset) vs.push_back(delta.vertices[k]);
  return {{"vertices", vs},
          {"recession", face.recession},
          {"dim", face.dim},
          {"compact", face.compact},
          {"in_coordinate_hyperplane", face.in_coordinate_hyperplane},
          {"normal", face.normal_certificate},
          {"r", face.codim_r(delta.nvars)}};
}

Json to_json(const Cone& c) {
  return {{"ambient", c.ambient()}, {"dim", c.dim()}, {"rays", c.rays()}, {"inequalities", c.inequalities()},
          {"equations", c.equations()}};
}

Json to_json(const Fan& fan) {
  Json maximal = Json::array();
  for (auto k : fan.maximal_cones()) maximal.push_back(fan.cones()[k]);
  return {{"ambient", fan.ambient()}, {"rays", fan.rays()}, {"cones", maximal}};
}

namespace {

Json graded_map(const std::map<Rational, std::size_t>& m) {
  Json out = Json::object();
  for (const auto& [d, v] : m) out[to_string(d)] = v;
  return out;
}

}  // namespace

Json to_json(const KbarPresentation& k) {
  Json params = Json::array();
  for (const auto& p : k.parameters) params.push_back(p.to_string());
  Json degs = Json::array();
  for (const auto& d : k.parameter_degrees) degs.push_back(to_json(d));
  Json basis = Json::object();
  for (const auto& [d, ms] : k.basis) basis[to_string(d)] = ms;
  return {{"parameters", params},       {"parameter_degrees", degs}, {"graded_dims", graded_map(k.graded_dims)},
          {"basis", basis},             {"socle_degree", to_json(k.socle_degree)},
          {"socle_basis", k.socle_basis}, {"dimension", k.total_dim()}};
}

Json to_json(const SocleOrderReport& r) {
  Json socle = Json::array();
  for (const auto& s : r.socle_basis) socle.push_back(s.to_string());
  return {{"socle_basis", socle},
          {"nu_socle", to_json(r.nu_socle)},
          {"n_minus_nu_x", to_json(r.n_minus_nu_x)},
          {"match", r.match},
          {"upper_bound_holds", r.upper_bound_holds},
          {"truncation", r.truncation},
          {"m_power_bound", r.m_power_bound}};
}

Json to_json(const MultiplicationReport& r) {
  return {{"well_defined", r.well_defined}, {"injective", r.injective},       {"dim_p_mod_j", r.dim_p_mod_j},
          {"dim_p_mod_i", r.dim_p_mod_i},   {"samples_checked", r.samples_checked}, {"samples_ok", r.samples_ok}};
}

Json to_json(const ResidueResult& r) {
  return {{"value", to_json(r.value)}, {"truncation_used", r.truncation_used}, {"stable", r.stable},
          {"exponents", r.exponents}};
}

Json to_json(const NondegeneracyReport& r, const NewtonPolyhedron& delta) {
  Json faces = Json::array();
  for (const auto& v : r.faces) {
    faces.push_back({{"face", to_json(delta, v.face)},
                     {"monomial", v.monomial},
                     {"has_torus_zero", v.has_torus_zero},
                     {"primes", v.primes}});
  }
  return {{"axis_condition", r.axis_condition}, {"nondegenerate", r.nondegenerate}, {"faces", faces}};
}

Json to_json(const Lemma31Report& r) {
  Json out = {{"checked", r.checked},
              {"skipped", r.skipped},
              {"route_mismatches", r.route_mismatches},
              {"failures", r.failures},
              {"ok", r.ok()}};
  out["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
  return out;
}

Json to_json(const Corollary32Report& r) {
  Json out = {{"hypothesis", r.hypothesis},
              {"signed_sum", to_json(r.signed_sum)},
              {"signed_minor_sum", to_json(r.signed_minor_sum)},
              {"ones_column_det", to_json(r.ones_column_det)},
              {"ok", r.ok}};
  out["square_det"] = r.square_det ? to_json(*r.square_det) : Json(nullptr);
  return out;
}

Json to_json(const KoszulReport& r) {
  return {{"dimension", r.dimension}, {"attempts", r.attempts}, {"generic", r.generic}};
}

Json to_json(const TraceVolumeReport& r) {
  return {{"normalized_volume", to_json(r.normalized_volume)},
          {"ehrhart_volume", to_json(r.ehrhart_volume)},
          {"agree", r.agree},
          {"trace", to_json(r.trace)}};
}

Json to_json(const WeightSystem& ws) {
  Json w = Json::array();
  for (const auto& v : ws.w) w.push_back(to_json(v));
  Json cones = Json::array();
  for (const auto& c : ws.cones) cones.push_back(c.rays);
  return {{"r", ws.r}, {"w", w}, {"admissible_cones", cones}, {"attempts", ws.attempts}};
}

Json to_json(const Thm13Report& r) {
  return {{"valuations", r.valuations},
          {"no_torus_zero", r.no_torus_zero},
          {"c_systems", r.c_systems},
          {"cramer_agrees", r.cramer_agrees},
          {"rays_checked", r.rays_checked},
          {"cones_checked", r.cones_checked},
          {"systems_checked", r.systems_checked},
          {"problems", r.problems}};
}

Fan fan_from_json(const Json& j) {
  try {
    auto n = j.at("ambient").get<std::size_t>();
    auto rays = j.at("rays").get<std::vector<IntVector>>();
    auto cones = j.at("cones").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& r : rays) {
      if (r.size() != n) throw InputError("fan ray has wrong length");
    }
    for (auto& c : cones) {
      for (auto k : c) {
        if (k >= rays.size()) throw InputError("fan cone refers to a missing ray");
      }
      std::sort(c.begin(), c.end());
    }
    return Fan(n, rays, cones);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed fan JSON: ") + e.what());
  }
}

SparsePoly poly_from_json(const Json& j) {
  try {
    SparsePoly p(j.at("nvars").get<std::size_t>());
    for (const auto& t : j.at("terms")) {
      p.add_term(t.at("exponent").get<Exponent>(), parse_rational(t.at("coefficient").get<std::string>()));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace newton
