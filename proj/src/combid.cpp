#include "newton/combid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "newton/combinatorics.hpp"
#include "newton/errors.hpp"
#include "newton/grobner.hpp"

namespace newton {

namespace {

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::size_t> without(const std::vector<std::size_t>& I, std::size_t pos) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < I.size(); ++t) {
    if (t != pos) out.push_back(I[t]);
  }
  return out;
}

// Nonempty subsets of {0..m-1}, each sorted.
std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= m; ++k) {
    for (auto& s : combinations(m, k)) out.push_back(std::move(s));
  }
  return out;
}

std::string describe(const RatMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << to_string(a(i, j));
  }
  os << "]";
  return os.str();
}

std::size_t rank_of(const std::vector<RatVector>& rows, std::size_t n) {
  if (rows.empty()) return 0;
  return rank(RatMatrix::from_rows(rows, n));
}

}  // namespace

std::optional<AffineCombination> affine_unit_combination(const std::vector<RatVector>& candidates,
                                                         const std::vector<RatVector>& constraints) {
  if (candidates.empty()) return std::nullopt;
  const auto n = candidates.front().size();
  AffineCombination out;
  if (constraints.empty()) {
    out.point = RatVector(n);
    out.directions = nullspace(RatMatrix(0, n));
  } else {
    auto v = RatMatrix::from_rows(constraints, n);
    auto x0 = solve(v, RatVector(constraints.size(), Rational(1)));
    if (!x0) return std::nullopt;
    out.point = *x0;
    out.directions = nullspace(v);
  }
  const auto m = candidates.size();
  RatMatrix sys(1 + out.directions.size(), m);
  RatVector rhs(sys.rows());
  rhs[0] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    sys(0, i) = dot(candidates[i], out.point);
    for (std::size_t t = 0; t < out.directions.size(); ++t) sys(1 + t, i) = dot(candidates[i], out.directions[t]);
  }
  auto c = solve(sys, rhs);
  if (!c) return std::nullopt;
  out.c = *c;
  out.unique = rank(sys) == m;
  return out;
}

SparsePoly apply_weight(const RatVector& w, const SparsePoly& f) {
  SparsePoly g(f.nvars());
  for (const auto& [m, c] : f.terms()) g.add_term(m, c * dot(w, m));
  return g;
}

std::vector<AdmissibleCone> admissible_cones(const SparsePoly& f, const FaceDescriptor& face, const Fan& fan) {
  auto delta = newton_polyhedron(f);
  auto sd = sigma_of_face(delta, face);
  const int r = face.codim_r(f.nvars());
  std::vector<AdmissibleCone> out;
  for (std::size_t k = 0; k < fan.cones().size(); ++k) {
    if (fan.cone_dim(k) != r + 1 || !sd.contains(fan.cone(k))) continue;
    AdmissibleCone ac;
    ac.rays = fan.cones()[k];
    for (auto idx : ac.rays) {
      const auto& l = fan.rays()[idx];
      Rational s(static_cast<long>(support_function(delta, l)));
      RatVector lt = to_rational(l);
      for (auto& x : lt) x /= s;
      ac.l_tilde.push_back(std::move(lt));
    }
    out.push_back(std::move(ac));
  }
  return out;
}

WeightConditions check_weights(const SparsePoly& f, const WeightSystem& ws) {
  const auto n = f.nvars();
  auto delta = newton_polyhedron(f);
  WeightConditions wc;
  if (ws.w.size() != n) throw InputError("weight system needs n covectors");

  wc.newton_polyhedron = true;
  for (std::size_t j = 0; j < n; ++j) {
    auto g = apply_weight(ws.w[j], f);
    bool ok = !g.is_zero();
    for (const auto& v : delta.vertices) ok = ok && g.coefficient(v) != 0;
    for (const auto& facet : delta.facets) {
      if (!ok) break;
      ok = multiplicity(facet.normal, g) == facet.offset;
    }
    if (!ok) {
      wc.newton_polyhedron = false;
      wc.failures.push_back("(i) fails for w_" + std::to_string(j + 1));
    }
  }

  wc.basis = rank_of(ws.w, n) == n;
  if (!wc.basis) wc.failures.push_back("(ii) w is not a basis");

  wc.in_v = true;
  const auto vr = rank_of(ws.v_basis, n);
  for (int i = 0; i <= ws.r; ++i) {
    auto rows = ws.v_basis;
    rows.push_back(ws.w[i]);
    if (rank_of(rows, n) != vr) {
      wc.in_v = false;
      wc.failures.push_back("(iii) w_" + std::to_string(i + 1) + " not in V");
    }
  }

  wc.affine_bases = true;
  for (const auto& cone : ws.cones) {
    for (const auto& J : nonempty_subsets(cone.l_tilde.size())) {
      std::vector<RatVector> cons;
      for (auto t : J) cons.push_back(cone.l_tilde[t]);
      std::vector<RatVector> cands(ws.w.begin() + static_cast<long>(J.size()) - 1, ws.w.end());
      auto sol = affine_unit_combination(cands, cons);
      if (!sol || !sol->unique || sol->directions.size() + 1 != cands.size()) {
        wc.affine_bases = false;
        wc.failures.push_back("(iv) fails for a subset of size " + std::to_string(J.size()));
      }
    }
  }

  wc.normalized = true;
  for (int i = 0; i <= ws.r; ++i) {
    for (auto vi : ws.delta.vertex_subset) {
      if (dot(ws.w[i], delta.vertices[vi]) != 1) {
        wc.normalized = false;
        wc.failures.push_back("(v) w_" + std::to_string(i + 1) + " is not 1 on delta");
        break;
      }
    }
  }
  return wc;
}

WeightSystem choose_weights(const SparsePoly& f, const FaceDescriptor& face, const Fan& fan, std::uint64_t seed,
                            int max_attempts) {
  const auto n = f.nvars();
  auto delta = newton_polyhedron(f);
  if (!face.compact || face.in_coordinate_hyperplane) {
    throw PreconditionError("face must be compact and not in a coordinate hyperplane");
  }
  WeightSystem ws;
  ws.delta = face;
  ws.r = face.codim_r(n);
  ws.cones = admissible_cones(f, face, fan);
  auto sd = sigma_of_face(delta, face);
  for (const auto& ray : sd.rays()) {
    auto rows = ws.v_basis;
    rows.push_back(to_rational(ray));
    if (rank_of(rows, n) > ws.v_basis.size()) ws.v_basis = rows;
  }
  if (static_cast<int>(ws.v_basis.size()) != ws.r + 1) throw VerificationFailure("dim sigma(delta) != r + 1");
  const auto& p0 = delta.vertices[face.vertex_subset.front()];

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::string last;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    ws.w.assign(n, RatVector(n));
    bool zero_on_delta = false;
    for (int i = 0; i <= ws.r; ++i) {
      for (const auto& b : ws.v_basis) {
        const Rational t(coef(rng));
        for (std::size_t c = 0; c < n; ++c) ws.w[i][c] += t * b[c];
      }
      const Rational at = dot(ws.w[i], p0);
      if (at == 0) {
        zero_on_delta = true;
        continue;
      }
      for (auto& x : ws.w[i]) x /= at;
    }
    for (std::size_t i = ws.r + 1; i < n; ++i) {
      for (auto& x : ws.w[i]) x = coef(rng);
    }
    ws.attempts = attempt;
    if (zero_on_delta) {
      last = "(v) some w_i vanishes on delta";
      continue;
    }
    auto wc = check_weights(f, ws);
    if (wc.all()) return ws;
    last = wc.failures.front();
  }
  throw ResourceError("no admissible weights after " + std::to_string(max_attempts) + " samples: " + last);
}

CSystem solve_c(const WeightSystem& ws, const std::vector<RatVector>& l_tilde_j) {
  const auto k = l_tilde_j.size();
  if (k == 0 || k > ws.w.size()) throw InputError("subset size out of range");
  std::vector<RatVector> cands(ws.w.begin() + static_cast<long>(k) - 1, ws.w.end());
  auto sol = affine_unit_combination(cands, l_tilde_j);
  if (!sol || !sol->unique) throw PreconditionError("(iv) violated");
  const auto n = ws.w.size();
  RatVector u(n);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t c = 0; c < n; ++c) u[c] += sol->c[i] * cands[i][c];
  }
  bool ok = dot(u, sol->point) == 1;
  for (const auto& d : sol->directions) ok = ok && dot(u, d) == 0;
  if (!ok) throw VerificationFailure("c-system does not restrict to 1 on E_J");
  return {l_tilde_j, k, sol->c, *sol};
}

MinorTable::MinorTable(RatMatrix a) : a_(std::move(a)) {
  if (rank(a_) != a_.rows()) throw PreconditionError("rows must be linearly independent");
}

Rational MinorTable::minor(const std::vector<std::size_t>& I, const std::vector<std::size_t>& J) const {
  if (I.size() != J.size()) throw InputError("minor needs |I| = |J|");
  if (I.empty()) return 1;
  return determinant(a_.submatrix(I, J));
}

int sequence_sign(const std::vector<std::size_t>& seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] > seq[j]) sign = -sign;
    }
  }
  return sign;
}

std::optional<RatVector> c_direct(const MinorTable& a, const std::vector<std::size_t>& I) {
  const auto n = a.cols();
  const auto k = I.size();
  std::vector<RatVector> cands;
  for (std::size_t i = k - 1; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    cands.push_back(std::move(e));
  }
  std::vector<RatVector> cons;
  for (auto j : I) cons.push_back(a.matrix().row(j));
  auto sol = affine_unit_combination(cands, cons);
  if (!sol || !sol->unique) return std::nullopt;
  return sol->c;
}

std::optional<RatVector> c_cramer(const MinorTable& a, const std::vector<std::size_t>& I) {
  const auto k = I.size();
  const auto cols = iota_vec(k - 1);
  std::vector<Rational> minors;
  Rational denom = 0;
  for (std::size_t t = 0; t < k; ++t) {
    minors.push_back(a.minor(without(I, t), cols));
    denom += (t % 2 == 0 ? 1 : -1) * minors.back();
  }
  if (denom == 0) return std::nullopt;
  RatVector c;
  for (std::size_t l = k - 1; l < a.cols(); ++l) {
    Rational num = 0;
    for (std::size_t t = 0; t < k; ++t) num += (t % 2 == 0 ? 1 : -1) * a.matrix()(I[t], l) * minors[t];
    c.push_back(num / denom);
  }
  return c;
}

namespace {

class CTable {
 public:
  explicit CTable(const MinorTable& a) : a_(a) {}

  const std::optional<RatVector>& get(const std::vector<std::size_t>& I) {
    auto it = memo_.find(I);
    if (it != memo_.end()) return it->second;
    auto cramer = c_cramer(a_, I);
    auto direct = c_direct(a_, I);
    if (cramer.has_value() != direct.has_value() || (cramer && *cramer != *direct)) ++mismatches;
    return memo_.emplace(I, cramer ? cramer : direct).first->second;
  }

  // sum over orderings p of I of sign(p) * prod_{t < depth} c_{t+1}^{p_1..p_{t+1}}
  std::optional<Rational> signed_sum(const std::vector<std::size_t>& I, std::size_t depth) {
    auto perm = I;
    Rational total = 0;
    do {
      Rational prod = sequence_sign(perm);
      for (std::size_t t = 0; t < depth; ++t) {
        std::vector<std::size_t> prefix(perm.begin(), perm.begin() + static_cast<long>(t) + 1);
        std::sort(prefix.begin(), prefix.end());
        const auto& c = get(prefix);
        if (!c) return std::nullopt;
        prod *= (*c)[0];
      }
      total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
  }

  std::size_t mismatches = 0;

 private:
  const MinorTable& a_;
  std::map<std::vector<std::size_t>, std::optional<RatVector>> memo_;
};

}  // namespace

Lemma31Report lemma_3_1_check(const MinorTable& a, std::size_t k_max) {
  Lemma31Report rep;
  CTable table(a);
  const auto rows = a.rows();
  for (std::size_t k = 1; k <= std::min(k_max, std::min(rows, a.cols())); ++k) {
    for (const auto& I : combinations(rows, k)) {
      auto sum = table.signed_sum(I, k);
      if (!sum) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      const auto minor = a.minor(I, iota_vec(k));
      if (*sum != minor) {
        ++rep.failures;
        if (!rep.counterexample) {
          rep.counterexample = "A = " + describe(a.matrix()) + ", |I| = " + std::to_string(k) + ": sum " +
                               to_string(*sum) + " vs minor " + to_string(minor);
        }
      }
    }
  }
  rep.route_mismatches = table.mismatches;
  if (rep.route_mismatches && !rep.counterexample) {
    rep.counterexample = "A = " + describe(a.matrix()) + ": direct and Cramer coefficients differ";
  }
  return rep;
}

Corollary32Report corollary_3_2_check(const MinorTable& a) {
  const auto rows = a.rows();
  if (rows == 0 || a.cols() + 1 < rows) throw InputError("corollary check needs n >= r");
  const auto r = rows - 1;
  const auto I = iota_vec(rows);
  Corollary32Report rep;
  CTable table(a);
  auto sum = table.signed_sum(I, r);
  rep.hypothesis = sum.has_value() && table.mismatches == 0;
  if (sum) rep.signed_sum = *sum;

  const auto first_r = iota_vec(r);
  rep.signed_minor_sum = 0;
  for (std::size_t t = 0; t < rows; ++t) {
    const bool odd = (r + 1 + t + 1) % 2 == 1;
    rep.signed_minor_sum += (odd ? -1 : 1) * a.minor(without(I, t), first_r);
  }
  RatMatrix bordered(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < r; ++j) bordered(i, j) = a.matrix()(i, j);
    bordered(i, r) = 1;
  }
  rep.ones_column_det = determinant(bordered);
  if (a.cols() >= rows) {
    bool stochastic = true;
    for (std::size_t i = 0; i < rows && stochastic; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < rows; ++j) s += a.matrix()(i, j);
      stochastic = s == 1;
    }
    if (stochastic) rep.square_det = a.minor(I, I);
  }
  rep.ok = (!rep.hypothesis || rep.signed_sum == rep.signed_minor_sum) &&
           rep.signed_minor_sum == rep.ones_column_det &&
           (!rep.square_det || *rep.square_det == rep.ones_column_det);
  return rep;
}

MinorTable weight_coordinates(const std::vector<RatVector>& l_tilde, const std::vector<RatVector>& w) {
  const auto n = w.size();
  auto wt = RatMatrix::from_rows(w, n).transpose();
  RatMatrix a(l_tilde.size(), n);
  for (std::size_t i = 0; i < l_tilde.size(); ++i) {
    auto row = solve(wt, l_tilde[i]);
    if (!row) throw PreconditionError("w is not a basis");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = (*row)[j];
  }
  return MinorTable(a);
}

Thm13Report thm_1_3_assumptions(const Fan& fan, const SparsePoly& f, const WeightSystem& ws) {
  const auto n = f.nvars();
  auto delta = newton_polyhedron(f);
  Thm13Report rep;
  std::vector<SparsePoly> g;
  for (const auto& w : ws.w) g.push_back(apply_weight(w, f));

  rep.valuations = true;
  for (const auto& ray : edges_L(fan, f)) {
    ++rep.rays_checked;
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j].is_zero() || multiplicity(ray.l_lambda, g[j]) != ray.v_lambda_f) {
        rep.valuations = false;
        rep.problems.push_back("(2) v(g_" + std::to_string(j + 1) + ") != v(f) on a ray");
      }
    }
  }

  rep.no_torus_zero = true;
  auto sd = sigma_of_face(delta, ws.delta);
  for (std::size_t k = 0; k < fan.cones().size(); ++k) {
    const int dim = fan.cone_dim(k);
    if (dim == 0) continue;
    auto cone = fan.cone(k);
    if (!sd.contains(cone)) continue;
    auto a = cone.interior_point();
    if (std::any_of(a.begin(), a.end(), [](std::int64_t x) { return x <= 0; })) continue;
    const auto s = support_function(delta, a);
    std::vector<SparsePoly> parts;
    for (std::size_t j = static_cast<std::size_t>(dim) - 1; j < n; ++j) {
      SparsePoly part(n);
      for (const auto& [m, c] : g[j].terms()) {
        if (dot(a, m) == s) part.add_term(m, c);
      }
      parts.push_back(std::move(part));
    }
    ++rep.cones_checked;
    if (torus_has_zero_exact(parts)) {
      rep.no_torus_zero = false;
      rep.problems.push_back("(3b) face system of a " + std::to_string(dim) + "-cone has a torus zero");
    }
  }

  rep.c_systems = true;
  rep.cramer_agrees = true;
  for (const auto& cone : ws.cones) {
    auto table = weight_coordinates(cone.l_tilde, ws.w);
    for (const auto& J : nonempty_subsets(cone.l_tilde.size())) {
      std::vector<RatVector> lj;
      for (auto t : J) lj.push_back(cone.l_tilde[t]);
      ++rep.systems_checked;
      try {
        auto cs = solve_c(ws, lj);
        auto cramer = c_cramer(table, J);
        if (!cramer || *cramer != cs.c) {
          rep.cramer_agrees = false;
          rep.problems.push_back("(4) Cramer coefficients differ from the direct solution");
        }
      } catch (const PreconditionError&) {
        rep.c_systems = false;
        rep.problems.push_back("(4) c-system singular for a subset of size " + std::to_string(J.size()));
      }
    }
  }
  return rep;
}

}  // namespace newton
