#include "newton/facering.hpp"

#include <algorithm>
#include <cmath>

#include "newton/errors.hpp"

namespace newton {

namespace {

std::int64_t floor_of(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_int64(z);
}

std::int64_t ceil_of(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_int64(z);
}

using ColumnMap = std::map<IntVector, std::size_t>;

ColumnMap column_map(const std::vector<IntVector>& mons) {
  ColumnMap cols;
  for (std::size_t i = 0; i < mons.size(); ++i) cols.emplace(mons[i], i);
  return cols;
}

SparseEchelon::Row to_row(const SparsePoly& p, const ColumnMap& cols) {
  std::map<std::size_t, Rational> acc;
  for (const auto& [m, c] : p.terms()) {
    auto it = cols.find(m);
    if (it == cols.end()) throw VerificationFailure("product left its graded piece");
    acc[it->second] += c;
  }
  SparseEchelon::Row row;
  for (auto& [k, c] : acc) {
    if (c != 0) row.emplace_back(k, c);
  }
  return row;
}

/// Span of params_i * K(t - alpha_i) inside K(t).
SparseEchelon image_in_degree(const std::vector<SparsePoly>& params, const std::vector<Rational>& alphas,
                              const Rational& t, const std::map<Rational, std::vector<IntVector>>& kpts,
                              const ColumnMap& cols) {
  SparseEchelon e(cols.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto it = kpts.find(t - alphas[i]);
    if (it == kpts.end()) continue;
    for (const auto& m : it->second) e.insert(to_row(params[i].shifted(m), cols));
  }
  return e;
}

}  // namespace

GradedCone::GradedCone(Cone sigma, RatVector lambda) : sigma_(std::move(sigma)), lambda_(std::move(lambda)) {
  if (!sigma_.is_pointed()) throw PreconditionError("graded cone must be pointed");
  if (lambda_.size() != sigma_.ambient()) throw InputError("grading length does not match dimension");
  for (const auto& r : sigma_.rays()) {
    if (dot(lambda_, r) <= 0) throw PreconditionError("grading is not positive on the cone");
  }
  std::vector<Rational> values;
  for (const auto& b : integer_kernel(sigma_.equations(), sigma_.ambient())) values.push_back(dot(lambda_, b));
  denominator_ = lcm_of_denominators(values);
}

std::map<Rational, std::vector<IntVector>> GradedCone::points_up_to(const Rational& top, bool interior) const {
  const std::size_t n = sigma_.ambient();
  std::map<Rational, std::vector<IntVector>> out;
  if (top < 0) return out;
  IntVector lo(n, 0), hi(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Rational l = 0, h = 0;
    for (const auto& r : sigma_.rays()) {
      Rational scale = top / dot(lambda_, r);
      if (r[i] < 0) l += scale * static_cast<long>(r[i]);
      if (r[i] > 0) h += scale * static_cast<long>(r[i]);
    }
    lo[i] = ceil_of(l);
    hi[i] = floor_of(h);
  }
  IntVector m = lo;
  while (true) {
    bool inside = interior ? sigma_.contains_relative_interior(m) : sigma_.contains(m);
    if (inside) {
      Rational d = degree(m);
      if (d <= top) out[d].push_back(m);
    }
    std::size_t i = n;
    while (i > 0 && m[i - 1] == hi[i - 1]) {
      m[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) break;
    ++m[i - 1];
  }
  return out;
}

std::vector<IntVector> GradedCone::piece(const Rational& deg, bool interior) const {
  auto pts = points_up_to(deg, interior);
  auto it = pts.find(deg);
  return it == pts.end() ? std::vector<IntVector>{} : it->second;
}

FaceCone face_cone(const NewtonPolyhedron& delta, const FaceDescriptor& face) {
  if (!face.compact || face.in_coordinate_hyperplane)
    throw PreconditionError("face must be compact and not in a coordinate hyperplane");
  std::vector<IntVector> gens;
  for (auto v : face.vertex_subset) gens.push_back(delta.vertices[v]);
  FaceCone fc{face, Cone::from_generators(gens, delta.nvars), face.codim_r(delta.nvars)};
  return fc;
}

GradingForm grading_form(const NewtonPolyhedron& delta, const FaceCone& fc) {
  const auto n = delta.nvars;
  std::vector<IntVector> basis;
  for (auto v : fc.delta.vertex_subset) {
    auto trial = basis;
    trial.push_back(delta.vertices[v]);
    if (rank(trial, n) == trial.size()) basis = std::move(trial);
  }
  if (basis.empty()) throw PreconditionError("no grading form");
  RatMatrix b = RatMatrix::from_int_rows(basis, n);
  RatMatrix bbt(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) bbt(i, j) = static_cast<long>(dot(basis[i], basis[j]));
  RatVector ones(basis.size(), Rational(1));
  auto y = solve(bbt, ones);
  if (!y) throw PreconditionError("no grading form");
  GradingForm g;
  g.l_tilde = b.transpose().apply(*y);
  for (auto v : fc.delta.vertex_subset) {
    if (dot(g.l_tilde, delta.vertices[v]) != 1) throw PreconditionError("no grading form");
  }
  std::vector<Rational> values;
  for (const auto& z : integer_kernel(fc.sigma.equations(), n)) values.push_back(dot(g.l_tilde, z));
  g.denominator = lcm_of_denominators(values);
  return g;
}

GradedCone graded_face_cone(const NewtonPolyhedron& delta, const FaceCone& fc) {
  return GradedCone(fc.sigma, grading_form(delta, fc).l_tilde);
}

std::vector<SparsePoly> face_derivatives(const SparsePoly& f, const NewtonPolyhedron& delta,
                                         const FaceDescriptor& face) {
  SparsePoly fd = face_part(f, delta, face);
  std::vector<SparsePoly> out;
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(fd.log_derivative(i));
  return out;
}

std::size_t KbarPresentation::total_dim() const {
  std::size_t s = 0;
  for (const auto& [t, d] : graded_dims) s += d;
  return s;
}

Rational homogeneous_degree(const SparsePoly& g, const GradedCone& gc) {
  if (g.is_zero()) throw PreconditionError("zero element has no degree");
  std::optional<Rational> deg;
  for (const auto& [m, c] : g.terms()) {
    Rational d = gc.degree(m);
    if (deg && *deg != d) throw PreconditionError("element is not homogeneous");
    deg = d;
  }
  return *deg;
}

KbarPresentation kbar_quotient(const GradedCone& gc, const std::vector<SparsePoly>& params,
                               std::optional<Rational> max_degree) {
  KbarPresentation kb;
  kb.parameters = params;
  Rational sum = 0, top = 0;
  for (const auto& p : params) {
    for (const auto& [m, c] : p.terms()) {
      if (!gc.sigma().contains(m)) throw PreconditionError("parameter not in the semigroup ring");
    }
    Rational a = homogeneous_degree(p, gc);
    if (a <= 0) throw PreconditionError("parameter of non-positive degree");
    kb.parameter_degrees.push_back(a);
    sum += a;
    top = std::max(top, a);
  }
  Rational limit = sum + top;
  if (max_degree && *max_degree > limit) limit = *max_degree;
  auto kpts = gc.points_up_to(limit, true);
  for (const auto& [t, mons] : kpts) {
    auto cols = column_map(mons);
    auto e = image_in_degree(params, kb.parameter_degrees, t, kpts, cols);
    std::size_t dim = mons.size() - e.rank();
    if (dim == 0) continue;
    kb.graded_dims[t] = dim;
    auto& b = kb.basis[t];
    for (std::size_t k = 0; k < mons.size(); ++k) {
      if (!e.is_pivot(k)) b.push_back(mons[k]);
    }
  }
  if (kb.graded_dims.empty()) throw PreconditionError("not a system of parameters");
  kb.socle_degree = kb.graded_dims.rbegin()->first;
  if (kb.socle_degree > sum) throw PreconditionError("not a system of parameters");
  if (kb.socle_degree != sum)
    throw VerificationFailure("socle degree " + to_string(kb.socle_degree) + " differs from " + to_string(sum));
  kb.socle_basis = kb.basis[kb.socle_degree];
  return kb;
}

std::map<Rational, Integer> kbar_prediction(const GradedCone& gc, const std::vector<Rational>& alphas,
                                            const Rational& through) {
  std::map<Rational, Integer> series;
  for (const auto& [t, mons] : gc.points_up_to(through, true)) series[t] = static_cast<unsigned long>(mons.size());
  for (const auto& a : alphas) {
    std::map<Rational, Integer> next = series;
    for (const auto& [t, c] : series) {
      if (t + a <= through) next[t + a] -= c;
    }
    series = std::move(next);
  }
  std::erase_if(series, [](const auto& kv) { return kv.second == 0; });
  return series;
}

std::vector<SparsePoly> select_parameters(const std::vector<SparsePoly>& derivs, const GradedCone& gc) {
  const auto k = static_cast<std::size_t>(gc.dim());
  ColumnMap cols;
  for (const auto& d : derivs) {
    for (const auto& [m, c] : d.terms()) cols.emplace(m, 0);
  }
  std::size_t idx = 0;
  for (auto& [m, i] : cols) i = idx++;
  SparseEchelon e(cols.size());
  std::vector<SparsePoly> chosen;
  for (const auto& d : derivs) {
    if (chosen.size() == k) break;
    if (d.is_zero()) continue;
    if (e.insert(to_row(d, cols))) chosen.push_back(d);
  }
  if (chosen.size() < k) throw PreconditionError("degenerate face data");
  auto kb = kbar_quotient(gc, chosen);
  auto pred = kbar_prediction(gc, kb.parameter_degrees, kb.socle_degree);
  for (const auto& [t, c] : pred) {
    auto it = kb.graded_dims.find(t);
    Integer have = it == kb.graded_dims.end() ? Integer(0) : Integer(static_cast<unsigned long>(it->second));
    if (have != c) throw PreconditionError("selected parameters are not a regular sequence");
  }
  for (const auto& [t, d] : kb.graded_dims) {
    if (!pred.count(t)) throw PreconditionError("selected parameters are not a regular sequence");
  }
  return chosen;
}

PoincareSeries poincare_series(const GradedCone& gc, const Rational& truncation) {
  PoincareSeries ps;
  for (const auto& [t, mons] : gc.points_up_to(truncation, false)) ps.a_coefficients[t] = mons.size();
  for (const auto& [t, mons] : gc.points_up_to(truncation, true)) ps.k_coefficients[t] = mons.size();
  const Cone& s = gc.sigma();
  ps.simplicial = s.is_simplicial();
  if (!ps.simplicial) return ps;

  const auto n = s.ambient();
  const auto& rays = s.rays();
  Rational beta = 0;
  for (const auto& r : rays) {
    ps.denominator_degrees.push_back(gc.degree(r));
    beta += gc.degree(r);
  }
  RatMatrix mt = RatMatrix::from_int_rows(rays, n).transpose();
  for (const auto& [t, mons] : gc.points_up_to(beta, true)) {
    for (const auto& m : mons) {
      auto a = solve(mt, to_rational(m));
      bool in_box = std::all_of(a->begin(), a->end(), [](const Rational& x) { return x > 0 && x <= 1; });
      if (in_box) ps.numerator[t] += 1;
    }
  }
  auto top = ps.numerator.rbegin();
  if (top != ps.numerator.rend() && top->first == beta) {
    Integer v = top->second;
    if (rays.size() % 2 == 1) v = -v;
    ps.value_at_infinity = v;
  }
  // expand N / prod (1 - t^b) and compare with the enumerated K series
  std::map<Rational, Integer> series;
  for (const auto& [t, c] : ps.numerator) {
    if (t <= truncation) series[t] = c;
  }
  for (const auto& b : ps.denominator_degrees) {
    std::map<Rational, Integer> next;
    for (const auto& [t, c] : series) {
      for (Rational u = t; u <= truncation; u += b) next[u] += c;
    }
    series = std::move(next);
  }
  std::erase_if(series, [](const auto& kv) { return kv.second == 0; });
  std::map<Rational, Integer> enumerated;
  for (const auto& [t, c] : ps.k_coefficients) enumerated[t] = static_cast<unsigned long>(c);
  ps.closed_form_matches = series == enumerated;
  return ps;
}

bool class_nonzero(const SparsePoly& g, const GradedCone& gc, const std::vector<SparsePoly>& params) {
  if (g.is_zero()) return false;
  Rational t = homogeneous_degree(g, gc);
  for (const auto& [m, c] : g.terms()) {
    if (!gc.in_interior(m)) throw PreconditionError("element not supported in the interior of the cone");
  }
  std::vector<Rational> alphas;
  for (const auto& p : params) alphas.push_back(homogeneous_degree(p, gc));
  auto kpts = gc.points_up_to(t, true);
  auto cols = column_map(kpts[t]);
  auto e = image_in_degree(params, alphas, t, kpts, cols);
  return !e.contains(to_row(g, cols));
}

}  // namespace newton
