#include "newton/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "newton/combinatorics.hpp"
#include "newton/errors.hpp"

namespace newton {

namespace {

std::vector<IntVector> primitive_basis(const std::vector<RatVector>& vs) {
  std::vector<IntVector> out;
  for (const auto& v : vs) out.push_back(primitive(std::span<const Rational>(v)));
  return out;
}

IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector e(n, 0);
  e[i] = 1;
  return e;
}

std::vector<IntVector> concat(std::vector<IntVector> a, const std::vector<IntVector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::int64_t det2(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

std::int64_t det3(const IntVector& a, const IntVector& b, const IntVector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

bool is_unit_vector(const IntVector& v) {
  int ones = 0;
  for (auto x : v) {
    if (x == 1) {
      ++ones;
    } else if (x != 0) {
      return false;
    }
  }
  return ones == 1;
}

}  // namespace

Cone Cone::from_generators(const std::vector<IntVector>& gens0, std::size_t n) {
  std::vector<IntVector> gens;
  for (const auto& g : gens0) {
    if (g.size() != n) throw InputError("generator length does not match dimension");
    if (is_zero(g)) continue;
    auto p = primitive(g);
    if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(std::move(p));
  }
  Cone c;
  c.n_ = n;
  const std::size_t d = rank(gens, n);
  c.dim_ = static_cast<int>(d);
  if (gens.empty()) {
    for (std::size_t i = 0; i < n; ++i) c.eqs_.push_back(unit(n, i));
    return c;
  }
  c.eqs_ = primitive_basis(nullspace(RatMatrix::from_int_rows(gens, n)));

  std::set<IntVector> seen;
  for_each_combination(gens.size(), d - 1, [&](const auto& pick) {
    std::vector<IntVector> rows = c.eqs_;
    for (auto k : pick) rows.push_back(gens[k]);
    auto ns = nullspace(RatMatrix::from_int_rows(rows, n));
    if (ns.size() != 1) return true;
    IntVector a = primitive(std::span<const Rational>(ns[0]));
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      auto v = dot(a, g);
      pos = pos || v > 0;
      neg = neg || v < 0;
    }
    if (pos && neg) return true;
    if (!pos && !neg) return true;
    if (neg) a = negated(a);
    seen.insert(a);
    return true;
  });
  c.ineqs_.assign(seen.begin(), seen.end());

  auto lin = primitive_basis(nullspace(RatMatrix::from_int_rows(concat(c.ineqs_, c.eqs_), n)));
  c.lineality_dim_ = static_cast<int>(lin.size());

  std::set<std::vector<std::size_t>> face_keys;
  std::vector<IntVector> rays;
  for (const auto& g : gens) {
    std::vector<std::size_t> tight;
    std::vector<IntVector> rows = c.eqs_;
    for (std::size_t k = 0; k < c.ineqs_.size(); ++k) {
      if (dot(c.ineqs_[k], g) == 0) {
        tight.push_back(k);
        rows.push_back(c.ineqs_[k]);
      }
    }
    if (tight.size() == c.ineqs_.size()) continue;  // g lies in the lineality space
    if (rank(rows, n) + 1 + lin.size() != n) continue;
    if (face_keys.insert(tight).second) rays.push_back(g);
  }
  for (const auto& l : lin) {
    rays.push_back(l);
    rays.push_back(negated(l));
  }
  std::sort(rays.begin(), rays.end());
  c.rays_ = std::move(rays);
  return c;
}

Cone Cone::from_inequalities(const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                             std::size_t n) {
  std::vector<IntVector> gens = ineqs;
  for (const auto& e : eqs) {
    gens.push_back(e);
    gens.push_back(negated(e));
  }
  return dual_cone(from_generators(gens, n));
}

std::vector<IntVector> Cone::facet_normals() const {
  std::vector<IntVector> out = ineqs_;
  for (const auto& e : eqs_) {
    out.push_back(e);
    out.push_back(negated(e));
  }
  return out;
}

bool Cone::contains(const IntVector& a) const {
  for (const auto& x : ineqs_) {
    if (dot(x, a) < 0) return false;
  }
  for (const auto& y : eqs_) {
    if (dot(y, a) != 0) return false;
  }
  return true;
}

bool Cone::contains_relative_interior(const IntVector& a) const {
  for (const auto& x : ineqs_) {
    if (dot(x, a) <= 0) return false;
  }
  for (const auto& y : eqs_) {
    if (dot(y, a) != 0) return false;
  }
  return true;
}

bool Cone::contains(const Cone& other) const {
  return std::all_of(other.rays_.begin(), other.rays_.end(), [&](const auto& r) { return contains(r); });
}

IntVector Cone::interior_point() const {
  IntVector p(n_, 0);
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < n_; ++i) p[i] += r[i];
  return p;
}

std::vector<Cone> Cone::faces() const {
  std::vector<std::size_t> all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::set<std::vector<std::size_t>> seen{all};
  std::vector<std::vector<std::size_t>> order{all};
  for (std::size_t q = 0; q < order.size(); ++q) {
    const auto cur = order[q];
    for (const auto& x : ineqs_) {
      std::vector<std::size_t> next;
      for (auto i : cur) {
        if (dot(x, rays_[i]) == 0) next.push_back(i);
      }
      if (next.size() == cur.size()) continue;
      if (seen.insert(next).second) order.push_back(next);
    }
  }
  std::vector<Cone> out;
  for (const auto& s : order) {
    std::vector<IntVector> g;
    for (auto i : s) g.push_back(rays_[i]);
    out.push_back(from_generators(g, n_));
  }
  std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.dim() < b.dim(); });
  return out;
}

Cone dual_cone(const Cone& c) { return Cone::from_generators(c.facet_normals(), c.ambient()); }

FaceBijectionReport face_bijection_check(const Cone& c) {
  FaceBijectionReport rep;
  const auto n = c.ambient();
  const Cone d = dual_cone(c);
  const auto fc = c.faces();
  const auto fd = d.faces();
  rep.faces = fc.size();
  rep.dual_faces = fd.size();
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.problems.push_back(std::move(msg));
  };
  if (fc.size() != fd.size()) fail("face counts differ");

  auto orthogonal_part = [&](const Cone& from, const Cone& face) {
    std::vector<IntVector> g;
    for (const auto& r : from.rays()) {
      bool orth = std::all_of(face.rays().begin(), face.rays().end(), [&](const auto& t) { return dot(r, t) == 0; });
      if (orth) g.push_back(r);
    }
    return Cone::from_generators(g, n);
  };

  std::set<std::size_t> hit;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    const Cone img = orthogonal_part(d, fc[i]);
    if (fc[i].dim() + img.dim() != static_cast<int>(n)) fail("dimensions of face " + std::to_string(i) + " do not sum to n");
    auto it = std::find(fd.begin(), fd.end(), img);
    if (it == fd.end()) {
      fail("image of face " + std::to_string(i) + " is not a face of the dual");
      continue;
    }
    if (!hit.insert(static_cast<std::size_t>(it - fd.begin())).second) fail("map is not injective");
    if (!(orthogonal_part(c, img) == fc[i])) fail("inverse fails on face " + std::to_string(i));
  }
  return rep;
}

Fan::Fan(std::size_t n, std::vector<IntVector> rays, const std::vector<std::vector<std::size_t>>& cones)
    : n_(n), rays_(std::move(rays)) {
  std::set<std::vector<std::size_t>> all;
  for (auto s : cones) {
    std::sort(s.begin(), s.end());
    for (auto k : s) {
      if (k >= rays_.size()) throw InputError("cone refers to a missing ray");
    }
    Cone c = cone_of(s);
    for (auto k : s) {
      if (std::find(c.rays().begin(), c.rays().end(), rays_[k]) == c.rays().end())
        throw InputError("ray is not extremal in its cone");
    }
    for (const auto& face : c.faces()) {
      std::vector<std::size_t> sub;
      for (auto k : s) {
        if (face.contains(rays_[k])) sub.push_back(k);
      }
      all.insert(sub);
    }
  }
  if (all.empty()) all.insert({});
  cones_.assign(all.begin(), all.end());
  std::stable_sort(cones_.begin(), cones_.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& s : cones_) dims_.push_back(cone_of(s).dim());
}

Cone Fan::cone_of(const std::vector<std::size_t>& ray_indices) const {
  std::vector<IntVector> g;
  for (auto k : ray_indices) g.push_back(rays_.at(k));
  return Cone::from_generators(g, n_);
}

Cone Fan::cone(std::size_t k) const { return cone_of(cones_.at(k)); }

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cones_.size() && maximal; ++j) {
      if (j != i && cones_[j].size() > cones_[i].size() &&
          std::includes(cones_[j].begin(), cones_[j].end(), cones_[i].begin(), cones_[i].end()))
        maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> Fan::find(const std::vector<std::size_t>& ray_indices) const {
  auto s = ray_indices;
  std::sort(s.begin(), s.end());
  auto it = std::find(cones_.begin(), cones_.end(), s);
  if (it == cones_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cones_.begin());
}

std::optional<std::size_t> Fan::ray_index(const IntVector& ray) const {
  auto it = std::find(rays_.begin(), rays_.end(), ray);
  if (it == rays_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

bool Fan::is_face_of(std::size_t i, std::size_t j) const {
  return std::includes(cones_[j].begin(), cones_[j].end(), cones_[i].begin(), cones_[i].end());
}

bool Fan::has_intersection_property() const {
  auto maxc = maximal_cones();
  for (std::size_t a = 0; a < maxc.size(); ++a) {
    for (std::size_t b = a + 1; b < maxc.size(); ++b) {
      const auto& sa = cones_[maxc[a]];
      const auto& sb = cones_[maxc[b]];
      Cone ca = cone_of(sa), cb = cone_of(sb);
      Cone meet = Cone::from_inequalities(concat(ca.facet_normals(), cb.facet_normals()), {}, n_);
      std::vector<std::size_t> common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
      if (!(meet == cone_of(common))) return false;
      if (!find(common)) return false;
    }
  }
  return true;
}

bool Fan::covers_orthant() const {
  for (const auto& r : rays_) {
    for (auto x : r) {
      if (x < 0) return false;
    }
  }
  auto maxc = maximal_cones();
  for (auto k : maxc) {
    if (dims_[k] != static_cast<int>(n_)) return false;
  }
  for (std::size_t k = 0; k < cones_.size(); ++k) {
    if (dims_[k] != static_cast<int>(n_) - 1) continue;
    auto p = cone(k).interior_point();
    bool boundary = std::any_of(p.begin(), p.end(), [](auto x) { return x == 0; });
    std::size_t count = 0;
    for (auto m : maxc) count += is_face_of(k, m);
    if (count != (boundary ? 1u : 2u)) return false;
  }
  // one generic interior point must be covered exactly once
  static const std::int64_t primes[] = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049};
  for (std::int64_t shift = 0; shift < 50; ++shift) {
    IntVector p(n_);
    for (std::size_t i = 0; i < n_; ++i) p[i] = primes[i % 8] + shift * static_cast<std::int64_t>(i + 1) + 7 * shift * shift;
    std::size_t inside = 0, on_wall = 0;
    for (auto m : maxc) {
      Cone c = cone(m);
      if (c.contains_relative_interior(p)) {
        ++inside;
      } else if (c.contains(p)) {
        ++on_wall;
      }
    }
    if (on_wall > 0) continue;
    return inside == 1;
  }
  return false;
}

void check_axis_condition(const NewtonPolyhedron& delta) {
  for (std::size_t i = 0; i < delta.nvars; ++i) {
    bool found = std::any_of(delta.vertices.begin(), delta.vertices.end(), [&](const auto& v) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (j != i && v[j] != 0) return false;
      }
      return true;
    });
    if (!found) throw PreconditionError("coordinate-axis condition violated");
  }
}

Cone sigma_of_face(const NewtonPolyhedron& delta, const FaceDescriptor& face) {
  const auto n = delta.nvars;
  const auto& v0 = delta.vertices[face.vertex_subset.front()];
  std::vector<IntVector> ineqs, eqs;
  for (std::size_t j = 0; j < n; ++j) ineqs.push_back(unit(n, j));
  for (const auto& w : delta.vertices) {
    IntVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = w[j] - v0[j];
    if (!is_zero(d)) ineqs.push_back(d);
  }
  for (auto k : face.vertex_subset) {
    IntVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = delta.vertices[k][j] - v0[j];
    if (!is_zero(d)) eqs.push_back(d);
  }
  for (auto j : face.recession) eqs.push_back(unit(n, j));
  return Cone::from_inequalities(ineqs, eqs, n);
}

namespace {

void sort_rays(std::vector<IntVector>& rays, std::size_t n) {
  if (n == 2) {
    std::sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) { return det2(a, b) > 0; });
  } else {
    std::sort(rays.begin(), rays.end(), std::greater<>());
  }
}

std::vector<std::size_t> indices_in(const std::vector<IntVector>& rays, const Cone& c) {
  std::vector<std::size_t> s;
  for (std::size_t k = 0; k < rays.size(); ++k) {
    if (c.contains(rays[k])) s.push_back(k);
  }
  return s;
}

Fan regularize_2d(const Fan& fan) {
  auto rays = fan.rays();
  sort_rays(rays, 2);
  std::vector<IntVector> out{rays.front()};
  for (std::size_t k = 0; k + 1 < rays.size(); ++k) {
    IntVector u = rays[k];
    const IntVector& v = rays[k + 1];
    std::int64_t d = det2(u, v);
    while (d > 1) {
      IntVector f;
      for (std::int64_t j = 1; j < d; ++j) {
        IntVector w{j * u[0] + v[0], j * u[1] + v[1]};
        if (w[0] % d == 0 && w[1] % d == 0) {
          f = {w[0] / d, w[1] / d};
          d = j;
          break;
        }
      }
      if (f.empty()) throw VerificationFailure("no continued-fraction step found");
      out.push_back(f);
      u = f;
    }
    out.push_back(v);
  }
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t k = 0; k + 1 < out.size(); ++k) cones.push_back({k, k + 1});
  return Fan(2, out, cones);
}

/// Splits a non-simplicial 3-cone by fanning from its lowest ray.
std::vector<std::vector<std::size_t>> triangulate_3cone(const std::vector<IntVector>& rays,
                                                        const std::vector<std::size_t>& s) {
  if (s.size() == 3) return {s};
  std::vector<IntVector> g;
  for (auto k : s) g.push_back(rays[k]);
  Cone c = Cone::from_generators(g, 3);
  std::map<std::size_t, std::vector<std::size_t>> adj;
  for (const auto& face : c.faces()) {
    if (face.dim() != 2) continue;
    auto e = indices_in(rays, face);
    std::vector<std::size_t> edge;
    for (auto k : e) {
      if (std::binary_search(s.begin(), s.end(), k)) edge.push_back(k);
    }
    if (edge.size() != 2) throw VerificationFailure("unexpected 2-face in triangulation");
    adj[edge[0]].push_back(edge[1]);
    adj[edge[1]].push_back(edge[0]);
  }
  std::vector<std::size_t> cycle{s.front()};
  std::size_t prev = s.front(), cur = std::min(adj[s.front()][0], adj[s.front()][1]);
  while (cur != s.front()) {
    cycle.push_back(cur);
    std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 1; i + 1 < cycle.size(); ++i) {
    std::vector<std::size_t> t{cycle[0], cycle[i], cycle[i + 1]};
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  return out;
}

/// Shortest nonzero lattice point of {sum t_i r_i : 0 <= t_i < 1}, ties lexicographic.
IntVector parallelepiped_center(const IntVector& a, const IntVector& b, const IntVector& c) {
  const std::int64_t det = det3(a, b, c);
  const std::int64_t ad = det < 0 ? -det : det;
  // columns a, b, c; adjugate rows give det * t
  std::int64_t adj[3][3] = {
      {b[1] * c[2] - b[2] * c[1], b[2] * c[0] - b[0] * c[2], b[0] * c[1] - b[1] * c[0]},
      {c[1] * a[2] - c[2] * a[1], c[2] * a[0] - c[0] * a[2], c[0] * a[1] - c[1] * a[0]},
      {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
  IntVector hi(3);
  for (int j = 0; j < 3; ++j) hi[j] = a[j] + b[j] + c[j];
  IntVector best;
  std::int64_t best_norm = 0;
  IntVector p(3);
  for (p[0] = 0; p[0] <= hi[0]; ++p[0]) {
    for (p[1] = 0; p[1] <= hi[1]; ++p[1]) {
      for (p[2] = 0; p[2] <= hi[2]; ++p[2]) {
        if (is_zero(p)) continue;
        bool inside = true;
        for (int i = 0; i < 3 && inside; ++i) {
          std::int64_t s = adj[i][0] * p[0] + adj[i][1] * p[1] + adj[i][2] * p[2];
          if (det < 0) s = -s;
          inside = s >= 0 && s < ad;
        }
        if (!inside) continue;
        std::int64_t norm = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        if (best.empty() || norm < best_norm || (norm == best_norm && p < best)) {
          best = p;
          best_norm = norm;
        }
      }
    }
  }
  return best;
}

Fan regularize_3d(const Fan& fan, int max_iterations) {
  std::vector<IntVector> rays = fan.rays();
  std::vector<std::vector<std::size_t>> cones;
  for (auto k : fan.maximal_cones()) {
    for (auto& t : triangulate_3cone(rays, fan.cones()[k])) cones.push_back(std::move(t));
  }
  int iterations = 0;
  while (true) {
    std::sort(cones.begin(), cones.end());
    auto bad = std::find_if(cones.begin(), cones.end(), [&](const auto& s) {
      auto d = det3(rays[s[0]], rays[s[1]], rays[s[2]]);
      return d > 1 || d < -1;
    });
    if (bad == cones.end()) break;
    if (++iterations > max_iterations)
      throw ResourceError("regularization iteration cap exceeded with " + std::to_string(rays.size()) + " rays");
    const auto s = *bad;
    const IntVector& a = rays[s[0]];
    const IntVector& b = rays[s[1]];
    const IntVector& c = rays[s[2]];
    IntVector p = parallelepiped_center(a, b, c);
    if (p.empty()) throw VerificationFailure("no interior lattice point in a singular cone");
    auto sol = solve(RatMatrix::from_int_rows({a, b, c}, 3).transpose(), to_rational(p));
    std::vector<std::size_t> carrier;
    for (int i = 0; i < 3; ++i) {
      if ((*sol)[i] > 0) carrier.push_back(s[i]);
    }
    const std::size_t q = rays.size();
    rays.push_back(p);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& cone : cones) {
      if (!std::includes(cone.begin(), cone.end(), carrier.begin(), carrier.end())) {
        next.push_back(cone);
        continue;
      }
      for (auto r : carrier) {
        std::vector<std::size_t> t;
        for (auto k : cone) {
          if (k != r) t.push_back(k);
        }
        t.push_back(q);
        std::sort(t.begin(), t.end());
        next.push_back(std::move(t));
      }
    }
    cones = std::move(next);
  }
  // reindex rays in canonical order
  std::vector<IntVector> sorted = rays;
  sort_rays(sorted, 3);
  std::vector<std::size_t> where(rays.size());
  for (std::size_t k = 0; k < rays.size(); ++k)
    where[k] = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), rays[k]) - sorted.begin());
  for (auto& cone : cones) {
    for (auto& k : cone) k = where[k];
  }
  return Fan(3, sorted, cones);
}

}  // namespace

Fan sigma_delta_fan(const NewtonPolyhedron& delta, bool require_axis) {
  if (require_axis) check_axis_condition(delta);
  const auto n = delta.nvars;
  std::vector<Cone> sigmas;
  std::set<IntVector> ray_set;
  for (const auto& face : faces(delta)) {
    sigmas.push_back(sigma_of_face(delta, face));
    for (const auto& r : sigmas.back().rays()) ray_set.insert(r);
  }
  std::vector<IntVector> rays(ray_set.begin(), ray_set.end());
  sort_rays(rays, n);
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : sigmas) cones.push_back(indices_in(rays, c));
  return Fan(n, rays, cones);
}

Fan regularize(const Fan& fan, int max_iterations) {
  const auto n = fan.ambient();
  if (n >= 4) throw PreconditionError("regularization not implemented; supply fan");
  if (!fan.covers_orthant()) throw PreconditionError("fan support is not the orthant");
  if (n == 1) return fan;
  if (n == 2) return regularize_2d(fan);
  Fan out = regularize_3d(fan, max_iterations);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto a = out.ray_index(unit(n, i)), b = out.ray_index(unit(n, j));
      if (!a || !b || !out.find({*a, *b}))
        throw VerificationFailure("regularization lost a coordinate cone");
    }
  }
  return out;
}

bool is_regular(const Fan& fan) {
  const auto n = fan.ambient();
  for (std::size_t k = 0; k < fan.cones().size(); ++k) {
    const auto& s = fan.cones()[k];
    if (s.empty()) continue;
    if (static_cast<int>(s.size()) != fan.cone_dim(k)) throw PreconditionError("non-simplicial cone");
    RatMatrix m(s.size(), n);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(fan.rays()[s[i]][j]);
    Integer g = 0;
    std::vector<std::size_t> rows(s.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    for_each_combination(n, s.size(), [&](const auto& cols) {
      Integer d = determinant(m.submatrix(rows, cols)).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return g != 1;
    });
    if (g != 1) return false;
  }
  return true;
}

bool refines(const Fan& fine, const Fan& coarse) {
  std::vector<Cone> big;
  for (auto k : coarse.maximal_cones()) big.push_back(coarse.cone(k));
  for (auto k : fine.maximal_cones()) {
    Cone c = fine.cone(k);
    if (std::none_of(big.begin(), big.end(), [&](const Cone& b) { return b.contains(c); })) return false;
  }
  return true;
}

std::int64_t multiplicity(const IntVector& l, const SparsePoly& h) {
  if (h.is_zero()) throw PreconditionError("multiplicity of the zero polynomial");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& [m, c] : h.terms()) best = std::min(best, dot(l, m));
  return best;
}

std::vector<Ray> edges_L(const Fan& fan, const SparsePoly& f) {
  const auto n = fan.ambient();
  for (std::size_t i = 0; i < n; ++i) {
    if (!fan.ray_index(unit(n, i))) throw PreconditionError("coordinate rays missing from fan");
  }
  auto delta = newton_polyhedron(f);
  std::vector<Ray> out;
  for (const auto& l : fan.rays()) {
    if (is_unit_vector(l)) continue;
    Ray r;
    r.l_lambda = l;
    r.v_lambda_f = support_function(delta, l);
    if (r.v_lambda_f <= 0) throw PreconditionError("ray with zero multiplicity");
    for (auto x : l) r.l_tilde.push_back(Rational(static_cast<long>(x), static_cast<long>(r.v_lambda_f)));
    for (auto& q : r.l_tilde) q.canonicalize();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Ray> pole_components(const SparsePoly& g, const SparsePoly& f, int r, const Fan& fan,
                                 const FaceDescriptor* face) {
  const auto n = static_cast<int>(fan.ambient());
  auto delta = newton_polyhedron(f);
  if (nu(g, delta) < ExtendedRational(Rational(n - r))) throw PreconditionError("g not in (n-r)Delta");
  std::optional<Cone> sigma;
  if (face) sigma = sigma_of_face(delta, *face);
  std::vector<Ray> out;
  for (auto& ray : edges_L(fan, f)) {
    if (multiplicity(ray.l_lambda, g) != (n - r) * ray.v_lambda_f) continue;
    if (sigma && !sigma->contains(ray.l_lambda)) throw VerificationFailure("pole component outside sigma(delta)");
    out.push_back(std::move(ray));
  }
  return out;
}

std::optional<std::size_t> orbit_closure_intersection(const Fan& fan, const std::vector<std::size_t>& c1,
                                                      const std::vector<std::size_t>& c2) {
  auto a = fan.find(c1), b = fan.find(c2);
  if (!a || !b) throw InputError("cone not in fan");
  const auto& s1 = fan.cones()[*a];
  const auto& s2 = fan.cones()[*b];
  std::vector<std::size_t> u;
  std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(u));
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < fan.cones().size(); ++k) {
    const auto& s = fan.cones()[k];
    if (!std::includes(s.begin(), s.end(), u.begin(), u.end())) continue;
    if (!best || s.size() < fan.cones()[*best].size()) best = k;
  }
  return best;
}

}  // namespace newton
