#include "newton/polylattice.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "newton/combinatorics.hpp"
#include "newton/errors.hpp"

namespace newton {

namespace {

bool leq(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::vector<Exponent> pareto_minimal(std::vector<Exponent> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      dominated = j != i && leq(pts[j], pts[i]);
    }
    if (!dominated) out.push_back(pts[i]);
  }
  return out;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector e(n, 0);
  e[i] = 1;
  return e;
}

IntVector diff(const IntVector& a, const IntVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

/// Primitive normal of the hyperplane spanned by the given n-1 directions,
/// or empty if they are dependent.
IntVector hyperplane_normal(const std::vector<IntVector>& dirs, std::size_t n) {
  RatMatrix m = RatMatrix::from_int_rows(dirs, n);
  auto ns = nullspace(m);
  if (ns.size() != 1) return {};
  return primitive(std::span<const Rational>(ns[0]));
}

std::size_t affine_rank(const std::vector<IntVector>& pts, const std::vector<IntVector>& dirs, std::size_t n) {
  std::vector<IntVector> rows = dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(diff(pts[i], pts[0]));
  return rank(rows, n);
}

}  // namespace

bool NewtonPolyhedron::contains(const IntVector& m) const {
  for (const auto& f : facets) {
    if (dot(f.normal, m) < f.offset) return false;
  }
  return true;
}

NewtonPolyhedron newton_polyhedron(const SparsePoly& f) {
  if (f.is_zero()) throw InputError("empty support");
  std::vector<Exponent> pts;
  for (const auto& [m, c] : f.terms()) pts.push_back(m);
  return newton_polyhedron(pts, f.nvars());
}

NewtonPolyhedron newton_polyhedron(const std::vector<Exponent>& points, std::size_t n) {
  if (points.empty()) throw InputError("empty support");
  for (const auto& p : points) {
    if (p.size() != n) throw InputError("exponent length does not match variable count");
    for (auto x : p) {
      if (x < 0) throw InputError("negative exponent in support");
    }
  }
  auto pts = pareto_minimal(points);
  NewtonPolyhedron delta;
  delta.nvars = n;

  std::set<IntVector> seen;
  for (std::size_t b = 0; b < pts.size(); ++b) {
    std::vector<IntVector> items;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != b) items.push_back(diff(pts[j], pts[b]));
    }
    for (std::size_t i = 0; i < n; ++i) items.push_back(unit(n, i));
    for_each_combination(items.size(), n - 1, [&](const auto& pick) {
      std::vector<IntVector> dirs;
      for (auto k : pick) dirs.push_back(items[k]);
      IntVector l = hyperplane_normal(dirs, n);
      if (l.empty()) return true;
      bool has_pos = std::any_of(l.begin(), l.end(), [](auto x) { return x > 0; });
      bool has_neg = std::any_of(l.begin(), l.end(), [](auto x) { return x < 0; });
      if (has_pos && has_neg) return true;
      if (has_neg) {
        for (auto& x : l) x = -x;
      }
      if (seen.count(l)) return true;
      const auto s = dot(l, pts[b]);
      for (const auto& p : pts) {
        if (dot(l, p) < s) return true;
      }
      seen.insert(l);
      Facet f;
      f.normal = l;
      f.offset = s;
      f.compact = std::all_of(l.begin(), l.end(), [](auto x) { return x > 0; });
      delta.facets.push_back(std::move(f));
      return true;
    });
  }
  std::sort(delta.facets.begin(), delta.facets.end(),
            [](const Facet& a, const Facet& b) { return a.normal < b.normal; });

  for (const auto& p : pts) {
    std::vector<IntVector> tight;
    for (const auto& f : delta.facets) {
      if (dot(f.normal, p) == f.offset) tight.push_back(f.normal);
    }
    if (rank(tight, n) == n) delta.vertices.push_back(p);
  }
  return delta;
}

std::int64_t support_function(const NewtonPolyhedron& delta, const IntVector& a) {
  for (auto x : a) {
    if (x < 0) throw PreconditionError("unbounded below");
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& v : delta.vertices) best = std::min(best, dot(a, v));
  return best;
}

std::vector<FaceDescriptor> faces(const NewtonPolyhedron& delta) {
  const std::size_t n = delta.nvars;
  const auto& V = delta.vertices;
  const auto& F = delta.facets;

  // closure of a set of tight facets: the face they cut out, then all facets tight on it
  auto make_face = [&](const std::vector<std::size_t>& tight) -> std::optional<FaceDescriptor> {
    FaceDescriptor fd;
    for (std::size_t v = 0; v < V.size(); ++v) {
      bool ok = std::all_of(tight.begin(), tight.end(),
                            [&](auto k) { return dot(F[k].normal, V[v]) == F[k].offset; });
      if (ok) fd.vertex_subset.push_back(v);
    }
    if (fd.vertex_subset.empty()) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = std::all_of(tight.begin(), tight.end(), [&](auto k) { return F[k].normal[i] == 0; });
      if (ok) fd.recession.push_back(i);
    }
    for (std::size_t k = 0; k < F.size(); ++k) {
      bool on_vertices = std::all_of(fd.vertex_subset.begin(), fd.vertex_subset.end(),
                                     [&](auto v) { return dot(F[k].normal, V[v]) == F[k].offset; });
      bool on_dirs = std::all_of(fd.recession.begin(), fd.recession.end(),
                                 [&](auto i) { return F[k].normal[i] == 0; });
      if (on_vertices && on_dirs) fd.tight_facets.push_back(k);
    }
    std::vector<IntVector> pts, dirs;
    for (auto v : fd.vertex_subset) pts.push_back(V[v]);
    for (auto i : fd.recession) dirs.push_back(unit(n, i));
    fd.dim = static_cast<int>(affine_rank(pts, dirs, n));
    fd.compact = fd.recession.empty();
    for (std::size_t j = 0; j < n && !fd.in_coordinate_hyperplane; ++j) {
      if (std::find(fd.recession.begin(), fd.recession.end(), j) != fd.recession.end()) continue;
      fd.in_coordinate_hyperplane =
          std::all_of(pts.begin(), pts.end(), [&](const auto& p) { return p[j] == 0; });
    }
    fd.normal_certificate.assign(n, 0);
    for (auto k : fd.tight_facets) {
      for (std::size_t i = 0; i < n; ++i) fd.normal_certificate[i] += F[k].normal[i];
    }
    return fd;
  };

  std::vector<FaceDescriptor> out;
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
  std::deque<FaceDescriptor> queue;
  auto top = make_face({});
  seen.insert({top->vertex_subset, top->recession});
  queue.push_back(*top);
  while (!queue.empty()) {
    FaceDescriptor cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t k = 0; k < F.size(); ++k) {
      if (std::find(cur.tight_facets.begin(), cur.tight_facets.end(), k) != cur.tight_facets.end()) continue;
      auto tight = cur.tight_facets;
      tight.push_back(k);
      auto next = make_face(tight);
      if (!next) continue;
      if (seen.insert({next->vertex_subset, next->recession}).second) queue.push_back(std::move(*next));
    }
    out.push_back(std::move(cur));
  }
  std::sort(out.begin(), out.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
    return std::tie(a.dim, a.vertex_subset, a.recession) < std::tie(b.dim, b.vertex_subset, b.recession);
  });
  return out;
}

std::vector<FaceDescriptor> interior_compact_faces(const NewtonPolyhedron& delta) {
  std::vector<FaceDescriptor> out;
  for (auto& fd : faces(delta)) {
    if (fd.compact && !fd.in_coordinate_hyperplane) out.push_back(std::move(fd));
  }
  return out;
}

bool on_face(const NewtonPolyhedron& delta, const FaceDescriptor& face, const IntVector& m) {
  if (!delta.contains(m)) return false;
  return dot(face.normal_certificate, m) == support_function(delta, face.normal_certificate);
}

SparsePoly face_part(const SparsePoly& g, const NewtonPolyhedron& delta, const FaceDescriptor& face) {
  SparsePoly out(g.nvars());
  for (const auto& [m, c] : g.terms()) {
    if (on_face(delta, face, m)) out.add_term(m, c);
  }
  return out;
}

ExtendedRational nu(const IntVector& m, const NewtonPolyhedron& delta) {
  ExtendedRational best = ExtendedRational::infinity();
  for (const auto& f : delta.facets) {
    if (f.offset <= 0) continue;
    Rational q(static_cast<long>(dot(f.normal, m)), static_cast<long>(f.offset));
    q.canonicalize();
    if (ExtendedRational(q) < best) best = q;
  }
  return best;
}

ExtendedRational nu(const SparsePoly& g, const NewtonPolyhedron& delta) {
  ExtendedRational best = ExtendedRational::infinity();
  for (const auto& [m, c] : g.terms()) {
    auto v = nu(m, delta);
    if (v < best) best = v;
  }
  return best;
}

bool in_dilate(const NewtonPolyhedron& delta, const IntVector& m, const Rational& a, bool strict) {
  for (const auto& f : delta.facets) {
    Rational lhs = static_cast<long>(dot(f.normal, m));
    Rational rhs = a * static_cast<long>(f.offset);
    if (strict ? !(lhs > rhs) : lhs < rhs) return false;
  }
  return true;
}

bool Polytope::contains(const IntVector& m, std::int64_t dilation, bool strict) const {
  for (const auto& f : facets) {
    auto lhs = dot(f.normal, m);
    auto rhs = dilation * f.offset;
    if (strict ? lhs <= rhs : lhs < rhs) return false;
  }
  return true;
}

std::vector<std::pair<std::vector<std::size_t>, int>> Polytope::face_lattice() const {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> order;
  std::vector<std::size_t> all(vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  seen.insert(all);
  order.push_back(all);
  for (std::size_t q = 0; q < order.size(); ++q) {
    auto cur = order[q];
    for (const auto& f : facets) {
      std::vector<std::size_t> next;
      for (auto v : cur) {
        if (dot(f.normal, vertices[v]) == f.offset) next.push_back(v);
      }
      if (next.empty() || next.size() == cur.size()) continue;
      if (seen.insert(next).second) order.push_back(next);
    }
  }
  std::vector<std::pair<std::vector<std::size_t>, int>> out;
  for (auto& vs : order) {
    std::vector<IntVector> pts;
    for (auto v : vs) pts.push_back(vertices[v]);
    int d = static_cast<int>(affine_rank(pts, {}, dim));
    out.emplace_back(std::move(vs), d);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
  return out;
}

Polytope polytope_hull(const std::vector<IntVector>& points0) {
  if (points0.empty()) throw PreconditionError("not full-dimensional");
  const std::size_t n = points0.front().size();
  auto pts = points0;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (affine_rank(pts, {}, n) != n) throw PreconditionError("not full-dimensional");

  Polytope p;
  p.dim = n;
  std::set<IntVector> seen;
  for_each_combination(pts.size(), n, [&](const auto& pick) {
    std::vector<IntVector> dirs;
    for (std::size_t k = 1; k < pick.size(); ++k) dirs.push_back(diff(pts[pick[k]], pts[pick[0]]));
    IntVector l = hyperplane_normal(dirs, n);
    if (l.empty()) return true;
    for (int sign : {1, -1}) {
      IntVector ls = l;
      for (auto& x : ls) x *= sign;
      if (seen.count(ls)) continue;
      const auto s = dot(ls, pts[pick[0]]);
      bool ok = std::all_of(pts.begin(), pts.end(), [&](const auto& q) { return dot(ls, q) >= s; });
      if (ok) {
        seen.insert(ls);
        p.facets.push_back(Facet{ls, s, false});
      }
    }
    return true;
  });
  std::sort(p.facets.begin(), p.facets.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  for (const auto& q : pts) {
    std::vector<IntVector> tight;
    for (const auto& f : p.facets) {
      if (dot(f.normal, q) == f.offset) tight.push_back(f.normal);
    }
    if (rank(tight, n) == n) p.vertices.push_back(q);
  }
  return p;
}

namespace {

using Simplex = std::vector<std::size_t>;

std::vector<Simplex> pulling_triangulation(const Polytope& p,
                                           const std::vector<std::pair<std::vector<std::size_t>, int>>& lattice,
                                           std::size_t face_index) {
  const auto& [verts, d] = lattice[face_index];
  if (d == 0) return {Simplex{verts.front()}};
  const std::size_t apex = verts.front();
  std::vector<Simplex> out;
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const auto& [sub, sd] = lattice[k];
    if (sd != d - 1) continue;
    if (!std::includes(verts.begin(), verts.end(), sub.begin(), sub.end())) continue;
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    for (auto s : pulling_triangulation(p, lattice, k)) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

Integer normalized_volume(const std::vector<IntVector>& points) {
  Polytope p = polytope_hull(points);
  auto lattice = p.face_lattice();
  std::size_t top = lattice.size() - 1;  // the polytope itself has the largest dimension
  Integer total = 0;
  for (const auto& s : pulling_triangulation(p, lattice, top)) {
    RatMatrix m(p.dim, p.dim);
    for (std::size_t i = 1; i < s.size(); ++i)
      for (std::size_t j = 0; j < p.dim; ++j)
        m(i - 1, j) = static_cast<long>(p.vertices[s[i]][j] - p.vertices[s[0]][j]);
    Rational det = determinant(m);
    total += Rational(abs(det)).get_num();
  }
  return total;
}

std::vector<IntVector> lattice_points(const Polytope& p, std::int64_t l, bool interior) {
  const std::size_t n = p.dim;
  IntVector lo(n, std::numeric_limits<std::int64_t>::max()), hi(n, std::numeric_limits<std::int64_t>::min());
  for (const auto& v : p.vertices) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], l * v[i]);
      hi[i] = std::max(hi[i], l * v[i]);
    }
  }
  std::vector<IntVector> out;
  IntVector m = lo;
  while (true) {
    if (p.contains(m, l, interior)) out.push_back(m);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (m[i] < hi[i]) {
        ++m[i];
        for (std::size_t j = i + 1; j < n; ++j) m[j] = lo[j];
        break;
      }
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

Integer ehrhart_normalized_volume(const Polytope& p) {
  const auto n = static_cast<long>(p.dim);
  Integer total = 0;
  for (long t = 0; t <= n; ++t) {
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(t));
    Integer count = static_cast<unsigned long>(lattice_points(p, t, false).size());
    if ((n - t) % 2 == 0) {
      total += binom * count;
    } else {
      total -= binom * count;
    }
  }
  return total;
}

}  // namespace newton
