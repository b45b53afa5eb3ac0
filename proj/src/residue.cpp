#include "newton/residue.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "newton/errors.hpp"
#include "newton/localalg.hpp"

namespace newton {

namespace {

int permutation_sign(const std::vector<std::size_t>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

// Leibniz expansion with every partial product truncated at cap.
SparsePoly truncated_determinant(const std::vector<std::vector<SparsePoly>>& a, std::size_t nvars, int cap) {
  const auto n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  SparsePoly det(nvars);
  do {
    SparsePoly term = SparsePoly::constant(nvars, Rational(permutation_sign(perm)));
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term = term.truncated_product(a[i][perm[i]], cap);
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

SparsePoly variable_power(std::size_t n, std::size_t i, int k) {
  Exponent e(n, 0);
  e[i] = k;
  return SparsePoly::monomial(e);
}

Rational residue_at(const SparsePoly& g, const std::vector<SparsePoly>& F, const std::vector<int>& N, int D) {
  const auto n = F.size();
  auto ideal = build_ideal(F, D, true);
  std::vector<std::vector<SparsePoly>> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(ideal.express(variable_power(n, i, N[i])));
  int cap = 0;
  for (int k : N) cap += k - 1;
  return monomial_residue(g.truncated_product(truncated_determinant(a, n, cap), cap), N);
}

}  // namespace

Rational monomial_residue(const SparsePoly& g, const std::vector<int>& a) {
  if (a.size() != g.nvars()) throw InputError("exponent vector length does not match the number of variables");
  Exponent e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1) throw InputError("residue exponents must be positive");
    e[i] = a[i] - 1;
  }
  return g.coefficient(e);
}

ResidueResult grothendieck_residue(const SparsePoly& g, const std::vector<SparsePoly>& F, std::optional<int> D) {
  const auto n = F.size();
  if (n == 0 || g.nvars() != n) throw InputError("residue needs n polynomials in n variables");
  for (const auto& f : F) {
    if (f.nvars() != n) throw InputError("residue needs n polynomials in n variables");
  }
  auto probe = build_ideal_auto(F);
  const int d0 = *probe.m_power_bound();

  ResidueResult res;
  int need = d0;
  for (std::size_t i = 0; i < n; ++i) {
    int k = 1;
    while (!probe.member(variable_power(n, i, k))) ++k;
    res.exponents.push_back(k);
    need += k - 1;
  }
  const int base = std::max({D.value_or(d0 + 4), need, d0});
  res.value = residue_at(g, F, res.exponents, base);
  res.truncation_used = base;
  res.stable = residue_at(g, F, res.exponents, base + 2) == res.value;
  if (!res.stable) throw VerificationFailure("raise truncation");
  return res;
}

ResidueResult verify_theorem_0_1_part2(const SparsePoly& f, const FaceDescriptor& face, const SparsePoly& h, int r,
                                       std::optional<int> D) {
  const auto n = f.nvars();
  auto delta = newton_polyhedron(f);
  auto fc = face_cone(delta, face);
  if (r != fc.r) throw PreconditionError("r must equal n - 1 - dim delta");
  auto gc = graded_face_cone(delta, fc);
  SparsePoly g = SparsePoly::product_of_variables(n) * h;
  if (g.is_zero()) throw PreconditionError("[g] = 0 in Kbar_sigma");
  const Rational top(static_cast<long>(n) - r);
  for (const auto& [m, c] : g.terms()) {
    if (gc.degree(m) != top || !gc.in_interior(m)) throw PreconditionError("g not in (n-r)δ°");
  }
  auto params = select_parameters(face_derivatives(f, delta, face), gc);
  if (!class_nonzero(g, gc, params)) throw PreconditionError("[g] = 0 in Kbar_sigma");
  auto res = grothendieck_residue(f.pow(r) * h, log_jacobian_generators(f), D);
  if (res.value == 0) throw VerificationFailure("residue vanishes for a nonzero socle-degree class");
  return res;
}

LatticeSpace lattice_space(const Polytope& p, std::int64_t l, bool interior) {
  if (l < 0) throw InputError("dilation must be nonnegative");
  return {p, l, interior, lattice_points(p, l, interior)};
}

std::size_t koszul_top_dimension(const Polytope& p, const std::vector<SparsePoly>& gs) {
  const auto n = static_cast<std::int64_t>(p.dim);
  if (gs.size() != p.dim + 1) throw InputError("koszul model needs n + 1 polynomials");
  for (const auto& g : gs) {
    if (g.nvars() != p.dim) throw InputError("polynomial and polytope dimensions differ");
    for (const auto& [m, c] : g.terms()) {
      if (!p.contains(m)) throw PreconditionError("support outside the polytope");
    }
  }
  auto targets = lattice_points(p, n + 1, true);
  std::map<IntVector, std::size_t> index;
  for (std::size_t k = 0; k < targets.size(); ++k) index.emplace(targets[k], k);
  SparseEchelon image(targets.size());
  for (const auto& s : lattice_points(p, n, true)) {
    for (const auto& g : gs) {
      SparseEchelon::Row row;
      const auto product = g.shifted(s);
      for (const auto& [m, c] : product.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw VerificationFailure("product leaves the interior of (n+1)P");
        row.emplace_back(it->second, c);
      }
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      image.insert(row);
    }
  }
  return targets.size() - image.rank();
}

KoszulReport koszul_random_check(const Polytope& p, std::mt19937_64& rng, int max_attempts) {
  auto support = lattice_points(p, 1, false);
  std::uniform_int_distribution<int> mag(1, 20);
  std::bernoulli_distribution neg(0.5);
  KoszulReport rep;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<SparsePoly> gs;
    for (std::size_t i = 0; i <= p.dim; ++i) {
      SparsePoly g(p.dim);
      for (const auto& m : support) g.add_term(m, Rational(neg(rng) ? -mag(rng) : mag(rng)));
      gs.push_back(std::move(g));
    }
    rep.attempts = attempt;
    rep.dimension = koszul_top_dimension(p, gs);
    if (rep.dimension == 1) {
      rep.generic = true;
      break;
    }
  }
  return rep;
}

TraceVolumeReport trace_volume_check(const Polytope& p) {
  TraceVolumeReport rep;
  rep.normalized_volume = normalized_volume(p.vertices);
  rep.ehrhart_volume = ehrhart_normalized_volume(p);
  rep.agree = rep.normalized_volume == rep.ehrhart_volume;
  rep.trace = rep.normalized_volume;
  return rep;
}

}  // namespace newton
