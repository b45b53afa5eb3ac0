#include "newton/localalg.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "newton/errors.hpp"
#include "newton/grobner.hpp"

namespace newton {

namespace {

void monomials_of_degree(std::size_t n, int d, Exponent& cur, std::size_t i, std::vector<Exponent>& out) {
  if (i + 1 == n) {
    cur[i] = d;
    out.push_back(cur);
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur[i] = k;
    monomials_of_degree(n, d - k, cur, i + 1, out);
  }
}

SparseEchelon::Row dense_to_row(const RatVector& v) {
  SparseEchelon::Row r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) r.emplace_back(i, v[i]);
  }
  return r;
}

}  // namespace

TruncatedLocalAlgebra::TruncatedLocalAlgebra(std::size_t nvars, int D) : n_(nvars), D_(D) {
  if (D < 0) throw InputError("truncation degree must be nonnegative");
  for (int d = 0; d <= D; ++d) {
    std::vector<Exponent> level;
    Exponent cur(n_, 0);
    monomials_of_degree(n_, d, cur, 0, level);
    std::sort(level.begin(), level.end(), degrevlex_greater);
    for (auto& m : level) {
      index_.emplace(m, monomials_.size());
      monomials_.push_back(std::move(m));
    }
  }
}

std::optional<std::size_t> TruncatedLocalAlgebra::column(const Exponent& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseEchelon::Row TruncatedLocalAlgebra::row(const SparsePoly& h) const {
  std::vector<std::pair<std::size_t, Rational>> r;
  for (const auto& [m, c] : h.terms()) {
    if (total_degree(m) > D_) continue;
    r.emplace_back(index_.at(m), c);
  }
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

SparsePoly TruncatedLocalAlgebra::poly(const SparseEchelon::Row& r) const {
  SparsePoly p(n_);
  for (const auto& [k, c] : r) p.add_term(monomials_[k], c);
  return p;
}

IdealSpan::IdealSpan(const std::vector<SparsePoly>& gens, int D, bool track_certificates)
    : gens_(gens), algebra_(gens.empty() ? 1 : gens.front().nvars(), D), echelon_(algebra_.size(), track_certificates) {
  if (gens.empty()) throw PreconditionError("empty generator list");
  const auto& mons = algebra_.monomials();
  std::vector<int> orders;
  for (const auto& g : gens_) orders.push_back(g.is_zero() ? D + 1 : g.order());
  for (const auto& alpha : mons) {
    const int da = total_degree(alpha);
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      if (da + orders[j] > D) continue;
      echelon_.insert(algebra_.row(gens_[j].shifted(alpha)));
      products_.emplace_back(j, alpha);
    }
  }
  for (int d = 0; d <= D && !d0_; ++d) {
    bool all = true;
    for (std::size_t k = 0; k < mons.size() && all; ++k) {
      if (total_degree(mons[k]) != d) continue;
      all = echelon_.contains({{k, Rational(1)}});
    }
    if (all) d0_ = d;
  }
}

void IdealSpan::require_finite() const {
  if (!d0_) throw ResourceError("increase truncation");
}

bool IdealSpan::contains_truncated(const SparsePoly& h) const { return echelon_.contains(algebra_.row(h)); }

bool IdealSpan::member(const SparsePoly& h) const {
  require_finite();
  return contains_truncated(h);
}

SparsePoly IdealSpan::normal_form(const SparsePoly& h) const {
  return algebra_.poly(echelon_.reduce(algebra_.row(h)));
}

std::vector<Exponent> IdealSpan::standard_monomials() const {
  require_finite();
  std::vector<Exponent> out;
  const auto& mons = algebra_.monomials();
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (total_degree(mons[k]) >= *d0_) break;
    if (!echelon_.is_pivot(k)) out.push_back(mons[k]);
  }
  return out;
}

RatVector IdealSpan::coordinates(const SparsePoly& h) const {
  auto basis = standard_monomials();
  RatVector v(basis.size());
  auto r = echelon_.reduce(algebra_.row(h));
  for (const auto& [k, c] : r) {
    const auto& m = algebra_.monomials()[k];
    auto it = std::lower_bound(basis.begin(), basis.end(), m, [&](const Exponent& a, const Exponent& b) {
      return *algebra_.column(a) < *algebra_.column(b);
    });
    if (it == basis.end() || *it != m) throw VerificationFailure("normal form outside the standard monomials");
    v[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return v;
}

std::vector<SparsePoly> IdealSpan::express(const SparsePoly& h) const {
  auto red = echelon_.reduce_with_certificate(algebra_.row(h));
  if (!red.remainder.empty()) throw PreconditionError("element is not in the ideal");
  std::vector<SparsePoly> a(gens_.size(), SparsePoly(algebra_.nvars()));
  for (const auto& [k, c] : red.certificate) {
    const auto& [j, alpha] = products_[k];
    a[j].add_term(alpha, c);
  }
  return a;
}

IdealSpan build_ideal(const std::vector<SparsePoly>& gens, int D, bool track_certificates) {
  return IdealSpan(gens, D, track_certificates);
}

IdealSpan build_ideal_auto(const std::vector<SparsePoly>& gens, std::optional<int> D, bool track_certificates,
                           int margin, int cap) {
  if (D) {
    IdealSpan span(gens, *D, track_certificates);
    if (!span.finite_colength()) throw ResourceError("increase truncation");
    return span;
  }
  int maxdeg = 1;
  for (const auto& g : gens) {
    if (!g.is_zero()) maxdeg = std::max(maxdeg, g.degree());
  }
  for (int d = std::max(2, 2 * maxdeg); d <= cap; d += 2) {
    IdealSpan probe(gens, d, false);
    if (auto d0 = probe.m_power_bound()) return IdealSpan(gens, *d0 + margin, track_certificates);
  }
  throw ResourceError("increase truncation");
}

std::vector<SparsePoly> log_jacobian_generators(const SparsePoly& f) {
  std::vector<SparsePoly> out;
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(f.log_derivative(i));
  return out;
}

std::vector<SparsePoly> jacobian_generators(const SparsePoly& f) {
  std::vector<SparsePoly> out;
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(f.derivative(i));
  return out;
}

std::vector<SparsePoly> socle(const IdealSpan& ideal) {
  auto basis = ideal.standard_monomials();
  const auto n = ideal.algebra().nvars();
  const auto b = basis.size();
  RatMatrix m(n * b, b);
  for (std::size_t col = 0; col < b; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e = basis[col];
      e[i] += 1;
      auto coords = ideal.coordinates(SparsePoly::monomial(e));
      for (std::size_t p = 0; p < b; ++p) m(i * b + p, col) = coords[p];
    }
  }
  std::vector<SparsePoly> out;
  for (const auto& v : nullspace(m)) {
    SparsePoly h(n);
    for (std::size_t k = 0; k < b; ++k) h.add_term(basis[k], v[k]);
    out.push_back(std::move(h));
  }
  return out;
}

SocleOrderReport socle_newton_order(const SparsePoly& f, std::optional<int> D) {
  const auto n = f.nvars();
  auto ideal = build_ideal_auto(log_jacobian_generators(f), D);
  const int d0 = *ideal.m_power_bound();
  auto delta = newton_polyhedron(f);

  SocleOrderReport rep;
  rep.truncation = ideal.truncation();
  rep.m_power_bound = d0;
  rep.socle_basis = socle(ideal);
  rep.n_minus_nu_x = Rational(static_cast<long>(n)) - nu(SparsePoly::product_of_variables(n), delta).value();

  const auto dim = ideal.standard_monomials().size();
  SparseEchelon ef(dim), efs(dim);
  for (const auto& s : rep.socle_basis) efs.insert(dense_to_row(ideal.coordinates(s)));
  const std::size_t socle_dim = efs.rank();

  std::map<Rational, std::vector<Exponent>, std::greater<>> levels;
  for (const auto& m : ideal.algebra().monomials()) {
    if (total_degree(m) >= d0) break;
    levels[nu(m, delta).value()].push_back(m);
  }
  rep.upper_bound_holds = true;
  bool found = false;
  for (const auto& [a, mons] : levels) {
    for (const auto& m : mons) {
      auto row = dense_to_row(ideal.coordinates(SparsePoly::monomial(m)));
      ef.insert(row);
      efs.insert(row);
    }
    if (a > rep.n_minus_nu_x && ef.rank() > 0) rep.upper_bound_holds = false;
    if (!found && ef.rank() + socle_dim > efs.rank()) {
      rep.nu_socle = a;
      found = true;
    }
  }
  if (!found) throw VerificationFailure("socle meets no Newton filtration level");
  rep.match = rep.nu_socle == rep.n_minus_nu_x;
  return rep;
}

MultiplicationReport jacobian_multiplication_check(const SparsePoly& f, int samples, std::uint64_t seed,
                                                   std::optional<int> D) {
  const auto n = f.nvars();
  auto ii = build_ideal_auto(log_jacobian_generators(f), D);
  auto jj = build_ideal_auto(jacobian_generators(f), D);
  const SparsePoly x = SparsePoly::product_of_variables(n);
  MultiplicationReport rep;
  rep.well_defined = true;
  for (const auto& fx : jacobian_generators(f)) rep.well_defined = rep.well_defined && ii.member(x * fx);
  auto bj = jj.standard_monomials();
  rep.dim_p_mod_j = bj.size();
  rep.dim_p_mod_i = ii.standard_monomials().size();
  SparseEchelon images(rep.dim_p_mod_i);
  for (const auto& b : bj) images.insert(dense_to_row(ii.coordinates(x * SparsePoly::monomial(b))));
  rep.injective = images.rank() == bj.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int s = 0; s < samples; ++s) {
    SparsePoly h(n);
    for (const auto& b : bj) h.add_term(b, coef(rng));
    if (h.is_zero()) continue;
    ++rep.samples_checked;
    if (ii.member(x * h)) rep.samples_ok = false;
  }
  return rep;
}

bool verify_theorem_0_1_part1(const SparsePoly& f, const SparsePoly& h, std::optional<int> D) {
  if (h.is_zero()) return true;
  const auto n = f.nvars();
  auto delta = newton_polyhedron(f);
  SparsePoly g = SparsePoly::product_of_variables(n) * h;
  for (const auto& [m, c] : g.terms()) {
    if (!in_dilate(delta, m, Rational(static_cast<long>(n)), true)) throw PreconditionError("g not in nΔ°");
  }
  return build_ideal_auto(log_jacobian_generators(f), D).member(h);
}

}  // namespace newton
