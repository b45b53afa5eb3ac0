#include "newton/grobner.hpp"

#include <algorithm>
#include <set>

#include "newton/facering.hpp"

namespace newton {

bool degrevlex_greater(const Exponent& a, const Exponent& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i > 0; --i) {
    if (a[i - 1] != b[i - 1]) return a[i - 1] < b[i - 1];
  }
  return false;
}

namespace {

struct RationalOps {
  using T = Rational;
  T from(const Rational& q) const { return q; }
  Rational to_rational(const T& a) const { return a; }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return 1 / a; }
};

struct PrimeOps {
  using T = std::uint64_t;
  std::uint64_t p;

  T pow(T a, std::uint64_t e) const {
    T r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  }
  T from(const Rational& q) const {
    Integer pz = static_cast<unsigned long>(p);
    Integer num = q.get_num() % pz, den = q.get_den() % pz;
    if (num < 0) num += pz;
    if (den == 0) throw FieldMismatch("prime " + std::to_string(p) + " divides a denominator");
    return mul(num.get_ui(), inv(den.get_ui()));
  }
  Rational to_rational(const T& a) const { return Rational(static_cast<unsigned long>(a)); }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return (a + b) % p; }
  T sub(const T& a, const T& b) const { return (a + p - b) % p; }
  T mul(const T& a, const T& b) const { return a * b % p; }
  T inv(const T& a) const { return pow(a, p - 2); }
};

template <typename Ops>
class Engine {
 public:
  using T = typename Ops::T;
  using Term = std::pair<Exponent, T>;
  using Poly = std::vector<Term>;  // degrevlex descending

  explicit Engine(Ops ops) : ops_(ops) {}

  Poly from(const SparsePoly& s) const {
    Poly p;
    for (const auto& [m, c] : s.terms()) {
      T v = ops_.from(c);
      if (!ops_.is_zero(v)) p.emplace_back(m, v);
    }
    std::sort(p.begin(), p.end(), [](const Term& a, const Term& b) { return degrevlex_greater(a.first, b.first); });
    return p;
  }

  SparsePoly to_sparse(const Poly& p, std::size_t n) const {
    SparsePoly s(n);
    for (const auto& [m, c] : p) s.add_term(m, ops_.to_rational(c));
    return s;
  }

  // a - c * x^e * b
  Poly sub_mul(const Poly& a, const T& c, const Exponent& e, const Poly& b) const {
    Poly out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    Exponent shifted;
    while (i < a.size() || j < b.size()) {
      if (j < b.size()) {
        shifted = b[j].first;
        for (std::size_t k = 0; k < e.size(); ++k) shifted[k] += e[k];
      }
      if (j >= b.size() || (i < a.size() && degrevlex_greater(a[i].first, shifted))) {
        out.push_back(a[i++]);
      } else if (i >= a.size() || degrevlex_greater(shifted, a[i].first)) {
        out.emplace_back(shifted, ops_.sub(T(0), ops_.mul(c, b[j].second)));
        ++j;
      } else {
        T v = ops_.sub(a[i].second, ops_.mul(c, b[j].second));
        if (!ops_.is_zero(v)) out.emplace_back(a[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }

  void make_monic(Poly& p) const {
    if (p.empty()) return;
    T inv = ops_.inv(p.front().second);
    for (auto& [m, c] : p) c = ops_.mul(c, inv);
  }

  static bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) return false;
    }
    return true;
  }

  static Exponent minus(const Exponent& a, const Exponent& b) {
    Exponent d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
  }

  static Exponent lcm(const Exponent& a, const Exponent& b) {
    Exponent d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::max(a[i], b[i]);
    return d;
  }

  Poly normal_form(Poly p, const std::vector<Poly>& g) const {
    Poly rem;
    while (!p.empty()) {
      const auto& [lm, lc] = p.front();
      const Poly* div = nullptr;
      for (const auto& q : g) {
        if (!q.empty() && divides(q.front().first, lm)) {
          div = &q;
          break;
        }
      }
      if (div) {
        T c = ops_.mul(lc, ops_.inv(div->front().second));
        p = sub_mul(p, c, minus(lm, div->front().first), *div);
      } else {
        rem.push_back(p.front());
        p.erase(p.begin());
      }
    }
    return rem;
  }

  Poly spoly(const Poly& a, const Poly& b) const {
    Exponent l = lcm(a.front().first, b.front().first);
    // both monic
    Poly left;
    Exponent ea = minus(l, a.front().first);
    for (const auto& [m, c] : a) {
      Exponent s = m;
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += ea[k];
      left.emplace_back(std::move(s), c);
    }
    return sub_mul(left, T(1), minus(l, b.front().first), b);
  }

  std::vector<Poly> groebner(std::vector<Poly> input) const {
    std::vector<Poly> g;
    for (auto& p : input) {
      if (p.empty()) continue;
      make_monic(p);
      if (total_degree(p.front().first) == 0) return {p};
      g.push_back(std::move(p));
    }
    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
    while (!pending.empty()) {
      auto best = pending.begin();
      Exponent best_lcm = lcm(g[best->first].front().first, g[best->second].front().first);
      for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
        Exponent l = lcm(g[it->first].front().first, g[it->second].front().first);
        if (degrevlex_greater(best_lcm, l)) {
          best = it;
          best_lcm = l;
        }
      }
      auto [i, j] = *best;
      pending.erase(best);
      const auto& li = g[i].front().first;
      const auto& lj = g[j].front().first;
      bool coprime = true;
      for (std::size_t k = 0; k < li.size() && coprime; ++k) coprime = li[k] == 0 || lj[k] == 0;
      if (coprime) continue;
      bool chain = false;
      for (std::size_t k = 0; k < g.size() && !chain; ++k) {
        if (k == i || k == j || !divides(g[k].front().first, best_lcm)) continue;
        auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        chain = !pending.count(key(i, k)) && !pending.count(key(j, k));
      }
      if (chain) continue;
      Poly h = normal_form(spoly(g[i], g[j]), g);
      if (h.empty()) continue;
      make_monic(h);
      if (total_degree(h.front().first) == 0) return {h};
      for (std::size_t k = 0; k < g.size(); ++k) pending.insert({k, g.size()});
      g.push_back(std::move(h));
    }
    return reduce(std::move(g));
  }

  std::vector<Poly> reduce(std::vector<Poly> g) const {
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
        if (i == j || !divides(g[j].front().first, g[i].front().first)) continue;
        redundant = g[j].front().first != g[i].front().first || j < i;
      }
      if (!redundant) minimal.push_back(g[i]);
    }
    std::vector<Poly> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Poly> others;
      for (std::size_t j = 0; j < minimal.size(); ++j) {
        if (j != i) others.push_back(minimal[j]);
      }
      Poly tail(minimal[i].begin() + 1, minimal[i].end());
      Poly r = normal_form(tail, others);
      r.insert(r.begin(), minimal[i].front());
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(),
              [](const Poly& a, const Poly& b) { return degrevlex_greater(b.front().first, a.front().first); });
    return out;
  }

 private:
  Ops ops_;
};

template <typename Ops>
GB run(const std::vector<SparsePoly>& gens, Ops ops, std::uint64_t prime) {
  if (gens.empty()) throw PreconditionError("empty generator list");
  const auto n = gens.front().nvars();
  Engine<Ops> e(ops);
  std::vector<typename Engine<Ops>::Poly> polys;
  for (const auto& g : gens) {
    if (g.nvars() != n) throw InputError("generators have different variable counts");
    polys.push_back(e.from(g));
  }
  GB gb;
  gb.prime = prime;
  for (const auto& p : e.groebner(std::move(polys))) gb.generators.push_back(e.to_sparse(p, n));
  return gb;
}

std::vector<SparsePoly> rabinowitsch(const std::vector<SparsePoly>& polys) {
  const auto n = polys.front().nvars();
  std::vector<SparsePoly> out;
  for (const auto& p : polys) {
    SparsePoly q(n + 1);
    for (const auto& [m, c] : p.terms()) {
      Exponent e = m;
      e.push_back(0);
      q.add_term(e, c);
    }
    out.push_back(std::move(q));
  }
  SparsePoly t(n + 1);
  t.add_term(Exponent(n + 1, 1), 1);
  t.add_term(Exponent(n + 1, 0), -1);
  out.push_back(std::move(t));
  return out;
}

}  // namespace

bool GB::is_unit() const {
  return std::any_of(generators.begin(), generators.end(), [](const SparsePoly& g) {
    return !g.is_zero() && g.degree() == 0;
  });
}

GB buchberger(const std::vector<SparsePoly>& gens) { return run(gens, RationalOps{}, 0); }

GB buchberger_mod_p(const std::vector<SparsePoly>& gens, std::uint64_t p) {
  if (!is_prime(p) || p >= (1ULL << 31)) throw PreconditionError("modulus must be a prime below 2^31");
  return run(gens, PrimeOps{p}, p);
}

SparsePoly normal_form(const SparsePoly& h, const GB& gb) {
  const auto n = h.nvars();
  auto go = [&](auto ops) {
    Engine<decltype(ops)> e(ops);
    std::vector<typename Engine<decltype(ops)>::Poly> g;
    for (const auto& p : gb.generators) g.push_back(e.from(p));
    return e.to_sparse(e.normal_form(e.from(h), g), n);
  };
  if (gb.prime == 0) return go(RationalOps{});
  return go(PrimeOps{gb.prime});
}

bool member(const SparsePoly& h, const GB& gb) { return normal_form(h, gb).is_zero(); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
    if (a % n == 0) continue;
    std::uint64_t x = 1, base = a, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x);
      composite = x != n - 1;
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(1ULL << 30, (1ULL << 31) - 1);
  while (true) {
    std::uint64_t c = d(rng) | 1ULL;
    if (is_prime(c)) return c;
  }
}

bool torus_has_zero(const std::vector<SparsePoly>& polys, std::uint64_t p) {
  if (polys.empty()) return true;
  return !buchberger_mod_p(rabinowitsch(polys), p).is_unit();
}

bool torus_has_zero_exact(const std::vector<SparsePoly>& polys) {
  if (polys.empty()) return true;
  return !buchberger(rabinowitsch(polys)).is_unit();
}

TorusVerdict torus_has_zero_mc(const std::vector<SparsePoly>& polys, int k, std::mt19937_64& rng,
                               int max_rounds) {
  if (k < 1) throw InputError("at least one prime is required");
  TorusVerdict v;
  for (int round = 1; round <= max_rounds; ++round) {
    v.rounds = round;
    v.primes.clear();
    std::vector<bool> answers;
    while (static_cast<int>(answers.size()) < k) {
      std::uint64_t p = random_prime(rng);
      try {
        answers.push_back(torus_has_zero(polys, p));
        v.primes.push_back(p);
      } catch (const FieldMismatch&) {
        continue;
      }
    }
    if (std::all_of(answers.begin(), answers.end(), [&](bool a) { return a == answers.front(); })) {
      v.has_zero = answers.front();
      return v;
    }
  }
  throw VerificationFailure("random primes disagree on the torus-zero question");
}

NondegeneracyReport nondegeneracy(const SparsePoly& f, int primes, std::uint64_t seed) {
  if (f.is_zero() || f.order() < 2) throw PreconditionError("order too small");
  NondegeneracyReport rep;
  auto delta = newton_polyhedron(f);
  try {
    check_axis_condition(delta);
    rep.axis_condition = true;
  } catch (const PreconditionError&) {
    rep.axis_condition = false;
  }
  std::mt19937_64 rng(seed);
  bool ok = rep.axis_condition;
  for (const auto& face : faces(delta)) {
    if (!face.compact) continue;
    FaceVerdict fv;
    fv.face = face;
    SparsePoly fd = face_part(f, delta, face);
    if (fd.is_monomial()) {
      fv.monomial = true;
      fv.has_torus_zero = false;
    } else {
      std::vector<SparsePoly> system;
      for (auto& d : face_derivatives(f, delta, face)) {
        if (!d.is_zero()) system.push_back(std::move(d));
      }
      auto verdict = torus_has_zero_mc(system, primes, rng);
      fv.has_torus_zero = verdict.has_zero;
      fv.primes = verdict.primes;
    }
    ok = ok && !fv.has_torus_zero;
    rep.faces.push_back(std::move(fv));
  }
  rep.nondegenerate = ok;
  return rep;
}

bool nondegenerate(const SparsePoly& f, int primes, std::uint64_t seed) {
  return nondegeneracy(f, primes, seed).nondegenerate;
}

}  // namespace newton
