#include "newton/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "newton/errors.hpp"

namespace newton {

int total_degree(const Exponent& m) {
  return static_cast<int>(std::accumulate(m.begin(), m.end(), std::int64_t{0}));
}

SparsePoly SparsePoly::constant(std::size_t nvars, const Rational& c) {
  SparsePoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

SparsePoly SparsePoly::monomial(const Exponent& m, const Rational& c) {
  SparsePoly p(m.size());
  p.add_term(m, c);
  return p;
}

SparsePoly SparsePoly::product_of_variables(std::size_t nvars) {
  return monomial(Exponent(nvars, 1));
}

Rational SparsePoly::coefficient(const Exponent& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::add_term(const Exponent& m, const Rational& c) {
  if (m.size() != nvars_) throw InputError("exponent length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int SparsePoly::degree() const {
  if (terms_.empty()) throw PreconditionError("degree of the zero polynomial");
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

int SparsePoly::order() const {
  if (terms_.empty()) throw PreconditionError("order of the zero polynomial");
  int d = total_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_) d = std::min(d, total_degree(m));
  return d;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

SparsePoly SparsePoly::truncated_product(const SparsePoly& o, int cap) const {
  SparsePoly out(std::max(nvars_, o.nvars_));
  Exponent e(out.nvars_);
  for (const auto& [a, ca] : terms_) {
    const int da = total_degree(a);
    for (const auto& [b, cb] : o.terms_) {
      if (da + total_degree(b) > cap) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  return a.truncated_product(b, std::numeric_limits<int>::max());
}

SparsePoly SparsePoly::truncated(int cap) const {
  SparsePoly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (total_degree(m) <= cap) out.terms_.emplace(m, c);
  }
  return out;
}

SparsePoly SparsePoly::shifted(const Exponent& s) const {
  SparsePoly out(nvars_);
  for (const auto& [m, c] : terms_) {
    Exponent e = m;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += s[i];
    out.terms_.emplace(std::move(e), c);
  }
  return out;
}

SparsePoly SparsePoly::pow(unsigned k) const {
  SparsePoly out = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

SparsePoly SparsePoly::derivative(std::size_t i) const {
  SparsePoly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Exponent e = m;
    e[i] -= 1;
    out.terms_.emplace(std::move(e), c * Rational(static_cast<long>(m[i])));
  }
  return out;
}

SparsePoly SparsePoly::log_derivative(std::size_t i) const {
  SparsePoly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] != 0) out.terms_.emplace(m, c * Rational(static_cast<long>(m[i])));
  }
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  // highest total degree first, then reverse lexicographic on exponents
  std::vector<const Terms::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    int da = total_degree(a->first), db = total_degree(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    const auto& [m, c] = *t;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(m.begin(), m.end(), [](auto x) { return x == 0; });
    bool wrote = false;
    if (mag != 1 || constant) {
      out << newton::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << "*";
      out << "x" << (i + 1);
      if (m[i] != 1) out << "^" << m[i];
      wrote = true;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  std::vector<std::pair<std::map<std::size_t, std::int64_t>, Rational>> parse() {
    std::vector<std::pair<std::map<std::size_t, std::int64_t>, Rational>> terms;
    skip();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      terms.push_back(term());
      terms.back().second *= sign;
      skip();
    }
    return terms;
  }

 private:
  std::pair<std::map<std::size_t, std::int64_t>, Rational> term() {
    std::map<std::size_t, std::int64_t> vars;
    Rational coef = 1;
    while (true) {
      skip();
      if (at_end()) fail("dangling operator");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef *= number();
      } else if (c == 'x') {
        ++pos_;
        auto idx = integer();
        if (idx < 1) fail("variable index must be >= 1");
        std::int64_t e = 1;
        skip();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip();
          e = integer();
        }
        vars[static_cast<std::size_t>(idx)] += e;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    return {vars, coef};
  }

  Rational number() {
    auto start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '/') {
      ++pos_;
      auto d = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d == pos_) fail("missing denominator");
    }
    return parse_rational(s_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip();
    auto start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_poly(std::string_view text, std::size_t nvars) {
  auto terms = Parser(text).parse();
  std::size_t n = nvars;
  for (const auto& [vars, c] : terms) {
    for (const auto& [i, e] : vars) {
      if (nvars != 0 && i > nvars) throw InputError("variable x" + std::to_string(i) + " exceeds --vars");
      n = std::max(n, i);
    }
  }
  if (n == 0) n = 1;
  SparsePoly p(n);
  for (const auto& [vars, c] : terms) {
    Exponent m(n, 0);
    for (const auto& [i, e] : vars) m[i - 1] += e;
    p.add_term(m, c);
  }
  return p;
}

}  // namespace newton
