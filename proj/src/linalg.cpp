#include "newton/linalg.hpp"

#include <numeric>
#include <stdexcept>

#include "newton/errors.hpp"

namespace newton {

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const std::int64_t> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != 0) s += a[i] * Rational(static_cast<long>(b[i]));
  }
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t gcd_of(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

IntVector primitive(IntVector v) {
  auto g = gcd_of(v);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

IntVector primitive(std::span<const Rational> v) {
  Integer l = lcm_of_denominators(v);
  std::vector<Integer> scaled;
  scaled.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    Integer z = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    scaled.push_back(std::move(z));
  }
  IntVector out;
  out.reserve(v.size());
  for (auto& z : scaled) out.push_back(to_int64(g == 0 ? z : Integer(z / g)));
  return out;
}

RatVector to_rational(std::span<const std::int64_t> v) {
  RatVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

bool is_zero(std::span<const std::int64_t> v) {
  for (auto x : v) {
    if (x != 0) return false;
  }
  return true;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::from_int_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVector RatMatrix::column(std::size_t j) const {
  RatVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  RatMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

RatVector RatMatrix::apply(std::span<const Rational> x) const {
  RatVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

RowEchelon rref(RatMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivot_cols.size(); }

std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return rank(RatMatrix::from_int_rows(rows, cols));
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector x(m.cols());
    x[f] = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = -e.reduced(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& m, std::span<const Rational> b) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = e.reduced(i, m.cols());
  return x;
}

Rational determinant(const RatMatrix& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix m = m0;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational factor = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n) {
  const std::size_t m = rows.size();
  std::vector<std::vector<Integer>> a(m, std::vector<Integer>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(rows[i][j]);
  std::vector<std::vector<Integer>> u(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  // column operation on columns p, c of both a and u:
  // (col_p, col_c) <- (s col_p + t col_c, y col_p + x col_c)
  auto combine = [&](std::size_t p, std::size_t c, const Integer& s, const Integer& t, const Integer& y,
                     const Integer& x) {
    for (std::size_t i = 0; i < m; ++i) {
      Integer np = s * a[i][p] + t * a[i][c];
      Integer nc = y * a[i][p] + x * a[i][c];
      a[i][p] = np;
      a[i][c] = nc;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Integer np = s * u[i][p] + t * u[i][c];
      Integer nc = y * u[i][p] + x * u[i][c];
      u[i][p] = np;
      u[i][c] = nc;
    }
  };

  std::size_t p = 0;
  for (std::size_t i = 0; i < m && p < n; ++i) {
    for (std::size_t c = p + 1; c < n; ++c) {
      if (a[i][c] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][p].get_mpz_t(), a[i][c].get_mpz_t());
      Integer ap = a[i][p] / g;
      Integer ac = a[i][c] / g;
      combine(p, c, s, t, Integer(-ac), ap);
    }
    if (a[i][p] != 0) ++p;
  }
  std::vector<IntVector> basis;
  for (std::size_t c = p; c < n; ++c) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = to_int64(u[i][c]);
    basis.push_back(primitive(std::move(v)));
  }
  return basis;
}

namespace {

using Row = SparseEchelon::Row;

void load(std::vector<Rational>& dense, const Row& v) {
  for (const auto& [c, x] : v) dense[c] += x;
}

Row unload(std::vector<Rational>& dense, std::size_t from) {
  Row out;
  for (std::size_t c = from; c < dense.size(); ++c) {
    if (dense[c] != 0) {
      out.emplace_back(c, dense[c]);
      dense[c] = 0;
    }
  }
  return out;
}

}  // namespace

Row SparseEchelon::reduce(const Row& v) const {
  if (v.empty()) return {};
  std::vector<Rational> dense(ncols_);
  load(dense, v);
  std::size_t first = v.front().first;
  for (std::size_t c = first; c < ncols_; ++c) {
    if (dense[c] == 0 || pivot_row_[c] == npos) continue;
    Rational factor = dense[c];
    for (const auto& [cc, x] : rows_[pivot_row_[c]]) dense[cc] -= factor * x;
  }
  return unload(dense, first);
}

SparseEchelon::Reduction SparseEchelon::reduce_with_certificate(const Row& v) const {
  if (!track_) throw std::logic_error("certificates were not tracked");
  Reduction out;
  if (v.empty()) return out;
  std::vector<Rational> dense(ncols_);
  std::vector<Rational> cert(generators_);
  load(dense, v);
  std::size_t first = v.front().first;
  for (std::size_t c = first; c < ncols_; ++c) {
    if (dense[c] == 0 || pivot_row_[c] == npos) continue;
    Rational factor = dense[c];
    const auto k = pivot_row_[c];
    for (const auto& [cc, x] : rows_[k]) dense[cc] -= factor * x;
    for (const auto& [g, x] : certs_[k]) cert[g] += factor * x;
  }
  out.remainder = unload(dense, first);
  out.certificate = unload(cert, 0);
  return out;
}

bool SparseEchelon::insert(const Row& v) {
  const std::size_t gen = generators_++;
  if (v.empty()) return false;
  std::vector<Rational> dense(ncols_);
  std::vector<Rational> cert;
  if (track_) {
    cert.assign(generators_, Rational(0));
    cert[gen] = 1;
  }
  load(dense, v);
  std::size_t first = v.front().first;
  for (std::size_t c = first; c < ncols_; ++c) {
    if (dense[c] == 0 || pivot_row_[c] == npos) continue;
    Rational factor = dense[c];
    const auto k = pivot_row_[c];
    for (const auto& [cc, x] : rows_[k]) dense[cc] -= factor * x;
    if (track_) {
      for (const auto& [g, x] : certs_[k]) cert[g] -= factor * x;
    }
  }
  Row reduced = unload(dense, first);
  if (reduced.empty()) return false;
  Rational inv = 1 / reduced.front().second;
  for (auto& [c, x] : reduced) x *= inv;
  pivot_row_[reduced.front().first] = rows_.size();
  rows_.push_back(std::move(reduced));
  if (track_) {
    for (auto& x : cert) x *= inv;
    certs_.push_back(unload(cert, 0));
  }
  return true;
}

}  // namespace newton
