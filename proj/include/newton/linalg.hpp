#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "newton/rational.hpp"

namespace newton {

/// Integer lattice vector or covector (exponents, ray generators, normals).
using IntVector = std::vector<std::int64_t>;
using RatVector = std::vector<Rational>;

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
Rational dot(std::span<const Rational> a, std::span<const std::int64_t> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

std::int64_t gcd_of(std::span<const std::int64_t> v);
/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVector primitive(IntVector v);
/// Smallest positive multiple that is an integer vector, then primitive.
IntVector primitive(std::span<const Rational> v);
RatVector to_rational(std::span<const std::int64_t> v);
bool is_zero(std::span<const std::int64_t> v);

/// Dense row-major matrix over Q.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);
  static RatMatrix from_int_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector column(std::size_t j) const;
  RatMatrix transpose() const;
  RatMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  RatVector apply(std::span<const Rational> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RatMatrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivot_cols;  // one per nonzero row, increasing
};

RowEchelon rref(RatMatrix m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols);
/// Basis of {x : m x = 0}; free variables set to unit vectors in order.
std::vector<RatVector> nullspace(const RatMatrix& m);
/// Some solution of m x = b (free variables 0), or nullopt if inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, std::span<const Rational> b);
Rational determinant(const RatMatrix& m);

/// Z-basis of {x in Z^n : rows . x = 0} by unimodular column reduction.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n);

/// Incrementally built echelon basis of a subspace of Q^ncols, stored as
/// sparse rows. The pivot of a row is its first nonzero column, normalized
/// to 1; no two rows share a pivot. Optionally each row carries a
/// certificate: its coordinates with respect to the inserted generators.
class SparseEchelon {
 public:
  using Row = std::vector<std::pair<std::size_t, Rational>>;  // sorted by column

  explicit SparseEchelon(std::size_t ncols, bool track_certificates = false)
      : ncols_(ncols), track_(track_certificates), pivot_row_(ncols, npos) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }
  std::size_t generator_count() const { return generators_; }

  /// Adds a vector to the spanning set; returns true if the rank grew.
  /// The generator index used in certificates is the insertion count.
  bool insert(const Row& v);
  /// Reduces v against the basis; the result has zeros on pivot columns.
  Row reduce(const Row& v) const;
  bool contains(const Row& v) const { return reduce(v).empty(); }

  struct Reduction {
    Row remainder;
    Row certificate;  // v - remainder = sum certificate[g] * generator g
  };
  /// Requires certificate tracking.
  Reduction reduce_with_certificate(const Row& v) const;

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t ncols_;
  bool track_;
  std::size_t generators_ = 0;
  std::vector<Row> rows_;
  std::vector<Row> certs_;
  std::vector<std::size_t> pivot_row_;
};

}  // namespace newton
