#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "newton/errors.hpp"
#include "newton/polylattice.hpp"

namespace newton {

/// A rational coefficient cannot be mapped into the requested prime field.
class FieldMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Reduced Groebner basis for degrevlex. Over F_p the coefficients are stored
/// as integers in [0, p).
struct GB {
  std::vector<SparsePoly> generators;
  std::uint64_t prime = 0;  // 0 for the rationals

  bool is_unit() const;
};

/// Degree reverse lexicographic comparison: a > b.
bool degrevlex_greater(const Exponent& a, const Exponent& b);

GB buchberger(const std::vector<SparsePoly>& gens);
/// Throws FieldMismatch if p divides a denominator.
GB buchberger_mod_p(const std::vector<SparsePoly>& gens, std::uint64_t p);

/// Normal form of h modulo the basis (over the basis' field).
SparsePoly normal_form(const SparsePoly& h, const GB& gb);
bool member(const SparsePoly& h, const GB& gb);

/// Deterministic Miller-Rabin for 32-bit inputs.
bool is_prime(std::uint64_t n);
/// Uniform random prime in [2^30, 2^31).
std::uint64_t random_prime(std::mt19937_64& rng);

/// Whether the polynomials have a common zero in the torus over the
/// algebraic closure of F_p (Rabinowitsch trick).
bool torus_has_zero(const std::vector<SparsePoly>& polys, std::uint64_t p);
/// Exact version over Q.
bool torus_has_zero_exact(const std::vector<SparsePoly>& polys);

struct TorusVerdict {
  bool has_zero = false;
  std::vector<std::uint64_t> primes;  // primes of the accepted round
  int rounds = 1;                     // > 1 when primes disagreed
};

/// Runs torus_has_zero over k random primes and requires agreement; on
/// disagreement retries with fresh primes and throws VerificationFailure after
/// max_rounds.
TorusVerdict torus_has_zero_mc(const std::vector<SparsePoly>& polys, int k, std::mt19937_64& rng,
                               int max_rounds = 4);

struct FaceVerdict {
  FaceDescriptor face;
  bool monomial = false;  // short-circuited: a monomial face part has no torus zero
  bool has_torus_zero = false;
  std::vector<std::uint64_t> primes;
};

struct NondegeneracyReport {
  bool axis_condition = false;
  bool nondegenerate = false;
  std::vector<FaceVerdict> faces;  // compact faces, in face order
};

/// Throws PreconditionError("order too small") unless f is in m^2.
NondegeneracyReport nondegeneracy(const SparsePoly& f, int primes, std::uint64_t seed);
bool nondegenerate(const SparsePoly& f, int primes = 3, std::uint64_t seed = 1);

}  // namespace newton
