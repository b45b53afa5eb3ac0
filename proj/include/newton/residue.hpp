#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "newton/facering.hpp"
#include "newton/poly.hpp"
#include "newton/polylattice.hpp"

namespace newton {

/// Residue normalized so that Res[x^(a-1) dx / x_1^a_1 ... x_n^a_n] = 1.
struct ResidueResult {
  Rational value;
  int truncation_used = 0;
  bool stable = false;  // same value at truncation_used and truncation_used + 2
  std::vector<int> exponents;  // N_i with x_i^N_i in (F)
};

/// Coefficient of x^(a-1) in g. Throws InputError unless every a_i >= 1.
Rational monomial_residue(const SparsePoly& g, const std::vector<int>& a);

/// Res_0[g dx / F_1..F_n] through x_i^N_i = sum_j a_ij F_j and
/// Res[g det(a) dx / x^N]. The truncation is raised to at least
/// D0 + sum (N_i - 1) so the dropped tail cannot reach x^(N-1).
ResidueResult grothendieck_residue(const SparsePoly& g, const std::vector<SparsePoly>& F,
                                   std::optional<int> D = std::nullopt);

/// Res_0[f^r h dx / f_1..f_n], f_i = x_i f_{x_i}, after checking
/// supp(x_1..x_n h) in (n-r) relint(delta) and [g] != 0 in Kbar_sigma.
/// Throws VerificationFailure if the residue vanishes.
ResidueResult verify_theorem_0_1_part2(const SparsePoly& f, const FaceDescriptor& face, const SparsePoly& h, int r,
                                       std::optional<int> D = std::nullopt);

struct LatticeSpace {
  Polytope polytope;
  std::int64_t dilation = 0;
  bool interior = false;
  std::vector<IntVector> points;
};

LatticeSpace lattice_space(const Polytope& p, std::int64_t l, bool interior);

/// dim L((n+1)P°) / sum_i g_i L(nP°) for n+1 polynomials supported in P.
std::size_t koszul_top_dimension(const Polytope& p, const std::vector<SparsePoly>& gs);

struct KoszulReport {
  std::size_t dimension = 0;
  int attempts = 0;
  bool generic = false;  // dimension == 1 reached within the resample budget
};

/// Draws n+1 random polynomials with every lattice point of P in the
/// support and retries up to max_attempts times.
KoszulReport koszul_random_check(const Polytope& p, std::mt19937_64& rng, int max_attempts = 5);

struct TraceVolumeReport {
  Integer normalized_volume;  // pulling triangulation
  Integer ehrhart_volume;
  bool agree = false;
  Integer trace;  // value Tr(omega) must take: the intersection number n! Vol
};

TraceVolumeReport trace_volume_check(const Polytope& p);

}  // namespace newton
