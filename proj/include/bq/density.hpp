#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bq/expsum.hpp"
#include "bq/ints.hpp"

namespace bq {

// Residue-class restriction G = F0 mod M, optionally with a side condition
// J(G) = j_residue mod j_modulus (quartic only; J is cubic in the
// coefficients, so that path counts term by term and carries a tight guard).
struct CongruenceSpec {
  u64 modulus = 1;
  std::vector<i64> residues;
  std::optional<std::pair<u64, i64>> j_congruence;
};

CongruenceSpec make_congruence(u64 modulus, std::vector<i64> residues);

struct LocalDensity {
  u64 p = 2;
  int k_used = 0;
  brat value;
  std::optional<CongruenceSpec> congruence;
};

// #{G mod `modulus` : I(G) = 0 mod `modulus`, G = F0 mod gcd(M, modulus)}.
// Exact; evaluated through per-block value histograms convolved mod the
// modulus, so the cost is O(modulus^2) rather than modulus^n.
bint count_mod_any(const QuadricShape& shape, u64 modulus,
                   const std::optional<CongruenceSpec>& spec = {});

// Same count at modulus p^k with p checked prime.
bint count_mod(const QuadricShape& shape, u64 p, int k,
               const std::optional<CongruenceSpec>& spec = {});

// Largest modulus count_mod_any accepts for this shape; the five-variable
// shape convolves within u64 up to here, the eight-variable one is capped
// lower to keep the final i128 convolution affordable.
u64 density_modulus_cap(const QuadricShape& shape);

// p-adic density lim_k p^{-(n-1)k} N_k as an exact rational.
//
// At primes where every block coefficient is invertible the singular locus
// mod p is the origin, so N_k = (N_1 - 1) p^{(n-1)(k-1)} + p^n N_{k-2} holds
// for all k >= 2 and the limit is (N_1 - 1)/(p^{n-1} - p).  Everywhere else
// (p dividing a block coefficient, or a congruence restriction active at p)
// the same quantity A_k = (N_k - p^n N_{k-2}) / p^{(n-1)(k-1)} is computed
// from exact counts until it repeats at two consecutive k; a GuardError is
// raised when no repetition occurs within the modulus guard.
LocalDensity local_density(const QuadricShape& shape, u64 p,
                           const std::optional<CongruenceSpec>& spec = {});

struct SingularSeries {
  double value = 1.0;
  std::vector<LocalDensity> primes;
  // Sum of |sigma_p - 1| over primes in (P/2, P]; the convergence diagnostic.
  double tail_abs_sum = 0.0;
};

// prod_{p <= P} local_density(p).value with the per-prime exact table.
SingularSeries singular_series(const QuadricShape& shape, u64 P,
                               const std::optional<CongruenceSpec>& spec = {});

// Finite-level form of the substitution G = F0 + M*Ftil.  Writing n for the
// variable count, the two normalized densities
//   M^{-(n-1)k - n} #{Ftil mod M^k : I(F0 + M Ftil) = 0 mod M^k}
//   M^{-(n-1)k}     #{G    mod M^k : I(G) = 0 mod M^k, G = F0 mod M}
// agree exactly, because I(F0 + M Ftil) mod M^k only depends on Ftil mod
// M^{k-1}.  Both counts are computed directly and compared.
struct ThickeningCheck {
  u64 M = 2;
  int k = 1;
  std::vector<i64> F0;
  bint lhs_count;
  bint rhs_count;
  brat lhs_scaled;
  brat rhs_scaled;
  bool equal = false;
  // lhs_count recomputed from Ftil mod M^{k-1} lifted by M^n.
  bool depth_reduction_exact = false;
  // lhs_count rebuilt as a product over the prime parts of M^k.
  bool crt_consistent = false;
};

ThickeningCheck thickening_identity_check(const QuadricShape& shape, u64 M,
                                          const std::vector<i64>& F0, int k);

}  // namespace bq
