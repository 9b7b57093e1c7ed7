#pragma once

#include <utility>
#include <vector>

#include "bq/ints.hpp"

namespace bq {

// Smallest-prime-factor sieve up to a fixed limit. Built once and shared;
// factoring a table-sized n walks the spf chain in O(log n).
class SpfTable {
 public:
  explicit SpfTable(u32 limit);

  u32 limit() const { return limit_; }
  u32 spf(u32 n) const { return spf_[n]; }
  bool is_prime(u32 n) const { return n >= 2 && spf_[n] == n; }
  const std::vector<u32>& primes() const { return primes_; }

  // Factorization of 2 <= n <= limit as (prime, exponent) pairs, primes
  // ascending. n = 1 gives the empty list.
  std::vector<std::pair<u64, int>> factor(u32 n) const;

 private:
  u32 limit_;
  std::vector<u32> spf_;
  std::vector<u32> primes_;
};

// Shared process-wide table (10^6). Lazily built, then reused.
const SpfTable& default_spf();

bool is_prime_u64(u64 n);

// Full factorization of n >= 1. Trial division over the shared table's
// primes, then Brent-cycle rho on what remains; all arithmetic in 128-bit
// intermediates. Every 64-bit input terminates.
std::vector<std::pair<u64, int>> factor_u64(u64 n);

// Factorization for integers beyond 64 bits, |n| <= 10^36. Same structure
// with cpp_int arithmetic and an iteration budget; exceeding either bound
// raises GuardError.
std::vector<std::pair<bint, int>> factor_bint(const bint& n);

// All positive divisors, ascending.
std::vector<u64> divisors_u64(u64 n);
std::vector<bint> divisors_bint(const bint& n);

// Number-of-divisors from a factorization.
template <class P>
u64 divisor_count(const std::vector<std::pair<P, int>>& fac) {
  u64 d = 1;
  for (const auto& [p, e] : fac) d *= static_cast<u64>(e + 1);
  return d;
}

// Moebius mu(n) for n >= 1.
int moebius_u64(u64 n);

// Euler phi(n) for n >= 1.
u64 euler_phi_u64(u64 n);

// Ramanujan sum c_q(r) = sum over d | gcd(r, q) of d * mu(q / d).
i64 ramanujan_sum(u64 q, i64 r);

}  // namespace bq
