#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bq {

using i32 = std::int32_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Exact integer and rational scalars. cpp_int is header-only and
// value-semantic, which keeps the invariant algebra allocation-honest
// without an external bignum dependency.
using bint = boost::multiprecision::cpp_int;
using brat = boost::multiprecision::cpp_rational;

// Thrown when a requested computation exceeds one of the documented
// resource guards (enumeration volume, modulus caps, factoring size).
// The CLI maps this to exit code 2.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

inline i64 iabs64(i64 x) { return x < 0 ? -x : x; }

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Nonnegative representative of a mod m, m > 0.
inline i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// p-adic valuation of n != 0; returns the pair (v, n / p^v).
inline std::pair<int, u64> split_valuation_u64(u64 n, u64 p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return {v, n};
}

inline int valuation_bint(const bint& n, const bint& p, bint* unit_out = nullptr) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  bint m = n;
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  if (unit_out) *unit_out = m;
  return v;
}

inline bool fits_i64(const bint& n) {
  static const bint lo = std::numeric_limits<i64>::min();
  static const bint hi = std::numeric_limits<i64>::max();
  return n >= lo && n <= hi;
}

inline i64 to_i64_checked(const bint& n, const char* what) {
  if (!fits_i64(n)) throw GuardError(std::string(what) + ": value exceeds 64-bit range");
  return static_cast<i64>(n);
}

}  // namespace bq
