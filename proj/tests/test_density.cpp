#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <optional>
#include <vector>

#include "bq/density.hpp"
#include "bq/expsum.hpp"
#include "bq/factor.hpp"
#include "bq/ints.hpp"
#include "bq/rng.hpp"

using namespace bq;

namespace {

i64 quartic_J(const std::vector<i64>& v) {
  i64 a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
  return 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c * c * c;
}

// Plain odometer count over [0,P)^n with the same filters, independent of
// the histogram machinery.
bint scan_count(const QuadricShape& shape, u64 P,
                const std::optional<CongruenceSpec>& spec = {}) {
  std::size_t n = static_cast<std::size_t>(shape.n_vars);
  std::vector<i64> v(n, 0);
  bint count = 0;
  while (true) {
    bool ok = mod_floor(shape.eval(v), static_cast<i64>(P)) == 0;
    if (ok && spec && spec->modulus > 1) {
      u64 m = std::gcd(spec->modulus, P);
      for (std::size_t i = 0; i < n && ok; ++i)
        if (m > 1 && mod_floor(v[i], static_cast<i64>(m)) !=
                         mod_floor(spec->residues[i], static_cast<i64>(m)))
          ok = false;
    }
    if (ok && spec && spec->j_congruence) {
      auto [jm, jr] = *spec->j_congruence;
      if (mod_floor(quartic_J(v), static_cast<i64>(jm)) !=
          mod_floor(jr, static_cast<i64>(jm)))
        ok = false;
    }
    if (ok) ++count;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++v[i] < static_cast<i64>(P)) break;
      v[i] = 0;
    }
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST_CASE("histogram counts match a direct scan") {
  const auto& quartic = QuadricShape::quartic();
  for (u64 P : {2, 3, 4, 5, 6, 7, 9, 12, 25, 27}) {
    CAPTURE(P);
    CHECK(count_mod_any(quartic, P) == scan_count(quartic, P));
  }
  const auto& pairs = QuadricShape::pairs();
  for (u64 P : {2, 3, 4, 5}) {
    CAPTURE(P);
    CHECK(count_mod_any(pairs, P) == scan_count(pairs, P));
  }
}

TEST_CASE("pinned residue counts") {
  const auto& quartic = QuadricShape::quartic();
  CHECK(count_mod(quartic, 5, 1) == 625);
  CHECK(count_mod(quartic, 5, 2) == 393125);
  CHECK(count_mod(quartic, 2, 1) == 16);
  CHECK(count_mod(quartic, 2, 2) == 320);
  CHECK(count_mod(quartic, 2, 3) == 5120);
  CHECK(count_mod(quartic, 3, 2) == 8019);
  CHECK(count_mod_any(quartic, 1) == 1);

  const auto& pairs = QuadricShape::pairs();
  CHECK(count_mod(pairs, 5, 1) == 78625);
  CHECK(count_mod(pairs, 2, 1) == 136);
}

TEST_CASE("level-one closed forms hold past the counting threshold") {
  const auto& quartic = QuadricShape::quartic();
  for (u64 p : {313, 1009}) {
    CAPTURE(p);
    CHECK(count_mod(quartic, p, 1) == bint(p) * p * p * p);
  }
  const auto& pairs = QuadricShape::pairs();
  bint p = 313;
  CHECK(count_mod(pairs, 313, 1) == p * p * p * p * p * p * p + (p - 1) * p * p * p);
}

TEST_CASE("two-step lifting recursion reproduces the exact counts") {
  const auto& quartic = QuadricShape::quartic();
  for (u64 p : {5, 7, 11}) {
    bint n1 = count_mod(quartic, p, 1);
    bint p4 = bint(p) * p * p * p;
    bint p5 = p4 * p;
    CAPTURE(p);
    CHECK(count_mod(quartic, p, 2) == (n1 - 1) * p4 + p5);
    CHECK(count_mod(quartic, p, 3) == (n1 - 1) * p4 * p4 + p5 * n1);
  }
  const auto& pairs = QuadricShape::pairs();
  bint n1 = count_mod(pairs, 5, 1);
  bint p7 = bint(5) * 5 * 5 * 5 * 5 * 5 * 5;
  CHECK(count_mod(pairs, 5, 2) == (n1 - 1) * p7 + p7 * 5);
}

TEST_CASE("local densities") {
  const auto& quartic = QuadricShape::quartic();
  auto d5 = local_density(quartic, 5);
  CHECK(d5.value == brat(156, 155));
  CHECK(d5.k_used == 2);
  CHECK(local_density(quartic, 7).value == brat(400, 399));
  CHECK(local_density(quartic, 11).value == brat(11 * 11 * 11 * 11 - 1, 11 * 11 * 11 * 11 - 11));
  auto d2 = local_density(quartic, 2);
  CHECK(d2.value == brat(9, 7));
  CHECK(d2.k_used == 3);
  CHECK(local_density(quartic, 3).value == brat(16, 13));

  const auto& pairs = QuadricShape::pairs();
  CHECK(local_density(pairs, 5).value == brat(156, 155));
  CHECK(local_density(pairs, 2).value == brat(15, 14));
  // Both shapes lose rank mod 3 and stabilize one level deep with the same
  // plateau value.
  auto d3 = local_density(pairs, 3);
  CHECK(d3.value == brat(16, 13));
  CHECK(d3.k_used == 3);
}

TEST_CASE("congruence-restricted counts and densities") {
  const auto& quartic = QuadricShape::quartic();
  auto even = make_congruence(2, {0, 0, 0, 0, 0});
  for (u64 P : {4, 8}) {
    CAPTURE(P);
    CHECK(count_mod_any(quartic, P, even) == scan_count(quartic, P, even));
  }
  auto mixed = make_congruence(3, {0, 1, 2, 0, 1});
  CHECK(count_mod_any(quartic, 9, mixed) == scan_count(quartic, 9, mixed));

  // Restricting to the doubled forms scales every count by the recursion
  // step, so the density drops by exactly 2^{4-1}: (9/7)/8.
  auto sigma_even = local_density(quartic, 2, even);
  CHECK(sigma_even.value == brat(9, 56));
  // A restriction away from p changes nothing.
  CHECK(local_density(quartic, 5, even).value == brat(156, 155));

  // Empty class: I(F0) = -3 is a unit mod 4.
  auto bad = make_congruence(4, {0, 1, 0, 1, 0});
  CHECK(count_mod(quartic, 2, 2, bad) == 0);
  CHECK(local_density(quartic, 2, bad).value == 0);
}

TEST_CASE("J side conditions go through the term-by-term path") {
  const auto& quartic = QuadricShape::quartic();
  CongruenceSpec jspec;
  jspec.j_congruence = {{4, 1}};
  CHECK(count_mod_any(quartic, 12, jspec) == scan_count(quartic, 12, jspec));
  CongruenceSpec jzero;
  jzero.j_congruence = {{3, 0}};
  CHECK(count_mod_any(quartic, 6, jzero) == scan_count(quartic, 6, jzero));

  CongruenceSpec bad_m;
  bad_m.j_congruence = {{5, 0}};
  CHECK_THROWS_AS(count_mod_any(quartic, 12, bad_m), std::invalid_argument);
  CongruenceSpec heavy;
  heavy.j_congruence = {{4, 0}};
  CHECK_THROWS_AS(count_mod_any(quartic, 500, heavy), GuardError);
}

TEST_CASE("counts factor across coprime moduli") {
  const auto& quartic = QuadricShape::quartic();
  CHECK(count_mod_any(quartic, 6) == count_mod(quartic, 2, 1) * count_mod(quartic, 3, 1));
  CHECK(count_mod_any(quartic, 12) == count_mod(quartic, 2, 2) * count_mod(quartic, 3, 1));
  CHECK(count_mod_any(quartic, 36) == count_mod(quartic, 2, 2) * count_mod(quartic, 3, 2));

  auto spec = make_congruence(6, {1, 2, 3, 4, 5});
  CHECK(count_mod_any(quartic, 36, spec) ==
        count_mod(quartic, 2, 2, spec) * count_mod(quartic, 3, 2, spec));
}

TEST_CASE("singular series") {
  const auto& quartic = QuadricShape::quartic();
  auto empty = singular_series(quartic, 1);
  CHECK(empty.value == 1.0);
  CHECK(empty.primes.empty());

  auto s100 = singular_series(quartic, 100);
  auto s50 = singular_series(quartic, 50);
  CHECK(s100.value > 1.59);
  CHECK(s100.value < 1.61);
  CHECK(std::abs(s100.value - s50.value) < 1e-3);
  CHECK(s100.tail_abs_sum > 0.0);
  CHECK(s100.tail_abs_sum < 1e-3);
  // Tail control: away from the bad primes 2 and 3 each factor sits within
  // 2 p^{-3} of 1, which is what makes the partial products Cauchy.
  for (const auto& ld : s100.primes) {
    if (ld.p < 5) continue;
    double dev = std::abs(static_cast<double>(ld.value) - 1.0);
    double p = static_cast<double>(ld.p);
    CAPTURE(ld.p);
    CHECK(dev <= 2.0 / (p * p * p));
  }

  auto dead = make_congruence(4, {0, 1, 0, 1, 0});
  CHECK(singular_series(quartic, 10, dead).value == 0.0);
}

TEST_CASE("substitution identity at finite level") {
  const auto& quartic = QuadricShape::quartic();
  auto at_zero = thickening_identity_check(quartic, 2, {0, 0, 0, 0, 0}, 2);
  CHECK(at_zero.lhs_count == 1024);
  CHECK(at_zero.rhs_count == 32);
  CHECK(at_zero.equal);
  CHECK(at_zero.depth_reduction_exact);
  CHECK(at_zero.crt_consistent);

  // I(F0) = 1 is a unit mod 3: both sides empty.
  auto unit = thickening_identity_check(quartic, 3, {0, 0, 1, 0, 0}, 2);
  CHECK(unit.lhs_count == 0);
  CHECK(unit.rhs_count == 0);
  CHECK(unit.equal);

  auto composite = thickening_identity_check(quartic, 6, {1, 0, 0, 0, 0}, 2);
  CHECK(composite.equal);
  CHECK(composite.depth_reduction_exact);
  CHECK(composite.crt_consistent);

  CounterRng rng(0xd1, 60);
  for (u64 s = 0; s < 4; ++s) {
    std::vector<i64> F0(5);
    for (int i = 0; i < 5; ++i) F0[static_cast<std::size_t>(i)] = rng.uniform_int(s * 8 + static_cast<u64>(i), 0, 5);
    auto check = thickening_identity_check(quartic, 6, F0, 2);
    CAPTURE(s);
    CHECK(check.equal);
    CHECK(check.depth_reduction_exact);
    CHECK(check.crt_consistent);
  }
}

TEST_CASE("density guards") {
  const auto& quartic = QuadricShape::quartic();
  CHECK_THROWS_AS(count_mod(quartic, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_mod(quartic, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(count_mod_any(quartic, 40000), GuardError);
  CHECK_THROWS_AS(count_mod(quartic, 7, 7), GuardError);
  CHECK_THROWS_AS(count_mod_any(quartic, 0), std::invalid_argument);
  CHECK_THROWS_AS(thickening_identity_check(quartic, 200, {0, 0, 0, 0, 0}, 2), GuardError);
  CHECK_THROWS_AS(thickening_identity_check(quartic, 2, {0, 0, 0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(singular_series(quartic, 20000), GuardError);
  CHECK_THROWS_AS(local_density(quartic, 6), std::invalid_argument);
  CHECK_THROWS_AS(make_congruence(0, {}), std::invalid_argument);
}
