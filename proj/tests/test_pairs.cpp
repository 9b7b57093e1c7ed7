#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bq/cubic_pair.hpp"
#include "bq/factor.hpp"
#include "bq/quartic.hpp"
#include "bq/rng.hpp"

using namespace bq;

namespace {

BinaryCubicForm cubic(i64 a, i64 b, i64 c, i64 d) {
  return {bint(a), bint(b), bint(c), bint(d)};
}

CubicPair random_pair(CounterRng& rng, u64 base, i64 span) {
  return {{bint(rng.uniform_int(base + 0, -span, span)), bint(rng.uniform_int(base + 1, -span, span)),
           bint(rng.uniform_int(base + 2, -span, span)), bint(rng.uniform_int(base + 3, -span, span))},
          {bint(rng.uniform_int(base + 4, -span, span)), bint(rng.uniform_int(base + 5, -span, span)),
           bint(rng.uniform_int(base + 6, -span, span)), bint(rng.uniform_int(base + 7, -span, span))}};
}

bint disc_cubic(const BinaryCubicForm& f) {
  const bint &a = f.a, &b = f.b, &c = f.c, &d = f.d;
  return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c -
         27 * a * a * d * d;
}

// (g.F)(X, Y) = F(pX + rY, qX + sY), the same right action the quartic
// module uses, restricted to cubics.
BinaryCubicForm act3(const GL2Int& g, const BinaryCubicForm& f) {
  std::array<bint, 4> out{};
  std::array<bint, 2> u{bint(g.p), bint(g.r)}, v{bint(g.q), bint(g.s)};
  std::array<bint, 4> coef{f.a, f.b, f.c, f.d};
  for (int i = 0; i < 4; ++i) {
    // u^(3-i) * v^i, expanded in (X, Y).
    std::array<bint, 4> term{bint(1), bint(0), bint(0), bint(0)};
    int deg = 0;
    auto mul_linear = [&](const std::array<bint, 2>& lin) {
      std::array<bint, 4> next{};
      for (int k = 0; k <= deg; ++k) {
        next[k] += term[k] * lin[0];
        next[k + 1] += term[k] * lin[1];
      }
      term = next;
      ++deg;
    };
    for (int k = 0; k < 3 - i; ++k) mul_linear(u);
    for (int k = 0; k < i; ++k) mul_linear(v);
    for (int k = 0; k < 4; ++k) out[k] += coef[i] * term[k];
  }
  return {out[0], out[1], out[2], out[3]};
}

std::array<i64, 8> key_of(const CubicPair& v) {
  return {v.first.a.convert_to<i64>(),  v.first.b.convert_to<i64>(),
          v.first.c.convert_to<i64>(),  v.first.d.convert_to<i64>(),
          v.second.a.convert_to<i64>(), v.second.b.convert_to<i64>(),
          v.second.c.convert_to<i64>(), v.second.d.convert_to<i64>()};
}

std::set<std::array<i64, 8>> brute_force_set(const std::array<i64, 8>& R) {
  std::set<std::array<i64, 8>> out;
  for (i64 a1 = -R[0]; a1 <= R[0]; ++a1)
    for (i64 b1 = -R[1]; b1 <= R[1]; ++b1)
      for (i64 c1 = -R[2]; c1 <= R[2]; ++c1)
        for (i64 d1 = -R[3]; d1 <= R[3]; ++d1)
          for (i64 a2 = -R[4]; a2 <= R[4]; ++a2)
            for (i64 b2 = -R[5]; b2 <= R[5]; ++b2)
              for (i64 c2 = -R[6]; c2 <= R[6]; ++c2)
                for (i64 d2 = -R[7]; d2 <= R[7]; ++d2)
                  if (3 * a1 * d2 - b1 * c2 + c1 * b2 - 3 * d1 * a2 == 0)
                    out.insert({a1, b1, c1, d1, a2, b2, c2, d2});
  return out;
}

PairBox box_of(std::array<double, 8> b) {
  PairBox box;
  box.bound = b;
  return box;
}

}  // namespace

TEST_CASE("pairing invariant on pinned examples") {
  CubicPair xy{cubic(1, 0, 0, 0), cubic(0, 0, 0, 1)};
  CHECK(invariant_I2(xy) == 3);

  CubicPair yx{cubic(0, 0, 0, 1), cubic(1, 0, 0, 0)};
  CHECK(invariant_I2(yx) == -3);

  CHECK(invariant_I2({cubic(1, 2, 3, 4), cubic(5, 6, 7, 8)}) ==
        bint(3 * 1 * 8 - 2 * 7 + 3 * 6 - 3 * 4 * 5));

  CounterRng rng(41, 0);
  for (u64 trial = 0; trial < 200; ++trial) {
    CubicPair v = random_pair(rng, 16 * trial, 30);
    CHECK(invariant_I2({v.first, v.first}) == 0);
    CHECK(invariant_I2({v.second, v.first}) == -invariant_I2(v));
  }
}

TEST_CASE("resolvent quartic matches hand expansions") {
  CubicPair xy{cubic(1, 0, 0, 0), cubic(0, 0, 0, 1)};
  BinaryQuarticForm G = resolvent_quartic(xy);
  CHECK(G.a == 0);
  CHECK(G.b == 0);
  CHECK(G.c == -27);
  CHECK(G.d == 0);
  CHECK(G.e == 0);
  CHECK(invariant_I(G) == 729);
  CHECK(invariant_J(G) == 39366);
  CHECK(invariant_I(G) % invariant_I2(xy) == 0);

  // Proportional cubics give a pencil whose discriminant vanishes on a
  // whole line, here x = 0, so the quartic degenerates.
  BinaryQuarticForm Z = resolvent_quartic({cubic(1, 0, 0, 0), cubic(0, 3, 0, 0)});
  CHECK(Z.a == 0);
  CHECK(Z.b == 0);
  CHECK(Z.c == 0);
  CHECK(Z.d == 0);
  CHECK(Z.e == 0);

  CounterRng rng(42, 0);
  for (u64 trial = 0; trial < 50; ++trial) {
    CubicPair v = random_pair(rng, 16 * trial, 12);
    BinaryQuarticForm D = resolvent_quartic({v.first, v.first});
    bint disc = disc_cubic(v.first);
    CHECK(D.a == disc);
    CHECK(D.b == 4 * disc);
    CHECK(D.c == 6 * disc);
    CHECK(D.d == 4 * disc);
    CHECK(D.e == disc);
    CHECK(discriminant(D) == 0);
    CHECK(invariant_I(D) == 0);
  }

  // A pair annihilated by the pairing whose resolvent still carries
  // nonzero J: the sextic separates it from the degenerate orbits.
  CubicPair degen{cubic(1, 0, 0, 1), cubic(0, 1, 0, 0)};
  CHECK(invariant_I2(degen) == 0);
  BinaryQuarticForm H = resolvent_quartic(degen);
  CHECK(H.a == -27);
  CHECK(H.b == 0);
  CHECK(H.c == 0);
  CHECK(H.d == -4);
  CHECK(H.e == 0);
  CHECK(invariant_I(H) == 0);
  CHECK(invariant_J(H) == 11664);
  CHECK(sextic_invariant(degen) == 27);
}

TEST_CASE("pairing invariant divides the resolvent I invariant") {
  CounterRng rng(43, 0);
  u64 zero_cases = 0;
  for (u64 trial = 0; trial < 10000; ++trial) {
    CubicPair v = random_pair(rng, 16 * trial, 20);
    bint I2 = invariant_I2(v);
    bint I = invariant_I(resolvent_quartic(v));
    if (I2 == 0) {
      ++zero_cases;
      CHECK(I == 0);
    } else {
      CHECK(I % I2 == 0);
    }
  }
  // Both branches must actually run.
  CHECK(zero_cases > 0);
  CHECK(zero_cases < 10000);
}

TEST_CASE("sextic invariant satisfies the resolvent identities") {
  // Frozen evaluations.
  CHECK(sextic_invariant({cubic(1, 0, 0, 0), cubic(0, 0, 0, 1)}) == 0);
  CHECK(sextic_invariant({cubic(1, 0, 0, 1), cubic(0, 1, 0, 0)}) == 27);
  CHECK(sextic_invariant({cubic(1, 2, 3, 4), cubic(5, 6, 7, 8)}) == 5120);

  CounterRng rng(44, 0);
  bint gs = 0;
  for (u64 trial = 0; trial < 1000; ++trial) {
    CubicPair v = random_pair(rng, 16 * trial, 25);
    bint I2 = invariant_I2(v);
    bint I6 = sextic_invariant(v);
    BinaryQuarticForm G = resolvent_quartic(v);
    bint p2 = I2 * I2, p3 = p2 * I2;
    CHECK(invariant_I(G) == 9 * p3 * I2 + 8 * I2 * I6);
    CHECK(invariant_J(G) == 54 * p3 * p3 + 72 * p3 * I6 + 16 * I6 * I6);
    gs = boost::multiprecision::gcd(gs, I6);
  }
  // Values generate the unit ideal: no hidden content survives.
  CHECK(gs == 1);

  // On the quadric the J identity collapses to a perfect square times 16;
  // the enumerator supplies genuine quadric points.
  u64 locus_hits = 0;
  PairEnumOptions opts;
  opts.visitor = [&](const CubicPair& v) {
    if (locus_hits >= 2000) return;
    ++locus_hits;
    REQUIRE(invariant_I2(v) == 0);
    bint I6 = sextic_invariant(v);
    CHECK(invariant_I(resolvent_quartic(v)) == 0);
    CHECK(invariant_J(resolvent_quartic(v)) == 16 * I6 * I6);
  };
  PairBox locus_box;
  locus_box.bound = {3, 3, 3, 3, 3, 3, 3, 3};
  count_pairs_quadric(locus_box, opts);
  CHECK(locus_hits == 2000);

  // Degree-six homogeneity.
  CounterRng rng2(440, 0);
  for (u64 trial = 0; trial < 50; ++trial) {
    CubicPair v = random_pair(rng2, 16 * trial, 9);
    CubicPair tripled{{3 * v.first.a, 3 * v.first.b, 3 * v.first.c, 3 * v.first.d},
                      {3 * v.second.a, 3 * v.second.b, 3 * v.second.c, 3 * v.second.d}};
    CHECK(sextic_invariant(tripled) == 729 * sextic_invariant(v));
  }
}

TEST_CASE("invariants transform by the determinant characters") {
  CounterRng rng(45, 0);
  const GL2Int kT{1, 0, 1, 1}, kTinv{1, 0, -1, 1}, kS{0, -1, 1, 0}, kR{-1, 0, 0, 1};
  u64 sign_flips = 0;
  for (u64 trial = 0; trial < 1000; ++trial) {
    CubicPair v = random_pair(rng, 32 * trial, 15);
    CubicPair w = v;
    int sign = 1;
    for (int step = 0; step < 5; ++step) {
      switch (rng.uniform_int(32 * trial + 8 + step, 0, 6)) {
        case 0:  // pencil shear (F1 + F2, F2)
          w.first = {w.first.a + w.second.a, w.first.b + w.second.b, w.first.c + w.second.c,
                     w.first.d + w.second.d};
          break;
        case 1:  // pencil rotation (F2, -F1)
          w = {w.second, {-w.first.a, -w.first.b, -w.first.c, -w.first.d}};
          break;
        case 2:  // swap, pencil determinant -1
          w = {w.second, w.first};
          sign = -sign;
          break;
        case 3:
          w = {act3(kT, w.first), act3(kT, w.second)};
          break;
        case 4:
          w = {act3(kTinv, w.first), act3(kTinv, w.second)};
          break;
        case 5:
          w = {act3(kS, w.first), act3(kS, w.second)};
          break;
        case 6:  // variable reflection, determinant -1
          w = {act3(kR, w.first), act3(kR, w.second)};
          sign = -sign;
          break;
      }
    }
    if (sign < 0) ++sign_flips;
    CHECK(invariant_I2(w) == sign * invariant_I2(v));
    CHECK(sextic_invariant(w) == sign * sextic_invariant(v));
  }
  CHECK(sign_flips > 100);
  CHECK(sign_flips < 900);
}

TEST_CASE("enumeration agrees with the eight-fold loop") {
  std::vector<std::array<double, 8>> boxes = {
      {2, 2, 2, 2, 2, 2, 2, 2},
      {3, 1, 2, 1, 1, 2, 1, 3},
      {2, 0, 2, 1, 2, 0, 2, 1},
      {2.7, 1.2, 2.0, 1.9, 1.0, 2.4, 1.5, 2.7},
      {0, 0, 0, 0, 0, 0, 0, 0},
  };
  for (const auto& b : boxes) {
    CAPTURE(b[0]);
    CAPTURE(b[1]);
    PairBox box = box_of(b);
    std::set<std::array<i64, 8>> seen;
    bool in_box = true, on_quadric = true;
    PairEnumOptions opts;
    opts.visitor = [&](const CubicPair& v) {
      auto k = key_of(v);
      for (int i = 0; i < 8; ++i)
        if (std::abs(k[i]) > static_cast<i64>(std::floor(b[i]))) in_box = false;
      if (invariant_I2(v) != 0) on_quadric = false;
      seen.insert(k);
    };
    PairCountReport rep = count_pairs_quadric(box, opts);
    CHECK(in_box);
    CHECK(on_quadric);
    CHECK(seen.size() == rep.total);
    CHECK(rep.total == rep.zero_stratum + rep.divisor_stratum);
    CHECK(rep.total == brute_force_pairs_count(box));

    std::array<i64, 8> R;
    u64 six = 1;
    for (int i = 0; i < 8; ++i) R[i] = static_cast<i64>(std::floor(b[i]));
    for (int i : {1, 2, 3, 4, 5, 6}) six *= u64(2 * R[i] + 1);
    CHECK(rep.six_tuples == six);
    CHECK(seen == brute_force_set(R));
  }
}

TEST_CASE("fiber sizes obey the divisor bound") {
  PairBox box = box_of({3, 3, 3, 3, 3, 3, 3, 3});
  std::map<std::array<i64, 6>, u64> fibers;
  PairEnumOptions opts;
  opts.visitor = [&](const CubicPair& v) {
    auto k = key_of(v);
    ++fibers[{k[1], k[2], k[3], k[4], k[5], k[6]}];
  };
  PairCountReport rep = count_pairs_quadric(box, opts);
  CHECK(rep.total > 0);

  u64 max_fiber = 0;
  for (const auto& [six, count] : fibers) {
    max_fiber = std::max(max_fiber, count);
    i64 r = six[0] * six[5] - six[1] * six[4] + 3 * six[2] * six[3];
    REQUIRE(r % 3 == 0);
    i64 n = r / 3;
    if (n == 0) {
      CHECK(count == 13);  // (2*3+1) + (2*3+1) - 1
    } else {
      CHECK(count <= 2 * divisors_u64(u64(n < 0 ? -n : n)).size());
    }
  }
  CHECK(rep.max_fiber == max_fiber);

  // Six-tuples whose congruence fails contribute nothing, so strictly
  // fewer six-tuples carry pairs than were scanned.
  CHECK(fibers.size() < rep.six_tuples);
}

TEST_CASE("skewed boxes and the tail table") {
  PairBox box = pair_sharp_box(10, 2, 1);
  CHECK(box.bound[0] == doctest::Approx(1.25));
  CHECK(box.bound[1] == doctest::Approx(5.0));
  CHECK(box.bound[2] == doctest::Approx(20.0));
  CHECK(box.bound[3] == doctest::Approx(80.0));
  for (int i = 0; i < 4; ++i) CHECK(box.bound[i] == box.bound[i + 4]);

  PairBox unit = pair_sharp_box(6, 1, 1);
  for (int i = 0; i < 8; ++i) CHECK(unit.bound[i] == doctest::Approx(6.0));

  std::vector<PairTailRow> rows = tail_count_pairs({4, 6}, {1, 1.5});
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.count > 0);
    CHECK(row.normalized == doctest::Approx(double(row.count) / std::pow(row.lambda, 6.0)));
  }
  CHECK(rows[0].lambda == 4);
  CHECK(rows[0].t == 1);
  CHECK(rows[3].lambda == 6);
  CHECK(rows[3].t == 1.5);
  // Raw counts grow with the box.
  CHECK(rows[2].count > rows[0].count);

  // The grid rows reproduce direct counts at the same box.
  CHECK(rows[0].count == count_pairs_quadric(pair_sharp_box(4, 1, 1)).total);

  CHECK(tail_count_pairs({}, {1, 2}).empty());
  CHECK(tail_count_pairs({4}, {}).empty());
}

TEST_CASE("pair height tracks the dominant invariant") {
  CubicPair xy{cubic(1, 0, 0, 0), cubic(0, 0, 0, 1)};
  // I2 = 3 and I6 = 0, so the pairing branch wins: (3^(1/2))^24 = 3^12.
  CHECK(pair_height(xy) == doctest::Approx(std::pow(3.0, 12.0)).epsilon(1e-9));

  CubicPair degenerate{cubic(1, 0, 0, 0), cubic(0, 3, 0, 0)};
  CHECK(pair_height(degenerate) == 0);

  CounterRng rng(46, 0);
  for (u64 trial = 0; trial < 20; ++trial) {
    CubicPair v = random_pair(rng, 16 * trial, 9);
    CubicPair doubled{{2 * v.first.a, 2 * v.first.b, 2 * v.first.c, 2 * v.first.d},
                      {2 * v.second.a, 2 * v.second.b, 2 * v.second.c, 2 * v.second.d}};
    double h = pair_height(v);
    if (h == 0) continue;
    CHECK(pair_height(doubled) / h == doctest::Approx(std::pow(2.0, 24.0)).epsilon(1e-6));
  }
}

TEST_CASE("guards and argument checks") {
  CHECK_THROWS_AS(count_pairs_quadric(box_of({0, 40, 40, 40, 40, 40, 40, 0})), GuardError);
  CHECK_THROWS_AS(brute_force_pairs_count(box_of({13, 13, 13, 13, 13, 13, 13, 13})), GuardError);
  CHECK_THROWS_AS(count_pairs_quadric(box_of({-1, 2, 2, 2, 2, 2, 2, 2})), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_pairs_count(box_of({2, 2, 2, 2, std::nan(""), 2, 2, 2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(pair_sharp_box(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(pair_sharp_box(10, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(pair_sharp_box(10, 1, 0), std::invalid_argument);

  // Large a1/d2 bounds are fine: only the six outer ranges are budgeted.
  PairBox wide = box_of({1e6, 1, 1, 1, 1, 1, 1, 1e6});
  PairCountReport rep = count_pairs_quadric(wide);
  CHECK(rep.total > 0);
  CHECK(rep.zero_stratum > 0);
}