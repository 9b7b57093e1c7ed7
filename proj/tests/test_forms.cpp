#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bq/quartic.hpp"
#include "bq/rng.hpp"
#include "bq/splitting.hpp"

using namespace bq;

namespace {

BinaryQuarticForm form(i64 a, i64 b, i64 c, i64 d, i64 e) {
  return {bint(a), bint(b), bint(c), bint(d), bint(e)};
}

GL2Rat rat_matrix(i64 p, i64 q, i64 r, i64 s) {
  return {brat(p), brat(q), brat(r), brat(s)};
}

}  // namespace

TEST_CASE("invariants on pinned forms") {
  CHECK(invariant_I(form(0, 1, 0, 0, 1)) == 0);
  CHECK(invariant_I(form(1, 0, 0, 0, 1)) == 12);
  CHECK(invariant_I(form(1, 2, 3, 4, 5)) == 45);
  CHECK(invariant_J(form(1, 0, 0, 0, 1)) == 0);
  CHECK(invariant_J(form(0, 1, 0, 0, 1)) == -27);
  CHECK(invariant_J(form(1, 2, 3, 4, 5)) == 270);
  CHECK(discriminant(form(0, 1, 0, 0, 1)) == -729);
  CHECK(discriminant(form(1, 0, 0, 0, 1)) == 6912);
  CHECK(discriminant(form(0, 0, 1, 0, 0)) == 0);
}

TEST_CASE("evaluate matches direct expansion") {
  auto F = form(1, 2, 3, 4, 5);
  CHECK(evaluate(F, 1, 0) == 1);
  CHECK(evaluate(F, 0, 1) == 5);
  CHECK(evaluate(F, 1, 1) == 15);
  CHECK(evaluate(F, 2, -1) == bint(16 - 16 + 12 - 8 + 5));
}

TEST_CASE("action on pinned matrices") {
  // Lower shear u = 1 sends X^4 to (X + Y)^4.
  auto sheared = act(GL2Int{1, 0, 1, 1}, form(1, 0, 0, 0, 0));
  CHECK(sheared == form(1, 4, 6, 4, 1));
  // diag(1, 2) sends Y^4 to 16 Y^4.
  auto diag = act(GL2Int{1, 0, 0, 2}, form(0, 0, 0, 0, 1));
  CHECK(diag == form(0, 0, 0, 0, 16));
  // The 90-degree rotation swaps the ends with alternating signs.
  auto rot = act(GL2Int{0, 1, -1, 0}, form(1, 2, 3, 4, 5));
  CHECK(rot == form(5, -4, 3, -2, 1));
  // Applying it twice recovers the form.
  CHECK(act(GL2Int{0, 1, -1, 0}, rot) == form(1, 2, 3, 4, 5));
}

TEST_CASE("action composes and twists invariants by powers of det") {
  CounterRng rng(20260822);
  for (u64 trial = 0; trial < 2000; ++trial) {
    u64 base = trial * 16;
    auto F = form(rng.uniform_int(base + 0, -9, 9), rng.uniform_int(base + 1, -9, 9),
                  rng.uniform_int(base + 2, -9, 9), rng.uniform_int(base + 3, -9, 9),
                  rng.uniform_int(base + 4, -9, 9));
    GL2Int g{rng.uniform_int(base + 5, -5, 5), rng.uniform_int(base + 6, -5, 5),
             rng.uniform_int(base + 7, -5, 5), rng.uniform_int(base + 8, -5, 5)};
    bint det = g.det();
    auto gF = act(g, F);
    bint d4 = det * det * det * det;
    CHECK(invariant_I(gF) == d4 * invariant_I(F));
    CHECK(invariant_J(gF) == d4 * det * det * invariant_J(F));

    GL2Int h{rng.uniform_int(base + 9, -5, 5), rng.uniform_int(base + 10, -5, 5),
             rng.uniform_int(base + 11, -5, 5), rng.uniform_int(base + 12, -5, 5)};
    CHECK(act(g, act(h, F)) == act(g.mul(h), F));
  }
}

TEST_CASE("rational action reduces to integer action and inverts") {
  auto F = form(3, -1, 0, 2, 7);
  GL2Rat g = rat_matrix(2, 1, 1, 1);
  auto gF = act(g, F);
  REQUIRE(gF.is_integral());
  CHECK(gF.to_integral() == act(GL2Int{2, 1, 1, 1}, F));
  // Inverse of an integer matrix with det 1 undoes the action exactly.
  GL2Rat ginv = rat_matrix(1, -1, -1, 2);
  auto back = act(ginv, gF);
  REQUIRE(back.is_integral());
  CHECK(back.to_integral() == F);
}

TEST_CASE("iwasawa action on pinned data") {
  RealQuarticForm ones{1, 1, 1, 1, 1};
  auto twisted = act_iwasawa(1.0, 2.0, 0.0, ones);
  CHECK(twisted.a == doctest::Approx(1.0 / 16));
  CHECK(twisted.b == doctest::Approx(0.25));
  CHECK(twisted.c == doctest::Approx(1.0));
  CHECK(twisted.d == doctest::Approx(4.0));
  CHECK(twisted.e == doctest::Approx(16.0));

  RealQuarticForm x4{1, 0, 0, 0, 0};
  auto scaled = act_iwasawa(2.0, 1.0, 0.0, x4);
  CHECK(scaled.a == doctest::Approx(16.0));
  auto sheared = act_iwasawa(1.0, 1.0, 1.0, x4);
  CHECK(sheared.a == doctest::Approx(1.0));
  CHECK(sheared.b == doctest::Approx(4.0));
  CHECK(sheared.c == doctest::Approx(6.0));
  CHECK(sheared.d == doctest::Approx(4.0));
  CHECK(sheared.e == doctest::Approx(1.0));
}

TEST_CASE("iwasawa forward then inverse is the identity") {
  CounterRng rng(7);
  for (u64 trial = 0; trial < 500; ++trial) {
    u64 base = trial * 16;
    RealQuarticForm F{rng.uniform_real(base + 0, -5, 5), rng.uniform_real(base + 1, -5, 5),
                      rng.uniform_real(base + 2, -5, 5), rng.uniform_real(base + 3, -5, 5),
                      rng.uniform_real(base + 4, -5, 5)};
    double lam = rng.uniform_real(base + 5, 0.5, 3.0);
    double t = rng.uniform_real(base + 6, 0.5, 3.0);
    double u = rng.uniform_real(base + 7, -0.5, 0.5);
    auto round = act_iwasawa(lam, t, u, act_iwasawa(lam, t, u, F), true);
    for (int i = 0; i < 5; ++i) {
      CHECK(round.coeffs()[i] == doctest::Approx(F.coeffs()[i]).epsilon(1e-10));
    }
    // det(g) = lam^2, so I picks up lam^8.
    auto fwd = act_iwasawa(lam, t, u, F);
    double I_F = 12 * F.a * F.e - 3 * F.b * F.d + F.c * F.c;
    double I_fwd = 12 * fwd.a * fwd.e - 3 * fwd.b * fwd.d + fwd.c * fwd.c;
    CHECK(I_fwd == doctest::Approx(std::pow(lam, 8) * I_F).epsilon(1e-9));
  }
}

TEST_CASE("rational linear factor detection") {
  CHECK(has_rational_linear_factor(form(0, 1, 2, 3, 4)));        // root [1:0]
  CHECK(has_rational_linear_factor(form(4, 3, 2, 1, 0)));        // root [0:1]
  CHECK(has_rational_linear_factor(form(1, 0, 0, 0, -1)));       // X^4 - Y^4
  CHECK_FALSE(has_rational_linear_factor(form(1, 0, 0, 0, 1)));  // X^4 + Y^4
  CHECK_FALSE(has_rational_linear_factor(form(1, 0, 1, 0, 1)));
  CHECK(has_rational_linear_factor(form(1, 2, 2, 2, 1)));  // F(-1, 1) = 0
  CHECK_THROWS_AS(has_rational_linear_factor(form(0, 0, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("rational linear factor agrees with a bounded root scan") {
  auto oracle = [](const BinaryQuarticForm& F) {
    i64 M = 1;
    for (const bint& v : {F.a, F.e}) {
      bint av = boost::multiprecision::abs(v);
      if (av > M) M = static_cast<i64>(av);
    }
    for (i64 x = -M; x <= M; ++x) {
      for (i64 y = -M; y <= M; ++y) {
        if (x == 0 && y == 0) continue;
        if (evaluate(F, x, y) == 0) return true;
      }
    }
    return false;
  };
  for (i64 a = -2; a <= 2; ++a)
    for (i64 b = -2; b <= 2; ++b)
      for (i64 c = -2; c <= 2; ++c)
        for (i64 d = -2; d <= 2; ++d)
          for (i64 e = -2; e <= 2; ++e) {
            auto F = form(a, b, c, d, e);
            if (F.is_zero()) continue;
            CHECK(has_rational_linear_factor(F) == oracle(F));
          }
  CounterRng rng(11);
  for (u64 trial = 0; trial < 400; ++trial) {
    u64 base = trial * 8;
    auto F = form(rng.uniform_int(base + 0, -9, 9), rng.uniform_int(base + 1, -9, 9),
                  rng.uniform_int(base + 2, -9, 9), rng.uniform_int(base + 3, -9, 9),
                  rng.uniform_int(base + 4, -9, 9));
    if (F.is_zero()) continue;
    CHECK(has_rational_linear_factor(F) == oracle(F));
  }
}

TEST_CASE("normal form at I = 0") {
  auto F = normal_form_I0(-1, 54.0);
  // lambda^12 = 27 here, so the middle coefficient is lambda^4 = 3.
  CHECK(F.b == doctest::Approx(3.0));
  CHECK(F.e == doctest::Approx(-2.0 / 9.0));
  double I = 12 * F.a * F.e - 3 * F.b * F.d + F.c * F.c;
  CHECK(I == doctest::Approx(0.0));
  double J = 72 * F.a * F.c * F.e + 9 * F.b * F.c * F.d - 27 * F.a * F.d * F.d -
             27 * F.b * F.b * F.e - 2 * F.c * F.c * F.c;
  CHECK(J == doctest::Approx(54.0).epsilon(1e-12));

  CounterRng rng(3);
  for (u64 trial = 0; trial < 200; ++trial) {
    int sign = (rng.at(trial * 4) & 1) ? 1 : -1;
    double Jt = -sign * rng.uniform_real(trial * 4 + 1, 1e-3, 1e6);
    auto G = normal_form_I0(sign, Jt);
    double JG = -27 * G.b * G.b * G.e;
    CHECK(JG == doctest::Approx(Jt).epsilon(1e-12));
  }
  CHECK_THROWS_AS(normal_form_I0(1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_form_I0(-1, -10.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_form_I0(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_form_I0(2, -10.0), std::invalid_argument);
}

TEST_CASE("splitting types on pinned forms") {
  auto t1 = splitting_type(form(0, 0, 1, 0, 0), 5);  // X^2 Y^2
  CHECK(t1.tag() == "(1^2 1^2)");
  CHECK(t1.infinity_multiplicity == 2);

  auto t2 = splitting_type(form(1, 0, 0, 0, 0), 5);  // X^4
  CHECK(t2.tag() == "(1^4)");
  CHECK(t2.infinity_multiplicity == 0);

  // (X^2 + Y^2)^2 stays a doubled irreducible quadratic mod 3 but splits
  // into two doubled linears mod 5 where -1 is a square.
  auto t3 = splitting_type(form(1, 0, 2, 0, 1), 3);
  CHECK(t3.tag() == "(2^2)");
  auto t4 = splitting_type(form(1, 0, 2, 0, 1), 5);
  CHECK(t4.tag() == "(1^2 1^2)");

  // Product of four distinct linears: X Y (X - Y) (X + Y) = X^3 Y - X Y^3.
  auto t5 = splitting_type(form(0, 1, 0, -1, 0), 5);
  CHECK(t5.tag() == "(1 1 1 1)");
  CHECK(t5.infinity_multiplicity == 1);

  // X^4 + X Y^3 = X (X + Y) (X^2 - X Y + Y^2); mod 5 the quadratic stays
  // irreducible since -3 is not a square there.
  auto t6 = splitting_type(form(1, 0, 0, 1, 0), 5);
  CHECK(t6.tag() == "(1 1 2)");

  // x^4 + x + 1 is irreducible mod 2.
  auto t7 = splitting_type(form(1, 0, 0, 1, 1), 2);
  CHECK(t7.tag() == "(4)");

  CHECK_THROWS_AS(splitting_type(form(1, 0, 0, 0, 1), 6), std::invalid_argument);
  CHECK_THROWS_AS(splitting_type(form(5, 0, 5, 0, 5), 5), std::invalid_argument);
}

TEST_CASE("splitting type degrees sum to four and count roots") {
  CounterRng rng(99);
  const u64 primes[] = {2, 3, 5, 7, 11, 13, 10007};
  for (u64 trial = 0; trial < 1500; ++trial) {
    u64 base = trial * 8;
    u64 p = primes[rng.at(base) % 7];
    auto F = form(rng.uniform_int(base + 1, -30, 30), rng.uniform_int(base + 2, -30, 30),
                  rng.uniform_int(base + 3, -30, 30), rng.uniform_int(base + 4, -30, 30),
                  rng.uniform_int(base + 5, -30, 30));
    bool zero_mod_p = true;
    for (const bint& v : F.coeffs()) {
      if (v % bint(p) != 0) zero_mod_p = false;
    }
    if (zero_mod_p) continue;
    auto st = splitting_type(F, p);
    int total = 0;
    int linear_factors = 0;
    for (auto [degree, mult] : st.parts) {
      total += degree * mult;
      if (degree == 1) ++linear_factors;
    }
    CHECK(total == 4);
    if (p <= 13) {
      // Distinct roots of F in P^1(F_p), counted directly.
      int roots = 0;
      auto pv = bint(p);
      for (u64 x = 0; x < p; ++x) {
        if (evaluate(F, bint(x), 1) % pv == 0) ++roots;
      }
      if (F.a % pv == 0) ++roots;
      CHECK(linear_factors == roots);
    }
  }
}

TEST_CASE("doubled linear pair pins the invariant") {
  // X^2 (X - n Y)^2 has coefficients (1, -2n, n^2, 0, 0) and I = n^4.
  for (i64 n = -6; n <= 6; ++n) {
    auto F = form(1, -2 * n, n * n, 0, 0);
    CHECK(invariant_I(F) == bint(n) * n * n * n);
  }
}
