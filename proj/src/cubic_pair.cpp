#include "bq/cubic_pair.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "bq/factor.hpp"

namespace bq {
namespace {

using Quartic = std::array<bint, 5>;

// Product of homogeneous polynomials in (x, y), dense coefficient arrays.
template <size_t N, size_t M>
std::array<bint, N + M - 1> hmul(const std::array<bint, N>& f, const std::array<bint, M>& g) {
  std::array<bint, N + M - 1> r{};
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < M; ++j) r[i + j] += f[i] * g[j];
  return r;
}

i64 range_of(double bound) {
  if (!(bound >= 0) || !std::isfinite(bound))
    throw std::invalid_argument("pair box bound must be finite and nonnegative");
  return static_cast<i64>(std::floor(bound));
}

}  // namespace

bint invariant_I2(const CubicPair& v) {
  const auto& [f, g] = v;
  return 3 * f.a * g.d - f.b * g.c + f.c * g.b - 3 * f.d * g.a;
}

BinaryQuarticForm resolvent_quartic(const CubicPair& v) {
  using Lin = std::array<bint, 2>;
  Lin A{v.first.a, v.second.a}, B{v.first.b, v.second.b};
  Lin C{v.first.c, v.second.c}, D{v.first.d, v.second.d};
  // disc of t^3 A + t^2 B + t C + D:
  // 18 ABCD - 4 B^3 D + B^2 C^2 - 4 A C^3 - 27 A^2 D^2.
  Quartic acc{};
  auto add = [&acc](i64 w, const Quartic& term) {
    for (size_t i = 0; i < 5; ++i) acc[i] += w * term[i];
  };
  add(18, hmul(hmul(A, B), hmul(C, D)));
  add(-4, hmul(hmul(B, B), hmul(B, D)));
  add(1, hmul(hmul(B, B), hmul(C, C)));
  add(-4, hmul(hmul(A, C), hmul(C, C)));
  add(-27, hmul(hmul(A, A), hmul(D, D)));
  return {acc[0], acc[1], acc[2], acc[3], acc[4]};
}

// Solved from the invariance conditions P(g v) = P(v) over the four
// generators of the unimodular pencil and variable actions, restricted to
// the 48 torus-neutral monomials of bidegree (3, 3).  That solution space
// is two-dimensional and contains invariant_I2 cubed; the table is the
// unique second vector with no a1^3 d2^3 term, primitive, leading
// coefficient positive.  Exponents are in the order
// (a1, b1, c1, d1, a2, b2, c2, d2).
static const struct { int e[8]; long long c; } kSexticTable[34] = {
    {{0, 0, 2, 1, 1, 2, 0, 0}, 9},
    {{0, 0, 2, 1, 2, 0, 1, 0}, -27},
    {{0, 0, 3, 0, 0, 3, 0, 0}, -1},
    {{0, 0, 3, 0, 2, 0, 0, 1}, 27},
    {{0, 1, 0, 2, 1, 2, 0, 0}, -27},
    {{0, 1, 0, 2, 2, 0, 1, 0}, 81},
    {{0, 1, 1, 1, 1, 1, 1, 0}, 9},
    {{0, 1, 1, 1, 2, 0, 0, 1}, -81},
    {{0, 1, 2, 0, 0, 2, 1, 0}, 3},
    {{0, 1, 2, 0, 1, 1, 0, 1}, -27},
    {{0, 2, 0, 1, 1, 0, 2, 0}, -18},
    {{0, 2, 0, 1, 1, 1, 0, 1}, 54},
    {{0, 2, 1, 0, 0, 1, 2, 0}, -3},
    {{0, 2, 1, 0, 1, 0, 1, 1}, 27},
    {{0, 3, 0, 0, 0, 0, 3, 0}, 1},
    {{0, 3, 0, 0, 1, 0, 0, 2}, -27},
    {{1, 0, 0, 2, 0, 3, 0, 0}, 27},
    {{1, 0, 0, 2, 1, 1, 1, 0}, -81},
    {{1, 0, 1, 1, 0, 2, 1, 0}, -27},
    {{1, 0, 1, 1, 1, 0, 2, 0}, 54},
    {{1, 0, 1, 1, 1, 1, 0, 1}, 81},
    {{1, 0, 2, 0, 0, 2, 0, 1}, 18},
    {{1, 0, 2, 0, 1, 0, 1, 1}, -54},
    {{1, 1, 0, 1, 0, 1, 2, 0}, 27},
    {{1, 1, 0, 1, 0, 2, 0, 1}, -54},
    {{1, 1, 0, 1, 1, 0, 1, 1}, -81},
    {{1, 1, 1, 0, 0, 1, 1, 1}, -9},
    {{1, 1, 1, 0, 1, 0, 0, 2}, 81},
    {{1, 2, 0, 0, 0, 0, 2, 1}, -9},
    {{1, 2, 0, 0, 0, 1, 0, 2}, 27},
    {{2, 0, 0, 1, 0, 0, 3, 0}, -27},
    {{2, 0, 0, 1, 0, 1, 1, 1}, 81},
    {{2, 0, 1, 0, 0, 0, 2, 1}, 27},
    {{2, 0, 1, 0, 0, 1, 0, 2}, -81},
};

bint sextic_invariant(const CubicPair& v) {
  const bint vars[8] = {v.first.a,  v.first.b,  v.first.c,  v.first.d,
                        v.second.a, v.second.b, v.second.c, v.second.d};
  bint s = 0;
  for (const auto& row : kSexticTable) {
    bint t = row.c;
    for (int i = 0; i < 8; ++i)
      for (int k = 0; k < row.e[i]; ++k) t *= vars[i];
    s += t;
  }
  return s;
}

double pair_height(const CubicPair& v) {
  double i2 = abs(invariant_I2(v)).convert_to<double>();
  double i6 = abs(sextic_invariant(v)).convert_to<double>();
  double base = std::max(std::pow(i2, 0.5), std::pow(i6, 1.0 / 6.0));
  return std::pow(base, 24.0);
}

PairBox pair_sharp_box(double lambda, double t, double C) {
  if (!(lambda > 0) || !(t > 0) || !(C > 0))
    throw std::invalid_argument("pair_sharp_box: scales must be positive");
  PairBox box;
  for (int i = 0; i < 4; ++i) {
    double scale = C * lambda * std::pow(t, 2 * i - 3);
    box.bound[i] = scale;
    box.bound[i + 4] = scale;
  }
  return box;
}

PairCountReport count_pairs_quadric(const PairBox& box, const PairEnumOptions& opts) {
  i64 R[8];
  for (int i = 0; i < 8; ++i) R[i] = range_of(box.bound[i]);
  double outer = 1;
  for (int i : {1, 2, 3, 4, 5, 6}) outer *= 2 * double(R[i]) + 1;
  if (outer > 6e9)
    throw GuardError("count_pairs_quadric: outer coefficient ranges exceed the 6e9 budget");

  auto start = std::chrono::steady_clock::now();
  PairCountReport rep;
  auto emit = [&](i64 a1, i64 b1, i64 c1, i64 d1, i64 a2, i64 b2, i64 c2, i64 d2) {
    if (opts.visitor)
      opts.visitor(CubicPair{{a1, b1, c1, d1}, {a2, b2, c2, d2}});
  };

  for (i64 b1 = -R[1]; b1 <= R[1]; ++b1)
    for (i64 c1 = -R[2]; c1 <= R[2]; ++c1)
      for (i64 d1 = -R[3]; d1 <= R[3]; ++d1)
        for (i64 a2 = -R[4]; a2 <= R[4]; ++a2)
          for (i64 b2 = -R[5]; b2 <= R[5]; ++b2)
            for (i64 c2 = -R[6]; c2 <= R[6]; ++c2) {
              ++rep.six_tuples;
              i64 r = b1 * c2 - c1 * b2 + 3 * d1 * a2;
              u64 fiber = 0;
              if (r % 3 == 0) {
                i64 n = r / 3;
                if (n == 0) {
                  // a1 d2 = 0: either coordinate ranges freely while the
                  // other is pinned to zero.
                  fiber = u64(2 * R[0] + 1) + u64(2 * R[7] + 1) - 1;
                  rep.zero_stratum += fiber;
                  if (opts.visitor) {
                    for (i64 a1 = -R[0]; a1 <= R[0]; ++a1) emit(a1, b1, c1, d1, a2, b2, c2, 0);
                    for (i64 d2 = -R[7]; d2 <= R[7]; ++d2)
                      if (d2 != 0) emit(0, b1, c1, d1, a2, b2, c2, d2);
                  }
                } else {
                  for (u64 div : divisors_u64(u64(n < 0 ? -n : n))) {
                    i64 a1 = i64(div);
                    i64 d2 = n / a1;
                    for (int sign = 0; sign < 2; ++sign, a1 = -a1, d2 = -d2) {
                      if (a1 < -R[0] || a1 > R[0] || d2 < -R[7] || d2 > R[7]) continue;
                      ++fiber;
                      if (opts.visitor) emit(a1, b1, c1, d1, a2, b2, c2, d2);
                    }
                  }
                  rep.divisor_stratum += fiber;
                }
              }
              rep.total += fiber;
              rep.max_fiber = std::max(rep.max_fiber, fiber);
            }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

u64 brute_force_pairs_count(const PairBox& box) {
  i64 R[8];
  double product = 1;
  for (int i = 0; i < 8; ++i) {
    R[i] = range_of(box.bound[i]);
    product *= 2 * double(R[i]) + 1;
  }
  if (product > 1e9)
    throw GuardError("brute_force_pairs_count: box exceeds the 1e9 budget");
  u64 total = 0;
  for (i64 a1 = -R[0]; a1 <= R[0]; ++a1)
    for (i64 b1 = -R[1]; b1 <= R[1]; ++b1)
      for (i64 c1 = -R[2]; c1 <= R[2]; ++c1)
        for (i64 d1 = -R[3]; d1 <= R[3]; ++d1)
          for (i64 a2 = -R[4]; a2 <= R[4]; ++a2)
            for (i64 b2 = -R[5]; b2 <= R[5]; ++b2)
              for (i64 c2 = -R[6]; c2 <= R[6]; ++c2)
                for (i64 d2 = -R[7]; d2 <= R[7]; ++d2)
                  if (3 * a1 * d2 - b1 * c2 + c1 * b2 - 3 * d1 * a2 == 0) ++total;
  return total;
}

std::vector<PairTailRow> tail_count_pairs(const std::vector<double>& lambda_grid,
                                          const std::vector<double>& t_grid) {
  std::vector<PairTailRow> rows;
  for (double lambda : lambda_grid)
    for (double t : t_grid) {
      PairTailRow row;
      row.lambda = lambda;
      row.t = t;
      row.count = count_pairs_quadric(pair_sharp_box(lambda, t, 1.0)).total;
      row.normalized = double(row.count) / std::pow(lambda, 6.0);
      rows.push_back(row);
    }
  return rows;
}

}  // namespace bq
