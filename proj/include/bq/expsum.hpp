#pragma once

#include <complex>
#include <vector>

#include "bq/ints.hpp"

namespace bq {

// The invariant whose complete sums are studied is in both cases a sum of
// rank-2 hyperbolic blocks and at most one square block:
//   quartic (a,b,c,d,e):            12 a e - 3 b d + c^2
//   cubic pair (a1..d1, a2..d2):    3 a1 d2 - b1 c2 + c1 b2 - 3 d1 a2
// Counting over (Z/q)^n therefore factors through one histogram per block,
// convolved cyclically mod q, which keeps every intermediate value an exact
// integer.
struct QuadricShape {
  struct Bilin {
    int i, j;
    i64 coeff;
  };
  struct Square {
    int i;
    i64 coeff;
  };
  int n_vars;
  std::vector<Bilin> bilins;
  std::vector<Square> squares;
  u64 q_guard;             // complete-sum modulus cap
  double bound_exponent;   // q-power in the expected |S_q| bound

  static const QuadricShape& quartic();
  static const QuadricShape& pairs();

  i64 eval(const std::vector<i64>& v) const;
};

struct CompleteSum {
  u64 q = 1;
  std::vector<i64> c;
  std::complex<double> value;
  // histogram[s] = #{(u, G) : u unit, u I(G) + G.c = s mod q}; the value
  // above is its Fourier pairing with e_q.
  std::vector<i64> histogram;
};

// S_q(c) = sum over units u and G in (Z/q)^n of e_q(u I(G) + G.c).
// Guards: q <= shape.q_guard.
CompleteSum complete_sum(const QuadricShape& shape, u64 q, const std::vector<i64>& c);

// S_q(0) as an exact integer: the unit average turns into Ramanujan sums,
// S_q(0) = sum_r #{G : I(G) = r mod q} * c_q(r).
i64 complete_sum_zero_exact(const QuadricShape& shape, u64 q);

// Term-by-term reference evaluation. Exponential cost; guarded to q <= 7
// for 5 variables and q <= 5 for 8 variables.
std::complex<double> complete_sum_naive(const QuadricShape& shape, u64 q,
                                        const std::vector<i64>& c);

// Multiplicativity prediction for coprime moduli:
//   S_{q1 q2}(c) = S_{q1}(q2inv * c) * S_{q2}(q1inv * c)
// with q2inv the inverse of q2 mod q1 and vice versa.
std::complex<double> crt_predicted(const QuadricShape& shape, u64 q1, u64 q2,
                                   const std::vector<i64>& c);

struct BoundSweepRow {
  u64 q = 1;
  double max_abs = 0;
  double max_ratio = 0;  // max |S_q(c)| / q^bound_exponent over sampled c
};

struct BoundSweepReport {
  std::vector<BoundSweepRow> rows;
  double worst_ratio = 0;
  u64 worst_q = 1;
};

// Sweeps q = 1..q_max with `samples` random c vectors per q (plus c = 0)
// and reports the observed ratios against q^bound_exponent.
BoundSweepReport bound_sweep(const QuadricShape& shape, u64 q_max, int samples, u64 seed);

}  // namespace bq
