#include "bq/expsum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "bq/factor.hpp"
#include "bq/rng.hpp"

namespace bq {

const QuadricShape& QuadricShape::quartic() {
  static const QuadricShape shape{
      5, {{0, 4, 12}, {1, 3, -3}}, {{2, 1}}, 50, 3.5};
  return shape;
}

const QuadricShape& QuadricShape::pairs() {
  static const QuadricShape shape{
      8, {{0, 7, 3}, {1, 6, -1}, {2, 5, 1}, {3, 4, -3}}, {}, 30, 5.0};
  return shape;
}

i64 QuadricShape::eval(const std::vector<i64>& v) const {
  i64 s = 0;
  for (const Bilin& b : bilins) s += b.coeff * v[static_cast<std::size_t>(b.i)] *
                                        v[static_cast<std::size_t>(b.j)];
  for (const Square& sq : squares) {
    i64 x = v[static_cast<std::size_t>(sq.i)];
    s += sq.coeff * x * x;
  }
  return s;
}

namespace {

void check_query(const QuadricShape& shape, u64 q, std::size_t c_len) {
  if (q == 0) throw std::invalid_argument("complete_sum: q >= 1 required");
  if (q > shape.q_guard) throw GuardError("complete_sum: q exceeds the modulus guard");
  if (c_len != static_cast<std::size_t>(shape.n_vars)) {
    throw std::invalid_argument("complete_sum: frequency vector has wrong length");
  }
}

std::vector<u64> reduce_c(const std::vector<i64>& c, u64 q) {
  std::vector<u64> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = static_cast<u64>(mod_floor(c[i], static_cast<i64>(q)));
  }
  return out;
}

u64 reduce_coeff(i64 coeff, u64 q) {
  return static_cast<u64>(mod_floor(coeff, static_cast<i64>(q)));
}

// Histogram of u * alpha * x * y + cx * x + cy * y over (x, y) in (Z/q)^2.
std::vector<u64> bilin_hist(u64 q, u64 ualpha, u64 cx, u64 cy) {
  std::vector<u64> h(q, 0);
  for (u64 x = 0; x < q; ++x) {
    u64 slope = (ualpha * x + cy) % q;
    u64 base = (cx * x) % q;
    for (u64 y = 0; y < q; ++y) {
      ++h[(base + slope * y) % q];
    }
  }
  return h;
}

std::vector<u64> square_hist(u64 q, u64 ualpha, u64 cx) {
  std::vector<u64> h(q, 0);
  for (u64 x = 0; x < q; ++x) {
    ++h[(ualpha * x % q * x + cx * x) % q];
  }
  return h;
}

std::vector<u64> convolve(const std::vector<u64>& a, const std::vector<u64>& b, u64 q) {
  std::vector<u64> out(q, 0);
  for (u64 r = 0; r < q; ++r) {
    if (a[r] == 0) continue;
    for (u64 s = 0; s < q; ++s) {
      out[(r + s) % q] += a[r] * b[s];
    }
  }
  return out;
}

// Histogram of u I(G) + G.c over all G, for one unit u (u = 1 and cr = 0
// gives the plain value histogram of I).
std::vector<u64> value_hist(const QuadricShape& shape, u64 q, u64 u,
                            const std::vector<u64>& cr) {
  std::vector<u64> acc;
  bool first = true;
  auto merge = [&](std::vector<u64>&& h) {
    if (first) {
      acc = std::move(h);
      first = false;
    } else {
      acc = convolve(acc, h, q);
    }
  };
  for (const QuadricShape::Bilin& b : shape.bilins) {
    u64 ualpha = u * reduce_coeff(b.coeff, q) % q;
    merge(bilin_hist(q, ualpha, cr[static_cast<std::size_t>(b.i)],
                     cr[static_cast<std::size_t>(b.j)]));
  }
  for (const QuadricShape::Square& sq : shape.squares) {
    u64 ualpha = u * reduce_coeff(sq.coeff, q) % q;
    merge(square_hist(q, ualpha, cr[static_cast<std::size_t>(sq.i)]));
  }
  return acc;
}

std::complex<double> hist_to_value(const std::vector<i64>& hist, u64 q) {
  std::complex<double> s = 0;
  double w = 2.0 * std::numbers::pi / static_cast<double>(q);
  for (u64 r = 0; r < q; ++r) {
    double phase = w * static_cast<double>(r);
    s += static_cast<double>(hist[r]) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return s;
}

u64 mod_inverse(u64 a, u64 m) {
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return static_cast<u64>(mod_floor(old_s, static_cast<i64>(m)));
}

}  // namespace

CompleteSum complete_sum(const QuadricShape& shape, u64 q, const std::vector<i64>& c) {
  check_query(shape, q, c.size());
  CompleteSum out;
  out.q = q;
  out.c = c;
  out.histogram.assign(q, 0);
  auto cr = reduce_c(c, q);
  for (u64 u = 1; u <= q; ++u) {
    if (q > 1 && std::gcd(u, q) != 1) continue;
    u64 uu = u % q;  // q = 1 has the single unit u = 0 = 1
    auto h = value_hist(shape, q, uu, cr);
    for (u64 r = 0; r < q; ++r) out.histogram[r] += static_cast<i64>(h[r]);
    if (q == 1) break;
  }
  out.value = hist_to_value(out.histogram, q);
  return out;
}

i64 complete_sum_zero_exact(const QuadricShape& shape, u64 q) {
  check_query(shape, q, static_cast<std::size_t>(shape.n_vars));
  std::vector<u64> zero(static_cast<std::size_t>(shape.n_vars), 0);
  auto counts = value_hist(shape, q, 1 % q, zero);
  i64 total = 0;
  for (u64 r = 0; r < q; ++r) {
    total += static_cast<i64>(counts[r]) * ramanujan_sum(q, static_cast<i64>(r));
  }
  return total;
}

std::complex<double> complete_sum_naive(const QuadricShape& shape, u64 q,
                                        const std::vector<i64>& c) {
  check_query(shape, q, c.size());
  u64 naive_guard = shape.n_vars == 5 ? 7 : 5;
  if (q > naive_guard) throw GuardError("complete_sum_naive: q too large for direct evaluation");
  auto cr = reduce_c(c, q);
  std::size_t n = static_cast<std::size_t>(shape.n_vars);
  std::vector<i64> g(n, 0);
  std::complex<double> total = 0;
  double w = 2.0 * std::numbers::pi / static_cast<double>(q);
  for (u64 u = 1; u <= q; ++u) {
    if (q > 1 && std::gcd(u, q) != 1) continue;
    u64 uu = u % q;
    for (;;) {
      i64 phase_int = static_cast<i64>(uu) * shape.eval(g);
      for (std::size_t i = 0; i < n; ++i) phase_int += static_cast<i64>(cr[i]) * g[i];
      double phase = w * static_cast<double>(mod_floor(phase_int, static_cast<i64>(q)));
      total += std::complex<double>(std::cos(phase), std::sin(phase));
      std::size_t pos = 0;
      while (pos < n) {
        if (++g[pos] < static_cast<i64>(q)) break;
        g[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
    if (q == 1) break;
  }
  return total;
}

std::complex<double> crt_predicted(const QuadricShape& shape, u64 q1, u64 q2,
                                   const std::vector<i64>& c) {
  if (std::gcd(q1, q2) != 1) throw std::invalid_argument("crt_predicted: moduli must be coprime");
  u64 inv2 = mod_inverse(q2 % q1 == 0 ? 1 : q2 % q1, q1);
  u64 inv1 = mod_inverse(q1 % q2 == 0 ? 1 : q1 % q2, q2);
  std::vector<i64> c1(c.size()), c2(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c1[i] = static_cast<i64>(static_cast<u64>(mod_floor(c[i], static_cast<i64>(q1))) * inv2 % q1);
    c2[i] = static_cast<i64>(static_cast<u64>(mod_floor(c[i], static_cast<i64>(q2))) * inv1 % q2);
  }
  return complete_sum(shape, q1, c1).value * complete_sum(shape, q2, c2).value;
}

BoundSweepReport bound_sweep(const QuadricShape& shape, u64 q_max, int samples, u64 seed) {
  if (q_max > shape.q_guard) throw GuardError("bound_sweep: q_max exceeds the modulus guard");
  BoundSweepReport report;
  CounterRng rng(seed);
  u64 counter = 0;
  for (u64 q = 1; q <= q_max; ++q) {
    BoundSweepRow row;
    row.q = q;
    double scale = std::pow(static_cast<double>(q), shape.bound_exponent);
    auto consider = [&](const std::vector<i64>& c) {
      double v = std::abs(complete_sum(shape, q, c).value);
      row.max_abs = std::max(row.max_abs, v);
      row.max_ratio = std::max(row.max_ratio, v / scale);
    };
    std::vector<i64> c(static_cast<std::size_t>(shape.n_vars), 0);
    consider(c);
    for (int s = 0; s < samples; ++s) {
      for (auto& ci : c) ci = rng.uniform_int(counter++, 0, static_cast<i64>(q) - 1);
      consider(c);
    }
    if (row.max_ratio > report.worst_ratio) {
      report.worst_ratio = row.max_ratio;
      report.worst_q = q;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace bq
