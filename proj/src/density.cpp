#include "bq/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bq/factor.hpp"

namespace bq {

namespace {

constexpr u64 kU64SafeTotal = u64(9) * 1000 * 1000 * 1000 * 1000 * 1000 * 1000;
constexpr u64 kOdometerBudget = 200'000'000;

bint to_bint(u128 v) {
  bint hi = static_cast<u64>(v >> 64);
  hi <<= 64;
  return hi + static_cast<u64>(v);
}

bint bpow(u64 base, int exp) {
  bint out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Arithmetic progression of variable values base + step*t, t = 0..count-1,
// reduced mod the working modulus on the fly.  Unrestricted variables use
// {0, 1, P}; a residue class r mod m inside Z/P uses {r, m, P/m}; the
// substituted variables of the thickening check use {F0_i, M, M^k}.
struct VarRange {
  u64 base = 0;
  u64 step = 1;
  u64 count = 1;
};

struct BlockHist {
  std::vector<u64> h;
  u128 total = 1;
};

BlockHist bilin_hist(u64 P, i64 coeff, const VarRange& rx, const VarRange& ry) {
  BlockHist out;
  out.h.assign(P, 0);
  out.total = u128(rx.count) * ry.count;
  u64 x = rx.base % P;
  for (u64 tx = 0; tx < rx.count; ++tx) {
    u64 y = ry.base % P;
    for (u64 ty = 0; ty < ry.count; ++ty) {
      i64 v = coeff * static_cast<i64>(x) * static_cast<i64>(y);
      out.h[static_cast<u64>(mod_floor(v, static_cast<i64>(P)))] += 1;
      y += ry.step;
      if (y >= P) y -= P;
    }
    x += rx.step;
    if (x >= P) x -= P;
  }
  return out;
}

BlockHist square_hist(u64 P, i64 coeff, const VarRange& rx) {
  BlockHist out;
  out.h.assign(P, 0);
  out.total = rx.count;
  u64 x = rx.base % P;
  for (u64 tx = 0; tx < rx.count; ++tx) {
    i64 v = coeff * static_cast<i64>(x) * static_cast<i64>(x);
    out.h[static_cast<u64>(mod_floor(v, static_cast<i64>(P)))] += 1;
    x += rx.step;
    if (x >= P) x -= P;
  }
  return out;
}

std::vector<u64> convolve_u64(const std::vector<u64>& a, const std::vector<u64>& b, u64 P) {
  std::vector<u64> out(P, 0);
  for (u64 r = 0; r < P; ++r) {
    if (a[r] == 0) continue;
    for (u64 s = 0; s < P; ++s) {
      u64 t = r + s;
      if (t >= P) t -= P;
      out[t] += a[r] * b[s];
    }
  }
  return out;
}

std::vector<u128> convolve_wide(const std::vector<u128>& a, const std::vector<u64>& b, u64 P) {
  std::vector<u128> out(P, 0);
  for (u64 r = 0; r < P; ++r) {
    if (a[r] == 0) continue;
    for (u64 s = 0; s < P; ++s) {
      u64 t = r + s;
      if (t >= P) t -= P;
      out[t] += a[r] * b[s];
    }
  }
  return out;
}

// Exact count of value 0 for the sum of all blocks, folding u64 histograms
// while the entry bound (the product of totals) stays within u64.
bint fold_zero_count(std::vector<BlockHist> parts, u64 P) {
  if (parts.empty()) throw std::logic_error("fold_zero_count: no blocks");
  std::sort(parts.begin(), parts.end(),
            [](const BlockHist& a, const BlockHist& b) { return a.total < b.total; });
  while (parts.size() >= 2) {
    BlockHist& a = parts[0];
    BlockHist& b = parts[1];
    if (a.total > kU64SafeTotal / b.total) break;
    BlockHist merged;
    merged.h = convolve_u64(a.h, b.h, P);
    merged.total = a.total * b.total;
    parts.erase(parts.begin(), parts.begin() + 2);
    parts.insert(std::lower_bound(parts.begin(), parts.end(), merged,
                                  [](const BlockHist& x, const BlockHist& y) {
                                    return x.total < y.total;
                                  }),
                 std::move(merged));
  }
  std::vector<u128> acc(parts[0].h.begin(), parts[0].h.end());
  for (std::size_t i = 1; i < parts.size(); ++i) acc = convolve_wide(acc, parts[i].h, P);
  return to_bint(acc[0]);
}

void validate_spec(const QuadricShape& shape, const CongruenceSpec& spec) {
  if (spec.modulus == 0) throw std::invalid_argument("congruence: modulus must be positive");
  if (spec.modulus > 1 &&
      spec.residues.size() != static_cast<std::size_t>(shape.n_vars))
    throw std::invalid_argument("congruence: residue vector has wrong length");
  for (i64 r : spec.residues)
    if (r < 0 || r >= static_cast<i64>(spec.modulus))
      throw std::invalid_argument("congruence: residues must be reduced");
  if (spec.j_congruence) {
    if (shape.n_vars != 5)
      throw std::invalid_argument("congruence: J condition only applies to the quartic shape");
    if (spec.j_congruence->first == 0)
      throw std::invalid_argument("congruence: J modulus must be positive");
  }
}

VarRange restricted_range(u64 P, u64 m_eff, i64 residue) {
  if (m_eff <= 1) return {0, 1, P};
  return {static_cast<u64>(mod_floor(residue, static_cast<i64>(m_eff))), m_eff, P / m_eff};
}

std::vector<VarRange> ranges_for(const QuadricShape& shape, u64 P,
                                 const std::optional<CongruenceSpec>& spec) {
  std::vector<VarRange> out(static_cast<std::size_t>(shape.n_vars), VarRange{0, 1, P});
  if (!spec || spec->modulus == 1) return out;
  u64 m_eff = std::gcd(spec->modulus, P);
  if (m_eff == 1) return out;
  for (int i = 0; i < shape.n_vars; ++i)
    out[static_cast<std::size_t>(i)] =
        restricted_range(P, m_eff, spec->residues[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<BlockHist> block_hists(const QuadricShape& shape, u64 P,
                                   const std::vector<VarRange>& ranges) {
  std::vector<BlockHist> parts;
  for (const auto& b : shape.bilins)
    parts.push_back(bilin_hist(P, b.coeff, ranges[static_cast<std::size_t>(b.i)],
                               ranges[static_cast<std::size_t>(b.j)]));
  for (const auto& s : shape.squares)
    parts.push_back(square_hist(P, s.coeff, ranges[static_cast<std::size_t>(s.i)]));
  return parts;
}

i64 quartic_J(const std::vector<i64>& v) {
  i64 a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
  return 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c * c * c;
}

// Term-by-term count; the only path that can see the cubic J condition.
bint count_odometer(const QuadricShape& shape, u64 P, const CongruenceSpec& spec) {
  u64 jm = spec.j_congruence->first;
  if (P % jm != 0)
    throw std::invalid_argument("congruence: J modulus must divide the counting modulus");
  i64 jr = mod_floor(spec.j_congruence->second, static_cast<i64>(jm));
  auto ranges = ranges_for(shape, P, spec);
  u128 work = 1;
  for (const auto& r : ranges) {
    work *= r.count;
    if (work > kOdometerBudget)
      throw GuardError("count_mod: J-restricted count exceeds the enumeration budget");
  }
  std::size_t n = static_cast<std::size_t>(shape.n_vars);
  std::vector<u64> t(n, 0);
  std::vector<i64> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<i64>(ranges[i].base % P);
  bint count = 0;
  while (true) {
    i64 q = shape.eval(v);
    if (mod_floor(q, static_cast<i64>(P)) == 0 &&
        mod_floor(quartic_J(v), static_cast<i64>(jm)) == jr)
      ++count;
    std::size_t i = 0;
    for (; i < n; ++i) {
      ++t[i];
      v[i] += static_cast<i64>(ranges[i].step);
      if (v[i] >= static_cast<i64>(P)) v[i] -= static_cast<i64>(P);
      if (t[i] < ranges[i].count) break;
      t[i] = 0;
      v[i] = static_cast<i64>(ranges[i].base % P);
    }
    if (i == n) break;
  }
  return count;
}

bool spec_effective_at(const std::optional<CongruenceSpec>& spec, u64 p) {
  if (!spec) return false;
  if (spec->modulus % p == 0) return true;
  if (spec->j_congruence && spec->j_congruence->first % p == 0) return true;
  return false;
}

// The two-step recursion is valid exactly when the singular locus mod p is
// the origin, which for these block shapes means every block coefficient
// (doubled for squares) is a unit mod p.
bool recursion_valid_at(const QuadricShape& shape, u64 p) {
  for (const auto& b : shape.bilins)
    if (iabs64(b.coeff) % static_cast<i64>(p) == 0) return false;
  for (const auto& s : shape.squares)
    if (iabs64(2 * s.coeff) % static_cast<i64>(p) == 0) return false;
  return true;
}

constexpr u64 kClosedFormThreshold = 311;

bint smooth_level_one(const QuadricShape& shape, u64 p) {
  if (p <= kClosedFormThreshold) return count_mod(shape, p, 1);
  // Beyond the counting threshold the level-one counts follow the block
  // structure: an odd number of hyperbolic planes plus a square gives p^4,
  // four planes give p^7 + (p-1)p^3.  Both are verified against count_mod
  // for sampled primes in the tests.
  if (&shape == &QuadricShape::quartic()) return bpow(p, 4);
  if (&shape == &QuadricShape::pairs()) return bpow(p, 7) + bint(p - 1) * bpow(p, 3);
  return count_mod(shape, p, 1);
}

}  // namespace

CongruenceSpec make_congruence(u64 modulus, std::vector<i64> residues) {
  if (modulus == 0) throw std::invalid_argument("congruence: modulus must be positive");
  for (auto& r : residues) r = mod_floor(r, static_cast<i64>(modulus));
  return CongruenceSpec{modulus, std::move(residues), {}};
}

u64 density_modulus_cap(const QuadricShape& shape) {
  return shape.n_vars <= 5 ? 31622 : 10000;
}

bint count_mod_any(const QuadricShape& shape, u64 modulus,
                   const std::optional<CongruenceSpec>& spec) {
  if (modulus == 0) throw std::invalid_argument("count_mod: modulus must be positive");
  if (spec) validate_spec(shape, *spec);
  if (modulus > density_modulus_cap(shape))
    throw GuardError("count_mod: modulus exceeds the histogram guard");
  if (spec && spec->j_congruence) return count_odometer(shape, modulus, *spec);
  if (modulus == 1) return 1;
  auto ranges = ranges_for(shape, modulus, spec);
  return fold_zero_count(block_hists(shape, modulus, ranges), modulus);
}

bint count_mod(const QuadricShape& shape, u64 p, int k,
               const std::optional<CongruenceSpec>& spec) {
  if (!is_prime_u64(p)) throw std::invalid_argument("count_mod: p must be prime");
  if (k < 1) throw std::invalid_argument("count_mod: k must be positive");
  u64 cap = density_modulus_cap(shape);
  u64 P = 1;
  for (int i = 0; i < k; ++i) {
    if (P > cap / p) throw GuardError("count_mod: modulus exceeds the histogram guard");
    P *= p;
  }
  return count_mod_any(shape, P, spec);
}

LocalDensity local_density(const QuadricShape& shape, u64 p,
                           const std::optional<CongruenceSpec>& spec) {
  if (!is_prime_u64(p)) throw std::invalid_argument("local_density: p must be prime");
  if (spec) validate_spec(shape, *spec);
  int n = shape.n_vars;
  bint denom = bpow(p, n - 1) - p;

  if (recursion_valid_at(shape, p) && !spec_effective_at(spec, p)) {
    bint n1 = smooth_level_one(shape, p);
    return LocalDensity{p, 2, brat(n1 - 1, denom), spec};
  }

  // Exact counts until A_k = (N_k - p^n N_{k-2}) / p^{(n-1)(k-1)} repeats.
  u64 cap = density_modulus_cap(shape);
  std::vector<bint> N{1, count_mod(shape, p, 1, spec)};
  brat prev_A;
  bool have_prev = false;
  u64 P = p;
  for (int k = 2; k <= 14; ++k) {
    if (P > cap / p) break;
    P *= p;
    N.push_back(count_mod_any(shape, P, spec));
    brat A(N[static_cast<std::size_t>(k)] - bpow(p, n) * N[static_cast<std::size_t>(k - 2)],
           bpow(p, (n - 1) * (k - 1)));
    if (have_prev && A == prev_A)
      return LocalDensity{p, k, A / brat(denom), spec};
    prev_A = A;
    have_prev = true;
  }
  throw GuardError("local_density: no stabilization within the modulus guard");
}

SingularSeries singular_series(const QuadricShape& shape, u64 P,
                               const std::optional<CongruenceSpec>& spec) {
  if (P > 10000) throw GuardError("singular_series: cutoff exceeds the guard");
  SingularSeries out;
  long double prod = 1.0L;
  for (u32 p : default_spf().primes()) {
    if (p > P) break;
    LocalDensity ld = local_density(shape, p, spec);
    double v = static_cast<double>(ld.value);
    prod *= v;
    if (p > P / 2) out.tail_abs_sum += std::abs(v - 1.0);
    out.primes.push_back(std::move(ld));
  }
  out.value = static_cast<double>(prod);
  return out;
}

ThickeningCheck thickening_identity_check(const QuadricShape& shape, u64 M,
                                          const std::vector<i64>& F0, int k) {
  if (M < 2) throw std::invalid_argument("thickening: M must be at least 2");
  if (k < 1) throw std::invalid_argument("thickening: k must be positive");
  if (F0.size() != static_cast<std::size_t>(shape.n_vars))
    throw std::invalid_argument("thickening: base point has wrong length");
  int n = shape.n_vars;
  u64 cap = density_modulus_cap(shape);
  u64 P = 1;
  for (int i = 0; i < k; ++i) {
    if (P > cap / M) throw GuardError("thickening: M^k exceeds the histogram guard");
    P *= M;
  }

  ThickeningCheck out;
  out.M = M;
  out.k = k;
  out.F0.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.F0[static_cast<std::size_t>(i)] = mod_floor(F0[static_cast<std::size_t>(i)],
                                                    static_cast<i64>(M));

  auto substituted_count = [&](u64 range_count) {
    std::vector<VarRange> ranges(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      ranges[static_cast<std::size_t>(i)] =
          VarRange{static_cast<u64>(out.F0[static_cast<std::size_t>(i)]), M, range_count};
    return fold_zero_count(block_hists(shape, P, ranges), P);
  };

  out.lhs_count = substituted_count(P);
  out.rhs_count = count_mod_any(shape, P, make_congruence(M, out.F0));
  out.lhs_scaled = brat(out.lhs_count, bpow(M, (n - 1) * k + n));
  out.rhs_scaled = brat(out.rhs_count, bpow(M, (n - 1) * k));
  out.equal = out.lhs_scaled == out.rhs_scaled;
  out.depth_reduction_exact = out.lhs_count == bpow(M, n) * substituted_count(P / M);

  bint crt_product = 1;
  for (auto [p, a] : factor_u64(M)) {
    u64 q = 1;
    for (int i = 0; i < a * k; ++i) q *= p;
    std::vector<VarRange> ranges(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      ranges[static_cast<std::size_t>(i)] = VarRange{
          static_cast<u64>(out.F0[static_cast<std::size_t>(i)]) % q, M % q, q};
    crt_product *= fold_zero_count(block_hists(shape, q, ranges), q);
  }
  out.crt_consistent = out.lhs_count == crt_product;
  return out;
}

}  // namespace bq
