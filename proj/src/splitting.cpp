#include "bq/splitting.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "bq/factor.hpp"

namespace bq {

namespace {

// Dense univariate polynomials over F_p, coefficients ascending. p stays
// below 2^31 so coefficient products fit in u64 without 128-bit help.
using Poly = std::vector<u64>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

bool is_one(const Poly& f) { return f.size() == 1 && f[0] == 1; }

Poly mul(const Poly& f, const Poly& g, u64 p) {
  if (f.empty() || g.empty()) return {};
  Poly h(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      h[i + j] = (h[i + j] + f[i] * g[j]) % p;
    }
  }
  trim(h);
  return h;
}

// Quotient and remainder of f by g (g nonzero).
std::pair<Poly, Poly> divmod(Poly f, const Poly& g, u64 p) {
  trim(f);
  if (deg(f) < deg(g)) return {{}, std::move(f)};
  u64 inv_lead = powmod_u64(g.back(), p - 2, p);
  Poly q(f.size() - g.size() + 1, 0);
  while (deg(f) >= deg(g)) {
    u64 qc = mulmod_u64(f.back(), inv_lead, p);
    std::size_t shift = f.size() - g.size();
    q[shift] = qc;
    for (std::size_t j = 0; j < g.size(); ++j) {
      f[shift + j] = (f[shift + j] + p - mulmod_u64(qc, g[j], p)) % p;
    }
    trim(f);
  }
  trim(q);
  return {std::move(q), std::move(f)};
}

Poly div_exact(const Poly& f, const Poly& g, u64 p) {
  auto [q, r] = divmod(f, g, p);
  if (!r.empty()) throw std::logic_error("polynomial division expected to be exact");
  return q;
}

Poly gcd_poly(Poly f, Poly g, u64 p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Poly r = divmod(f, g, p).second;
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty() && f.back() != 1) {
    u64 inv = powmod_u64(f.back(), p - 2, p);
    for (u64& c : f) c = mulmod_u64(c, inv, p);
  }
  return f;
}

Poly derivative(const Poly& f, u64 p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back((f[i] * (i % p)) % p);
  trim(d);
  return d;
}

// x^(p^k) mod f by k rounds of p-th powering.
Poly frobenius_power(const Poly& f, u64 p, int k) {
  Poly x = divmod({0, 1}, f, p).second;
  for (int round = 0; round < k; ++round) {
    Poly base = x;
    Poly acc = {1};
    u64 e = p;
    while (e > 0) {
      if (e & 1) acc = divmod(mul(acc, base, p), f, p).second;
      base = divmod(mul(base, base, p), f, p).second;
      e >>= 1;
    }
    x = std::move(acc);
  }
  return x;
}

// Splits a squarefree monic f into irreducible degrees; appends one
// (degree, mult) entry per irreducible factor.
void distinct_degree_split(Poly f, u64 p, int mult, std::vector<std::pair<int, int>>& parts) {
  for (int dd = 1; dd <= 4 && deg(f) > 0; ++dd) {
    if (deg(f) < 2 * dd) {
      // Everything of degree below dd is already removed, so what is left
      // is a single irreducible factor.
      parts.emplace_back(deg(f), mult);
      return;
    }
    Poly xq = frobenius_power(f, p, dd);
    // gcd(x^(p^dd) - x, f) collects all irreducible factors of degree dd.
    if (xq.size() < 2) xq.resize(2, 0);
    xq[1] = (xq[1] + p - 1) % p;
    trim(xq);
    Poly g = gcd_poly(f, xq, p);
    if (deg(g) > 0) {
      for (int i = 0; i < deg(g) / dd; ++i) parts.emplace_back(dd, mult);
      f = div_exact(f, g, p);
    }
  }
}

// Pattern of a monic f over F_p, each multiplicity scaled by outer_mult.
// Finite-field squarefree decomposition: the gcd chain separates factors by
// multiplicity, and the residue with derivative zero is a p-th power whose
// root is the exponent reindex f[i*p] -> g[i].
void factor_pattern(Poly f, u64 p, int outer_mult, std::vector<std::pair<int, int>>& parts) {
  trim(f);
  if (deg(f) <= 0) return;
  Poly d = derivative(f, p);
  if (d.empty()) {
    Poly g;
    for (std::size_t i = 0; i < f.size(); i += p) g.push_back(f[i]);
    factor_pattern(g, p, outer_mult * static_cast<int>(p), parts);
    return;
  }
  Poly c = gcd_poly(f, d, p);
  Poly w = div_exact(f, c, p);
  int mult = 1;
  while (deg(w) > 0) {
    Poly y = gcd_poly(w, c, p);
    Poly z = is_one(y) ? w : div_exact(w, y, p);
    if (deg(z) > 0) distinct_degree_split(z, p, mult * outer_mult, parts);
    if (is_one(y)) break;
    c = div_exact(c, y, p);
    w = std::move(y);
    ++mult;
  }
  // Factors whose multiplicity is divisible by p survive in c.
  if (deg(c) > 0) {
    Poly g;
    for (std::size_t i = 0; i < c.size(); i += p) g.push_back(c[i]);
    factor_pattern(g, p, outer_mult * static_cast<int>(p), parts);
  }
}

}  // namespace

SplittingType make_splitting_type(std::vector<std::pair<int, int>> parts, int inf_mult) {
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  return SplittingType{std::move(parts), inf_mult};
}

std::string SplittingType::tag() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [degree, mult] : parts) {
    if (!first) os << " ";
    first = false;
    os << degree;
    if (mult > 1) os << "^" << mult;
  }
  os << ")";
  return os.str();
}

SplittingType splitting_type(const BinaryQuarticForm& F, u64 p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("splitting_type: p must be prime");
  if (p >= (1ULL << 31)) throw GuardError("splitting_type: p exceeds 2^31");
  auto red = [&](const bint& v) {
    bint r = v % bint(p);
    if (r < 0) r += p;
    return static_cast<u64>(r);
  };
  std::array<u64, 5> f{red(F.a), red(F.b), red(F.c), red(F.d), red(F.e)};
  if (f[0] == 0 && f[1] == 0 && f[2] == 0 && f[3] == 0 && f[4] == 0) {
    throw std::invalid_argument("splitting_type: form vanishes mod p");
  }
  // Multiplicity of the factor Y, i.e. the degree drop at [1:0].
  int m_inf = 0;
  while (m_inf < 4 && f[static_cast<std::size_t>(m_inf)] == 0) ++m_inf;
  // F = Y^m_inf * (f[m_inf] X^(4 - m_inf) + ... + f[4] Y^(4 - m_inf)); the
  // affine part below is that cofactor at Y = 1, coefficients ascending.
  Poly affine;
  for (int i = 4; i >= m_inf; --i) affine.push_back(f[static_cast<std::size_t>(i)]);
  // Normalize monic; the unit does not change the pattern.
  if (affine.back() != 1) {
    u64 inv = powmod_u64(affine.back(), p - 2, p);
    for (u64& x : affine) x = mulmod_u64(x, inv, p);
  }
  std::vector<std::pair<int, int>> parts;
  factor_pattern(affine, p, 1, parts);
  if (m_inf > 0) parts.emplace_back(1, m_inf);
  return make_splitting_type(std::move(parts), m_inf);
}

}  // namespace bq
