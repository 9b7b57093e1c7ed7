#include "bq/solubility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bq/factor.hpp"
#include "bq/splitting.hpp"

namespace bq {
namespace {

// ---------------------------------------------------------------------------
// Rational polynomials, ascending coefficients.  Degrees stay at most 4, so
// none of this needs to be clever; it needs to be exact.

using RPoly = std::vector<brat>;

void trim(RPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const RPoly& f) { return static_cast<int>(f.size()) - 1; }

RPoly derivative(const RPoly& f) {
  RPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * brat(i));
  trim(d);
  return d;
}

brat eval(const RPoly& f, const brat& x) {
  brat acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

RPoly mul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly r(a.size() + b.size() - 1, brat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Remainder and quotient of num by den, den != 0.
std::pair<RPoly, RPoly> divmod(RPoly num, const RPoly& den) {
  RPoly quot(num.size(), brat(0));
  while (degree(num) >= degree(den)) {
    int shift = degree(num) - degree(den);
    brat factor = num.back() / den.back();
    quot[shift] += factor;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= factor * den[i];
    trim(num);
  }
  trim(quot);
  return {quot, num};
}

RPoly monic(RPoly f) {
  if (f.empty()) return f;
  brat lead = f.back();
  for (auto& c : f) c /= lead;
  return f;
}

RPoly poly_gcd(RPoly a, RPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return monic(std::move(a));
}

// Yun squarefree decomposition: returns parts[i] (monic) such that
// f = lead * prod parts[i]^(i+1), each part squarefree, pairwise coprime.
std::vector<RPoly> squarefree_parts(const RPoly& f) {
  std::vector<RPoly> parts;
  if (degree(f) < 1) return parts;
  RPoly fp = derivative(f);
  RPoly a0 = poly_gcd(f, fp);
  RPoly b = divmod(f, a0).first;
  RPoly c = divmod(fp, a0).first;
  RPoly d = c;
  {
    RPoly bp = derivative(b);
    d.resize(std::max(d.size(), bp.size()), brat(0));
    for (size_t i = 0; i < bp.size(); ++i) d[i] -= bp[i];
    trim(d);
  }
  while (degree(b) >= 1) {
    RPoly ai = poly_gcd(b, d);
    if (ai.empty()) ai = {brat(1)};
    parts.push_back(ai);
    b = divmod(b, ai).first;
    RPoly ci = divmod(d, ai).first;
    d = ci;
    RPoly bp = derivative(b);
    d.resize(std::max(d.size(), bp.size()), brat(0));
    for (size_t i = 0; i < bp.size(); ++i) d[i] -= bp[i];
    trim(d);
  }
  return parts;
}

int sgn(const brat& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

// Sturm chain of a squarefree polynomial.
std::vector<RPoly> sturm_chain(const RPoly& f) {
  std::vector<RPoly> chain;
  chain.push_back(f);
  chain.push_back(derivative(f));
  while (!chain.back().empty() && degree(chain.back()) >= 1) {
    RPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes_at(const std::vector<RPoly>& chain, const brat& x) {
  int changes = 0, last = 0;
  for (const auto& f : chain) {
    int s = sgn(eval(f, x));
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
  }
  return changes;
}

int sign_changes_at_inf(const std::vector<RPoly>& chain, int dir) {
  int changes = 0, last = 0;
  for (const auto& f : chain) {
    if (f.empty()) continue;
    int s = sgn(f.back());
    if (dir < 0 && degree(f) % 2 == 1) s = -s;
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
  }
  return changes;
}

int real_root_count(const std::vector<RPoly>& chain) {
  return sign_changes_at_inf(chain, -1) - sign_changes_at_inf(chain, +1);
}

// ---------------------------------------------------------------------------
// Integer polynomials for the p-adic descent.

using ZPoly = std::vector<bint>;

void trimz(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

bint evalz(const ZPoly& f, const bint& x) {
  bint acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

int vp(bint n, const bint& P) {
  int v = 0;
  while (n % P == 0) {
    n /= P;
    ++v;
  }
  return v;
}

// h(t + P*x), exact.
ZPoly shift_and_scale(const ZPoly& h, const bint& t, const bint& P) {
  static constexpr int kBinom[5][5] = {{1, 0, 0, 0, 0},
                                       {1, 1, 0, 0, 0},
                                       {1, 2, 1, 0, 0},
                                       {1, 3, 3, 1, 0},
                                       {1, 4, 6, 4, 1}};
  ZPoly shifted(h.size(), bint(0));
  for (size_t i = 0; i < h.size(); ++i) {
    bint tp = 1;
    for (size_t j = i + 1; j-- > 0;) {
      shifted[j] += h[i] * kBinom[i][j] * tp;
      tp *= t;
    }
  }
  bint pk = 1;
  for (size_t j = 0; j < shifted.size(); ++j) {
    shifted[j] *= pk;
    pk *= P;
  }
  trimz(shifted);
  return shifted;
}

// u != 0.  A nonzero p-adic integer is a square iff its valuation is even
// and its unit part is a square unit: a quadratic residue for odd p, and
// 1 mod 8 for p = 2.
bool p_adic_square(bint u, u64 p, const bint& P) {
  int v = 0;
  while (u % P == 0) {
    u /= P;
    ++v;
  }
  if (v % 2 == 1) return false;
  if (p == 2) return ((u % 8) + 8) % 8 == 1;
  bint r = u % P;
  if (r < 0) r += P;
  return boost::multiprecision::powm(r, (p - 1) / 2, P) == 1;
}

struct QpSearch {
  u64 p = 0;
  bint P{0};
  int depth_cap = 0;
  u64 classes_scanned = 0;
  u64 classes_closed = 0;
};

// Does h(x) take a square value (zero included) for some x in Z_p?
// Branches on x mod p.  A branch whose residue value u is a non-square is
// closed once every deeper coefficient has valuation above v_p(u) (three
// above for p = 2, where units split into classes mod 8): all values in
// the branch then share u's square class.  Live branches are explored
// breadth-first; depth-first would follow an irrational p-adic root of h
// forever while a square value sits in a sibling branch one level up.
struct QpNode {
  ZPoly h;
  bint offset;
  bint scale;
  int depth = 0;
};

std::optional<bint> qp_search(QpSearch& S, ZPoly start) {
  std::deque<QpNode> queue;
  queue.push_back({std::move(start), 0, 1, 0});
  while (!queue.empty()) {
    QpNode node = std::move(queue.front());
    queue.pop_front();
    if (node.depth > S.depth_cap)
      throw GuardError("soluble_Qp: descent exceeded the depth the discriminant allows");
    for (bint t = 0; t < S.P; ++t) {
      ++S.classes_scanned;
      bint u = evalz(node.h, t);
      if (u == 0 || p_adic_square(u, S.p, S.P)) return node.offset + node.scale * t;
      ZPoly w = shift_and_scale(node.h, t, S.P);
      int vu = vp(u, S.P);
      int s_min = -1;
      for (size_t j = 1; j < w.size(); ++j)
        if (w[j] != 0) {
          int v = vp(w[j], S.P);
          if (s_min < 0 || v < s_min) s_min = v;
        }
      int frozen_at = (S.p == 2) ? vu + 3 : vu + 1;
      if (s_min < 0 || s_min >= frozen_at) {
        ++S.classes_closed;
        continue;
      }
      int vmin = std::min(vu, s_min);
      int drop = 2 * (vmin / 2);
      if (drop > 0) {
        bint q = 1;
        for (int i = 0; i < drop; ++i) q *= S.P;
        for (auto& c : w) c /= q;
      }
      queue.push_back({std::move(w), node.offset + node.scale * t, node.scale * S.P,
                       node.depth + 1});
    }
  }
  return std::nullopt;
}

// Square root of a unit square u0 mod p^4 (p odd: Newton from a residue
// root; p = 2: u0 = 1 mod 8, table lookup mod 16).
bint sqrt_mod_p4(const bint& u0, u64 p, const bint& P) {
  if (p == 2) {
    bint r = ((u0 % 16) + 16) % 16;
    return (r == 1) ? 1 : 3;
  }
  u64 r = (((u0 % P) + P) % P).convert_to<u64>();
  u64 s0 = 0;
  for (u64 s = 1; s < p; ++s)
    if ((s * s) % p == r) {
      s0 = s;
      break;
    }
  if (s0 == 0) throw std::logic_error("sqrt_mod_p4: unit has no residue root");
  bint mod = P * P * P * P;
  bint s = s0;
  bint phi_minus_1 = mod / P * (P - 1) - 1;
  for (int step = 0; step < 3; ++step) {
    bint inv2s = boost::multiprecision::powm((2 * s) % mod, phi_minus_1, mod);
    s = (s - (s * s - u0) * inv2s) % mod;
    if (s < 0) s += mod;
  }
  return s;
}

SolubilityCertificate real_insoluble(std::string note) {
  SolubilityCertificate cert;
  cert.place = 0;
  cert.soluble = false;
  cert.note = std::move(note);
  return cert;
}

SolubilityCertificate real_witness(const brat& x, const brat& y, const brat& value) {
  SolubilityCertificate cert;
  cert.place = 0;
  cert.soluble = true;
  cert.x = x;
  cert.y = y;
  cert.z_real = std::sqrt(value.convert_to<double>());
  return cert;
}

}  // namespace

SolubilityCertificate soluble_R(const BinaryQuarticForm& F) {
  if (F.is_zero()) throw std::invalid_argument("soluble_R: form is zero");
  if (F.a > 0) return real_witness(1, 0, brat(F.a));
  if (F.e > 0) return real_witness(0, 1, brat(F.e));

  RPoly g = {brat(F.e), brat(F.d), brat(F.c), brat(F.b), brat(F.a)};
  trim(g);
  if (g.empty()) return real_insoluble("form is a X^4 with a < 0");
  int deg = degree(g);
  if (deg == 0) return real_insoluble("form is e Y^4 with e < 0");

  if (deg % 2 == 1 || sgn(g.back()) > 0) {
    // Dominant term positive in some direction; march outward until the
    // value goes positive.
    brat dir = (sgn(g.back()) > 0) ? 1 : -1;
    brat x = dir;
    for (int i = 0; i < 300; ++i) {
      brat v = eval(g, x);
      if (v > 0) return real_witness(x, 1, v);
      x *= 2;
    }
    throw std::logic_error("soluble_R: dominant-direction search failed");
  }

  // Even degree, negative leading coefficient: positive values exist iff
  // g has a real root of odd multiplicity (the sign flips there).
  auto parts = squarefree_parts(g);
  RPoly odd = {brat(1)};
  for (size_t i = 0; i < parts.size(); ++i)
    if (i % 2 == 0) odd = mul(odd, parts[i]);
  if (degree(odd) < 1)
    return real_insoluble("negative leading coefficient and all real roots of even multiplicity");
  auto chain = sturm_chain(odd);
  if (real_root_count(chain) == 0)
    return real_insoluble("negative leading coefficient and odd-multiplicity factors have no real root");

  // Isolate one root of the odd part and walk the endpoints until the
  // original polynomial is positive on one side.
  brat bound = 1;
  for (size_t i = 0; i + 1 < odd.size(); ++i) {
    brat q = abs(odd[i] / odd.back());
    if (q > bound) bound = q;
  }
  bound += 1;
  brat lo = -bound, hi = bound;
  for (int iter = 0; iter < 500; ++iter) {
    brat vlo = eval(g, lo), vhi = eval(g, hi);
    if (vlo > 0) return real_witness(lo, 1, vlo);
    if (vhi > 0) return real_witness(hi, 1, vhi);
    brat mid = (lo + hi) / 2;
    if (eval(odd, mid) == 0) {
      // Exact root: the sign of g flips across mid, probe both sides.
      brat step = (hi - lo) / 4;
      for (int k = 0; k < 200; ++k) {
        brat vl = eval(g, mid - step), vr = eval(g, mid + step);
        if (vl > 0) return real_witness(mid - step, 1, vl);
        if (vr > 0) return real_witness(mid + step, 1, vr);
        step /= 2;
      }
      throw std::logic_error("soluble_R: sign flip at exact root not found");
    }
    if (sign_changes_at(chain, lo) - sign_changes_at(chain, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  throw std::logic_error("soluble_R: root isolation did not converge");
}

SolubilityCertificate soluble_Qp(const BinaryQuarticForm& F, u64 p) {
  if (p < 2 || !is_prime_u64(p)) throw std::invalid_argument("soluble_Qp: p must be prime");
  if (p > 1000000) throw GuardError("soluble_Qp: residue search budget covers p up to 10^6");
  bint D = discriminant(F);
  if (D == 0) throw std::invalid_argument("soluble_Qp: discriminant is zero");

  SolubilityCertificate cert;
  cert.place = static_cast<i64>(p);
  bint P = p;
  QpSearch S;
  S.p = p;
  S.P = P;
  S.depth_cap = 2 * vp(2 * abs(D), P) + 24;

  ZPoly chart_y1 = {F.e, F.d, F.c, F.b, F.a};
  trimz(chart_y1);
  bint wx, wy;
  bool found = false;
  if (auto x = qp_search(S, chart_y1)) {
    wx = *x;
    wy = 1;
    found = true;
  } else {
    ZPoly chart_x1 = {F.a, F.b * P, F.c * P * P, F.d * P * P * P, F.e * P * P * P * P};
    trimz(chart_x1);
    if (auto y = qp_search(S, chart_x1)) {
      wx = 1;
      wy = P * *y;
      found = true;
    }
  }

  if (!found) {
    cert.soluble = false;
    std::ostringstream os;
    os << "no square value: " << S.classes_scanned << " residue classes scanned, "
       << S.classes_closed << " closed by constant square class";
    cert.note = os.str();
    return cert;
  }

  cert.soluble = true;
  cert.x = brat(wx);
  cert.y = brat(wy);
  bint val = evaluate(F, wx, wy);
  if (val == 0) {
    cert.z = 0;
    cert.precision = 64;
    return cert;
  }
  int v = vp(val, P);
  int alpha = v / 2;
  bint pv = 1;
  for (int i = 0; i < v; ++i) pv *= P;
  bint u0 = val / pv;
  bint s = sqrt_mod_p4(u0, p, P);
  bint pa = 1;
  for (int i = 0; i < alpha; ++i) pa *= P;
  cert.z = pa * s;
  cert.precision = 2 * alpha + 4;
  return cert;
}

LocalSolubility locally_soluble(const BinaryQuarticForm& F) {
  bint D = discriminant(F);
  if (D == 0) throw std::invalid_argument("locally_soluble: discriminant is zero");
  bint budget = 1;
  for (int i = 0; i < 36; ++i) budget *= 10;
  if (abs(D) > budget)
    throw GuardError("locally_soluble: |disc| exceeds the 10^36 factoring budget");

  LocalSolubility out;
  auto at_r = soluble_R(F);
  bool ok = at_r.soluble;
  out.certificates.push_back(std::move(at_r));
  if (!ok) return out;

  std::set<u64> primes = {2};
  for (const auto& [q, mult] : factor_bint(abs(D))) {
    (void)mult;
    if (q == 2) continue;
    if (q > 1000000)
      throw GuardError("locally_soluble: a discriminant prime exceeds the residue search budget");
    primes.insert(q.convert_to<u64>());
  }
  for (u64 p : primes) {
    auto cert = soluble_Qp(F, p);
    ok = cert.soluble;
    out.certificates.push_back(std::move(cert));
    if (!ok) return out;
  }
  out.soluble = true;
  return out;
}

SplittingLemmaReport splitting_lemma_check(u64 p) {
  if (p < 5)
    throw std::invalid_argument("splitting_lemma_check: p must be at least 5");
  if (p != 5 && p != 7 && p != 11)
    throw GuardError("splitting_lemma_check: the p^5 scan is budgeted for p in {5, 7, 11}");

  SplittingLemmaReport rep;
  rep.p = p;
  i64 ip = static_cast<i64>(p);
  for (i64 a = 0; a < ip; ++a)
    for (i64 b = 0; b < ip; ++b)
      for (i64 c = 0; c < ip; ++c)
        for (i64 d = 0; d < ip; ++d)
          for (i64 e = 0; e < ip; ++e) {
            if (a == 0 && b == 0 && c == 0 && d == 0 && e == 0) continue;
            ++rep.forms_scanned;
            i64 I = ((12 * a * e - 3 * b * d + c * c) % ip + ip) % ip;
            if (I != 0) continue;
            ++rep.i_zero;
            auto st = splitting_type(BinaryQuarticForm{a, b, c, d, e}, p);
            std::string tag = st.tag();
            ++rep.type_counts[tag];
            if (tag == "(1^2 1^2)" || tag == "(2^2)") ++rep.forbidden;
            if (tag == "(1^4)") ++rep.quadruple_roots;
          }

  rep.square_of_quadratic_identity = true;
  for (i64 n = 1; n < ip; ++n) {
    BinaryQuarticForm sq{1, -2 * n, n * n, 0, 0};
    bint I = invariant_I(sq);
    bint expect = bint(n) * n * n * n;
    if (I != expect || (I - expect) % ip != 0) rep.square_of_quadratic_identity = false;
  }
  return rep;
}

}  // namespace bq
