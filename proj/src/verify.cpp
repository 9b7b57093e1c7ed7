#include "bq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bq/cubic_pair.hpp"
#include "bq/density.hpp"
#include "bq/expsum.hpp"
#include "bq/kernel.hpp"
#include "bq/predict.hpp"
#include "bq/quartic.hpp"
#include "bq/reduce.hpp"
#include "bq/rng.hpp"
#include "bq/selmer.hpp"
#include "bq/siegel.hpp"
#include "bq/solubility.hpp"

namespace bq {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(i64 v) { return std::to_string(v); }

BinaryQuarticForm form_of(i64 a, i64 b, i64 c, i64 d, i64 e) {
  return {bint(a), bint(b), bint(c), bint(d), bint(e)};
}

ClauseResult clause(const std::string& label, bool pass, const std::string& detail) {
  return {label, pass, detail};
}

CriterionResult make_result(int id, std::string label) {
  CriterionResult res;
  res.id = id;
  res.label = std::move(label);
  return res;
}

// ---- criterion 1: invariant twist laws -----------------------------------

CriterionResult crit_twist_laws(VerifyLevel level) {
  CriterionResult res = make_result(1, "invariant twist laws");
  const u64 n = level == VerifyLevel::quick ? 1000 : 10000;
  CounterRng rng(101, 1);
  u64 failures = 0;
  for (u64 i = 0; i < n; ++i) {
    const u64 base = 9 * i;
    BinaryQuarticForm F = form_of(rng.uniform_int(base, -50, 50), rng.uniform_int(base + 1, -50, 50),
                                  rng.uniform_int(base + 2, -50, 50),
                                  rng.uniform_int(base + 3, -50, 50),
                                  rng.uniform_int(base + 4, -50, 50));
    GL2Int g{rng.uniform_int(base + 5, -9, 9), rng.uniform_int(base + 6, -9, 9),
             rng.uniform_int(base + 7, -9, 9), rng.uniform_int(base + 8, -9, 9)};
    const bint det = bint(g.p) * g.s - bint(g.q) * g.r;
    const bint det2 = det * det, det4 = det2 * det2;
    BinaryQuarticForm G = act(g, F);
    if (invariant_I(G) != det4 * invariant_I(F) ||
        invariant_J(G) != det4 * det2 * invariant_J(F))
      ++failures;
  }
  res.clauses.push_back(clause("I, J twist by det^4, det^6", failures == 0,
                               fmt(i64(n)) + " random (F, g), " + fmt(i64(failures)) +
                                   " failures, exact integer arithmetic"));
  return res;
}

// ---- criterion 2: enumeration oracle parity ------------------------------

CriterionResult crit_enumeration_parity(VerifyLevel level) {
  CriterionResult res = make_result(2, "enumeration oracle parity");
  std::vector<double> hs = level == VerifyLevel::quick ? std::vector<double>{2, 5}
                                                       : std::vector<double>{2, 5, 8};
  for (double H : hs) {
    auto rep = count_I0_box(cube_box(H));
    i64 brute = brute_force_I0_count(cube_box(H));
    res.clauses.push_back(clause("cube H = " + fmt(H), rep.total == brute,
                                 "divisor method " + fmt(rep.total) + ", five loops " +
                                     fmt(brute)));
  }
  return res;
}

// ---- criterion 3: tail boundedness ---------------------------------------

CriterionResult crit_tail_bound(VerifyLevel) {
  CriterionResult res = make_result(3, "tail boundedness");
  const double C = 1.0;
  auto rep = tail_experiment({10, 20, 40}, {1, 2, 4, 8}, C, 0.2);
  double worst = 0;
  for (const auto& cell : rep.cells) worst = std::max(worst, cell.count_over_lambda12);
  res.clauses.push_back(clause("N / lambda^12 bounded", worst <= 10.0 * std::pow(C, 4.0),
                               "max " + fmt(worst) + " over the 12-cell grid, allowed " +
                                   fmt(10.0 * std::pow(C, 4.0))));
  bool decays = true;
  std::string seq;
  for (size_t i = 0; i < rep.cusp.size(); ++i) {
    if (i) {
      decays = decays && rep.cusp[i].over_lambda12 < rep.cusp[i - 1].over_lambda12;
      seq += ", ";
    }
    seq += fmt(rep.cusp[i].over_lambda12);
  }
  res.clauses.push_back(
      clause("cusp integral decays against lambda^12", decays,
             "epsilon 0.2, ratios " + seq + " across lambda^4 = 10, 20, 40"));
  return res;
}

// ---- criterion 4: exponential sums ---------------------------------------

CriterionResult crit_exponential_sums(VerifyLevel level) {
  CriterionResult res = make_result(4, "exponential sums");
  const QuadricShape& five = QuadricShape::quartic();
  const QuadricShape& eight = QuadricShape::pairs();
  const std::vector<i64> c0(5, 0);

  bool zeros = true;
  std::string detail;
  for (u64 q : {5, 7, 11, 13}) {
    i64 s = complete_sum_zero_exact(five, q);
    zeros = zeros && s == 0;
    detail += "S_" + std::to_string(q) + "(0)=" + fmt(s) + " ";
  }
  res.clauses.push_back(clause("S_q(0) = 0 at primes", zeros, detail + "exact"));

  bool crt_ok = true;
  for (auto [q1, q2] : {std::pair<u64, u64>{3, 5}, {5, 7}}) {
    u64 q = q1 * q2;
    crt_ok = crt_ok && complete_sum_zero_exact(five, q) == 0 &&
             std::abs(crt_predicted(five, q1, q2, c0)) < 1e-6 &&
             std::abs(complete_sum(five, q, c0).value) < 1e-6;
  }
  res.clauses.push_back(
      clause("S_q(0) = 0 via CRT at q = 15, 35", crt_ok, "factor product and direct sum agree"));

  i64 s5 = complete_sum_zero_exact(eight, 5);
  res.clauses.push_back(
      clause("eight-variable S_5(0)", s5 == 2500, "computed " + fmt(s5) + ", expected 2500"));

  const int samples5 = level == VerifyLevel::quick ? 3 : 8;
  const int samples8 = level == VerifyLevel::quick ? 2 : 5;
  auto sweep5 = bound_sweep(five, 25, samples5, 424);
  auto sweep8 = bound_sweep(eight, 13, samples8, 425);
  res.clauses.push_back(clause("|S_q(c)| <= 10 q^(7/2), q <= 25", sweep5.worst_ratio <= 10.0,
                               "worst ratio " + fmt(sweep5.worst_ratio) + " at q = " +
                                   std::to_string(sweep5.worst_q)));
  res.clauses.push_back(clause("eight-variable |S_q(c)| <= 10 q^5, q <= 13",
                               sweep8.worst_ratio <= 10.0,
                               "worst ratio " + fmt(sweep8.worst_ratio) + " at q = " +
                                   std::to_string(sweep8.worst_q)));
  return res;
}

// ---- criterion 5: local densities ----------------------------------------

CriterionResult crit_local_densities(VerifyLevel level) {
  CriterionResult res = make_result(5, "local densities");
  const QuadricShape& five = QuadricShape::quartic();
  const QuadricShape& eight = QuadricShape::pairs();
  std::vector<u64> primes = level == VerifyLevel::quick ? std::vector<u64>{5, 7}
                                                        : std::vector<u64>{5, 7, 11};
  std::vector<int> ks = level == VerifyLevel::quick ? std::vector<int>{2} : std::vector<int>{2, 3};
  // At these primes the singular stratum is exactly the forms divisible by
  // p, so N_k = A p^{4(k-1)} + p^5 N_{k-2} with a constant A; the density is
  // A / (p^4 - p).  Solving for A from the exact count at level k ties the
  // recursion value to count_mod with no limit left over.
  for (u64 p : primes) {
    auto ld = local_density(five, p);
    const bint p4 = pow(bint(p), 4u), p5 = p4 * p;
    const bint n1 = count_mod(five, p, 1);
    bool ok = true;
    for (int k : ks) {
      bint nk = count_mod(five, p, k);
      bint prev = k == 2 ? bint(1) : n1;
      ok = ok && ld.value == brat(nk - p5 * prev, pow(p4, unsigned(k - 1)) * (p4 - p));
    }
    res.clauses.push_back(clause("recursion matches exact counts, p = " + std::to_string(p), ok,
                                 "density " + ld.value.str() + " recovered from count_mod at k = " +
                                     (ks.size() > 1 ? "2, 3" : "2")));
  }
  auto ld8 = local_density(eight, 5);
  const bint p7 = pow(bint(5), 7u);
  brat level8(count_mod(eight, 5, 2) - p7 * 5, p7 * (p7 - 5));
  res.clauses.push_back(clause("eight-variable recursion at p = 5, k = 2", ld8.value == level8,
                               "density " + ld8.value.str()));
  std::vector<u64> ms = level == VerifyLevel::quick ? std::vector<u64>{2}
                                                    : std::vector<u64>{2, 3, 6};
  bool thick_ok = true;
  std::string m_list;
  for (u64 M : ms) {
    auto tc = thickening_identity_check(five, M, {1, 2, 3, 4, 5}, 2);
    thick_ok = thick_ok && tc.equal && tc.depth_reduction_exact && tc.crt_consistent;
    m_list += (m_list.empty() ? "" : ", ") + std::to_string(M);
  }
  res.clauses.push_back(clause("thickening identity at k = 2", thick_ok,
                               "M in {" + m_list + "}, both normalized counts equal exactly"));
  return res;
}

// ---- criterion 6: delta kernel -------------------------------------------

double h_series(double x, double y, const DeltaKernel& ker) {
  const double ay = std::fabs(y);
  double s = 0;
  for (i64 r = 1; r <= 10000; ++r) {
    const double rx = double(r) * x;
    s += (ker.omega(rx) - ker.omega(ay / rx)) / rx;
  }
  return s;
}

CriterionResult crit_delta_kernel(VerifyLevel level) {
  CriterionResult res = make_result(6, "delta kernel calibration");
  DeltaKernel ker;
  const u64 n = level == VerifyLevel::quick ? 30 : 100;
  CounterRng rng(2024, 7);
  double worst = 0;
  for (u64 i = 0; i < n; ++i) {
    const double x = rng.uniform_real(3 * i, 0.05, 2.0);
    const double y = rng.uniform_real(3 * i + 1, -3.0, 3.0);
    worst = std::max(worst, std::fabs(h_series(x, y, ker) - kernel_h(x, y, ker)));
  }
  res.clauses.push_back(clause("kernel_h matches the direct series", worst < 1e-10,
                               fmt(i64(n)) + " samples, worst gap " + fmt(worst)));
  const double d0 = delta_check(0, 10, ker);
  res.clauses.push_back(clause("delta_check(0, 10) near 1", d0 >= 0.95 && d0 <= 1.05,
                               "value " + fmt(d0)));
  double off = 0;
  for (i64 m = 1; m <= 5; ++m)
    off = std::max({off, std::fabs(delta_check(m, 10, ker)),
                    std::fabs(delta_check(-m, 10, ker))});
  res.clauses.push_back(
      clause("delta_check cancels at 1 <= |n| <= 5", off <= 0.05, "largest " + fmt(off)));
  const double d0q20 = delta_check(0, 20, ker);
  res.clauses.push_back(clause("deviation shrinks at Q = 20",
                               std::fabs(d0q20 - 1.0) < std::fabs(d0 - 1.0),
                               "|delta - 1|: " + fmt(std::fabs(d0 - 1.0)) + " at Q = 10, " +
                                   fmt(std::fabs(d0q20 - 1.0)) + " at Q = 20"));
  return res;
}

// ---- criterion 7: bulk main term -----------------------------------------

CriterionResult crit_main_term(VerifyLevel) {
  CriterionResult res = make_result(7, "bulk main term");
  const double r20 = predict_main_term(cube_box(20.0), 100, 200000, 5).relative_error();
  const double r40 = predict_main_term(cube_box(40.0), 100, 200000, 6).relative_error();
  const double r80 = predict_main_term(cube_box(80.0), 100, 200000, 7).relative_error();
  res.clauses.push_back(
      clause("relative error <= 25% at H = 20", r20 <= 0.25, "measured " + fmt(r20)));
  res.clauses.push_back(
      clause("relative error <= 10% at H = 80", r80 <= 0.10, "measured " + fmt(r80)));
  res.clauses.push_back(clause("error decreasing in H", r20 > r40 && r40 > r80,
                               fmt(r20) + " > " + fmt(r40) + " > " + fmt(r80)));
  auto table = error_decay_experiment({0.0, 20.0, 40.0, 80.0}, {1.0, 2.0, 4.0}, 100, 200000, 98);
  res.clauses.push_back(clause("fitted lambda exponent below 11",
                               table.fitted_lambda_exponent < 11.0,
                               "slope " + fmt(table.fitted_lambda_exponent)));
  return res;
}

// ---- criterion 8: splitting-type lemma -----------------------------------

CriterionResult crit_splitting(VerifyLevel) {
  CriterionResult res = make_result(8, "splitting-type census");
  for (u64 p : {5, 7}) {
    auto rep = splitting_lemma_check(p);
    res.clauses.push_back(clause(
        "no (1^2 1^2) or (2^2) zero forms mod " + std::to_string(p),
        rep.forbidden == 0 && rep.quadruple_roots == p * p - 1 && rep.square_of_quadratic_identity,
        fmt(i64(rep.i_zero)) + " zero forms scanned, " + fmt(i64(rep.forbidden)) + " forbidden"));
  }
  bool sym = true;
  for (i64 m = 0; m <= 8; ++m) {
    BinaryQuarticForm F = form_of(1, -2 * m, m * m, 0, 0);
    sym = sym && invariant_I(F) == pow(bint(m), 4u);
  }
  res.clauses.push_back(clause("I(X^2 (X - nY)^2) = n^4", sym,
                               "degree-4 polynomial identity pinned at 9 integer points"));
  return res;
}

// ---- criterion 9: reduction correctness ----------------------------------

CriterionResult crit_reduction(VerifyLevel level) {
  CriterionResult res = make_result(9, "reduction correctness");
  CounterRng rng(422, 9);
  const u64 n = level == VerifyLevel::quick ? 200 : 1000;
  u64 tested = 0, bad = 0;
  for (u64 trial = 0; tested < n; ++trial) {
    const u64 base = 11 * trial;
    BinaryQuarticForm F = form_of(rng.uniform_int(base, -5, 5), rng.uniform_int(base + 1, -5, 5),
                                  rng.uniform_int(base + 2, -5, 5),
                                  rng.uniform_int(base + 3, -5, 5),
                                  rng.uniform_int(base + 4, -5, 5));
    if (discriminant(F) == 0) continue;
    BinaryQuarticForm G = F;
    for (int step = 0; step < 5; ++step) {
      switch (rng.uniform_int(base + 5 + u64(step), 0, 2)) {
        case 0: G = act(GL2Int{0, -1, 1, 0}, G); break;
        case 1: G = act(GL2Int{-1, 0, 0, 1}, G); break;
        default: {
          i64 k = rng.uniform_int(base + 10, 1, 3);
          G = act(GL2Int{1, 0, step % 2 ? k : -k, 1}, G);
        }
      }
    }
    auto rf = reduce_quartic(F), rg = reduce_quartic(G);
    if (rf.representative.a != rg.representative.a || rf.representative.b != rg.representative.b ||
        rf.representative.c != rg.representative.c || rf.representative.d != rg.representative.d ||
        rf.representative.e != rg.representative.e)
      ++bad;
    ++tested;
  }
  res.clauses.push_back(clause("reduce(act(g, F)) = reduce(F)", bad == 0,
                               fmt(i64(n)) + " random unimodular words, " + fmt(i64(bad)) +
                                   " mismatches"));
  if (level == VerifyLevel::quick) return res;

  // Partition of the [-2, 2]^5 box by canonical representative against the
  // connected components of the one-step move graph inside |coeff| <= 60.
  std::vector<std::array<i64, 5>> box_forms;
  for (i64 a = -2; a <= 2; ++a)
    for (i64 b = -2; b <= 2; ++b)
      for (i64 c = -2; c <= 2; ++c)
        for (i64 d = -2; d <= 2; ++d)
          for (i64 e = -2; e <= 2; ++e)
            if (discriminant(form_of(a, b, c, d, e)) != 0) box_forms.push_back({a, b, c, d, e});
  const i64 kBound = 60;
  std::map<std::array<i64, 5>, int> component;
  int components = 0;
  for (const auto& seed : box_forms) {
    if (component.count(seed)) continue;
    int id = components++;
    std::deque<std::array<i64, 5>> queue{seed};
    component[seed] = id;
    while (!queue.empty()) {
      auto t = queue.front();
      queue.pop_front();
      BinaryQuarticForm f = form_of(t[0], t[1], t[2], t[3], t[4]);
      const BinaryQuarticForm steps[4] = {act(GL2Int{0, -1, 1, 0}, f), act(GL2Int{-1, 0, 0, 1}, f),
                                          act(GL2Int{1, 0, 1, 1}, f), act(GL2Int{1, 0, -1, 1}, f)};
      for (const auto& g : steps) {
        std::array<i64, 5> u{g.a.convert_to<i64>(), g.b.convert_to<i64>(), g.c.convert_to<i64>(),
                             g.d.convert_to<i64>(), g.e.convert_to<i64>()};
        bool inside = true;
        for (i64 v : u) inside = inside && v >= -kBound && v <= kBound;
        if (!inside || component.count(u)) continue;
        component[u] = id;
        queue.push_back(u);
      }
    }
  }
  std::map<std::array<i64, 5>, int> by_rep;
  u64 mismatches = 0;
  for (const auto& t : box_forms) {
    auto rec = reduce_quartic(form_of(t[0], t[1], t[2], t[3], t[4]));
    std::array<i64, 5> rep{rec.representative.a.convert_to<i64>(),
                           rec.representative.b.convert_to<i64>(),
                           rec.representative.c.convert_to<i64>(),
                           rec.representative.d.convert_to<i64>(),
                           rec.representative.e.convert_to<i64>()};
    auto [it, fresh] = by_rep.try_emplace(rep, component.at(t));
    if (!fresh && it->second != component.at(t)) ++mismatches;
  }
  std::set<int> ids;
  for (const auto& [rep, id] : by_rep) ids.insert(id);
  res.clauses.push_back(clause(
      "box partition matches orbit closure",
      mismatches == 0 && int(ids.size()) == components && by_rep.size() == ids.size(),
      fmt(i64(box_forms.size())) + " forms, " + fmt(i64(components)) + " orbits, " +
          fmt(i64(mismatches)) + " partition mismatches"));
  return res;
}

// ---- criterion 10: cubic pairs -------------------------------------------

CriterionResult crit_pairs(VerifyLevel level) {
  CriterionResult res = make_result(10, "cubic pairs");
  CounterRng rng(515, 2);
  const u64 n = level == VerifyLevel::quick ? 1000 : 10000;
  u64 bad = 0, zero_branch = 0;
  for (u64 i = 0; i < n; ++i) {
    const u64 base = 8 * i;
    CubicPair v{{bint(rng.uniform_int(base, -20, 20)), bint(rng.uniform_int(base + 1, -20, 20)),
                 bint(rng.uniform_int(base + 2, -20, 20)), bint(rng.uniform_int(base + 3, -20, 20))},
                {bint(rng.uniform_int(base + 4, -20, 20)), bint(rng.uniform_int(base + 5, -20, 20)),
                 bint(rng.uniform_int(base + 6, -20, 20)),
                 bint(rng.uniform_int(base + 7, -20, 20))}};
    bint i2 = invariant_I2(v);
    bint I = invariant_I(resolvent_quartic(v));
    if (i2 == 0) {
      ++zero_branch;
      if (I != 0) ++bad;
    } else if (I % i2 != 0) {
      ++bad;
    }
  }
  res.clauses.push_back(clause("pairing invariant divides the resolvent I", bad == 0,
                               fmt(i64(n)) + " random pairs, " + fmt(i64(zero_branch)) +
                                   " on the I2 = 0 locus, " + fmt(i64(bad)) + " failures"));
  PairBox box;
  box.bound.fill(2.0);
  auto rep = count_pairs_quadric(box);
  u64 brute = brute_force_pairs_count(box);
  res.clauses.push_back(clause("enumeration parity on [-2, 2]^8",
                               rep.total == brute && rep.total == rep.zero_stratum +
                                                                      rep.divisor_stratum,
                               "divisor method " + fmt(i64(rep.total)) + ", eight loops " +
                                   fmt(i64(brute))));
  return res;
}

// ---- criterion 11: observational selmer report ---------------------------

CriterionResult crit_selmer(VerifyLevel) {
  CriterionResult res = make_result(11, "selmer average observation");
  res.gating = false;
  FamilySpec family;
  family.squares = true;
  auto rep = selmer_average_experiment(family, 1e5);

  bool formed = rep.orbits.size() == rep.orbit_total && !rep.curves.empty() &&
                rep.limiting_value == 3.0 && rep.note.find("asserted") != std::string::npos &&
                rep.forms_enumerated >= rep.forms_considered &&
                rep.forms_considered >= rep.trivial_forms;
  u64 bucket_sum = 0;
  for (const auto& bucket : rep.curves) bucket_sum += bucket.orbit_count;
  formed = formed && bucket_sum == rep.orbit_total;
  for (const auto& orbit : rep.orbits)
    formed = formed && orbit.I == 0 && orbit.J != 0 && abs(orbit.J) <= 100000 &&
             orbit.soluble_everywhere.value_or(false) && orbit.in_family;
  res.clauses.push_back(clause("well-formed report at X = 1e5", formed,
                               fmt(i64(rep.orbit_total)) + " orbits over " +
                                   fmt(i64(rep.curve_count)) + " curve labels"));
  res.clauses.push_back(clause("growth N(4X)/N(X) within [1.4, 2.6]",
                               rep.growth_ratio >= 1.4 && rep.growth_ratio <= 2.6,
                               "N(X) = " + fmt(i64(rep.curve_count)) + ", N(4X) = " +
                                   fmt(i64(rep.curve_count_4x)) + ", ratio " +
                                   fmt(rep.growth_ratio)));
  res.clauses.push_back(clause(
      "average beside the limiting value", !rep.note.empty(),
      "empirical average " + fmt(rep.empirical_average) + " vs limiting value " +
          fmt(rep.limiting_value) + "; " + rep.note));
  return res;
}

using CriterionFn = CriterionResult (*)(VerifyLevel);

struct Entry {
  int id;
  CriterionFn fn;
  bool in_quick;
};

const Entry kRegistry[] = {
    {1, crit_twist_laws, true},    {2, crit_enumeration_parity, true},
    {3, crit_tail_bound, false},   {4, crit_exponential_sums, true},
    {5, crit_local_densities, true}, {6, crit_delta_kernel, true},
    {7, crit_main_term, false},    {8, crit_splitting, true},
    {9, crit_reduction, true},     {10, crit_pairs, true},
    {11, crit_selmer, false},
};

}  // namespace

std::vector<int> verify_criteria(VerifyLevel level) {
  std::vector<int> ids;
  for (const Entry& entry : kRegistry)
    if (level == VerifyLevel::full || entry.in_quick) ids.push_back(entry.id);
  return ids;
}

CriterionResult run_criterion(int id, VerifyLevel level) {
  for (const Entry& entry : kRegistry) {
    if (entry.id != id) continue;
    auto start = std::chrono::steady_clock::now();
    CriterionResult res = entry.fn(level);
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.pass = true;
    for (const auto& cl : res.clauses) res.pass = res.pass && cl.pass;
    return res;
  }
  throw std::invalid_argument("unknown criterion id " + std::to_string(id));
}

std::vector<CriterionResult> run_verify(VerifyLevel level) {
  std::vector<CriterionResult> out;
  for (int id : verify_criteria(level)) out.push_back(run_criterion(id, level));
  return out;
}

int verify_exit_code(const std::vector<CriterionResult>& results) {
  for (const auto& res : results)
    if (res.gating && !res.pass) return 1;
  return 0;
}

std::string criterion_line(const CriterionResult& result) {
  std::ostringstream os;
  os << (result.gating ? (result.pass ? "PASS" : "FAIL")
                       : (result.pass ? "OBS-PASS" : "OBS-FAIL"));
  os << " criterion " << result.id << ": " << result.label;
  for (const auto& cl : result.clauses)
    os << " | " << (cl.pass ? "ok " : "BAD ") << cl.label << " (" << cl.detail << ")";
  char buf[32];
  std::snprintf(buf, sizeof buf, " [%.2fs]", result.seconds);
  os << buf;
  return os.str();
}

}  // namespace bq
