#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "bq/quartic.hpp"
#include "bq/reduce.hpp"
#include "bq/rng.hpp"

using namespace bq;

namespace {

BinaryQuarticForm form(i64 a, i64 b, i64 c, i64 d, i64 e) {
  return {bint(a), bint(b), bint(c), bint(d), bint(e)};
}

bool same_form(const BinaryQuarticForm& x, const BinaryQuarticForm& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.e == y.e;
}

GL2Int random_word(CounterRng& rng, u64 base, int length) {
  GL2Int g{1, 0, 0, 1};
  for (int step = 0; step < length; ++step) {
    switch (rng.uniform_int(base + step, 0, 3)) {
      case 0:
        g = g.mul(GL2Int{0, -1, 1, 0});
        break;
      case 1:
        g = g.mul(GL2Int{1, 0, 1, 1});
        break;
      case 2:
        g = g.mul(GL2Int{1, 0, -1, 1});
        break;
      default:
        g = g.mul(GL2Int{-1, 0, 0, 1});
        break;
    }
  }
  return g;
}

}  // namespace

TEST_CASE("reduction undoes a shear") {
  auto plain = reduce_quartic(form(1, 0, 0, 0, 1));
  CHECK(coefficient_norm(plain.representative) == 2);
  CHECK(plain.I == 12);
  CHECK(plain.J == 0);
  CHECK(plain.minimal_forms >= 1);

  // The shear image of x^4 + y^4 lands back on the same representative.
  auto sheared = reduce_quartic(form(1, 4, 6, 4, 2));
  CHECK(same_form(sheared.representative, plain.representative));
  CHECK(sheared.I == 12);

  CHECK_THROWS_AS(reduce_quartic(form(0, 0, 1, 0, 0)), std::invalid_argument);
}

TEST_CASE("reduction is idempotent") {
  CounterRng rng(421, 0);
  u64 tested = 0;
  for (u64 trial = 0; tested < 1000; ++trial) {
    REQUIRE(trial < 4000);
    BinaryQuarticForm F = form(i64(rng.uniform_int(5 * trial + 0, -30, 30)),
                               i64(rng.uniform_int(5 * trial + 1, -30, 30)),
                               i64(rng.uniform_int(5 * trial + 2, -30, 30)),
                               i64(rng.uniform_int(5 * trial + 3, -30, 30)),
                               i64(rng.uniform_int(5 * trial + 4, -30, 30)));
    if (discriminant(F) == 0) continue;
    auto once = reduce_quartic(F);
    auto twice = reduce_quartic(once.representative);
    CHECK(same_form(once.representative, twice.representative));
    CHECK(coefficient_norm(once.representative) <= coefficient_norm(F));
    ++tested;
  }
}

TEST_CASE("the representative only depends on the orbit") {
  CounterRng rng(422, 0);
  u64 tested = 0;
  for (u64 trial = 0; tested < 1000; ++trial) {
    REQUIRE(trial < 4000);
    BinaryQuarticForm F = form(i64(rng.uniform_int(9 * trial + 0, -5, 5)),
                               i64(rng.uniform_int(9 * trial + 1, -5, 5)),
                               i64(rng.uniform_int(9 * trial + 2, -5, 5)),
                               i64(rng.uniform_int(9 * trial + 3, -5, 5)),
                               i64(rng.uniform_int(9 * trial + 4, -5, 5)));
    if (discriminant(F) == 0) continue;
    GL2Int g = random_word(rng, 9 * trial + 5, 5);
    BinaryQuarticForm G = act(g, F);
    auto rf = reduce_quartic(F);
    auto rg = reduce_quartic(G);
    CHECK(same_form(rf.representative, rg.representative));
    // det g = +-1, so even-weight invariants are untouched.
    CHECK(rf.I == invariant_I(F));
    CHECK(rf.J == invariant_J(F));
    CHECK(rg.I == invariant_I(F));
    ++tested;
  }
}

TEST_CASE("box partition matches the brute-force orbit closure") {
  // Forms with nonzero discriminant and coefficients in [-2, 2], grouped
  // two ways: by canonical representative, and by connected component of
  // the one-step move graph explored inside a generous coefficient bound.
  std::vector<std::array<i64, 5>> box_forms;
  for (i64 a = -2; a <= 2; ++a)
    for (i64 b = -2; b <= 2; ++b)
      for (i64 c = -2; c <= 2; ++c)
        for (i64 d = -2; d <= 2; ++d)
          for (i64 e = -2; e <= 2; ++e) {
            if (discriminant(form(a, b, c, d, e)) == 0) continue;
            box_forms.push_back({a, b, c, d, e});
          }
  REQUIRE(box_forms.size() > 2000);

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
      BinaryQuarticForm f = form(t[0], t[1], t[2], t[3], t[4]);
      const BinaryQuarticForm steps[4] = {act(GL2Int{0, -1, 1, 0}, f),
                                          act(GL2Int{-1, 0, 0, 1}, f),
                                          act(GL2Int{1, 0, 1, 1}, f),
                                          act(GL2Int{1, 0, -1, 1}, f)};
      for (const auto& g : steps) {
        std::array<i64, 5> u{g.a.convert_to<i64>(), g.b.convert_to<i64>(),
                             g.c.convert_to<i64>(), g.d.convert_to<i64>(),
                             g.e.convert_to<i64>()};
        bool inside = true;
        for (i64 v : u) inside = inside && v >= -kBound && v <= kBound;
        if (!inside || component.count(u)) continue;
        component[u] = id;
        queue.push_back(u);
      }
    }
  }

  std::map<std::array<i64, 5>, int> by_representative;
  int mismatches = 0;
  for (const auto& t : box_forms) {
    auto rec = reduce_quartic(form(t[0], t[1], t[2], t[3], t[4]));
    std::array<i64, 5> rep{rec.representative.a.convert_to<i64>(),
                           rec.representative.b.convert_to<i64>(),
                           rec.representative.c.convert_to<i64>(),
                           rec.representative.d.convert_to<i64>(),
                           rec.representative.e.convert_to<i64>()};
    auto [it, fresh] = by_representative.try_emplace(rep, component.at(t));
    if (!fresh && it->second != component.at(t)) ++mismatches;
  }
  CHECK(mismatches == 0);
  // Every component maps to exactly one representative and vice versa.
  std::set<int> seen;
  for (const auto& [rep, id] : by_representative) seen.insert(id);
  CHECK(int(seen.size()) == components);
  CHECK(by_representative.size() == seen.size());
}
