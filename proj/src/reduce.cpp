#include "bq/reduce.hpp"

#include <array>
#include <deque>
#include <set>
#include <stdexcept>

namespace bq {
namespace {

using Tuple = std::array<bint, 5>;

Tuple key(const BinaryQuarticForm& F) { return {F.a, F.b, F.c, F.d, F.e}; }

BinaryQuarticForm from_key(const Tuple& t) { return {t[0], t[1], t[2], t[3], t[4]}; }

const GL2Int kS{0, -1, 1, 0};
const GL2Int kR{-1, 0, 0, 1};

BinaryQuarticForm shear(const BinaryQuarticForm& F, i64 k) {
  return act(GL2Int{1, 0, k, 1}, F);
}

// Best strict improvement among the sign symmetries and shears up to
// +-64.  Shears of every size matter: a long translation can sit behind a
// norm barrier that single steps never cross.
bool greedy_step(BinaryQuarticForm& cur, bint& cur_norm) {
  BinaryQuarticForm best = cur;
  bint best_norm = cur_norm;
  auto consider = [&](const BinaryQuarticForm& cand) {
    bint n = coefficient_norm(cand);
    if (n < best_norm || (n == best_norm && key(cand) < key(best))) {
      best = cand;
      best_norm = n;
    }
  };
  consider(act(kS, cur));
  consider(act(kR, cur));
  for (i64 k = 1; k <= 64; ++k) {
    consider(shear(cur, k));
    consider(shear(cur, -k));
  }
  if (best_norm < cur_norm) {
    cur = best;
    cur_norm = best_norm;
    return true;
  }
  return false;
}

}  // namespace

bint coefficient_norm(const BinaryQuarticForm& F) {
  return F.a * F.a + F.b * F.b + F.c * F.c + F.d * F.d + F.e * F.e;
}

OrbitRecord reduce_quartic(const BinaryQuarticForm& F) {
  if (discriminant(F) == 0)
    throw std::invalid_argument("reduce_quartic: discriminant is zero");

  BinaryQuarticForm cur = F;
  bint cur_norm = coefficient_norm(cur);
  while (greedy_step(cur, cur_norm)) {
  }

  // Closure of the greedy endpoint under single generator steps, capped
  // well above the minimal norm so all minimal forms stay connected.
  const bint ceiling = 16 * cur_norm;
  std::set<Tuple> visited;
  std::deque<Tuple> queue;
  visited.insert(key(cur));
  queue.push_back(key(cur));
  bint min_norm = cur_norm;
  while (!queue.empty()) {
    BinaryQuarticForm f = from_key(queue.front());
    queue.pop_front();
    const BinaryQuarticForm steps[4] = {act(kS, f), act(kR, f), shear(f, 1), shear(f, -1)};
    for (const auto& g : steps) {
      bint n = coefficient_norm(g);
      if (n > ceiling) continue;
      Tuple t = key(g);
      if (!visited.insert(t).second) continue;
      if (n < min_norm) min_norm = n;
      queue.push_back(std::move(t));
      if (visited.size() > 500000)
        throw GuardError("reduce_quartic: orbit closure exceeded 500000 nodes");
    }
  }

  OrbitRecord rec;
  rec.forms_explored = visited.size();
  bool have = false;
  Tuple best{};
  for (const auto& t : visited) {
    if (coefficient_norm(from_key(t)) != min_norm) continue;
    ++rec.minimal_forms;
    if (!have || t < best) {
      best = t;
      have = true;
    }
  }
  rec.representative = from_key(best);
  rec.I = invariant_I(rec.representative);
  rec.J = invariant_J(rec.representative);
  return rec;
}

}  // namespace bq
