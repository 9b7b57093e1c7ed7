#pragma once

#include <optional>

#include "bq/ints.hpp"
#include "bq/quartic.hpp"

namespace bq {

// One integral orbit of the unimodular action, named by a canonical
// representative.  The representative is the lexicographically least
// coefficient tuple among the forms of minimal coefficient norm found by
// the closure search, so reducing any member of the orbit reproduces it.
struct OrbitRecord {
  BinaryQuarticForm representative;
  bint I{0};
  bint J{0};
  // Filled by the census when local solubility has been decided.
  std::optional<bool> soluble_everywhere;
  // Closure nodes visited while canonicalizing, and how many attained the
  // minimal norm.
  u64 forms_explored = 0;
  u64 minimal_forms = 0;
  bool in_family = false;
  // Weighted orbit masses (global and per-place) are deliberately left
  // uncomputed; the census counts orbits unweighted.  The fields exist so
  // report rows keep stable columns.
  std::optional<double> mass;
  std::optional<double> local_mass;
};

// Sum of squared coefficients, the norm the reduction descends.
bint coefficient_norm(const BinaryQuarticForm& F);

// Canonical representative of the orbit of F under GL_2(Z).  Greedy norm
// descent over shears and the two sign symmetries, then a breadth-first
// closure capped at 16 times the minimal norm picks the least tuple.
// Requires disc(F) != 0.  A closure exceeding 500000 nodes raises
// GuardError rather than returning a representative that might not be
// canonical.
OrbitRecord reduce_quartic(const BinaryQuarticForm& F);

}  // namespace bq
