#pragma once

#include <string>
#include <vector>

#include "bq/quartic.hpp"

namespace bq {

// Factorization pattern of F mod p over P^1(F_p): the multiset of
// (degree, multiplicity) of the irreducible factors of the homogeneous
// reduction. A vanishing leading block (a, b, ... = 0 mod p) contributes a
// Y-factor, recorded both inside the multiset and as infinity_multiplicity
// so the degree drop at [1:0] stays visible.
struct SplittingType {
  // Sorted by (multiplicity desc, degree asc); degrees times multiplicities
  // sum to 4 for a form that is nonzero mod p.
  std::vector<std::pair<int, int>> parts;  // (degree, multiplicity)
  int infinity_multiplicity = 0;

  bool operator==(const SplittingType&) const = default;
  // Tag like "(1 1 1 1)", "(1^2 2)", "(2^2)", "(1^4)".
  std::string tag() const;
};

SplittingType make_splitting_type(std::vector<std::pair<int, int>> parts, int inf_mult = 0);

// Pattern of F mod p. Errors: p not prime, or F == 0 mod p.
SplittingType splitting_type(const BinaryQuarticForm& F, u64 p);

}  // namespace bq
