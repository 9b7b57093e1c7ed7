#pragma once

#include <map>
#include <string>
#include <vector>

#include "bq/ints.hpp"
#include "bq/quartic.hpp"

namespace bq {

// Witness that a quartic does or does not represent a square over one
// completion of the rationals.  place == 0 stands for the real numbers,
// any other value is the prime p.
//
// Soluble at a finite place: (x, y) are integers, not both divisible by p,
// and z*z = F(x, y) mod p^precision with precision large enough that the
// congruence pins down an exact p-adic solution (at least two more p-adic
// digits than twice the valuation of z).
//
// Soluble at the real place: z_real*z_real = F(x, y) in double precision
// and F(x, y) >= 0 holds exactly for the rational point (x, y).
struct SolubilityCertificate {
  i64 place = 0;
  bool soluble = false;
  brat x{0};
  brat y{0};
  bint z{0};
  double z_real = 0.0;
  int precision = 0;
  std::string note;
};

struct LocalSolubility {
  bool soluble = false;
  // Real place first, then p = 2, then the odd primes dividing the
  // discriminant in increasing order.  The scan stops at the first
  // insoluble place, so the last entry is the failing one when
  // soluble == false.
  std::vector<SolubilityCertificate> certificates;
};

// Does z^2 = F(x, y) have a real solution with (x, y) != (0, 0) and z != 0,
// i.e. does F take a positive value?  Exact: sign analysis of F(x, 1) via
// squarefree decomposition and Sturm chains, never floating point.
// Requires F != 0.
SolubilityCertificate soluble_R(const BinaryQuarticForm& F);

// Does z^2 = F(x, y) have a p-adic solution with (x, y) primitive?
// Explores the two affine charts y = 1 and x = 1, |y| < 1 by recursive
// descent on residue classes; branches are closed off once their value
// class is constant, so the answer is exact.  Requires disc(F) != 0 and
// p prime.  Primes above 10^6 exceed the residue search budget and raise
// GuardError, as does a descent deeper than the discriminant valuation
// allows (which would indicate a bug, not a hard input).
SolubilityCertificate soluble_Qp(const BinaryQuarticForm& F, u64 p);

// Solubility at the real place, at 2, and at every odd prime dividing
// disc(F).  At the remaining primes a smooth quartic always represents a
// square, so this decides solubility over every completion at once.
// Requires disc(F) != 0 and |disc(F)| <= 10^36 (factoring budget).
LocalSolubility locally_soluble(const BinaryQuarticForm& F);

// Census of binary quartics over F_p with I = 0.  Scans all p^5 - 1
// nonzero coefficient tuples, classifies the I = 0 ones by their root
// multiplicity pattern, and counts the patterns that cannot occur
// (two distinct double roots, rational or conjugate).  Also checks the
// companion identity I(X^2 (X - nY)^2) = n^4 for every n mod p.
// Accepts p in {5, 7, 11}: smaller primes are outside the range of the
// statement, larger ones exceed the p^5 scan budget.
struct SplittingLemmaReport {
  u64 p = 0;
  u64 forms_scanned = 0;
  u64 i_zero = 0;
  // Forms with I = 0 whose splitting type is (1^2 1^2) or (2^2).
  u64 forbidden = 0;
  // Forms with I = 0 of type (1^4), i.e. scalar multiples of fourth
  // powers of linear forms.  Always p^2 - 1.
  u64 quadruple_roots = 0;
  std::map<std::string, u64> type_counts;
  bool square_of_quadratic_identity = false;
};
SplittingLemmaReport splitting_lemma_check(u64 p);

}  // namespace bq
