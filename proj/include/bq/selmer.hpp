#pragma once

#include <string>
#include <vector>

#include "bq/ints.hpp"
#include "bq/quartic.hpp"
#include "bq/reduce.hpp"

namespace bq {

// A set of curve labels to average over: the nonzero residues a mod m, or,
// with squares set, the thinner family J = -27 k^2 with k = a mod m.  The
// J invariant of a form is used as the curve label directly.
struct FamilySpec {
  i64 m = 1;
  i64 a = 0;
  bool squares = false;
};

// Label membership for a nonzero J.
bool family_contains(const FamilySpec& family, const bint& J);

// Number of family labels n with 0 != |n| <= X; exact.
u64 family_count(const FamilySpec& family, double X);

struct CurveBucket {
  bint J{0};
  u64 orbit_count = 0;
};

struct SelmerReport {
  FamilySpec family;
  double X = 0;
  // Funnel counters, in filter order.
  u64 forms_enumerated = 0;  // forms with I = 0 and ae != 0 visited in the boxes
  u64 forms_considered = 0;  // nonzero J in the family with |J| <= X
  u64 trivial_forms = 0;     // discarded for a rational linear factor
  u64 insoluble_orbits = 0;  // distinct orbits failing local solubility
  u64 orbit_total = 0;       // distinct nontrivial locally soluble orbits
  // Arithmetic family sizes and the exponent diagnostic N(4X)/N(X).
  u64 curve_count = 0;
  u64 curve_count_4x = 0;
  double growth_ratio = 0;
  // 1 + orbit_total / curve_count: every curve contributes its identity
  // class, counted curves with no orbit included.
  double empirical_average = 0;
  double limiting_value = 3.0;
  std::vector<CurveBucket> curves;  // nonempty labels, ordered by (|J|, J)
  std::vector<OrbitRecord> orbits;  // canonical representatives, same order
  double seconds = 0;
  std::string note;
};

// Enumerates integer forms with I = 0 and 0 != |J| <= X over a ladder of
// cusp-stratified sharp boxes, keeps the family's nontrivial forms,
// deduplicates by canonical orbit representative, tests each orbit for
// solubility in every completion, and averages the surviving orbit count
// over the family labels.  Forms with a = 0 or e = 0 are skipped at the
// source: either end coefficient vanishing splits off the line X or Y, so
// such forms are always trivial and can never contribute an orbit.  The count is unweighted: no orbit masses are
// applied, so the average is an upper proxy, and the report makes no
// assertion against the limiting value.
SelmerReport selmer_average_experiment(const FamilySpec& family, double X);

}  // namespace bq
