#pragma once

#include <array>
#include <iosfwd>

#include "bq/ints.hpp"

namespace bq {

// Binary quartic form  F(X, Y) = a X^4 + b X^3 Y + c X^2 Y^2 + d X Y^3 + e Y^4
// with exact integer coefficients.
//
// Invariants of the GL2 action:
//   I(F)     = 12 a e - 3 b d + c^2
//   J(F)     = 72 a c e + 9 b c d - 27 a d^2 - 27 b^2 e - 2 c^3
//   disc(F)  = (4 I^3 - J^2) / 27, stored here unscaled as 4 I^3 - J^2
// and the twist laws  I(g.F) = det(g)^4 I(F),  J(g.F) = det(g)^6 J(F).
struct BinaryQuarticForm {
  bint a, b, c, d, e;

  bool operator==(const BinaryQuarticForm&) const = default;
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0 && e == 0; }
  std::array<bint, 5> coeffs() const { return {a, b, c, d, e}; }
};

struct RatQuarticForm {
  brat a, b, c, d, e;

  bool operator==(const RatQuarticForm&) const = default;
  bool is_integral() const;
  BinaryQuarticForm to_integral() const;  // throws std::invalid_argument if not integral
};

struct RealQuarticForm {
  double a, b, c, d, e;
  std::array<double, 5> coeffs() const { return {a, b, c, d, e}; }
};

// 2x2 matrix acting on row vectors from the right:
//   (g.F)(X, Y) = F((X, Y) g) = F(p X + r Y, q X + s Y).
// This composes as act(g1) o act(g2) = act(g1 g2).
struct GL2Rat {
  brat p, q, r, s;
  brat det() const { return p * s - q * r; }
};

struct GL2Int {
  bint p, q, r, s;
  bint det() const { return p * s - q * r; }
  GL2Int mul(const GL2Int& o) const {
    return {p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
  }
};

bint invariant_I(const BinaryQuarticForm& F);
bint invariant_J(const BinaryQuarticForm& F);
// 4 I^3 - J^2. Vanishes exactly when F has a repeated root in P^1.
bint discriminant(const BinaryQuarticForm& F);

brat invariant_I(const RatQuarticForm& F);
brat invariant_J(const RatQuarticForm& F);
bint evaluate(const BinaryQuarticForm& F, const bint& x, const bint& y);

RatQuarticForm act(const GL2Rat& g, const BinaryQuarticForm& F);
RatQuarticForm act(const GL2Rat& g, const RatQuarticForm& F);
BinaryQuarticForm act(const GL2Int& g, const BinaryQuarticForm& F);
RealQuarticForm act_real(const std::array<double, 4>& pqrs, const RealQuarticForm& F);

// Iwasawa-coordinate action. Forward applies, in order, the diagonal
// t-twist diag(1/t, t), the lower shear [[1,0],[u,1]], and the homothety
// lambda * id; coefficient i picks up lambda^4 t^(2i-4) before shearing.
// inverse = true applies the inverse group element (exactly undoes forward).
RealQuarticForm act_iwasawa(double lambda, double t, double u, const RealQuarticForm& F,
                            bool inverse = false);

// Whether F has a root in P^1(Q). Nonzero forms only. Roots [x : y] in
// lowest terms satisfy y | a and x | e, which reduces the scan to divisor
// pairs; the degenerate strata a = 0 (root [1:0]) and e = 0 (root [0:1])
// short-circuit.
bool has_rational_linear_factor(const BinaryQuarticForm& F);

// Representative of the I = 0, J != 0 real orbit with the given sign of
// the leading shape: returns lambda-scaled (0, 1, 0, 0, 2 s / 27) whose J
// matches the requested value. Requires J != 0 and s * J < 0; other
// combinations are outside the orbit and raise std::invalid_argument.
RealQuarticForm normal_form_I0(int sign, double J);

std::ostream& operator<<(std::ostream& os, const BinaryQuarticForm& F);

}  // namespace bq
