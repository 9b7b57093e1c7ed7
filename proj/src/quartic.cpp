#include "bq/quartic.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "bq/factor.hpp"

namespace bq {

namespace {

// Expands F(p X + r Y, q X + s Y) over any commutative scalar ring.
// pow_lin[k] holds the degree-k binomial expansion of a linear form.
template <class T>
std::array<T, 5> act_impl(const T& p, const T& q, const T& r, const T& s,
                          const std::array<T, 5>& f) {
  auto lin_pow = [](const T& u, const T& v, int k) {
    // (u X + v Y)^k as coefficients of X^(k-j) Y^j, j = 0..k.
    std::array<T, 5> c{};
    c[0] = T(1);
    for (int step = 0; step < k; ++step) {
      std::array<T, 5> next{};
      for (int j = 0; j <= step; ++j) {
        next[j] = next[j] + c[j] * u;
        next[j + 1] = next[j + 1] + c[j] * v;
      }
      c = next;
    }
    return c;
  };
  std::array<T, 5> out{};
  for (int i = 0; i <= 4; ++i) {
    if (f[i] == T(0)) continue;
    auto first = lin_pow(p, r, 4 - i);
    auto second = lin_pow(q, s, i);
    for (int j = 0; j <= 4 - i; ++j) {
      for (int k = 0; k <= i; ++k) {
        out[j + k] = out[j + k] + f[i] * first[j] * second[k];
      }
    }
  }
  return out;
}

}  // namespace

bint invariant_I(const BinaryQuarticForm& F) {
  return 12 * F.a * F.e - 3 * F.b * F.d + F.c * F.c;
}

bint invariant_J(const BinaryQuarticForm& F) {
  return 72 * F.a * F.c * F.e + 9 * F.b * F.c * F.d - 27 * F.a * F.d * F.d -
         27 * F.b * F.b * F.e - 2 * F.c * F.c * F.c;
}

bint discriminant(const BinaryQuarticForm& F) {
  bint I = invariant_I(F);
  bint J = invariant_J(F);
  return 4 * I * I * I - J * J;
}

brat invariant_I(const RatQuarticForm& F) {
  return 12 * F.a * F.e - 3 * F.b * F.d + F.c * F.c;
}

brat invariant_J(const RatQuarticForm& F) {
  return 72 * F.a * F.c * F.e + 9 * F.b * F.c * F.d - 27 * F.a * F.d * F.d -
         27 * F.b * F.b * F.e - 2 * F.c * F.c * F.c;
}

bint evaluate(const BinaryQuarticForm& F, const bint& x, const bint& y) {
  bint x2 = x * x, y2 = y * y;
  return F.a * x2 * x2 + F.b * x2 * x * y + F.c * x2 * y2 + F.d * x * y2 * y + F.e * y2 * y2;
}

bool RatQuarticForm::is_integral() const {
  for (const brat* v : {&a, &b, &c, &d, &e}) {
    if (boost::multiprecision::denominator(*v) != 1) return false;
  }
  return true;
}

BinaryQuarticForm RatQuarticForm::to_integral() const {
  if (!is_integral()) throw std::invalid_argument("form has non-integral coefficients");
  auto num = [](const brat& v) { return boost::multiprecision::numerator(v); };
  return {num(a), num(b), num(c), num(d), num(e)};
}

RatQuarticForm act(const GL2Rat& g, const BinaryQuarticForm& F) {
  RatQuarticForm Fr{brat(F.a), brat(F.b), brat(F.c), brat(F.d), brat(F.e)};
  return act(g, Fr);
}

RatQuarticForm act(const GL2Rat& g, const RatQuarticForm& F) {
  auto out = act_impl<brat>(g.p, g.q, g.r, g.s, {F.a, F.b, F.c, F.d, F.e});
  return {out[0], out[1], out[2], out[3], out[4]};
}

BinaryQuarticForm act(const GL2Int& g, const BinaryQuarticForm& F) {
  auto out = act_impl<bint>(g.p, g.q, g.r, g.s, {F.a, F.b, F.c, F.d, F.e});
  return {out[0], out[1], out[2], out[3], out[4]};
}

RealQuarticForm act_real(const std::array<double, 4>& pqrs, const RealQuarticForm& F) {
  auto out = act_impl<double>(pqrs[0], pqrs[1], pqrs[2], pqrs[3],
                              {F.a, F.b, F.c, F.d, F.e});
  return {out[0], out[1], out[2], out[3], out[4]};
}

RealQuarticForm act_iwasawa(double lambda, double t, double u, const RealQuarticForm& F,
                            bool inverse) {
  if (!(lambda > 0) || !(t > 0)) throw std::invalid_argument("act_iwasawa: lambda, t > 0 required");
  auto diag_twist = [](const RealQuarticForm& G, double tt) {
    // diag(1/t, t) sends coefficient i to t^(2i-4) * coeff_i.
    RealQuarticForm H = G;
    double t2 = tt * tt;
    H.a = G.a / (t2 * t2);
    H.b = G.b / t2;
    H.c = G.c;
    H.d = G.d * t2;
    H.e = G.e * t2 * t2;
    return H;
  };
  auto shear = [](const RealQuarticForm& G, double uu) {
    return act_real({1.0, 0.0, uu, 1.0}, G);
  };
  auto scale = [](const RealQuarticForm& G, double lam) {
    double l4 = lam * lam * lam * lam;
    return RealQuarticForm{G.a * l4, G.b * l4, G.c * l4, G.d * l4, G.e * l4};
  };
  if (!inverse) {
    return scale(shear(diag_twist(F, t), u), lambda);
  }
  return diag_twist(shear(scale(F, 1.0 / lambda), -u), 1.0 / t);
}

bool has_rational_linear_factor(const BinaryQuarticForm& F) {
  if (F.is_zero()) throw std::invalid_argument("has_rational_linear_factor: zero form");
  if (F.a == 0 || F.e == 0) return true;
  auto ys = divisors_bint(F.a);
  auto xs = divisors_bint(F.e);
  for (const bint& y : ys) {
    for (const bint& x : xs) {
      if (boost::multiprecision::gcd(x, y) != 1) continue;
      if (evaluate(F, x, y) == 0) return true;
      if (evaluate(F, -x, y) == 0) return true;
    }
  }
  return false;
}

RealQuarticForm normal_form_I0(int sign, double J) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("normal_form_I0: sign must be +-1");
  if (J == 0.0) throw std::invalid_argument("normal_form_I0: J must be nonzero");
  if (sign * J >= 0) throw std::invalid_argument("normal_form_I0: requires sign * J < 0");
  // Base form (0, 1, 0, 0, 2 s / 27) has I = 0 and J = -2 s; the homothety
  // lambda * id multiplies every coefficient by lambda^4 and J by lambda^12.
  double lam12 = J / (-2.0 * sign);
  double lam4 = std::cbrt(lam12);
  return {0.0, lam4, 0.0, 0.0, lam4 * 2.0 * sign / 27.0};
}

std::ostream& operator<<(std::ostream& os, const BinaryQuarticForm& F) {
  return os << "(" << F.a << ", " << F.b << ", " << F.c << ", " << F.d << ", " << F.e << ")";
}

}  // namespace bq
