#ifndef MTV_CURVE_HPP
#define MTV_CURVE_HPP

#include "mtv/arith.hpp"

#include <compare>
#include <string>
#include <vector>

namespace mtv {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q, integral
// coefficients, nonzero discriminant. The standard b/c invariants are
// computed once at construction.
struct WeierstrassCurve {
  Integer a1, a2, a3, a4, a6;
  Integer b2, b4, b6, b8;
  Integer c4, c6;
  Integer disc;

  WeierstrassCurve(const Integer& a1, const Integer& a2, const Integer& a3,
                   const Integer& a4, const Integer& a6);

  // Ascending primes dividing the discriminant.
  std::vector<Integer> bad_primes() const;
};

struct RationalPoint {
  bool at_infinity = true;
  Rational x, y;

  static RationalPoint infinity() { return RationalPoint{}; }
  static RationalPoint affine(const Rational& x, const Rational& y) {
    return RationalPoint{false, x, y};
  }

  bool operator==(const RationalPoint& o) const;
};

// Deterministic order: infinity first, then lex by (x, y).
bool point_less(const RationalPoint& a, const RationalPoint& b);

std::string to_string(const RationalPoint& p);

bool on_curve(const WeierstrassCurve& e, const RationalPoint& p);

RationalPoint negate(const WeierstrassCurve& e, const RationalPoint& p);
RationalPoint point_add(const WeierstrassCurve& e, const RationalPoint& p,
                        const RationalPoint& q);
RationalPoint scalar_mul(const WeierstrassCurve& e, const Integer& n,
                         const RationalPoint& p);

// Full (positive) denominator of x(P). This is the squared d-convention:
// on a minimal model den(x) = d^2 and both sides of the tested identity use
// the square consistently.
Integer x_denominator(const RationalPoint& p);

// A point over F_p (or the reduction of a rational point).
struct FpPoint {
  bool at_infinity = true;
  Integer x, y;
};

// Naive reduction mod p: infinity iff p divides den(x).
FpPoint reduce_point_mod_p(const WeierstrassCurve& e, const RationalPoint& p,
                           const Integer& prime);

// #E(F_p) for a prime of good reduction, including the point at infinity.
// Character sum for p >= 5, direct enumeration for p in {2, 3}.
Integer count_points(const WeierstrassCurve& e, const Integer& p);

// p + 1 - #E(F_p); good reduction only.
Integer trace_of_frobenius(const WeierstrassCurve& e, const Integer& p);

enum class ReductionKind {
  GoodOrdinary,
  GoodSupersingular,
  MultiplicativeSplit,
  MultiplicativeNonsplit,
  Additive,
};

std::string to_string(ReductionKind k);

struct KodairaSymbol {
  enum class Family { I0, In, InStar, II, III, IV, IVStar, IIIStar, IIStar };
  Family family = Family::I0;
  long n = 0; // for In / In*

  std::string str() const;
  bool operator==(const KodairaSymbol&) const = default;
};

struct ReductionData {
  Integer p;
  ReductionKind kind;
  Integer ap;  // good p only
  Integer np;  // good p only: #E(F_p)
  Integer cp;  // Tamagawa number (1 at good p)
  KodairaSymbol kodaira;
  long conductor_exponent = 0;
};

// Tate's algorithm at p (plus point counting at good p). Throws Error if the
// model is not minimal at p.
ReductionData classify_reduction(const WeierstrassCurve& e, const Integer& p);

// Product of p^{f_p} over bad primes; validates minimality everywhere.
Integer conductor(const WeierstrassCurve& e);

// True iff P reduces mod p to a nonsingular point (or to infinity).
bool is_in_identity_component(const WeierstrassCurve& e,
                              const RationalPoint& p, const Integer& prime);

// Everywhere-good-reduction subgroup test: identity component at every bad
// prime.
bool is_in_E0(const WeierstrassCurve& e, const RationalPoint& p);
bool is_in_E0(const WeierstrassCurve& e, const RationalPoint& p,
              const std::vector<Integer>& bad_primes);

struct TorsionSubgroup {
  Integer order;
  std::vector<RationalPoint> points; // infinity first, then (x, y) lex
};

// Lutz-Nagell on the scaled model Y^2 = X^3 - 27 c4 X - 54 c6, candidates
// confirmed by an order check (<= 12).
TorsionSubgroup torsion_subgroup(const WeierstrassCurve& e);

struct InvariantSet {
  Integer u;           // order of E(Q)_tors
  Integer v;           // order of torsion inside E0
  Integer mu;          // min j > 0 with jP + R in E0 for some torsion R
  RationalPoint Q;     // the witness mu P + R, generator of E0's free part
  Integer C;           // product of Tamagawa numbers
  Integer index_e_e0;  // #(E/E0) = mu u / v
  Integer coker_phi;   // C / #(E/E0)
  Integer sha;         // input
  std::vector<ReductionData> bad_reduction;
};

// Needs rank(E) = 1 and P a generator of the free part.
InvariantSet compute_invariants(const WeierstrassCurve& e,
                                const RationalPoint& gen, const Integer& sha);

} // namespace mtv

#endif
