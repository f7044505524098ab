#include "mtv/curve.hpp"

#include <algorithm>

namespace mtv {

WeierstrassCurve::WeierstrassCurve(const Integer& a1_, const Integer& a2_,
                                   const Integer& a3_, const Integer& a4_,
                                   const Integer& a6_)
    : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_) {
  b2 = a1 * a1 + 4 * a2;
  b4 = 2 * a4 + a1 * a3;
  b6 = a3 * a3 + 4 * a6;
  b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c4 = b2 * b2 - 24 * b4;
  c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc == 0) throw Error("singular curve (discriminant 0)");
  if (4 * b8 != b2 * b6 - b4 * b4 || 1728 * disc != c4 * c4 * c4 - c6 * c6)
    throw InternalError("curve invariant identities failed");
}

std::vector<Integer> WeierstrassCurve::bad_primes() const {
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(disc)) out.push_back(p);
  return out;
}

bool RationalPoint::operator==(const RationalPoint& o) const {
  if (at_infinity || o.at_infinity) return at_infinity == o.at_infinity;
  return x == o.x && y == o.y;
}

bool point_less(const RationalPoint& a, const RationalPoint& b) {
  if (a.at_infinity || b.at_infinity) return a.at_infinity && !b.at_infinity;
  int cx = cmp(a.x, b.x);
  if (cx != 0) return cx < 0;
  return cmp(a.y, b.y) < 0;
}

std::string to_string(const RationalPoint& p) {
  if (p.at_infinity) return "O";
  auto coord = [](const Rational& q) {
    return den(q) == 1 ? num(q).get_str() : to_string(q);
  };
  return "(" + coord(p.x) + "," + coord(p.y) + ")";
}

bool on_curve(const WeierstrassCurve& e, const RationalPoint& p) {
  if (p.at_infinity) return true;
  Rational lhs = p.y * p.y + e.a1 * p.x * p.y + e.a3 * p.y;
  Rational rhs = p.x * p.x * p.x + e.a2 * p.x * p.x + e.a4 * p.x + e.a6;
  return lhs == rhs;
}

RationalPoint negate(const WeierstrassCurve& e, const RationalPoint& p) {
  if (p.at_infinity) return p;
  return RationalPoint::affine(p.x, -p.y - e.a1 * p.x - e.a3);
}

RationalPoint point_add(const WeierstrassCurve& e, const RationalPoint& p,
                        const RationalPoint& q) {
  if (!on_curve(e, p) || !on_curve(e, q)) throw Error("point not on curve");
  if (p.at_infinity) return q;
  if (q.at_infinity) return p;

  Rational slope;
  if (p.x == q.x) {
    if (p.y != q.y || q == negate(e, p)) return RationalPoint::infinity();
    // tangent line; 2-torsion already handled above
    Rational d = 2 * p.y + e.a1 * p.x + e.a3;
    slope = (3 * p.x * p.x + 2 * e.a2 * p.x + e.a4 - e.a1 * p.y) / d;
  } else {
    slope = (q.y - p.y) / (q.x - p.x);
  }
  Rational x3 = slope * slope + e.a1 * slope - e.a2 - p.x - q.x;
  Rational y3 = slope * (p.x - x3) - p.y - e.a1 * x3 - e.a3;
  return RationalPoint::affine(x3, y3);
}

RationalPoint scalar_mul(const WeierstrassCurve& e, const Integer& n,
                         const RationalPoint& p) {
  if (!on_curve(e, p)) throw Error("point not on curve");
  Integer k = n;
  RationalPoint base = p;
  if (k < 0) {
    k = -k;
    base = negate(e, base);
  }
  RationalPoint acc = RationalPoint::infinity();
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = point_add(e, acc, base);
    k >>= 1;
    if (k > 0) base = point_add(e, base, base);
  }
  return acc;
}

Integer x_denominator(const RationalPoint& p) {
  if (p.at_infinity) throw Error("d undefined at O");
  return den(p.x);
}

FpPoint reduce_point_mod_p(const WeierstrassCurve& e, const RationalPoint& p,
                           const Integer& prime) {
  if (p.at_infinity) return FpPoint{};
  if (mod_floor(den(p.x), prime) == 0) {
    if (mod_floor(den(p.y), prime) == 0) return FpPoint{};
    throw InternalError("inconsistent denominators at " + to_string(prime));
  }
  if (mod_floor(den(p.y), prime) == 0)
    throw InternalError("y-denominator without x-denominator at " +
                        to_string(prime));
  Integer xr = mod_floor(num(p.x) * invmod(den(p.x), prime), prime);
  Integer yr = mod_floor(num(p.y) * invmod(den(p.y), prime), prime);
  return FpPoint{false, xr, yr};
}

Integer count_points(const WeierstrassCurve& e, const Integer& p) {
  if (!is_prime(p)) throw Error("count_points needs a prime");
  if (mod_floor(e.disc, p) == 0) throw Error("bad reduction at " + to_string(p));

  if (p <= 3) {
    Integer count = 1;
    for (Integer x = 0; x < p; x++)
      for (Integer y = 0; y < p; y++) {
        Integer lhs = y * y + e.a1 * x * y + e.a3 * y;
        Integer rhs = ((x + e.a2) * x + e.a4) * x + e.a6;
        if (mod_floor(lhs - rhs, p) == 0) count++;
      }
    return count;
  }

  // Complete the square: z^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  Integer count = p + 1;
  for (Integer x = 0; x < p; x++) {
    Integer g = ((4 * x + e.b2) * x + 2 * e.b4) * x + e.b6;
    count += legendre(g, p);
  }
  return count;
}

Integer trace_of_frobenius(const WeierstrassCurve& e, const Integer& p) {
  Integer np = count_points(e, p);
  Integer ap = p + 1 - np;
  if (ap * ap > 4 * p) throw InternalError("Hasse bound violated");
  return ap;
}

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::GoodOrdinary: return "good-ordinary";
    case ReductionKind::GoodSupersingular: return "good-supersingular";
    case ReductionKind::MultiplicativeSplit: return "multiplicative-split";
    case ReductionKind::MultiplicativeNonsplit: return "multiplicative-nonsplit";
    case ReductionKind::Additive: return "additive";
  }
  return "?";
}

std::string KodairaSymbol::str() const {
  switch (family) {
    case Family::I0: return "I0";
    case Family::In: return "I" + std::to_string(n);
    case Family::InStar: return "I" + std::to_string(n) + "*";
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::IVStar: return "IV*";
    case Family::IIIStar: return "III*";
    case Family::IIStar: return "II*";
  }
  return "?";
}

Integer conductor(const WeierstrassCurve& e) {
  Integer n = 1;
  for (const Integer& p : e.bad_primes()) {
    ReductionData rd = classify_reduction(e, p);
    Integer q = 1;
    for (long i = 0; i < rd.conductor_exponent; i++) q *= p;
    n *= q;
  }
  return n;
}

namespace {

// The unique singular point of the reduced curve mod p, for p | disc.
FpPoint singular_point_mod_p(const WeierstrassCurve& e, const Integer& p) {
  if (p == 2) {
    for (Integer x = 0; x < 2; x++)
      for (Integer y = 0; y < 2; y++) {
        Integer f = y * y + e.a1 * x * y + e.a3 * y - x * x * x -
                    e.a2 * x * x - e.a4 * x - e.a6;
        Integer fx = e.a1 * y - 3 * x * x - 2 * e.a2 * x - e.a4;
        Integer fy = 2 * y + e.a1 * x + e.a3;
        if (mod_floor(f, p) == 0 && mod_floor(fx, p) == 0 &&
            mod_floor(fy, p) == 0)
          return FpPoint{false, x, y};
      }
    throw InternalError("no singular point mod 2");
  }
  // p odd: on the completed square G(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 the
  // singular x is a common root of G and G'; y follows from 2y+a1x+a3 = 0.
  Integer inv2 = invmod(2, p);
  auto G = [&](const Integer& x) {
    return mod_floor(((4 * x + e.b2) * x + 2 * e.b4) * x + e.b6, p);
  };
  auto Gp = [&](const Integer& x) {
    return mod_floor((12 * x + 2 * e.b2) * x + 2 * e.b4, p);
  };
  for (Integer x = 0; x < p; x++) {
    if (G(x) == 0 && Gp(x) == 0) {
      Integer y = mod_floor(-(e.a1 * x + e.a3) * inv2, p);
      return FpPoint{false, x, y};
    }
  }
  throw InternalError("no singular point mod " + to_string(p));
}

} // namespace

bool is_in_identity_component(const WeierstrassCurve& e,
                              const RationalPoint& p, const Integer& prime) {
  if (mod_floor(e.disc, prime) != 0) return true;
  FpPoint r = reduce_point_mod_p(e, p, prime);
  if (r.at_infinity) return true;
  FpPoint s = singular_point_mod_p(e, prime);
  return !(r.x == s.x && r.y == s.y);
}

bool is_in_E0(const WeierstrassCurve& e, const RationalPoint& p,
              const std::vector<Integer>& bad_primes) {
  for (const Integer& q : bad_primes)
    if (!is_in_identity_component(e, p, q)) return false;
  return true;
}

bool is_in_E0(const WeierstrassCurve& e, const RationalPoint& p) {
  return is_in_E0(e, p, e.bad_primes());
}

} // namespace mtv
