#include "mtv/curve.hpp"

#include <limits>

// Tate's algorithm for the local reduction data at p: Kodaira type, Tamagawa
// number, conductor exponent (via Ogg's formula). Single pass on a minimal
// model; reaching the rescaling step means the input was not minimal and is
// reported as an ingestion error.

namespace mtv {

namespace {

constexpr long kInfVal = std::numeric_limits<long>::max() / 2;

long val(const Integer& x, const Integer& p) {
  if (x == 0) return kInfVal;
  long v = 0;
  Integer m = x;
  while (mod_floor(m, p) == 0) {
    m /= p;
    v++;
  }
  return v;
}

Integer pow_p(const Integer& p, long e) {
  Integer r = 1;
  for (long i = 0; i < e; i++) r *= p;
  return r;
}

// Mutable local model; translations keep b-invariants and the discriminant.
struct LocalModel {
  Integer a1, a2, a3, a4, a6;
  Integer p;

  Integer b2() const { return a1 * a1 + 4 * a2; }
  Integer b6() const { return a3 * a3 + 4 * a6; }
  Integer b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }

  void translate(const Integer& r, const Integer& s, const Integer& t) {
    Integer n1 = a1 + 2 * s;
    Integer n2 = a2 - s * a1 + 3 * r - s * s;
    Integer n3 = a3 + r * a1 + 2 * t;
    Integer n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r -
                 2 * s * t;
    Integer n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t -
                 r * t * a1;
    a1 = n1; a2 = n2; a3 = n3; a4 = n4; a6 = n6;
  }

  long v1() const { return val(a1, p); }
  long v2() const { return val(a2, p); }
  long v3() const { return val(a3, p); }
  long v4() const { return val(a4, p); }
  long v6() const { return val(a6, p); }
};

struct QuadRoots {
  int rational;          // number of distinct roots in F_p
  bool multiple;         // true iff a repeated root
  Integer multiple_root; // valid when multiple
};

// Roots of alpha T^2 + beta T + gamma mod p by direct scan (p is a bad prime
// of desk-scale conductors, so small).
QuadRoots quadratic_roots_mod_p(const Integer& alpha, const Integer& beta,
                                const Integer& gamma, const Integer& p) {
  QuadRoots out{0, false, 0};
  for (Integer t = 0; t < p; t++) {
    if (mod_floor((alpha * t + beta) * t + gamma, p) != 0) continue;
    out.rational++;
    // multiplicity: divide out (T - t) once, check the quotient again
    Integer q1 = alpha;                 // quotient alpha T + (beta + alpha t)
    Integer q0 = beta + alpha * t;
    if (mod_floor(q1 * t + q0, p) == 0) {
      out.multiple = true;
      out.multiple_root = t;
    }
  }
  return out;
}

struct CubicRoots {
  int rational;
  bool has_multiple;
  Integer multiple_root;
  int multiplicity; // 2 or 3 when has_multiple
};

// Roots of monic T^3 + a T^2 + b T + c mod p.
CubicRoots cubic_roots_mod_p(const Integer& a, const Integer& b,
                             const Integer& c, const Integer& p) {
  CubicRoots out{0, false, 0, 1};
  for (Integer t = 0; t < p; t++) {
    if (mod_floor(((t + a) * t + b) * t + c, p) != 0) continue;
    out.rational++;
    // synthetic division by (T - t): quotient T^2 + q1 T + q0
    Integer q1 = a + t;
    Integer q0 = b + t * q1;
    if (mod_floor((t + q1) * t + q0, p) == 0) {
      out.has_multiple = true;
      out.multiple_root = t;
      // divide once more for a triple root
      Integer r0 = q1 + t;
      out.multiplicity = mod_floor(t + r0, p) == 0 ? 3 : 2;
    }
  }
  return out;
}

FpPoint singular_point_of(const LocalModel& m) {
  const Integer& p = m.p;
  for (Integer x = 0; x < p; x++)
    for (Integer y = 0; y < p; y++) {
      Integer f = y * y + m.a1 * x * y + m.a3 * y - x * x * x -
                  m.a2 * x * x - m.a4 * x - m.a6;
      if (mod_floor(f, p) != 0) continue;
      Integer fx = m.a1 * y - 3 * x * x - 2 * m.a2 * x - m.a4;
      Integer fy = 2 * y + m.a1 * x + m.a3;
      if (mod_floor(fx, p) == 0 && mod_floor(fy, p) == 0)
        return FpPoint{false, x, y};
    }
  throw InternalError("singular point not found mod " + to_string(p));
}

void require(bool cond, const char* what) {
  if (!cond) throw InternalError(std::string("tate: ") + what);
}

} // namespace

ReductionData classify_reduction(const WeierstrassCurve& e, const Integer& p) {
  if (!is_prime(p)) throw Error("classify_reduction needs a prime");

  ReductionData rd;
  rd.p = p;
  rd.cp = 1;

  const long n = val(e.disc, p);
  if (n == 0) {
    rd.np = count_points(e, p);
    rd.ap = p + 1 - rd.np;
    rd.kind = mod_floor(rd.ap, p) == 0 ? ReductionKind::GoodSupersingular
                                       : ReductionKind::GoodOrdinary;
    rd.kodaira = {KodairaSymbol::Family::I0, 0};
    rd.conductor_exponent = 0;
    return rd;
  }

  rd.ap = 0;
  rd.np = 0;

  if (val(e.c4, p) == 0) {
    // Multiplicative, type I_n. Split iff -c6 is a square in Q_p.
    bool split = p == 2 ? mod_floor(-e.c6, 8) == 1 : legendre(-e.c6, p) == 1;
    rd.kind = split ? ReductionKind::MultiplicativeSplit
                    : ReductionKind::MultiplicativeNonsplit;
    rd.ap = split ? 1 : -1;
    rd.kodaira = {KodairaSymbol::Family::In, n};
    rd.conductor_exponent = 1;
    rd.cp = split ? Integer(n) : Integer(n % 2 == 0 ? 2 : 1);
    return rd;
  }

  // Additive from here on.
  rd.kind = ReductionKind::Additive;
  LocalModel m{e.a1, e.a2, e.a3, e.a4, e.a6, p};

  FpPoint sing = singular_point_of(m);
  m.translate(sing.x, 0, sing.y);
  require(m.v3() >= 1 && m.v4() >= 1 && m.v6() >= 1, "singular shift failed");

  if (m.v6() < 2) {
    rd.kodaira = {KodairaSymbol::Family::II, 0};
    rd.conductor_exponent = n;
    rd.cp = 1;
    return rd;
  }
  if (val(m.b8(), p) < 3) {
    rd.kodaira = {KodairaSymbol::Family::III, 0};
    rd.conductor_exponent = n - 1;
    rd.cp = 2;
    return rd;
  }
  if (val(m.b6(), p) < 3) {
    QuadRoots q = quadratic_roots_mod_p(1, m.a3 / p, -(m.a6 / (p * p)), p);
    require(!q.multiple, "type IV quadratic not separable");
    rd.kodaira = {KodairaSymbol::Family::IV, 0};
    rd.conductor_exponent = n - 2;
    rd.cp = q.rational == 2 ? 3 : 1;
    return rd;
  }

  // Normalize to p | a1, a2; p^2 | a3, a4; p^3 | a6.
  if (p == 2) {
    require(m.v1() >= 1, "a1 odd in additive case");
    m.translate(0, mod_floor(m.a2, 2), 0);
    require(m.v3() >= 2, "v(a3) < 2 past step 5");
    if (m.v6() == 2) m.translate(0, 0, 2);
  } else {
    Integer s = mod_floor(-m.a1 * invmod(2, p), p);
    m.translate(0, s, 0);
    require(m.v2() >= 1, "a2 not killed by s-shift");
    Integer p2 = p * p;
    Integer t = mod_floor(-m.a3 * invmod(2, p2), p2);
    m.translate(0, 0, t);
  }
  require(m.v1() >= 1 && m.v2() >= 1 && m.v3() >= 2 && m.v4() >= 2 &&
              m.v6() >= 3,
          "normalization for the cubic failed");

  // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) mod p.
  CubicRoots cub =
      cubic_roots_mod_p(m.a2 / p, m.a4 / (p * p), m.a6 / (p * p * p), p);

  if (!cub.has_multiple) {
    rd.kodaira = {KodairaSymbol::Family::InStar, 0};
    rd.conductor_exponent = n - 4;
    rd.cp = 1 + cub.rational;
    return rd;
  }

  if (cub.multiplicity == 2) {
    // I_m* chain. Move the double root to 0.
    m.translate(p * cub.multiple_root, 0, 0);
    require(m.v2() == 1 && m.v4() >= 3 && m.v6() >= 4,
            "double-root arrangement failed");
    long mm = 1;
    while (true) {
      if (mm % 2 == 1) {
        // Y^2 + (a3/p^{k+1}) Y - a6/p^{2k+2}
        long k = (mm + 1) / 2;
        Integer pk1 = pow_p(p, k + 1);
        QuadRoots q =
            quadratic_roots_mod_p(1, m.a3 / pk1, -(m.a6 / (pk1 * pk1)), p);
        if (!q.multiple) {
          rd.kodaira = {KodairaSymbol::Family::InStar, mm};
          rd.conductor_exponent = n - mm - 4;
          rd.cp = q.rational == 2 ? 4 : 2;
          return rd;
        }
        m.translate(0, 0, pk1 * q.multiple_root);
        require(m.v3() >= k + 2 && m.v6() >= 2 * k + 3, "I* t-step failed");
      } else {
        // (a2/p) X^2 + (a4/p^{k+2}) X + a6/p^{2k+3}
        long k = mm / 2;
        Integer pk2 = pow_p(p, k + 2);
        QuadRoots q = quadratic_roots_mod_p(m.a2 / p, m.a4 / pk2,
                                            m.a6 / pow_p(p, 2 * k + 3), p);
        if (!q.multiple) {
          rd.kodaira = {KodairaSymbol::Family::InStar, mm};
          rd.conductor_exponent = n - mm - 4;
          rd.cp = q.rational == 2 ? 4 : 2;
          return rd;
        }
        m.translate(pow_p(p, k + 1) * q.multiple_root, 0, 0);
        require(m.v4() >= k + 3 && m.v6() >= 2 * k + 4, "I* r-step failed");
      }
      mm++;
      require(mm < n, "I* chain exceeded v(disc)");
    }
  }

  // Triple root: move it to 0.
  m.translate(p * cub.multiple_root, 0, 0);
  require(m.v2() >= 2 && m.v4() >= 3 && m.v6() >= 4,
          "triple-root arrangement failed");

  {
    Integer p2 = p * p;
    QuadRoots q = quadratic_roots_mod_p(1, m.a3 / p2, -(m.a6 / (p2 * p2)), p);
    if (!q.multiple) {
      rd.kodaira = {KodairaSymbol::Family::IVStar, 0};
      rd.conductor_exponent = n - 6;
      rd.cp = q.rational == 2 ? 3 : 1;
      return rd;
    }
    m.translate(0, 0, p2 * q.multiple_root);
    require(m.v3() >= 3 && m.v6() >= 5, "step 8 t-shift failed");
  }

  if (m.v4() < 4) {
    rd.kodaira = {KodairaSymbol::Family::IIIStar, 0};
    rd.conductor_exponent = n - 7;
    rd.cp = 2;
    return rd;
  }
  if (m.v6() < 6) {
    rd.kodaira = {KodairaSymbol::Family::IIStar, 0};
    rd.conductor_exponent = n - 8;
    rd.cp = 1;
    return rd;
  }
  throw Error("model not minimal at " + to_string(p));
}

} // namespace mtv
