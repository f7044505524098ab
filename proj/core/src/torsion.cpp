#include "mtv/curve.hpp"

#include <algorithm>
#include <set>

// Torsion by Lutz-Nagell on the integral short model
// Y^2 = X^3 - 27 c4 X - 54 c6 (discriminant 6^12 disc), where torsion is
// integral with Y = 0 or Y^2 dividing the discriminant. Candidates map back
// through (x, y) -> (36 x + 3 b2, 108 (2y + a1 x + a3)) and are confirmed by
// an order check.

namespace mtv {

namespace {

// Integer roots of the monic cubic X^3 + A X + C, exactly. Simple roots by
// sign-change bisection on the monotone pieces; repeated roots satisfy
// 3 r^2 = -A and are checked directly.
std::vector<Integer> cubic_integer_roots(const Integer& A, const Integer& C) {
  std::set<Integer> roots;
  auto f = [&](const Integer& x) { return (x * x + A) * x + C; };

  auto check = [&](const Integer& x) {
    if (f(x) == 0) roots.insert(x);
  };

  if (A <= 0) {
    Integer r2 = (-A) / 3;
    Integer r = isqrt(r2);
    check(r);
    check(Integer(-r));
    check(Integer(r + 1));
    check(Integer(-r - 1));
  }

  Integer abs_a = abs(A), abs_c = abs(C);
  Integer bound = 2 + std::max(abs_a, abs_c);
  auto bisect = [&](Integer lo, Integer hi) {
    // requires f(lo), f(hi) of opposite (nonzero) sign
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      Integer fm = f(mid);
      if (fm == 0) { roots.insert(mid); return; }
      if ((fm < 0) == (f(lo) < 0)) lo = mid; else hi = mid;
    }
    check(lo);
    check(hi);
  };

  // critical points split [-bound, bound] into monotone intervals
  std::vector<Integer> cuts = {-bound, bound};
  if (A < 0) {
    Integer s = isqrt((-A) / 3);
    for (const Integer& c :
         std::vector<Integer>{s, Integer(s + 1), Integer(-s), Integer(-s - 1)})
      if (c > -bound && c < bound) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  for (size_t i = 0; i + 1 < cuts.size(); i++) {
    Integer lo = cuts[i], hi = cuts[i + 1];
    check(lo);
    check(hi);
    if (f(lo) != 0 && f(hi) != 0 && (f(lo) < 0) != (f(hi) < 0)) bisect(lo, hi);
  }
  return {roots.begin(), roots.end()};
}

// Divisors d >= 1 of n with d^2 | n, from the known factorization.
std::vector<Integer> square_part_divisors(const Integer& n) {
  std::vector<Integer> divs = {1};
  for (const auto& [p, e] : factor(n)) {
    size_t count = divs.size();
    Integer q = 1;
    for (int i = 1; 2 * i <= e; i++) {
      q *= p;
      for (size_t j = 0; j < count; j++) divs.push_back(divs[j] * q);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

} // namespace

TorsionSubgroup torsion_subgroup(const WeierstrassCurve& e) {
  Integer A = -27 * e.c4;
  Integer B = -54 * e.c6;
  // discriminant of the short model is 6^12 * disc
  Integer disc_short = abs(Integer("2176782336") * e.disc);
  std::vector<Integer> ys = square_part_divisors(disc_short);

  auto add_candidates = [&](const Integer& Y, std::vector<RationalPoint>& out) {
    for (const Integer& X : cubic_integer_roots(A, B - Y * Y)) {
      // back through the isomorphism
      Rational x = make_rational(X - 3 * e.b2, 36);
      Rational y = (make_rational(Y, 108) - e.a1 * x - e.a3) / 2;
      RationalPoint pt = RationalPoint::affine(x, y);
      if (on_curve(e, pt)) out.push_back(pt);
    }
  };

  std::vector<RationalPoint> candidates;
  add_candidates(0, candidates);
  for (const Integer& y : ys) {
    add_candidates(y, candidates);
    add_candidates(-y, candidates);
  }

  std::vector<RationalPoint> pts = {RationalPoint::infinity()};
  for (const RationalPoint& pt : candidates) {
    // order check: torsion has order <= 12 over Q
    RationalPoint acc = pt;
    bool torsion = false;
    for (int k = 1; k <= 12; k++) {
      if (acc.at_infinity) { torsion = true; break; }
      acc = point_add(e, acc, pt);
    }
    if (torsion) pts.push_back(pt);
  }

  std::sort(pts.begin(), pts.end(), point_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Integer u(pts.size());
  static const std::set<long> allowed = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
  if (!allowed.count(u.get_si()))
    throw InternalError("torsion order " + to_string(u) + " out of range");
  return TorsionSubgroup{u, pts};
}

} // namespace mtv
