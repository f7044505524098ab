#include "mtv/curve.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mtv;

namespace {

// Lutz-Nagell style oracle directly on the original model: search small
// integral points plus denominators 4 and 8, check order <= 12.
std::vector<RationalPoint> torsion_oracle(const WeierstrassCurve& e,
                                          long box) {
  std::vector<RationalPoint> found = {RationalPoint::infinity()};
  auto try_point = [&](const Rational& x) {
    // y solves y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
    Rational b = e.a1 * x + e.a3;
    Rational c = -(x * x * x + e.a2 * x * x + e.a4 * x + e.a6);
    Rational disc = b * b - 4 * c;
    if (disc < 0) return;
    Integer dn = num(disc) * den(disc);
    if (!is_perfect_square(dn)) return;
    Rational root = make_rational(isqrt(dn), den(disc));
    for (const Rational& y :
         std::vector<Rational>{Rational((-b + root) / 2),
                               Rational((-b - root) / 2)}) {
      RationalPoint p = RationalPoint::affine(x, y);
      if (!on_curve(e, p)) continue;
      RationalPoint acc = p;
      for (int k = 1; k <= 12; k++) {
        if (acc.at_infinity) {
          found.push_back(p);
          break;
        }
        acc = point_add(e, acc, p);
      }
    }
  };
  for (long n = -box; n <= box; n++) {
    try_point(Rational(n));
    try_point(make_rational(n, 4));
    try_point(make_rational(n, 8)); // not a valid x-denominator; harmless
  }
  std::sort(found.begin(), found.end(), point_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

} // namespace

TEST_CASE("torsion of 37a is trivial") {
  TorsionSubgroup t = torsion_subgroup(WeierstrassCurve(0, 0, 1, -1, 0));
  CHECK(t.order == 1);
  REQUIRE(t.points.size() == 1);
  CHECK(t.points[0].at_infinity);
}

TEST_CASE("full 2-torsion of y^2 = x^3 - x") {
  WeierstrassCurve e(0, 0, 0, -1, 0);
  TorsionSubgroup t = torsion_subgroup(e);
  CHECK(t.order == 4);
  // points (0,0), (1,0), (-1,0) by direct substitution
  for (long x : {0L, 1L, -1L}) {
    RationalPoint p = RationalPoint::affine(Rational(x), Rational(0));
    CHECK(on_curve(e, p));
    CHECK(std::count(t.points.begin(), t.points.end(), p) == 1);
  }
}

TEST_CASE("5-torsion of y^2 + y = x^3 - x^2") {
  TorsionSubgroup t = torsion_subgroup(WeierstrassCurve(0, -1, 1, 0, 0));
  CHECK(t.order == 5);
}

TEST_CASE("6-torsion of y^2 = x^3 + 1") {
  TorsionSubgroup t = torsion_subgroup(WeierstrassCurve(0, 0, 0, 0, 1));
  CHECK(t.order == 6);
}

TEST_CASE("torsion matches oracle on assorted curves") {
  for (const WeierstrassCurve& e :
       {WeierstrassCurve(0, 0, 1, -1, 0), WeierstrassCurve(0, 1, 1, 0, 0),
        WeierstrassCurve(1, 0, 0, -1, 0), WeierstrassCurve(0, -1, 1, -10, -20),
        WeierstrassCurve(0, 1, 1, -7, 5), WeierstrassCurve(1, 1, 1, -10, -10)}) {
    TorsionSubgroup t = torsion_subgroup(e);
    auto oracle = torsion_oracle(e, 60);
    CHECK(t.order == static_cast<long>(oracle.size()));
    CHECK(t.points == oracle);
  }
}

TEST_CASE("torsion points are closed under addition") {
  WeierstrassCurve e(0, -1, 1, -10, -20); // 11a1, Z/5
  TorsionSubgroup t = torsion_subgroup(e);
  CHECK(t.order == 5);
  for (const auto& p : t.points)
    for (const auto& q : t.points) {
      RationalPoint s = point_add(e, p, q);
      CHECK(std::count(t.points.begin(), t.points.end(), s) == 1);
    }
}
