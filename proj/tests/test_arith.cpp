#include "mtv/arith.hpp"

#include <doctest.h>

#include <random>

using namespace mtv;

TEST_CASE("mod_pow basics") {
  CHECK(mod_pow(Residue(2, 5), 6).value == 4);
  CHECK(mod_pow(Residue(9, 13), 0).value == 1);
  // brute-force oracle: 3x = 1 mod 7 has x = 5
  int inv = -1;
  for (int x = 1; x < 7; x++)
    if (3 * x % 7 == 1) inv = x;
  CHECK(inv == 5);
  CHECK(mod_pow(Residue(3, 7), -1).value == inv);
  CHECK_THROWS_AS(mod_pow(Residue(2, 4), -1), Error);
}

TEST_CASE("mod_pow agrees with naive powering") {
  std::mt19937 rng(7);
  for (int it = 0; it < 200; it++) {
    long m = 2 + rng() % 1000;
    long b = rng() % m;
    long e = rng() % 64;
    Residue naive(1, m);
    Residue base(b, m);
    for (long i = 0; i < e; i++) naive = naive * base;
    CHECK(mod_pow(base, e).value == naive.value);
  }
}

TEST_CASE("crt_pair") {
  // oracle: enumerate 0..34
  long expect = -1;
  for (long x = 0; x < 35; x++)
    if (x % 5 == 4 && x % 7 == 1) expect = x;
  CHECK(expect == 29);
  CHECK(crt_pair(Residue(4, 5), Residue(1, 7)).value == expect);
  CHECK(crt_pair(Residue(0, 6), Residue(0, 35)).value == 0);
  CHECK(crt_pair(Residue(1, 5), Residue(1, 7)).value == 1);
  CHECK_THROWS_AS(crt_pair(Residue(1, 6), Residue(1, 4)), Error);

  std::mt19937 rng(11);
  for (int it = 0; it < 100; it++) {
    long m = 2 + rng() % 50;
    long n = 2 + rng() % 50;
    if (gcd(m, n) != 1) continue;
    long a = rng() % m, b = rng() % n;
    Residue c = crt_pair(Residue(a, m), Residue(b, n));
    CHECK(c.modulus == m * n);
    CHECK(mod_floor(c.value, m) == a);
    CHECK(mod_floor(c.value, n) == b);
  }
}

TEST_CASE("euler_phi matches unit count") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(7) == 6);
  CHECK(euler_phi(35) == 24);
  CHECK_THROWS_AS(euler_phi(0), Error);
  CHECK_THROWS_AS(euler_phi(-4), Error);
  for (long n = 1; n <= 1000; n++) {
    long count = 0;
    for (long a = 1; a <= n; a++)
      if (std::gcd(a, n) == 1) count++;
    CHECK(euler_phi(n) == count);
  }
}

TEST_CASE("legendre symbol") {
  CHECK(legendre(1, 5) == 1);
  CHECK(legendre(0, 5) == 0);
  // squares mod 5 are {0, 1, 4}
  CHECK(legendre(2, 5) == -1);
  CHECK_THROWS_AS(legendre(3, 8), Error);
  CHECK_THROWS_AS(legendre(3, 2), Error);
  for (long p : {3L, 7L, 11L, 13L, 37L}) {
    std::vector<bool> sq(p, false);
    for (long x = 0; x < p; x++) sq[x * x % p] = true;
    for (long a = 0; a < p; a++) {
      int expect = a == 0 ? 0 : (sq[a] ? 1 : -1);
      CHECK(legendre(a, p) == expect);
    }
  }
}

TEST_CASE("residue modulus discipline") {
  CHECK_THROWS_AS(Residue(1, 5) * Residue(1, 7), Error);
  CHECK_THROWS_AS(Residue(1, 5) + Residue(1, 7), Error);
  CHECK(Residue(-3, 5).value == 2);
  CHECK_THROWS_AS(Residue(1, 0), Error);
}

TEST_CASE("units_mod and factor") {
  CHECK(units_mod(1).empty());
  CHECK(units_mod(6) == std::vector<Integer>{1, 5});
  auto f = factor(Integer(746496));
  Integer back = 1;
  for (auto& [p, e] : f)
    for (int i = 0; i < e; i++) back *= p;
  CHECK(back == 746496);
  CHECK(is_prime(999983));
  CHECK_FALSE(is_prime(999981));
}

TEST_CASE("rational helpers") {
  Rational q = make_rational(-6, -4);
  CHECK(num(q) == 3);
  CHECK(den(q) == 2);
  CHECK(to_string(q) == "3/2");
  CHECK(parse_rational("-5/8") == make_rational(-5, 8));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("x/2"), Error);
  CHECK_THROWS_AS(make_rational(1, 0), Error);
}
