#include "mtv/arith.hpp"

#include <algorithm>

namespace mtv {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer num(const Rational& q) { return q.get_num(); }
Integer den(const Rational& q) { return q.get_den(); }

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer n(s.substr(0, slash));
    Integer d(s.substr(slash + 1));
    return make_rational(n, d);
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational literal: " + s);
  }
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

ExtendedGcd xgcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  if (m < 1) throw Error("modulus must be >= 1");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer invmod(const Integer& a, const Integer& m) {
  if (m < 1) throw Error("modulus must be >= 1");
  if (m == 1) return 0;
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error("not a unit");
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

namespace {
constexpr long kTrialBound = 1000000;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  Integer limit = Integer(kTrialBound) * kTrialBound;
  if (n >= limit) throw Error("primality test out of supported range");
  if (n % 2 == 0) return n == 2;
  for (Integer d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  for (long i = 2; i <= bound; i++) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (long j = 2 * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

std::vector<std::pair<Integer, int>> factor(const Integer& n) {
  if (n == 0) throw Error("cannot factor 0");
  std::vector<std::pair<Integer, int>> out;
  Integer m = abs(n);
  for (long p : {2L, 3L, 5L}) {
    int e = 0;
    while (m % p == 0) { m /= p; e++; }
    if (e) out.emplace_back(p, e);
  }
  // 30-wheel over the remaining candidates
  static const int wheel[] = {4, 2, 4, 2, 4, 6, 2, 6};
  Integer d = 7;
  int wi = 0;
  while (d <= kTrialBound && d * d <= m) {
    int e = 0;
    while (m % d == 0) { m /= d; e++; }
    if (e) out.emplace_back(d, e);
    d += wheel[wi];
    wi = (wi + 1) & 7;
  }
  if (m > 1) {
    if (!is_prime(m)) throw Error("factorization incomplete: " + to_string(n));
    out.emplace_back(m, 1);
  }
  return out;
}

Integer euler_phi(const Integer& n) {
  if (n <= 0) throw Error("euler_phi needs n >= 1");
  Integer phi = 1;
  for (const auto& [p, e] : factor(n)) {
    phi *= p - 1;
    for (int i = 1; i < e; i++) phi *= p;
  }
  return phi;
}

int legendre(const Integer& a, const Integer& p) {
  if (p == 2 || !is_prime(p)) throw Error("legendre needs an odd prime");
  Integer r = mod_floor(a, p);
  if (r == 0) return 0;
  Integer e = (p - 1) / 2;
  Integer s;
  mpz_powm(s.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return s == 1 ? 1 : -1;
}

std::vector<Integer> units_mod(const Integer& m) {
  if (m < 1) throw Error("modulus must be >= 1");
  std::vector<Integer> out;
  for (Integer a = 1; a < m; a++)
    if (gcd(a, m) == 1) out.push_back(a);
  return out;
}

Residue::Residue(const Integer& v, const Integer& m) : modulus(m) {
  if (m < 1) throw Error("modulus must be >= 1");
  value = mod_floor(v, m);
}

namespace {
void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus != b.modulus)
    throw Error("mixed moduli: " + to_string(a.modulus) + " vs " +
                to_string(b.modulus));
}
} // namespace

Residue operator+(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return Residue(a.value + b.value, a.modulus);
}

Residue operator-(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return Residue(a.value - b.value, a.modulus);
}

Residue operator*(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return Residue(a.value * b.value, a.modulus);
}

Residue inverse(const Residue& a) {
  return Residue(invmod(a.value, a.modulus), a.modulus);
}

Residue mod_pow(const Residue& base, const Integer& exp) {
  Integer b = base.value;
  Integer e = exp;
  if (e < 0) {
    b = invmod(b, base.modulus);
    e = -e;
  }
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(),
           base.modulus.get_mpz_t());
  return Residue(r, base.modulus);
}

Residue crt_pair(const Residue& r1, const Residue& r2) {
  auto [g, x, y] = xgcd(r1.modulus, r2.modulus);
  if (g != 1) throw Error("crt_pair needs coprime moduli");
  // r1.value + m1 * ((r2 - r1) * m1^{-1} mod m2)
  Integer m = r1.modulus * r2.modulus;
  Integer k = mod_floor((r2.value - r1.value) * x, r2.modulus);
  return Residue(r1.value + r1.modulus * k, m);
}

} // namespace mtv
