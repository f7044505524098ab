#ifndef MTV_ARITH_HPP
#define MTV_ARITH_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtv {

// Exact arbitrary-precision integers and rationals. Rationals are kept
// canonical (reduced, positive denominator) by every constructor below.
using Integer = mpz_class;
using Rational = mpq_class;

// Bad input from the caller (wrong modulus, non-unit, malformed record, ...).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A violated internal invariant. Maps to exit code 3 in the CLI.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

Rational make_rational(const Integer& num, const Integer& den);
Integer num(const Rational& q);
Integer den(const Rational& q);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q); // always "num/den"

// Parses "a" or "a/b"; exact, no floats.
Rational parse_rational(const std::string& s);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

struct ExtendedGcd {
  Integer g, x, y; // g = a*x + b*y, g >= 0
};
ExtendedGcd xgcd(const Integer& a, const Integer& b);

// a mod m in [0, m), m >= 1.
Integer mod_floor(const Integer& a, const Integer& m);

// Inverse of a mod m; throws Error("not a unit") if gcd(a, m) != 1.
Integer invmod(const Integer& a, const Integer& m);

// floor(sqrt(n)), n >= 0.
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

// Deterministic trial division. Valid for |n| < 10^12 (divisors <= 10^6);
// larger inputs throw.
bool is_prime(const Integer& n);

std::vector<long> primes_up_to(long bound);

// Prime factorization by trial division up to 10^6; a remaining cofactor
// must itself be prime (checked) or the call throws.
std::vector<std::pair<Integer, int>> factor(const Integer& n);

// #(Z/nZ)^*, n >= 1.
Integer euler_phi(const Integer& n);

// Quadratic residue character of a mod p, p an odd prime.
int legendre(const Integer& a, const Integer& p);

// Ascending list of units in [1, m); m >= 1 (empty for m = 1).
std::vector<Integer> units_mod(const Integer& m);

// An element of Z/mZ that remembers its modulus. Mixing moduli is a hard
// error, never a silent coercion.
struct Residue {
  Integer value;   // in [0, modulus)
  Integer modulus; // >= 1

  Residue(const Integer& v, const Integer& m);

  bool operator==(const Residue& o) const = default;
};

Residue operator+(const Residue& a, const Residue& b);
Residue operator-(const Residue& a, const Residue& b);
Residue operator*(const Residue& a, const Residue& b);

Residue inverse(const Residue& a);

// base^exp; negative exponents go through the modular inverse.
Residue mod_pow(const Residue& base, const Integer& exp);

// Unique residue mod m1*m2 reducing to r1 and r2; moduli must be coprime.
Residue crt_pair(const Residue& r1, const Residue& r2);

} // namespace mtv

#endif
