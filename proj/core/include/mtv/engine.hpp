#ifndef MTV_ENGINE_HPP
#define MTV_ENGINE_HPP

#include "mtv/arith.hpp"
#include "mtv/curve.hpp"
#include "mtv/modsym.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtv {

// A set of good ordinary primes for the curve, with the local point counts.
struct PrimeSet {
  std::vector<Integer> primes; // sorted, distinct
  Integer M;                   // product
  std::vector<Integer> np;     // #E(F_p), aligned with primes
  Integer nS;                  // product of np
};

// Validates: p prime, p not dividing N, good ordinary. Primes 2 and 3 are
// rejected unless allow_tiny (they make G_M trivial).
PrimeSet make_prime_set(const WeierstrassCurve& e,
                        const std::vector<Integer>& primes, bool allow_tiny);

// Element of G_M = (Z/MZ)^*/{+-1}, canonical representative min(a, M-a).
struct GMElement {
  Integer modulus;
  Integer rep;

  static GMElement from(const Integer& a, const Integer& M);
  static GMElement identity(const Integer& M);

  GMElement mul(const GMElement& o) const;
  GMElement pow(const Integer& e) const;

  bool operator==(const GMElement& o) const = default;
};

std::string to_string(const GMElement& g);

// l(S) = prod a^{lambda [a/M]} (mod M). The table holds the raw candidate
// symbols; lambda must make every exponent integral or the call fails.
struct ModularElement {
  GMElement in_gm;
  Residue raw; // the literal product in (Z/MZ)^*
};
ModularElement modular_element_l(const SymbolTable& table,
                                 const Rational& lambda);

// Smallest kP (then kP + torsion) such that none of P', P'+P, P'+Q, P'+P+Q
// is at infinity or reduces to infinity mod a prime of S.
RationalPoint choose_auxiliary_point(const WeierstrassCurve& e,
                                     const RationalPoint& gen,
                                     const RationalPoint& q_s,
                                     const std::vector<Integer>& primes,
                                     const std::vector<RationalPoint>& torsion);

// g for the subset T: d(P'+P) d(P'+Q_T) / (d(P') d(P'+P+Q_T)) mod M_T with
// Q_T = (prod n_p) Q. T empty gives the trivial residue mod 1.
Residue g_of_subset(const WeierstrassCurve& e, const RationalPoint& gen,
                    const RationalPoint& q0,
                    const std::vector<Integer>& subset,
                    const std::vector<RationalPoint>& torsion);

// Y_{M',M}: lift a to b coprime to M, return b^{phi(M/M')} mod M.
Residue y_lift(const Residue& a, const Integer& M);

// Inclusion-exclusion over subsets T of S of the lifted g values.
struct GFunction {
  GMElement in_gm{1, 0};
  Residue raw{0, 1};
};
GFunction G_of_S(const WeierstrassCurve& e, const RationalPoint& gen,
                 const RationalPoint& q0, const PrimeSet& s,
                 const std::vector<RationalPoint>& torsion);

enum class VerdictStatus { Pass, Fail, Skipped };

struct Verdict {
  std::vector<Integer> s;
  Integer M;
  VerdictStatus status = VerdictStatus::Skipped;
  std::string reason; // for skips and failures
  GMElement lhs{1, 0}, rhs{1, 0};
  Residue raw_l{0, 1}, raw_g{0, 1};
  Integer exp_left, exp_right; // u*v and sha*coker_phi
  bool strict_equal = false;   // equality already in (Z/MZ)^*
};

struct VerifyConfig {
  long max_prime = 100;
  std::vector<long> set_window = {5, 7, 11, 13};
  int max_set_size = 1;
  bool include_trivial_primes = false;
};

// Memo shared across the lambda search: symbol tables and g values only
// depend on the modulus, not on lambda.
struct EngineCache {
  std::map<Integer, SymbolTable> tables;
  std::map<Integer, GFunction> gvalues;
};

// One (curve, S) test at a fixed lambda. Errors from the arithmetic side
// come back as skipped verdicts with the reason recorded.
Verdict verify_set(const WeierstrassCurve& e, const ModularSymbolSpace& space,
                   const InvariantSet& inv, const RationalPoint& gen,
                   const std::vector<RationalPoint>& torsion,
                   const std::vector<Integer>& primes, const Rational& lambda,
                   bool include_trivial, EngineCache* cache = nullptr);

struct CurveResult {
  Rational lambda = 0;
  bool lambda_found = false;
  bool all_pass = false;
  std::vector<Verdict> verdicts;
};

// Enumerates the configured test family, screens the lambda candidates for
// integrality, and returns the first lambda (order 1, -1, 2, -2, 1/2, -1/2)
// under which every non-skipped test passes; otherwise the best one.
CurveResult verify_curve(const WeierstrassCurve& e,
                         const ModularSymbolSpace& space,
                         const RationalPoint& gen, const Integer& sha,
                         const VerifyConfig& cfg);

const std::vector<Rational>& lambda_candidates();

} // namespace mtv

#endif
