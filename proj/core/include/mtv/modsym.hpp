#ifndef MTV_MODSYM_HPP
#define MTV_MODSYM_HPP

#include "mtv/arith.hpp"
#include "mtv/curve.hpp"
#include "mtv/linalg.hpp"

#include <map>
#include <utility>
#include <vector>

namespace mtv {

// P^1(Z/NZ): canonical list of projective representatives (c:d) and the
// normalization map. Representatives are produced with c running over the
// divisors of N (c = 0 for the class of (0:1)).
class P1 {
public:
  explicit P1(long n);

  long n() const { return n_; }
  long size() const { return static_cast<long>(reps_.size()); }
  const std::pair<long, long>& rep(long i) const { return reps_[i]; }

  // Canonical representative of (c:d); gcd(c, d, N) must be 1.
  std::pair<long, long> normalize(long c, long d) const;

  // Index of the class of (c:d) in the canonical list.
  long index(long c, long d) const;

private:
  long n_;
  std::vector<std::pair<long, long>> reps_;
  std::map<std::pair<long, long>, long> index_;
};

// 2x2 integer matrices of determinant q acting on Manin symbols (the
// Heilbronn family, Cremona's construction).
struct IntMatrix2x2 {
  long a, b, c, d;
};
std::vector<IntMatrix2x2> heilbronn_matrices(long q);

// The plus quotient of the Manin symbol space for Gamma_0(N), with the
// eigen-functional of the curve's isotypic component isolated by exact
// linear algebra. The functional is primitive-integer scaled; the leftover
// rational normalization is the engine's lambda.
class ModularSymbolSpace {
public:
  // Builds the space for the curve's conductor; isolates the dual
  // eigenvector by intersecting kernels of (T_q^t - a_q) for good q until
  // the dimension is 1 (error past the Sturm bound).
  explicit ModularSymbolSpace(const WeierstrassCurve& e);

  long level() const { return n_; }
  long dim() const { return dim_; }
  long cuspidal_dim() const { return cuspidal_dim_; }
  const P1& p1() const { return p1_; }

  const std::vector<Integer>& functional() const { return functional_; }
  const std::vector<long>& hecke_primes_used() const { return hecke_used_; }

  // Matrix of T_q on the quotient basis (q prime, q not dividing N).
  RationalMatrix hecke_matrix(long q) const;

  // Class of {a/b, infinity} in the quotient basis via the continued
  // fraction of a/b.
  std::vector<Rational> path_to_space(const Integer& a, const Integer& b) const;

  // Functional applied to path_to_space: the unnormalized candidate symbol.
  Rational eval_symbol(const Integer& a, const Integer& b) const;

  // Image of a single Manin generator in the quotient basis.
  std::vector<Rational> generator_image(long p1_index) const;

  // a_q of the attached curve, from the curve module (cached).
  Integer eigenvalue(long q) const;

private:
  long n_;
  P1 p1_;

  // fold of the S and eta relations: P1 index -> signed class (or zero)
  std::vector<long> class_of_;  // -1 when the generator maps to 0
  std::vector<int> sign_of_;
  long num_classes_ = 0;
  std::vector<long> class_rep_; // P1 index representing each class

  long dim_ = 0;
  long cuspidal_dim_ = 0;
  std::vector<long> basis_class_;          // classes forming the basis
  std::vector<long> class_basis_index_;    // class -> basis slot or -1
  // class -> expression in the basis (sparse rows)
  std::vector<std::vector<std::pair<long, Rational>>> class_to_basis_;

  std::vector<Integer> functional_;
  std::vector<Rational> functional_of_class_;
  std::vector<long> hecke_used_;

  const WeierstrassCurve curve_;
  mutable std::map<long, Integer> ap_cache_;

  void fold_relations();
  void solve_torsion_relations(); // the three-term T relations
  void compute_boundary();
  void isolate_eigen_functional();
  Rational functional_on_generator(long p1_index) const;
};

// Coefficient table of the candidate symbols [a/M] for a in (Z/MZ)^*,
// before lambda scaling. Construction validates the plus symmetry and the
// zero augmentation sum.
struct SymbolTable {
  Integer M;
  std::map<Integer, Rational> values;
};

SymbolTable symbol_table(const ModularSymbolSpace& space, const Integer& M);

// #cusp classes of Gamma_0(N) (after the +/- identification used by the
// plus quotient). Exposed for tests.
long cusp_class_count_plus(long n);

} // namespace mtv

#endif
