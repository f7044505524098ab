#ifndef MTV_LINALG_HPP
#define MTV_LINALG_HPP

#include "mtv/arith.hpp"

#include <span>
#include <vector>

namespace mtv {

// Dense matrix of exact rationals, row major.
class RationalMatrix {
public:
  RationalMatrix(long rows, long cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {
    if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Rational& at(long i, long j) { return e_[i * cols_ + j]; }
  const Rational& at(long i, long j) const { return e_[i * cols_ + j]; }

private:
  long rows_, cols_;
  std::vector<Rational> e_;
};

struct RrefResult {
  RationalMatrix mat;          // reduced row echelon form
  std::vector<long> pivot_cols; // one per pivot row, ascending
  long rank;
};

// Reduced row echelon form with a fixed pivot rule: sweep columns left to
// right, pivot on the first row (in current order) with a nonzero entry.
RrefResult rref(RationalMatrix a);

// Positive c with v/c primitive-integral (gcd of entries 1).
Rational vector_content(std::span<const Rational> v);

// v scaled primitive-integer with the first nonzero entry positive.
std::vector<Integer> scale_primitive(std::span<const Rational> v);

// Basis of the right null space {v : M v = 0}, one vector per free column in
// ascending column order, each scaled primitive with first nonzero entry
// positive. Empty for a full-column-rank matrix.
std::vector<std::vector<Integer>> kernel_basis(const RationalMatrix& m);

// Solves a x = b exactly. Throws Error if the system is inconsistent;
// free variables, if any, are set to zero.
std::vector<Rational> solve(const RationalMatrix& a,
                            std::span<const Rational> b);

} // namespace mtv

#endif
