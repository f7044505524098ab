#include "mtv/linalg.hpp"

#include <algorithm>

namespace mtv {

RrefResult rref(RationalMatrix a) {
  const long rows = a.rows(), cols = a.cols();
  std::vector<long> pivot_cols;
  long r = 0;
  for (long c = 0; c < cols && r < rows; c++) {
    long p = -1;
    for (long i = r; i < rows; i++) {
      if (a.at(i, c) != 0) { p = i; break; }
    }
    if (p < 0) continue;
    if (p != r)
      for (long j = c; j < cols; j++) std::swap(a.at(p, j), a.at(r, j));
    Rational inv = 1 / a.at(r, c);
    for (long j = c; j < cols; j++) a.at(r, j) *= inv;
    for (long i = 0; i < rows; i++) {
      if (i == r || a.at(i, c) == 0) continue;
      Rational f = a.at(i, c);
      for (long j = c; j < cols; j++) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_cols.push_back(c);
    r++;
  }
  return RrefResult{std::move(a), std::move(pivot_cols), r};
}

Rational vector_content(std::span<const Rational> v) {
  if (v.empty()) throw Error("content of empty vector");
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, den(q));
  Integer g = 0;
  for (const auto& q : v) g = gcd(g, num(q) * (l / den(q)));
  if (g == 0) throw Error("content of zero vector");
  return make_rational(g, l);
}

std::vector<Integer> scale_primitive(std::span<const Rational> v) {
  Rational c = vector_content(v);
  int sign = 0;
  for (const auto& q : v) {
    if (q != 0) { sign = q > 0 ? 1 : -1; break; }
  }
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& q : v) {
    Rational s = q / c;
    if (sign < 0) s = -s;
    if (den(s) != 1) throw InternalError("primitive scaling not integral");
    out.push_back(num(s));
  }
  return out;
}

std::vector<std::vector<Integer>> kernel_basis(const RationalMatrix& m) {
  RrefResult r = rref(m);
  const long cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (long c : r.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Integer>> basis;
  for (long f = 0; f < cols; f++) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (long i = 0; i < r.rank; i++) v[r.pivot_cols[i]] = -r.mat.at(i, f);
    basis.push_back(scale_primitive(v));
  }
  return basis;
}

std::vector<Rational> solve(const RationalMatrix& a,
                            std::span<const Rational> b) {
  if (static_cast<long>(b.size()) != a.rows())
    throw Error("solve: dimension mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (long i = 0; i < a.rows(); i++) {
    for (long j = 0; j < a.cols(); j++) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult r = rref(std::move(aug));
  std::vector<Rational> x(a.cols(), Rational(0));
  for (long i = 0; i < r.rank; i++) {
    long c = r.pivot_cols[i];
    if (c == a.cols()) throw Error("solve: inconsistent system");
    x[c] = r.mat.at(i, a.cols());
  }
  return x;
}

} // namespace mtv
