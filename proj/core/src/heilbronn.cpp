#include "mtv/modsym.hpp"

namespace mtv {

namespace {
// nearest integer to a/b, ties away from zero; exact
long round_div(long a, long b) {
  if (b < 0) { a = -a; b = -b; }
  long q = a / b;
  long r = a % b;
  if (r > 0 && 2 * r >= b) q += 1;
  if (r < 0 && -2 * r >= b) q -= 1;
  return q;
}
} // namespace

// Cremona's Heilbronn-type family for a prime q: q+1 matrices of
// determinant q up to the continued-fraction tails.
std::vector<IntMatrix2x2> heilbronn_matrices(long q) {
  std::vector<IntMatrix2x2> out;
  out.push_back({1, 0, 0, q});
  for (long s = 0; s < q; s++) {
    long r = s - (q - 1) / 2;
    long x1 = q, x2 = -r, y1 = 0, y2 = 1;
    long a = -q, b = r;
    out.push_back({x1, x2, y1, y2});
    while (b != 0) {
      long w = round_div(a, b);
      long c = a - b * w;
      a = -b;
      b = c;
      long x3 = w * x2 - x1;
      x1 = x2;
      x2 = x3;
      long y3 = w * y2 - y1;
      y1 = y2;
      y2 = y3;
      out.push_back({x1, x2, y1, y2});
    }
  }
  return out;
}

} // namespace mtv
