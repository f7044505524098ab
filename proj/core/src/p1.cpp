#include "mtv/modsym.hpp"

#include <numeric>

namespace mtv {

namespace {
long lgcd(long a, long b) { return std::gcd(a, b); }
long lmod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}
} // namespace

P1::P1(long n) : n_(n) {
  if (n < 1) throw Error("level must be >= 1");
  if (n == 1) {
    reps_ = {{0, 0}};
    index_[{0, 0}] = 0;
    return;
  }
  // every class normalizes to (c:d) with c | N, so scanning divisors is a
  // complete enumeration
  std::vector<long> divisors;
  for (long c = 1; c <= n; c++)
    if (n % c == 0) divisors.push_back(c % n); // c = N becomes c = 0
  for (long c : divisors)
    for (long d = 0; d < n; d++) {
      if (lgcd(lgcd(c, d), n) != 1) continue;
      auto norm = normalize(c, d);
      if (index_.emplace(norm, 0).second) reps_.push_back(norm);
    }
  std::sort(reps_.begin(), reps_.end());
  for (long i = 0; i < size(); i++) index_[reps_[i]] = i;
}

std::pair<long, long> P1::normalize(long c, long d) const {
  if (n_ == 1) return {0, 0};
  c = lmod(c, n_);
  d = lmod(d, n_);
  if (lgcd(lgcd(c, d), n_) != 1) throw Error("(c:d) not primitive mod N");
  if (c == 0) return {0, 1};

  // scale so the first coordinate becomes gcd(c, N)
  long g = lgcd(c, n_);
  long s = 0;
  {
    // s*c = g (mod N) with s a unit: adjust by multiples of N/g
    long c1 = c / g, n1 = n_ / g;
    // inverse of c1 mod n1
    long t = 0, newt = 1, r = n1, newr = lmod(c1, n1);
    while (newr != 0) {
      long q = r / newr;
      std::swap(t -= q * newt, newt);
      std::swap(r -= q * newr, newr);
    }
    s = lmod(t, n1);
    if (s == 0) s = n1; // n1 == 1
    while (lgcd(s, n_) != 1) s += n1;
  }
  long d1 = lmod(s * (d % n_) % n_, n_);

  if (g == 1) return {1, d1};

  // minimize d over units congruent to 1 mod N/g
  long n1 = n_ / g;
  long best = d1;
  for (long k = 1; k < g; k++) {
    long u = 1 + k * n1;
    if (lgcd(u, n_) != 1) continue;
    long cand = lmod(u * d1 % n_, n_);
    if (cand < best) best = cand;
  }
  return {g, best};
}

long P1::index(long c, long d) const {
  auto it = index_.find(normalize(c, d));
  if (it == index_.end()) throw InternalError("P1 class missing from list");
  return it->second;
}

} // namespace mtv
