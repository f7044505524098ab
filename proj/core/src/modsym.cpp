#include "mtv/modsym.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mtv {

namespace {

long lmod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// ---- signed union-find for the two-term relations ----

struct SignedUF {
  std::vector<long> parent;
  std::vector<int> sign; // sign relative to parent
  std::vector<char> dead; // class forced to zero

  explicit SignedUF(long n) : parent(n), sign(n, 1), dead(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<long, int> find(long i) {
    if (parent[i] == i) return {i, 1};
    auto [r, s] = find(parent[i]);
    parent[i] = r;
    sign[i] *= s;
    return {r, sign[i]};
  }

  // impose e_i = s * e_j
  void unite(long i, long j, int s) {
    auto [ri, si] = find(i);
    auto [rj, sj] = find(j);
    if (ri == rj) {
      if (si != s * sj) dead[ri] = 1; // e = -e forces 0 over Q
      return;
    }
    parent[ri] = rj;
    sign[ri] = si * s * sj;
    if (dead[ri]) dead[rj] = 1;
  }
};

// ---- sparse rows over Q ----

using SparseRow = std::vector<std::pair<long, Rational>>; // sorted by column

SparseRow row_add_scaled(const SparseRow& a, const SparseRow& b,
                         const Rational& f) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i >= a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      j++;
    } else {
      Rational v = a[i].second + f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      i++;
      j++;
    }
  }
  return out;
}

void row_scale(SparseRow& r, const Rational& f) {
  for (auto& [c, v] : r) v *= f;
}

// ---- cusps ----

struct Cusp {
  Integer p, q; // lowest terms, q >= 0; infinity is (1, 0)
};

Cusp make_cusp(const Integer& p, const Integer& q) {
  if (q == 0) return Cusp{1, 0};
  Integer g = gcd(p, q);
  Integer pp = p / g, qq = q / g;
  if (qq < 0) { pp = -pp; qq = -qq; }
  return Cusp{pp, qq};
}

bool cusps_gamma0_equivalent(const Cusp& c1, const Cusp& c2, long n) {
  if (c1.q == 0 || c2.q == 0) {
    if (c1.q == 0 && c2.q == 0) return true;
    const Cusp& fin = c1.q == 0 ? c2 : c1;
    return mod_floor(fin.q, n) == 0;
  }
  // s_i p_i = 1 (mod q_i); equivalent iff s1 q2 = s2 q1 (mod gcd(q1 q2, N))
  Integer s1 = c1.q == 1 ? Integer(0) : invmod(c1.p, c1.q);
  Integer s2 = c2.q == 1 ? Integer(0) : invmod(c2.p, c2.q);
  Integer g = gcd(c1.q * c2.q, Integer(n));
  return mod_floor(s1 * c2.q - s2 * c1.q, g) == 0;
}

} // namespace

// number of cusp classes after the +/- identification; exposed for tests
long cusp_class_count_plus(long n) {
  // representatives from all (c:d) lifts
  P1 p1(n);
  std::vector<Cusp> reps;
  auto add = [&](const Cusp& c) {
    for (const Cusp& r : reps)
      if (cusps_gamma0_equivalent(r, c, n) ||
          cusps_gamma0_equivalent(r, make_cusp(-c.p, c.q), n))
        return;
    reps.push_back(c);
  };
  for (long i = 0; i < p1.size(); i++) {
    auto [c, d] = p1.rep(i);
    // lift to coprime (c, d')
    long dd = d;
    if (c == 0) {
      add(make_cusp(1, 0));
      add(make_cusp(0, 1));
      continue;
    }
    while (std::gcd(c, dd) != 1) dd += n;
    auto eg = xgcd(c, dd);
    // matrix [y, -x; c, dd]
    add(make_cusp(eg.y, c));
    add(make_cusp(-eg.x, dd));
  }
  return static_cast<long>(reps.size());
}

ModularSymbolSpace::ModularSymbolSpace(const WeierstrassCurve& e)
    : n_(0), p1_(1), curve_(e) {
  Integer cond = conductor(e);
  if (cond > 1000000) throw Error("conductor too large");
  n_ = cond.get_si();
  p1_ = P1(n_);
  fold_relations();
  solve_torsion_relations();
  compute_boundary();
  isolate_eigen_functional();
}

Integer ModularSymbolSpace::eigenvalue(long q) const {
  auto it = ap_cache_.find(q);
  if (it != ap_cache_.end()) return it->second;
  Integer ap = trace_of_frobenius(curve_, q);
  ap_cache_[q] = ap;
  return ap;
}

void ModularSymbolSpace::fold_relations() {
  const long sz = p1_.size();
  SignedUF uf(sz);
  for (long i = 0; i < sz; i++) {
    auto [c, d] = p1_.rep(i);
    // x + xS = 0 with (c:d)S = (d:-c)
    uf.unite(p1_.index(d, lmod(-c, n_)), i, -1);
    // x - x.eta = 0 with (c:d)eta = (-c:d)
    uf.unite(p1_.index(lmod(-c, n_), d), i, 1);
  }
  // propagate dead flags to roots
  class_of_.assign(sz, -1);
  sign_of_.assign(sz, 0);
  std::map<long, long> root_to_class;
  for (long i = 0; i < sz; i++) {
    auto [r, s] = uf.find(i);
    if (uf.dead[r]) continue;
    auto it = root_to_class.find(r);
    long cls;
    if (it == root_to_class.end()) {
      cls = num_classes_++;
      root_to_class[r] = cls;
      class_rep_.push_back(i); // first member seen; anchor with sign +1
    } else {
      cls = it->second;
    }
    class_of_[i] = cls;
    // sign relative to the anchor member
    auto [ra, sa] = uf.find(class_rep_[cls]);
    sign_of_[i] = s * sa;
  }
}

void ModularSymbolSpace::solve_torsion_relations() {
  // three-term rows over the classes: x + xT + xT^2 with
  // (c:d)T = (d : -c-d), (c:d)T^2 = (-c-d : c)
  std::set<SparseRow> rows;
  for (long i = 0; i < p1_.size(); i++) {
    auto [c, d] = p1_.rep(i);
    long it1 = p1_.index(d, lmod(-c - d, n_));
    long it2 = p1_.index(lmod(-c - d, n_), c);
    std::map<long, Rational> acc;
    for (long j : {i, it1, it2}) {
      if (class_of_[j] < 0) continue;
      acc[class_of_[j]] += sign_of_[j];
    }
    SparseRow row;
    for (auto& [cls, v] : acc)
      if (v != 0) row.emplace_back(cls, v);
    if (row.empty()) continue;
    // canonical scale for dedup
    std::vector<Rational> vals;
    for (auto& [cls, v] : row) vals.push_back(v);
    Rational content = vector_content(vals);
    if (row.front().second < 0) content = -content;
    row_scale(row, 1 / content);
    rows.insert(row);
  }

  // sparse reduction; pivot rows keyed by leading column
  std::map<long, SparseRow> pivot; // leading col -> normalized row
  std::vector<SparseRow> ordered(rows.begin(), rows.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const SparseRow& a, const SparseRow& b) {
              if (a.front().first != b.front().first)
                return a.front().first < b.front().first;
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (SparseRow row : ordered) {
    while (!row.empty()) {
      auto it = pivot.find(row.front().first);
      if (it == pivot.end()) break;
      row = row_add_scaled(row, it->second, -row.front().second);
    }
    if (row.empty()) continue;
    row_scale(row, 1 / row.front().second);
    pivot[row.front().first] = std::move(row);
  }
  // back substitution to full reduction
  for (auto it = pivot.rbegin(); it != pivot.rend(); ++it) {
    SparseRow& row = it->second;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t k = 1; k < row.size(); k++) {
        auto pit = pivot.find(row[k].first);
        if (pit == pivot.end()) continue;
        row = row_add_scaled(row, pit->second, -row[k].second);
        changed = true;
        break;
      }
    }
  }

  class_basis_index_.assign(num_classes_, -1);
  for (long cls = 0; cls < num_classes_; cls++) {
    if (pivot.count(cls)) continue;
    class_basis_index_[cls] = dim_++;
    basis_class_.push_back(cls);
  }
  class_to_basis_.assign(num_classes_, {});
  for (long cls = 0; cls < num_classes_; cls++) {
    if (class_basis_index_[cls] >= 0) {
      class_to_basis_[cls] = {{class_basis_index_[cls], Rational(1)}};
    } else {
      const SparseRow& row = pivot.at(cls);
      SparseRow expr;
      for (size_t k = 1; k < row.size(); k++) {
        long slot = class_basis_index_[row[k].first];
        if (slot < 0)
          throw InternalError("unreduced entry after back substitution");
        expr.emplace_back(slot, -row[k].second);
      }
      std::sort(expr.begin(), expr.end());
      class_to_basis_[cls] = std::move(expr);
    }
  }
}

void ModularSymbolSpace::compute_boundary() {
  // cusp classes (mod +/-) hit by the basis generators
  std::vector<Cusp> reps;
  auto cusp_class = [&](const Cusp& c) -> long {
    for (size_t k = 0; k < reps.size(); k++)
      if (cusps_gamma0_equivalent(reps[k], c, n_) ||
          cusps_gamma0_equivalent(reps[k], make_cusp(-c.p, c.q), n_))
        return static_cast<long>(k);
    reps.push_back(c);
    return static_cast<long>(reps.size()) - 1;
  };

  RationalMatrix bd(dim_, 2 * dim_ + 2); // columns grow as classes appear
  long ncusp = 0;
  for (long j = 0; j < dim_; j++) {
    auto [c, d] = p1_.rep(class_rep_[basis_class_[j]]);
    Integer cc = c, dd = d;
    if (c == 0) { cc = 0; dd = 1; }
    while (gcd(cc, dd) != 1) dd += n_;
    auto eg = xgcd(cc, dd);
    // g = [y, -x; c, d]: boundary is [g(infinity)] - [g(0)]
    long ci = cusp_class(make_cusp(eg.y, cc));
    long cj = cusp_class(make_cusp(-eg.x, dd));
    ncusp = static_cast<long>(reps.size());
    if (ncusp > bd.cols()) throw InternalError("cusp column overflow");
    if (ci != cj) {
      bd.at(j, ci) += 1;
      bd.at(j, cj) -= 1;
    }
  }
  RationalMatrix bdt(ncusp, dim_);
  for (long j = 0; j < dim_; j++)
    for (long k = 0; k < ncusp; k++) bdt.at(k, j) = bd.at(j, k);
  cuspidal_dim_ = dim_ - rref(bdt).rank;
}

RationalMatrix ModularSymbolSpace::hecke_matrix(long q) const {
  if (!is_prime(Integer(q))) throw Error("hecke_matrix needs a prime");
  if (n_ % q == 0) throw Error("hecke_matrix needs q coprime to the level");
  std::vector<IntMatrix2x2> mats = heilbronn_matrices(q);
  RationalMatrix h(dim_, dim_);
  for (long j = 0; j < dim_; j++) {
    auto [c, d] = p1_.rep(class_rep_[basis_class_[j]]);
    for (const IntMatrix2x2& m : mats) {
      long cc = lmod(c * m.a + d * m.c, n_);
      long dd = lmod(c * m.b + d * m.d, n_);
      if (std::gcd(std::gcd(cc, dd), n_) != 1)
        throw InternalError("Heilbronn image not primitive");
      long idx = p1_.index(cc, dd);
      if (class_of_[idx] < 0) continue;
      for (const auto& [slot, v] : class_to_basis_[class_of_[idx]])
        h.at(slot, j) += sign_of_[idx] * v;
    }
  }
  return h;
}

void ModularSymbolSpace::isolate_eigen_functional() {
  const long sturm = p1_.size() / 6 + 1;

  // columns of k span the candidate dual eigenspace
  std::vector<std::vector<Rational>> kcols;
  long q = 0;
  auto next_q = [&]() {
    q = q == 0 ? 2 : q + 1;
    while (!is_prime(Integer(q)) || n_ % q == 0) q++;
    if (q > sturm) throw Error("eigenspace isolation failed");
    return q;
  };

  {
    next_q();
    Integer aq = eigenvalue(q);
    RationalMatrix m(dim_, dim_);
    RationalMatrix h = hecke_matrix(q);
    for (long i = 0; i < dim_; i++)
      for (long j = 0; j < dim_; j++) m.at(i, j) = h.at(j, i); // transpose
    for (long i = 0; i < dim_; i++) m.at(i, i) -= Rational(aq);
    for (auto& v : kernel_basis(m)) {
      std::vector<Rational> col(v.size());
      for (size_t i = 0; i < v.size(); i++) col[i] = Rational(v[i]);
      kcols.push_back(std::move(col));
    }
    hecke_used_.push_back(q);
  }

  while (kcols.size() > 1) {
    next_q();
    Integer aq = eigenvalue(q);
    RationalMatrix h = hecke_matrix(q);
    long k = static_cast<long>(kcols.size());
    // W = H^t K, then X with K X = W; kernel of (X - aq I)
    RationalMatrix kmat(dim_, k);
    for (long j = 0; j < k; j++)
      for (long i = 0; i < dim_; i++) kmat.at(i, j) = kcols[j][i];
    RationalMatrix x(k, k);
    for (long j = 0; j < k; j++) {
      std::vector<Rational> w(dim_, Rational(0));
      for (long i = 0; i < dim_; i++)
        for (long l = 0; l < dim_; l++)
          if (h.at(l, i) != 0) w[i] += h.at(l, i) * kcols[j][l];
      std::vector<Rational> sol = solve(kmat, w);
      for (long i = 0; i < k; i++) x.at(i, j) = sol[i];
    }
    for (long i = 0; i < k; i++) x.at(i, i) -= Rational(aq);
    auto small_kernel = kernel_basis(x);
    if (small_kernel.empty())
      throw InternalError("eigen system lost the eigenvalue");
    std::vector<std::vector<Rational>> next;
    for (const auto& coeffs : small_kernel) {
      std::vector<Rational> col(dim_, Rational(0));
      for (long j = 0; j < k; j++)
        for (long i = 0; i < dim_; i++) col[i] += coeffs[j] * kcols[j][i];
      next.push_back(std::move(col));
    }
    kcols = std::move(next);
    hecke_used_.push_back(q);
  }
  if (kcols.empty()) throw Error("eigenspace isolation failed");

  functional_ = scale_primitive(kcols[0]);

  // exact eigen residual check for all good q <= 13
  for (long qq = 2; qq <= 13; qq++) {
    if (!is_prime(Integer(qq)) || n_ % qq == 0) continue;
    RationalMatrix h = hecke_matrix(qq);
    Integer aq = eigenvalue(qq);
    for (long j = 0; j < dim_; j++) {
      Rational acc(0);
      for (long i = 0; i < dim_; i++)
        if (h.at(i, j) != 0) acc += Rational(functional_[i]) * h.at(i, j);
      if (acc != Rational(aq) * Rational(functional_[j]))
        throw InternalError("functional is not a Hecke eigenvector at q = " +
                            std::to_string(qq));
    }
  }

  functional_of_class_.assign(num_classes_, Rational(0));
  for (long cls = 0; cls < num_classes_; cls++) {
    Rational acc(0);
    for (const auto& [slot, v] : class_to_basis_[cls])
      acc += Rational(functional_[slot]) * v;
    functional_of_class_[cls] = acc;
  }
}

Rational ModularSymbolSpace::functional_on_generator(long p1_index) const {
  long cls = class_of_[p1_index];
  if (cls < 0) return Rational(0);
  return sign_of_[p1_index] * functional_of_class_[cls];
}

std::vector<Rational> ModularSymbolSpace::generator_image(long p1_index) const {
  std::vector<Rational> out(dim_, Rational(0));
  long cls = class_of_[p1_index];
  if (cls < 0) return out;
  for (const auto& [slot, v] : class_to_basis_[cls])
    out[slot] = sign_of_[p1_index] * v;
  return out;
}

namespace {

// continued-fraction walk over the denominators of a/b; calls visit(c, d)
// for the Manin symbol (q_k : q_{k-1}) of every unimodular segment
template <typename F>
void cf_segments(Integer a, Integer b, F&& visit) {
  if (b == 0) throw Error("path endpoint needs b >= 1");
  if (b < 0) { a = -a; b = -b; }
  Integer g = gcd(abs(a), b);
  if (g > 1) { a /= g; b /= g; }

  Integer qk_prev = 0, qk = 1; // q_{-1}, q_0
  Integer x = a, y = b;
  // quotient sequence of a/b by floor division
  bool first = true;
  while (true) {
    Integer quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t(),
                y.get_mpz_t());
    if (first) {
      first = false;
      // q_0 = 1, q_{-1} = 0: segment (1 : 0)
      visit(Integer(1), Integer(0));
    } else {
      Integer qnext = quot * qk + qk_prev;
      visit(qnext, qk);
      qk_prev = qk;
      qk = qnext;
    }
    if (rem == 0) break;
    x = y;
    y = rem;
  }
}

} // namespace

std::vector<Rational> ModularSymbolSpace::path_to_space(const Integer& a,
                                                        const Integer& b) const {
  std::vector<Rational> out(dim_, Rational(0));
  cf_segments(a, b, [&](const Integer& qk, const Integer& qk1) {
    long c = mod_floor(qk, n_).get_si();
    long d = mod_floor(qk1, n_).get_si();
    long idx = p1_.index(c, d);
    long cls = class_of_[idx];
    if (cls < 0) return;
    for (const auto& [slot, v] : class_to_basis_[cls])
      out[slot] -= sign_of_[idx] * v;
  });
  return out;
}

Rational ModularSymbolSpace::eval_symbol(const Integer& a,
                                         const Integer& b) const {
  Rational acc(0);
  cf_segments(a, b, [&](const Integer& qk, const Integer& qk1) {
    long c = mod_floor(qk, n_).get_si();
    long d = mod_floor(qk1, n_).get_si();
    acc -= functional_on_generator(p1_.index(c, d));
  });
  return acc;
}

SymbolTable symbol_table(const ModularSymbolSpace& space, const Integer& M) {
  if (M < 1) throw Error("modulus must be >= 1");
  if (gcd(M, Integer(space.level())) != 1)
    throw Error("M must be coprime to conductor");
  SymbolTable t;
  t.M = M;
  for (const Integer& a : units_mod(M)) t.values[a] = space.eval_symbol(a, M);

  Rational sum(0);
  for (const auto& [a, v] : t.values) {
    sum += v;
    if (v != t.values.at(mod_floor(M - a, M) == 0 ? a : M - a))
      throw InternalError("plus symmetry violated at M = " + to_string(M));
  }
  if (M > 2 && sum != 0)
    throw InternalError("augmentation sum nonzero at M = " + to_string(M));
  return t;
}

} // namespace mtv
