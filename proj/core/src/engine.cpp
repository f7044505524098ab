#include "mtv/engine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mtv {

PrimeSet make_prime_set(const WeierstrassCurve& e,
                        const std::vector<Integer>& primes, bool allow_tiny) {
  PrimeSet s;
  s.primes = primes;
  std::sort(s.primes.begin(), s.primes.end());
  if (std::adjacent_find(s.primes.begin(), s.primes.end()) != s.primes.end())
    throw Error("prime set has repeats");
  if (s.primes.empty()) throw Error("prime set is empty");
  s.M = 1;
  s.nS = 1;
  for (const Integer& p : s.primes) {
    if (!is_prime(p)) throw Error(to_string(p) + " is not prime");
    if (!allow_tiny && p <= 3)
      throw Error("p <= 3 makes G_M trivial; not allowed here");
    ReductionData rd = classify_reduction(e, p);
    if (rd.kind == ReductionKind::Additive ||
        rd.kind == ReductionKind::MultiplicativeSplit ||
        rd.kind == ReductionKind::MultiplicativeNonsplit)
      throw Error("bad reduction at " + to_string(p));
    if (rd.kind == ReductionKind::GoodSupersingular)
      throw Error("supersingular at " + to_string(p));
    s.M *= p;
    s.np.push_back(rd.np);
    s.nS *= rd.np;
  }
  return s;
}

GMElement GMElement::from(const Integer& a, const Integer& M) {
  if (M < 1) throw Error("modulus must be >= 1");
  Integer r = mod_floor(a, M);
  if (M == 1) return GMElement{M, 0};
  if (gcd(r, M) != 1)
    throw Error(to_string(a) + " is not a unit mod " + to_string(M));
  Integer alt = M - r;
  return GMElement{M, std::min(r, alt)};
}

GMElement GMElement::identity(const Integer& M) {
  return GMElement{M, M == 1 ? Integer(0) : Integer(1)};
}

GMElement GMElement::mul(const GMElement& o) const {
  if (modulus != o.modulus) throw Error("mixed moduli in G_M");
  return from(rep * o.rep, modulus);
}

GMElement GMElement::pow(const Integer& e) const {
  return from(mod_pow(Residue(rep, modulus), e).value, modulus);
}

std::string to_string(const GMElement& g) { return to_string(g.rep); }

ModularElement modular_element_l(const SymbolTable& table,
                                 const Rational& lambda) {
  const Integer& M = table.M;
  Residue acc(1, M);
  for (const auto& [a, v] : table.values) {
    Rational e = lambda * v;
    if (den(e) != 1) throw Error("lambda fails integrality");
    acc = acc * mod_pow(Residue(a, M), num(e));
  }
  return ModularElement{GMElement::from(acc.value, M), acc};
}

namespace {

bool unit_everywhere(const WeierstrassCurve& e, const RationalPoint& pt,
                     const std::vector<Integer>& primes) {
  if (pt.at_infinity) return false;
  for (const Integer& p : primes)
    if (reduce_point_mod_p(e, pt, p).at_infinity) return false;
  return true;
}

bool auxiliary_ok(const WeierstrassCurve& e, const RationalPoint& aux,
                  const RationalPoint& gen, const RationalPoint& q_s,
                  const std::vector<Integer>& primes) {
  RationalPoint a1 = point_add(e, aux, gen);
  RationalPoint a2 = point_add(e, aux, q_s);
  RationalPoint a3 = point_add(e, a1, q_s);
  return unit_everywhere(e, aux, primes) && unit_everywhere(e, a1, primes) &&
         unit_everywhere(e, a2, primes) && unit_everywhere(e, a3, primes);
}

} // namespace

RationalPoint choose_auxiliary_point(const WeierstrassCurve& e,
                                     const RationalPoint& gen,
                                     const RationalPoint& q_s,
                                     const std::vector<Integer>& primes,
                                     const std::vector<RationalPoint>& torsion) {
  Integer bound = 4;
  for (const Integer& p : primes) {
    Integer np = count_points(e, p);
    if (4 * np + 4 > bound) bound = 4 * np + 4;
  }
  RationalPoint kp = RationalPoint::infinity();
  for (Integer k = 1; k <= bound; k++) {
    kp = point_add(e, kp, gen);
    for (const RationalPoint& r : torsion) {
      RationalPoint cand = point_add(e, kp, r);
      if (auxiliary_ok(e, cand, gen, q_s, primes)) return cand;
    }
  }
  throw Error("no auxiliary point avoids the excluded residues");
}

Residue g_of_subset(const WeierstrassCurve& e, const RationalPoint& gen,
                    const RationalPoint& q0,
                    const std::vector<Integer>& subset,
                    const std::vector<RationalPoint>& torsion) {
  if (subset.empty()) return Residue(0, 1);
  Integer mt = 1, nt = 1;
  for (const Integer& p : subset) {
    mt *= p;
    nt *= count_points(e, p);
  }
  RationalPoint qt = scalar_mul(e, nt, q0);
  RationalPoint aux = choose_auxiliary_point(e, gen, qt, subset, torsion);

  RationalPoint s1 = point_add(e, aux, gen);
  RationalPoint s2 = point_add(e, aux, qt);
  RationalPoint s3 = point_add(e, s1, qt);
  Residue numr = Residue(x_denominator(s1), mt) * Residue(x_denominator(s2), mt);
  Residue denr = Residue(x_denominator(aux), mt) * Residue(x_denominator(s3), mt);
  return numr * inverse(denr);
}

Residue y_lift(const Residue& a, const Integer& M) {
  if (mod_floor(M, a.modulus) != 0) throw Error("M' does not divide M");
  Integer b = a.value;
  while (gcd(b, M) != 1) b += a.modulus;
  return mod_pow(Residue(b, M), euler_phi(M / a.modulus));
}

GFunction G_of_S(const WeierstrassCurve& e, const RationalPoint& gen,
                 const RationalPoint& q0, const PrimeSet& s,
                 const std::vector<RationalPoint>& torsion) {
  const size_t k = s.primes.size();
  Residue acc(1, s.M);
  for (size_t mask = 0; mask < (size_t(1) << k); mask++) {
    std::vector<Integer> subset;
    for (size_t i = 0; i < k; i++)
      if (mask & (size_t(1) << i)) subset.push_back(s.primes[i]);
    Residue g = g_of_subset(e, gen, q0, subset, torsion);
    Residue lifted = y_lift(g, s.M);
    // subsets of odd size enter with +1, even size with -1
    Integer expo = (subset.size() % 2 == 1) ? 1 : -1;
    acc = acc * mod_pow(lifted, expo);
  }
  return GFunction{GMElement::from(acc.value, s.M), acc};
}

Verdict verify_set(const WeierstrassCurve& e, const ModularSymbolSpace& space,
                   const InvariantSet& inv, const RationalPoint& gen,
                   const std::vector<RationalPoint>& torsion,
                   const std::vector<Integer>& primes, const Rational& lambda,
                   bool include_trivial, EngineCache* cache) {
  Verdict v;
  v.s = primes;
  std::sort(v.s.begin(), v.s.end());
  v.M = 1;
  for (const Integer& p : v.s) v.M *= p;
  v.exp_left = inv.u * inv.v;
  v.exp_right = inv.sha * inv.coker_phi;

  for (const Integer& p : v.s) {
    if (mod_floor(Integer(space.level()), p) == 0) {
      v.status = VerdictStatus::Skipped;
      v.reason = "bad reduction at " + to_string(p);
      return v;
    }
    Integer ap = trace_of_frobenius(e, p);
    if (mod_floor(ap, p) == 0) {
      v.status = VerdictStatus::Skipped;
      v.reason = "supersingular at " + to_string(p);
      return v;
    }
  }
  bool tiny = std::any_of(v.s.begin(), v.s.end(),
                          [](const Integer& p) { return p <= 3; });
  if (tiny && !include_trivial) {
    v.status = VerdictStatus::Skipped;
    v.reason = "G_M trivial for p <= 3";
    return v;
  }
  if (tiny) {
    // |G_M| = 1: both sides are the identity
    v.lhs = v.rhs = GMElement::identity(v.M);
    v.raw_l = v.raw_g = Residue(1, v.M);
    v.status = VerdictStatus::Pass;
    v.strict_equal = true;
    v.reason = "vacuous (trivial group)";
    return v;
  }

  try {
    PrimeSet ps = make_prime_set(e, v.s, false);
    const SymbolTable* table;
    SymbolTable local_table;
    if (cache) {
      auto it = cache->tables.find(ps.M);
      if (it == cache->tables.end())
        it = cache->tables.emplace(ps.M, symbol_table(space, ps.M)).first;
      table = &it->second;
    } else {
      local_table = symbol_table(space, ps.M);
      table = &local_table;
    }
    ModularElement l = modular_element_l(*table, lambda);

    const GFunction* g;
    GFunction local_g;
    if (cache) {
      auto it = cache->gvalues.find(ps.M);
      if (it == cache->gvalues.end())
        it = cache->gvalues.emplace(ps.M, G_of_S(e, gen, inv.Q, ps, torsion))
                 .first;
      g = &it->second;
    } else {
      local_g = G_of_S(e, gen, inv.Q, ps, torsion);
      g = &local_g;
    }

    v.raw_l = mod_pow(l.raw, v.exp_left);
    v.raw_g = mod_pow(g->raw, v.exp_right);
    v.lhs = l.in_gm.pow(v.exp_left);
    v.rhs = g->in_gm.pow(v.exp_right);
    v.strict_equal = v.raw_l == v.raw_g;
    v.status = v.lhs == v.rhs ? VerdictStatus::Pass : VerdictStatus::Fail;
    if (v.status == VerdictStatus::Fail) v.reason = "lhs != rhs in G_M";
  } catch (const Error& err) {
    v.status = VerdictStatus::Skipped;
    v.reason = err.what();
  }
  return v;
}

const std::vector<Rational>& lambda_candidates() {
  static const std::vector<Rational> c = {
      Rational(1),  Rational(-1),        Rational(2),
      Rational(-2), make_rational(1, 2), make_rational(-1, 2)};
  return c;
}

CurveResult verify_curve(const WeierstrassCurve& e,
                         const ModularSymbolSpace& space,
                         const RationalPoint& gen, const Integer& sha,
                         const VerifyConfig& cfg) {
  InvariantSet inv = compute_invariants(e, gen, sha);
  TorsionSubgroup tors = torsion_subgroup(e);

  // test family: single primes up to the bound, then window subsets
  std::vector<std::vector<Integer>> family;
  std::set<std::vector<Integer>> seen;
  for (long p : primes_up_to(cfg.max_prime)) {
    std::vector<Integer> s = {Integer(p)};
    if (mod_floor(Integer(space.level()), p) == 0) continue;
    if (seen.insert(s).second) family.push_back(s);
  }
  const auto& w = cfg.set_window;
  for (size_t mask = 1; mask < (size_t(1) << w.size()); mask++) {
    std::vector<Integer> s;
    for (size_t i = 0; i < w.size(); i++)
      if (mask & (size_t(1) << i)) s.push_back(Integer(w[i]));
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) < 2 ||
        static_cast<int>(s.size()) > cfg.max_set_size)
      continue;
    if (std::any_of(s.begin(), s.end(), [&](const Integer& p) {
          return mod_floor(Integer(space.level()), p) == 0;
        }))
      continue;
    if (seen.insert(s).second) family.push_back(s);
  }
  std::sort(family.begin(), family.end(),
            [](const std::vector<Integer>& a, const std::vector<Integer>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  // lambda integrality screen over every modulus the family will use
  EngineCache cache;
  std::vector<Rational> usable;
  {
    std::vector<Integer> moduli;
    for (const auto& s : family) {
      bool tiny = std::any_of(s.begin(), s.end(),
                              [](const Integer& p) { return p <= 3; });
      if (tiny) continue; // trivial or skipped either way
      bool ss = false;
      for (const Integer& p : s)
        if (mod_floor(trace_of_frobenius(e, p), p) == 0) ss = true;
      if (ss) continue;
      Integer m = 1;
      for (const Integer& p : s) m *= p;
      moduli.push_back(m);
    }
    std::sort(moduli.begin(), moduli.end());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
    for (const Rational& lam : lambda_candidates()) {
      bool ok = true;
      for (const Integer& m : moduli) {
        auto it = cache.tables.find(m);
        if (it == cache.tables.end())
          it = cache.tables.emplace(m, symbol_table(space, m)).first;
        for (const auto& [a, val] : it->second.values)
          if (den(lam * val) != 1) { ok = false; break; }
        if (!ok) break;
      }
      if (ok) usable.push_back(lam);
    }
  }

  CurveResult best;
  long best_passes = -1;
  for (const Rational& lam : usable) {
    CurveResult res;
    res.lambda = lam;
    res.lambda_found = true;
    long passes = 0;
    bool any_fail = false;
    for (const auto& s : family) {
      Verdict v = verify_set(e, space, inv, gen, tors.points, s, lam,
                             cfg.include_trivial_primes, &cache);
      if (v.status == VerdictStatus::Pass) passes++;
      if (v.status == VerdictStatus::Fail) any_fail = true;
      res.verdicts.push_back(std::move(v));
    }
    res.all_pass = !any_fail;
    if (!any_fail) return res;
    if (passes > best_passes) {
      best_passes = passes;
      best = std::move(res);
    }
  }
  if (best_passes < 0) {
    // no candidate survived the integrality screen
    best.lambda = lambda_candidates().front();
    best.lambda_found = false;
    for (const auto& s : family) {
      Verdict v;
      v.s = s;
      v.M = 1;
      for (const Integer& p : s) v.M *= p;
      v.status = VerdictStatus::Fail;
      v.reason = "no lambda candidate is integral";
      best.verdicts.push_back(std::move(v));
    }
  }
  best.all_pass = false;
  return best;
}

} // namespace mtv
