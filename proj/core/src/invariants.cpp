#include "mtv/curve.hpp"

#include <algorithm>

namespace mtv {

InvariantSet compute_invariants(const WeierstrassCurve& e,
                                const RationalPoint& gen, const Integer& sha) {
  if (gen.at_infinity || !on_curve(e, gen))
    throw Error("generator must be an affine point on the curve");
  if (sha < 1) throw Error("sha must be >= 1");

  InvariantSet inv;
  inv.sha = sha;

  std::vector<Integer> bad;
  inv.C = 1;
  for (const Integer& p : e.bad_primes()) {
    ReductionData rd = classify_reduction(e, p);
    inv.C *= rd.cp;
    inv.bad_reduction.push_back(rd);
    bad.push_back(p);
  }

  TorsionSubgroup tors = torsion_subgroup(e);
  inv.u = tors.order;
  inv.v = 0;
  for (const RationalPoint& t : tors.points)
    if (is_in_E0(e, t, bad)) inv.v += 1;

  // mu = min{j > 0 : jP + R in E0 for some torsion R}; bounded by C since
  // E/E0 injects into the product of the component groups.
  inv.mu = 0;
  RationalPoint jp = RationalPoint::infinity();
  for (Integer j = 1; j <= inv.C; j++) {
    jp = point_add(e, jp, gen);
    for (const RationalPoint& r : tors.points) {
      RationalPoint cand = point_add(e, jp, r);
      if (is_in_E0(e, cand, bad)) {
        inv.mu = j;
        inv.Q = cand;
        break;
      }
    }
    if (inv.mu != 0) break;
  }
  if (inv.mu == 0)
    throw InternalError("no j <= C with jP + R in E0 (violates #(E/E0) | C)");

  Integer mu_u = inv.mu * inv.u;
  if (mod_floor(mu_u, inv.v) != 0)
    throw InternalError("v does not divide mu*u");
  inv.index_e_e0 = mu_u / inv.v;
  if (mod_floor(inv.C, inv.index_e_e0) != 0)
    throw InternalError("#(E/E0) does not divide C");
  inv.coker_phi = inv.C / inv.index_e_e0;
  return inv;
}

} // namespace mtv
