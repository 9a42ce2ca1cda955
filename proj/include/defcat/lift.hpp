#pragma once

#include "defcat/lincat.hpp"

namespace defcat {

// Transport of structure through a flat nilpotent linear deformation:
// explicit corrections that turn reduction-level data into exact data in the
// total category.  Each correction gains one order-2 stage per application;
// iteration counts are bounded by the nilpotency order.

template <class K>
int deformation_order(const LinearDeformation<K>& d) {
  return nilpotency_order<K>(d.theta);
}

// g0 reduces to a two-sided inverse of the reduction of f; returns an exact
// two-sided inverse of f.  Newton update g <- 2g - g∘f∘g doubles the order
// of correctness, so ⌈log2 n⌉ stages suffice.
template <class K>
Mor<K> lift_isomorphism(const LinearDeformation<K>& d, const Mor<K>& f, const Mor<K>& g0) {
  const auto& a = *d.total;
  const auto& b = *d.reduced;
  Mor<K> rf = d.red.apply(f), rg = d.red.apply(g0);
  if (!is_zero_matrix<K>(Mat<K>(b.compose(rg, rf).v - b.identity[rf.src])) ||
      !is_zero_matrix<K>(Mat<K>(b.compose(rf, rg).v - b.identity[rf.dst])))
    throw std::invalid_argument("lift_isomorphism: g0 is not an inverse modulo the kernel");
  Mor<K> g = g0;
  int order = deformation_order<K>(d);
  int stages = 1;
  while ((1 << stages) < 2 * order) ++stages;
  for (int it = 0; it <= stages; ++it) {
    Vec<K> gf = a.compose(g, f).v;
    Vec<K> fg = a.compose(f, g).v;
    if (is_zero_matrix<K>(Mat<K>(gf - a.identity[f.src])) &&
        is_zero_matrix<K>(Mat<K>(fg - a.identity[f.dst]))) return g;
    // g <- 2g - g∘f∘g
    Mor<K> gfg = a.compose(g, a.compose(f, g));
    g.v = K(2) * g.v - gfg.v;
  }
  Vec<K> gf = a.compose(g, f).v;
  Vec<K> fg = a.compose(f, g).v;
  if (is_zero_matrix<K>(Mat<K>(gf - a.identity[f.src])) &&
      is_zero_matrix<K>(Mat<K>(fg - a.identity[f.dst]))) return g;
  throw std::domain_error("lift_isomorphism: iteration did not converge (internal invariant)");
}

// Z is a zero object iff its reduction is: all reduced homs in and out vanish
template <class K>
struct ZeroObjectReport {
  bool reduced_zero = true;
  bool total_zero = true;  // must agree for flat deformations (Nakayama)
};

template <class K>
ZeroObjectReport<K> is_zero_object(const LinearDeformation<K>& d, int z) {
  ZeroObjectReport<K> rep;
  const auto& b = *d.reduced;
  const auto& a = *d.total;
  int rz = d.red.obj[z];
  for (int x = 0; x < b.n_objects(); ++x) {
    rep.reduced_zero = rep.reduced_zero && b.hom_dim(x, rz) == 0 && b.hom_dim(rz, x) == 0;
    rep.total_zero = rep.total_zero && a.hom_dim(x, z) == 0 && a.hom_dim(z, x) == 0;
  }
  return rep;
}

// (r0, s0) split the reduction of the idempotent e; corrections
// s <- s + e∘s - s∘r∘s,  r <- r∘e  give an exact splitting s∘r = e, r∘s = 1.
template <class K>
std::pair<Mor<K>, Mor<K>> split_idempotent_lift(const LinearDeformation<K>& d, const Mor<K>& e,
                                                const Mor<K>& r0, const Mor<K>& s0) {
  const auto& a = *d.total;
  const auto& b = *d.reduced;
  if (!is_zero_matrix<K>(Mat<K>(a.compose(e, e).v - e.v)))
    throw std::invalid_argument("split_idempotent_lift: e is not idempotent");
  Mor<K> re = d.red.apply(e), rr = d.red.apply(r0), rs = d.red.apply(s0);
  if (!is_zero_matrix<K>(Mat<K>(b.compose(rs, rr).v - re.v)) ||
      !is_zero_matrix<K>(Mat<K>(b.compose(rr, rs).v - b.identity[rr.dst])))
    throw std::invalid_argument("split_idempotent_lift: (r0, s0) do not split the reduction");
  Mor<K> r = r0, s = s0;
  int order = deformation_order<K>(d);
  for (int it = 0; it <= order + 1; ++it) {
    Vec<K> sr = a.compose(s, r).v;
    Vec<K> rsv = a.compose(r, s).v;
    if (is_zero_matrix<K>(Mat<K>(sr - e.v)) &&
        is_zero_matrix<K>(Mat<K>(rsv - a.identity[r.dst]))) return {r, s};
    Mor<K> srs = a.compose(s, a.compose(r, s));
    Mor<K> es = a.compose(e, s);
    Mor<K> s1 = s;
    s1.v = s.v + es.v - srs.v;
    Mor<K> r1 = a.compose(r, e);
    s = s1;
    r = r1;
  }
  Vec<K> sr = a.compose(s, r).v;
  Vec<K> rsv = a.compose(r, s).v;
  if (is_zero_matrix<K>(Mat<K>(sr - e.v)) && is_zero_matrix<K>(Mat<K>(rsv - a.identity[r.dst])))
    return {r, s};
  throw std::domain_error("split_idempotent_lift: iteration did not converge (internal invariant)");
}

// (s1: A→C, s2: B→C) with projections lifting a reduction biproduct; the
// corrections p1' = 2p1 - p1∘s1∘p1 - p1∘s2∘p2 (and symmetrically) make
// (C, s1, s2, p1', p2') an exact biproduct.
template <class K>
struct BiproductResult {
  Mor<K> p1, p2;
};

template <class K>
bool biproduct_equations_hold(const LinCategory<K>& c, const Mor<K>& s1, const Mor<K>& s2, const Mor<K>& p1,
                              const Mor<K>& p2) {
  return is_zero_matrix<K>(Mat<K>(c.compose(p1, s1).v - c.identity[s1.src])) &&
         is_zero_matrix<K>(Mat<K>(c.compose(p2, s2).v - c.identity[s2.src])) &&
         is_zero_matrix<K>(Mat<K>(c.compose(p1, s2).v)) &&
         is_zero_matrix<K>(Mat<K>(c.compose(p2, s1).v)) &&
         is_zero_matrix<K>(
             Mat<K>(c.compose(s1, p1).v + c.compose(s2, p2).v - c.identity[s1.dst]));
}

template <class K>
BiproductResult<K> lift_biproduct(const LinearDeformation<K>& d, const Mor<K>& s1, const Mor<K>& s2,
                                  const Mor<K>& p10, const Mor<K>& p20) {
  const auto& a = *d.total;
  const auto& b = *d.reduced;
  if (!biproduct_equations_hold<K>(b, d.red.apply(s1), d.red.apply(s2), d.red.apply(p10), d.red.apply(p20)))
    throw std::invalid_argument("lift_biproduct: reduction data is not a biproduct");
  Mor<K> p1 = p10, p2 = p20;
  int order = deformation_order<K>(d);
  for (int it = 0; it <= order + 1; ++it) {
    if (biproduct_equations_hold<K>(a, s1, s2, p1, p2)) return {p1, p2};
    Mor<K> n1 = p1, n2 = p2;
    n1.v = K(2) * p1.v - a.compose(p1, a.compose(s1, p1)).v - a.compose(p1, a.compose(s2, p2)).v;
    n2.v = K(2) * p2.v - a.compose(p2, a.compose(s2, p2)).v - a.compose(p2, a.compose(s1, p1)).v;
    p1 = n1;
    p2 = n2;
  }
  if (biproduct_equations_hold<K>(a, s1, s2, p1, p2)) return {p1, p2};
  throw std::domain_error("lift_biproduct: iteration did not converge (internal invariant)");
}

// enumeration of idempotents in a hom algebra (small dimensions only):
// all solutions of e∘e = e with coordinates in the prime field
inline long long pow_ll(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

template <class K>
std::vector<Mor<K>> enumerate_idempotents(const LinCategory<K>& c, int x, long long limit = 100000) {
  std::vector<Mor<K>> out;
  const int dim = c.hom_dim(x, x);
  long long p = c.ring->field.characteristic();
  if (p == 0 || pow_ll(p, dim) > limit)
    throw std::domain_error("enumerate_idempotents: search space too large");
  Vec<K> coords = Vec<K>::Zero(dim);
  std::vector<int> digits(dim, 0);
  long long total = pow_ll(p, dim);
  for (long long t = 0; t < total; ++t) {
    Mor<K> e{x, x, coords};
    for (int i = 0; i < dim; ++i) e.v(i) = c.ring->field.make(digits[i]);
    if (is_zero_matrix<K>(Mat<K>(c.compose(e, e).v - e.v))) out.push_back(e);
    for (int i = 0; i < dim; ++i) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace defcat
