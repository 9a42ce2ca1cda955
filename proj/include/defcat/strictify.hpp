#pragma once

#include "defcat/lift.hpp"

namespace defcat {

// Strictification of linear deformations: every equivalence of deformations
// into a strict one can be rectified to an isomorphism with exact equality
// of reductions, and every deformation is equivalent to a strict one.

// Given deformations d1, d2 with d2 strict, an equivalence φ: total1 → total2
// and a natural isomorphism η: f1 → f2∘φ, produce φ' isomorphic to φ with
// f2 ∘ φ' = f1 exactly.
template <class K>
struct StrictifiedEquivalence {
  LinFunctor<K> phi_prime;
  std::vector<Mor<K>> mu;  // natural isomorphism φ' -> φ in total2
};

template <class K>
StrictifiedEquivalence<K> strictify_equivalence(const LinearDeformation<K>& d1,
                                                const LinearDeformation<K>& d2, const LinFunctor<K>& phi,
                                                const std::vector<Mor<K>>& eta) {
  if (!d2.strict) throw std::invalid_argument("strictify_equivalence: d2 must be strict");
  auto eta_rep = validate_nat_transform<K>(d1.red, compose_functors<K>(d2.red, phi), eta);
  if (!eta_rep.ok())
    throw std::invalid_argument("strictify_equivalence: eta is not a natural transformation: " +
                                eta_rep.summary());
  const auto& a1 = *d1.total;
  const auto& a2 = *d2.total;
  const auto& b = *d2.reduced;
  const int n = a1.n_objects();
  // invert the object bijections of the strict reductions
  std::vector<int> red2_inv(b.n_objects(), -1);
  for (int x = 0; x < a2.n_objects(); ++x) red2_inv[d2.red.obj[x]] = x;
  StrictifiedEquivalence<K> out;
  out.phi_prime.source = d1.total;
  out.phi_prime.target = d2.total;
  out.phi_prime.obj.resize(n);
  out.mu.resize(n);
  for (int x = 0; x < n; ++x) {
    // φ'(x) is the unique object with f2(φ'(x)) = f1(x)
    int target_obj = red2_inv[d1.red.obj[x]];
    if (target_obj < 0) throw std::domain_error("strictify_equivalence: reduction image missing");
    out.phi_prime.obj[x] = target_obj;
    // lift η_x: f2(φ'(x)) -> f2(φ(x)) through the surjective hom map of f2,
    // then rectify to an exact isomorphism with Prop A.1's iteration
    const Mor<K>& comp = eta[x];
    auto pre = solve<K>(d2.red.mats[target_obj][phi.obj[x]], Mat<K>(comp.v));
    if (!pre) throw std::domain_error("strictify_equivalence: eta component has no lift (f2 not full?)");
    Mor<K> mu0{target_obj, phi.obj[x], pre->col(0)};
    // an inverse of η_x downstairs, lifted as the seed
    auto eta_inv = two_sided_inverse<K>(b, comp);
    if (!eta_inv) throw std::invalid_argument("strictify_equivalence: eta is not an isomorphism");
    auto pre_inv = solve<K>(d2.red.mats[phi.obj[x]][target_obj], Mat<K>(eta_inv->v));
    if (!pre_inv) throw std::domain_error("strictify_equivalence: eta inverse has no lift");
    Mor<K> seed{phi.obj[x], target_obj, pre_inv->col(0)};
    Mor<K> mu_inv = lift_isomorphism<K>(d2, mu0, seed);
    out.mu[x] = mu0;
    (void)mu_inv;
  }
  // φ'(a) = μ_{x'}^{-1} ∘ φ(a) ∘ μ_x
  out.phi_prime.mats.assign(n, std::vector<Mat<K>>(n));
  std::vector<Mor<K>> mu_inverse(n);
  for (int x = 0; x < n; ++x) {
    auto inv = two_sided_inverse<K>(a2, out.mu[x]);
    if (!inv) throw std::domain_error("strictify_equivalence: mu not invertible upstairs");
    mu_inverse[x] = *inv;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Mat<K> m(a2.hom_dim(out.phi_prime.obj[x], out.phi_prime.obj[y]), a1.hom_dim(x, y));
      for (int c = 0; c < a1.hom_dim(x, y); ++c) {
        Mor<K> f = a1.zero_mor(x, y);
        f.v(c) = a1.ring->field.make(1);
        Mor<K> img = a2.compose(mu_inverse[y], a2.compose(phi.apply(f), out.mu[x]));
        m.col(c) = img.v;
      }
      out.phi_prime.mats[x][y] = std::move(m);
    }
  auto fun_rep = validate_functor<K>(out.phi_prime);
  if (!fun_rep.ok())
    throw std::domain_error("strictify_equivalence: φ' is not a functor: " + fun_rep.summary());
  // exact equality f2 ∘ φ' = f1
  LinFunctor<K> f2phi = compose_functors<K>(d2.red, out.phi_prime);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!is_zero_matrix<K>(Mat<K>(f2phi.mats[x][y] - d1.red.mats[x][y])))
        throw std::domain_error("strictify_equivalence: f2 ∘ φ' ≠ f1");
  return out;
}

// Prop B.3's construction: replace a deformation by a strict one on the
// objects of the reduced category, together with the equivalence witness.
template <class K>
struct StrictificationResult {
  LinearDeformation<K> strict;
  LinFunctor<K> phi;       // strict.total -> original total, fully faithful equivalence
  std::vector<Mor<K>> eta; // natural isomorphism strict.red -> original.red ∘ φ
};

template <class K>
StrictificationResult<K> make_strict(const LinearDeformation<K>& d) {
  const auto& a = *d.total;
  const auto& b = *d.reduced;
  const int nb = b.n_objects();
  // g: objects of 𝔟 -> objects of 𝔞 with an isomorphism η_B: B -> f(g(B))
  std::vector<int> g(nb, -1);
  std::vector<Mor<K>> eta(nb);
  for (int bo = 0; bo < nb; ++bo) {
    for (int x = 0; x < a.n_objects() && g[bo] < 0; ++x) {
      if (d.red.obj[x] == bo) {
        g[bo] = x;
        eta[bo] = b.identity_mor(bo);
        break;
      }
      auto iso = find_object_isomorphism<K>(b, bo, d.red.obj[x]);
      if (iso) {
        g[bo] = x;
        eta[bo] = *iso;
      }
    }
    if (g[bo] < 0) throw std::invalid_argument("make_strict: reduction functor is not essentially surjective");
  }
  // 𝔠(B,B') := 𝔞(g(B), g(B')) with the composition of 𝔞
  auto c = std::make_shared<LinCategory<K>>();
  c->ring = a.ring;
  c->objects = b.objects;
  c->rank.assign(nb, std::vector<int>(nb, 0));
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q) c->rank[p][q] = a.rank[g[p]][g[q]];
  for (int p = 0; p < nb; ++p) c->identity.push_back(a.identity[g[p]]);
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q)
      for (int r = 0; r < nb; ++r) {
        const auto* t = a.table(g[p], g[q], g[r]);
        if (t) c->comp[{p, q, r}] = *t;
      }
  // reduction h: 𝔠 -> 𝔟, h(a) = η_{B'}^{-1} ∘ f(a) ∘ η_B
  LinearDeformation<K> out;
  out.theta = d.theta;
  out.total = c;
  out.reduced = d.reduced;
  out.red.source = c;
  out.red.target = d.reduced;
  for (int p = 0; p < nb; ++p) out.red.obj.push_back(p);
  out.red.mats.assign(nb, std::vector<Mat<K>>(nb));
  std::vector<Mor<K>> eta_inv(nb);
  for (int p = 0; p < nb; ++p) {
    auto inv = two_sided_inverse<K>(b, eta[p]);
    if (!inv) throw std::domain_error("make_strict: eta not invertible");
    eta_inv[p] = *inv;
  }
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q) {
      Mat<K> m(b.hom_dim(p, q), c->hom_dim(p, q));
      for (int col = 0; col < c->hom_dim(p, q); ++col) {
        Mor<K> f = c->zero_mor(p, q);
        f.v(col) = a.ring->field.make(1);
        Mor<K> fa{g[p], g[q], f.v};
        Mor<K> img = b.compose(eta_inv[q], b.compose(d.red.apply(fa), eta[p]));
        m.col(col) = img.v;
      }
      out.red.mats[p][q] = std::move(m);
    }
  out.strict = true;
  StrictificationResult<K> res;
  res.strict = out;
  // equivalence witness φ: 𝔠 -> 𝔞 (identity on hom coordinates)
  res.phi.source = c;
  res.phi.target = d.total;
  for (int p = 0; p < nb; ++p) res.phi.obj.push_back(g[p]);
  res.phi.mats.assign(nb, std::vector<Mat<K>>(nb));
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q)
      res.phi.mats[p][q] = Mat<K>::Identity(c->hom_dim(p, q), c->hom_dim(p, q));
  res.eta = eta;
  return res;
}

// ---------------------------------------------------------------------------
// a non-strict fixture used by tests and the CLI demo: duplicate an object
// of the total category so the reduction cannot be bijective on objects
// ---------------------------------------------------------------------------

template <class K>
LinearDeformation<K> duplicate_object_deformation(const LinearDeformation<K>& d, int obj) {
  const auto& a = *d.total;
  const int n = a.n_objects();
  auto big = std::make_shared<LinCategory<K>>();
  big->ring = a.ring;
  big->objects = a.objects;
  big->objects.push_back(a.objects[obj] + "_copy");
  auto src = [&](int x) { return x < n ? x : obj; };
  big->rank.assign(n + 1, std::vector<int>(n + 1, 0));
  for (int x = 0; x <= n; ++x)
    for (int y = 0; y <= n; ++y) big->rank[x][y] = a.rank[src(x)][src(y)];
  for (int x = 0; x <= n; ++x) big->identity.push_back(a.identity[src(x)]);
  for (int x = 0; x <= n; ++x)
    for (int y = 0; y <= n; ++y)
      for (int z = 0; z <= n; ++z) {
        const auto* t = a.table(src(x), src(y), src(z));
        if (t) big->comp[{x, y, z}] = *t;
      }
  LinearDeformation<K> out;
  out.theta = d.theta;
  out.total = big;
  out.reduced = d.reduced;
  out.red.source = big;
  out.red.target = d.reduced;
  for (int x = 0; x <= n; ++x) out.red.obj.push_back(d.red.obj[src(x)]);
  out.red.mats.assign(n + 1, std::vector<Mat<K>>(n + 1));
  for (int x = 0; x <= n; ++x)
    for (int y = 0; y <= n; ++y) out.red.mats[x][y] = d.red.mats[src(x)][src(y)];
  out.strict = false;
  return out;
}

}  // namespace defcat
