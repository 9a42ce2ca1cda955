#pragma once

#include "defcat/presentation.hpp"

#include <string>
#include <vector>

namespace defcat {

// Matrix with entries in a base ring R; entries are coordinate vectors.
template <class K>
struct RingMat {
  int rows = 0, cols = 0;
  std::vector<Vec<K>> e;  // row-major

  RingMat() = default;
  RingMat(int r, int c, const BaseRing<K>& ring) : rows(r), cols(c) {
    e.assign((size_t)r * c, ring.zero());
  }
  Vec<K>& at(int i, int j) { return e[(size_t)i * cols + j]; }
  const Vec<K>& at(int i, int j) const { return e[(size_t)i * cols + j]; }
};

// k-linear expansion of the map R^cols -> R^rows given by the matrix.
template <class K>
Mat<K> expand(const BaseRing<K>& ring, const RingMat<K>& m) {
  const int d = ring.dim();
  Mat<K> big = Mat<K>::Zero(m.rows * d, m.cols * d);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) big.block(i * d, j * d, d, d) = ring.lmul(m.at(i, j));
  return big;
}

// Finitely presented R-module: coker(R^cols -> R^rows).
template <class K>
struct FpModule {
  RingPtr<K> ring;
  RingMat<K> pres;

  static FpModule free_module(const RingPtr<K>& r, int rank) {
    FpModule m;
    m.ring = r;
    m.pres = RingMat<K>(rank, 0, *r);
    return m;
  }
  // residue field k = R/m
  static FpModule residue_field(const RingPtr<K>& r) {
    FpModule m;
    m.ring = r;
    m.pres = RingMat<K>(1, r->dim() - 1, *r);
    for (int j = 1; j < r->dim(); ++j) m.pres.at(0, j - 1) = r->gen(j);
    return m;
  }
};

template <class K>
ValidationReport validate_fp_module(const FpModule<K>& m) {
  ValidationReport rep;
  if ((int)m.pres.e.size() != m.pres.rows * m.pres.cols) rep.fail("presentation entry count mismatch");
  for (const auto& v : m.pres.e)
    if ((int)v.size() != m.ring->dim()) rep.fail("presentation entry has wrong coordinate length");
  return rep;
}

// ring-module computations route through the algebra engine with the single
// idempotent 1 (covers are free modules) and radical = maximal ideal
template <class K>
struct RingModuleContext {
  RingPtr<K> ring;
  AlgebraPtr<K> alg;
  std::vector<Vec<K>> idems;
  Mat<K> radical;

  explicit RingModuleContext(const RingPtr<K>& r)
      : ring(r), alg(algebra_from_ring<K>(r)), idems{r->one()}, radical(r->max_ideal_basis()) {}
};

template <class K>
Presentation<K> to_presentation(const RingModuleContext<K>& ctx, const FpModule<K>& m) {
  Presentation<K> p;
  p.alg = ctx.alg;
  p.gens.assign(m.pres.rows, ctx.ring->one());
  p.rels.assign(m.pres.cols, ctx.ring->one());
  p.delta.assign(m.pres.rows, std::vector<Vec<K>>(m.pres.cols));
  for (int i = 0; i < m.pres.rows; ++i)
    for (int j = 0; j < m.pres.cols; ++j) p.delta[i][j] = m.pres.at(i, j);
  return p;
}

template <class K>
FpModule<K> from_presentation(const RingPtr<K>& ring, const Presentation<K>& p) {
  FpModule<K> m;
  m.ring = ring;
  m.pres = RingMat<K>((int)p.gens.size(), (int)p.rels.size(), *ring);
  for (int i = 0; i < m.pres.rows; ++i)
    for (int j = 0; j < m.pres.cols; ++j) m.pres.at(i, j) = p.delta[i][j];
  return m;
}

template <class K>
ConcretePresentation<K> concrete_module(const RingModuleContext<K>& ctx, const FpModule<K>& m) {
  return presentation_to_concrete<K>(to_presentation(ctx, m));
}

template <class K>
int k_dimension(const RingModuleContext<K>& ctx, const FpModule<K>& m) {
  Mat<K> big = expand(*ctx.ring, m.pres);
  return m.pres.rows * ctx.ring->dim() - rank_of<K>(big);
}

// minimal presentation of a concrete R-module
template <class K>
FpModule<K> minimal_fp_module(const RingModuleContext<K>& ctx, const AlgebraModule<K>& v) {
  auto pr = minimal_presentation<K>(v, ctx.idems, ctx.radical);
  return from_presentation<K>(ctx.ring, pr.pres);
}

// ---------------------------------------------------------------------------
// resolutions, Tor, Ext
// ---------------------------------------------------------------------------

template <class K>
struct FreeResolution {
  std::vector<int> ranks;               // ranks of P_0, P_1, ...
  std::vector<RingMat<K>> differentials;  // d_t: P_t -> P_{t-1}
  bool complete = false;                // true when the last kernel is zero
};

template <class K>
FreeResolution<K> minimal_free_resolution(const RingModuleContext<K>& ctx, const FpModule<K>& m,
                                          int length) {
  auto cp = concrete_module<K>(ctx, m);
  Resolution<K> res = resolve<K>(cp.mod, ctx.idems, ctx.radical, length);
  FreeResolution<K> fr;
  for (const auto& c : res.covers) fr.ranks.push_back(c.summands());
  const int d = ctx.ring->dim();
  (void)d;
  for (const auto& entries : res.delta) {
    RingMat<K> dm((int)entries.size(), entries.empty() ? 0 : (int)entries[0].size(), *ctx.ring);
    for (int i = 0; i < dm.rows; ++i)
      for (int j = 0; j < dm.cols; ++j) dm.at(i, j) = entries[i][j];
    fr.differentials.push_back(std::move(dm));
  }
  fr.complete = res.last_kernel.cols() == 0;
  // trim trailing zero-rank covers
  while (fr.ranks.size() > 1 && fr.ranks.back() == 0) {
    fr.ranks.pop_back();
    if (!fr.differentials.empty()) fr.differentials.pop_back();
  }
  return fr;
}

// does every entry of the matrix lie in the maximal ideal?
template <class K>
bool entries_in_max_ideal(const RingMat<K>& m) {
  for (const auto& v : m.e)
    if (!v(0).is_zero()) return false;
  return true;
}

template <class K>
FpModule<K> tensor_product(const FpModule<K>& x, const FpModule<K>& m) {
  if (x.ring != m.ring && x.ring->dim() != m.ring->dim())
    throw std::invalid_argument("tensor_product: ring mismatch");
  const auto& ring = *x.ring;
  const int p1 = x.pres.rows, q1 = x.pres.cols, p2 = m.pres.rows, q2 = m.pres.cols;
  FpModule<K> t;
  t.ring = x.ring;
  t.pres = RingMat<K>(p1 * p2, q1 * p2 + p1 * q2, ring);
  // block P ⊗ I
  for (int a = 0; a < p1; ++a)
    for (int c = 0; c < q1; ++c)
      for (int b = 0; b < p2; ++b) t.pres.at(a * p2 + b, c * p2 + b) = x.pres.at(a, c);
  // block I ⊗ Q
  for (int a = 0; a < p1; ++a)
    for (int b = 0; b < p2; ++b)
      for (int c = 0; c < q2; ++c) t.pres.at(a * p2 + b, q1 * p2 + a * q2 + c) = m.pres.at(b, c);
  return t;
}

// Hom_R(X, M) as a concrete R-module: kernel of the relation constraints on
// tuples of images of X's generators.
template <class K>
struct HomModule {
  AlgebraModule<K> mod;   // over R
  Mat<K> element_basis;   // columns: stacked (m_a)_a coordinates, a < X.gens
  ConcretePresentation<K> target;  // concrete model of M used
};

template <class K>
HomModule<K> hom_module(const RingModuleContext<K>& ctx, const FpModule<K>& x, const FpModule<K>& m) {
  HomModule<K> h;
  h.target = concrete_module<K>(ctx, m);
  const int md = h.target.mod.dim;
  const int p1 = x.pres.rows, q1 = x.pres.cols;
  Mat<K> sys = Mat<K>::Zero(q1 * md, p1 * md);
  for (int j = 0; j < q1; ++j)
    for (int a = 0; a < p1; ++a)
      sys.block(j * md, a * md, md, md) = h.target.mod.act_of(x.pres.at(a, j));
  h.element_basis = kernel_basis<K>(sys);
  // R acts componentwise
  h.mod.alg = ctx.alg;
  h.mod.dim = (int)h.element_basis.cols();
  h.mod.act.resize(ctx.alg->dim());
  for (int g = 0; g < ctx.alg->dim(); ++g) {
    Mat<K> big = Mat<K>::Zero(p1 * md, p1 * md);
    for (int a = 0; a < p1; ++a) big.block(a * md, a * md, md, md) = h.target.mod.act[g];
    auto coords = solve<K>(h.element_basis, Mat<K>(big * h.element_basis));
    if (!coords) throw std::domain_error("hom_module: hom space not R-invariant");
    h.mod.act[g] = *coords;
  }
  return h;
}

template <class K>
FpModule<K> hom_fp(const RingModuleContext<K>& ctx, const FpModule<K>& x, const FpModule<K>& m) {
  return minimal_fp_module<K>(ctx, hom_module<K>(ctx, x, m).mod);
}

// RingMat differentials of a minimal resolution, as maps applied to a module
template <class K>
AlgebraModule<K> tor_module(const RingModuleContext<K>& ctx, int i, const FpModule<K>& x,
                            const FpModule<K>& m) {
  if (i == 0) {
    auto t = tensor_product<K>(x, m);
    return concrete_module<K>(ctx, t).mod;
  }
  FreeResolution<K> res = minimal_free_resolution<K>(ctx, x, i + 1);
  auto mc = concrete_module<K>(ctx, m);
  const int md = mc.mod.dim;
  auto ranks_at = [&](int t) { return t < (int)res.ranks.size() ? res.ranks[t] : 0; };
  auto expanded = [&](int t) {  // d_t ⊗ M : M^{r_t} -> M^{r_{t-1}}
    if (t >= (int)res.differentials.size() + 1 || t < 1 || ranks_at(t) == 0)
      return Mat<K>(Mat<K>::Zero(ranks_at(t - 1) * md, ranks_at(t) * md));
    const RingMat<K>& dm = res.differentials[t - 1];
    Mat<K> big = Mat<K>::Zero(dm.rows * md, dm.cols * md);
    for (int a = 0; a < dm.rows; ++a)
      for (int b = 0; b < dm.cols; ++b) big.block(a * md, b * md, md, md) = mc.mod.act_of(dm.at(a, b));
    return big;
  };
  AlgebraModule<K> space;
  space.alg = ctx.alg;
  space.dim = ranks_at(i) * md;
  space.act.resize(ctx.alg->dim());
  for (int g = 0; g < ctx.alg->dim(); ++g) {
    space.act[g] = Mat<K>::Zero(space.dim, space.dim);
    for (int a = 0; a < ranks_at(i); ++a) space.act[g].block(a * md, a * md, md, md) = mc.mod.act[g];
  }
  Mat<K> d_out = expanded(i);      // C_i -> C_{i-1}
  Mat<K> d_in = expanded(i + 1);   // C_{i+1} -> C_i
  return homology_at<K>(space, d_in, d_out).mod;
}

template <class K>
AlgebraModule<K> ext_module(const RingModuleContext<K>& ctx, int i, const FpModule<K>& x,
                            const FpModule<K>& m) {
  if (i == 0) return hom_module<K>(ctx, x, m).mod;
  FreeResolution<K> res = minimal_free_resolution<K>(ctx, x, i + 1);
  auto mc = concrete_module<K>(ctx, m);
  const int md = mc.mod.dim;
  auto ranks_at = [&](int t) { return t < (int)res.ranks.size() ? res.ranks[t] : 0; };
  // Hom(P_t, M) = M^{r_t}; Hom(d_t): M^{r_{t-1}} -> M^{r_t}
  auto expanded = [&](int t) {
    if (t >= (int)res.differentials.size() + 1 || t < 1 || ranks_at(t) == 0)
      return Mat<K>(Mat<K>::Zero(ranks_at(t) * md, ranks_at(t - 1) * md));
    const RingMat<K>& dm = res.differentials[t - 1];
    Mat<K> big = Mat<K>::Zero(dm.cols * md, dm.rows * md);
    for (int a = 0; a < dm.rows; ++a)
      for (int b = 0; b < dm.cols; ++b) big.block(b * md, a * md, md, md) = mc.mod.act_of(dm.at(a, b));
    return big;
  };
  AlgebraModule<K> space;
  space.alg = ctx.alg;
  space.dim = ranks_at(i) * md;
  space.act.resize(ctx.alg->dim());
  for (int g = 0; g < ctx.alg->dim(); ++g) {
    space.act[g] = Mat<K>::Zero(space.dim, space.dim);
    for (int a = 0; a < ranks_at(i); ++a) space.act[g].block(a * md, a * md, md, md) = mc.mod.act[g];
  }
  Mat<K> d_in = expanded(i);       // Hom(P_{i-1},M) -> Hom(P_i,M)
  Mat<K> d_out = expanded(i + 1);  // Hom(P_i,M) -> Hom(P_{i+1},M)
  return homology_at<K>(space, d_in, d_out).mod;
}

template <class K>
FpModule<K> tor_fp(const RingModuleContext<K>& ctx, int i, const FpModule<K>& x, const FpModule<K>& m) {
  if (i == 0) return tensor_product<K>(x, m);
  return minimal_fp_module<K>(ctx, tor_module<K>(ctx, i, x, m));
}

template <class K>
FpModule<K> ext_fp(const RingModuleContext<K>& ctx, int i, const FpModule<K>& x, const FpModule<K>& m) {
  return minimal_fp_module<K>(ctx, ext_module<K>(ctx, i, x, m));
}

template <class K>
int tor_dim(const RingModuleContext<K>& ctx, int i, const FpModule<K>& x, const FpModule<K>& m) {
  return tor_module<K>(ctx, i, x, m).dim;
}

template <class K>
int ext_dim(const RingModuleContext<K>& ctx, int i, const FpModule<K>& x, const FpModule<K>& m) {
  return ext_module<K>(ctx, i, x, m).dim;
}

// local Artinian: flat ⟺ Tor_1(k, M) = 0 ⟺ free
template <class K>
bool is_flat(const RingModuleContext<K>& ctx, const FpModule<K>& m) {
  return tor_dim<K>(ctx, 1, FpModule<K>::residue_field(ctx.ring), m) == 0;
}

// coflat ⟺ the k-linear dual is flat (Matlis duality at finite scale)
template <class K>
bool is_coflat(const RingModuleContext<K>& ctx, const FpModule<K>& m) {
  auto mc = concrete_module<K>(ctx, m);
  AlgebraModule<K> dual;
  dual.alg = ctx.alg;
  dual.dim = mc.mod.dim;
  dual.act.resize(ctx.alg->dim());
  for (int g = 0; g < ctx.alg->dim(); ++g) dual.act[g] = mc.mod.act[g].transpose();
  FpModule<K> dual_fp = minimal_fp_module<K>(ctx, dual);
  return is_flat<K>(ctx, dual_fp);
}

// k-linear dual as an fp module (R commutative, so the dual is again an
// R-module with the transposed action)
template <class K>
FpModule<K> dual_fp_module(const RingModuleContext<K>& ctx, const FpModule<K>& m) {
  auto mc = concrete_module<K>(ctx, m);
  AlgebraModule<K> dual;
  dual.alg = ctx.alg;
  dual.dim = mc.mod.dim;
  dual.act.resize(ctx.alg->dim());
  for (int g = 0; g < ctx.alg->dim(); ++g) dual.act[g] = mc.mod.act[g].transpose();
  return minimal_fp_module<K>(ctx, dual);
}

// Map of fp modules: a lift on free covers together with the witness on
// relation covers; lift * P_src = P_dst * witness holds exactly.
template <class K>
struct ModuleMap {
  FpModule<K> source, target;
  RingMat<K> lift;     // target.rows x source.rows
  RingMat<K> witness;  // target.cols x source.cols
};

template <class K>
ValidationReport validate_module_map(const ModuleMap<K>& f) {
  ValidationReport rep;
  const auto& ring = *f.source.ring;
  Mat<K> lhs = expand(ring, f.lift) * expand(ring, f.source.pres);
  Mat<K> rhs = expand(ring, f.target.pres) * expand(ring, f.witness);
  if (!is_zero_matrix<K>(Mat<K>(lhs - rhs))) rep.fail("lift does not carry relations to relations");
  return rep;
}

template <class K>
RingMat<K> ring_mat_mul(const BaseRing<K>& ring, const RingMat<K>& a, const RingMat<K>& b) {
  if (a.cols != b.rows) throw std::invalid_argument("ring_mat_mul: shape mismatch");
  RingMat<K> r(a.rows, b.cols, ring);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      for (int t = 0; t < a.cols; ++t) r.at(i, j) += ring.mul(a.at(i, t), b.at(t, j));
  return r;
}

// solve for a witness making `lift` a well-defined map; nullopt if the lift
// does not descend
template <class K>
std::optional<ModuleMap<K>> make_module_map(const RingModuleContext<K>& ctx, const FpModule<K>& src,
                                            const FpModule<K>& dst, const RingMat<K>& lift) {
  const auto& ring = *ctx.ring;
  const int d = ring.dim();
  const int q2 = dst.pres.cols, q1 = src.pres.cols;
  RingMat<K> need = ring_mat_mul<K>(ring, lift, src.pres);  // p2 x q1 over R
  // solve P2 * w_c = n_c columnwise in flattened coordinates
  Mat<K> rhs(dst.pres.rows * d, q1);
  for (int c = 0; c < q1; ++c)
    for (int b = 0; b < dst.pres.rows; ++b) rhs.col(c).segment(b * d, d) = need.at(b, c);
  auto sol = solve<K>(expand(ring, dst.pres), rhs);
  if (!sol) return std::nullopt;
  ModuleMap<K> f;
  f.source = src;
  f.target = dst;
  f.lift = lift;
  f.witness = RingMat<K>(q2, q1, ring);
  for (int b = 0; b < q2; ++b)
    for (int c = 0; c < q1; ++c) f.witness.at(b, c) = sol->col(c).segment(b * d, d);
  if (!validate_module_map<K>(f).ok()) return std::nullopt;
  return f;
}

}  // namespace defcat
