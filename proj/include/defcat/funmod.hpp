#pragma once

#include "defcat/lincat.hpp"

#include <optional>

namespace defcat {

// Derived data for functor-module computations over a finite linear
// category: the total category algebra Λ(𝔞) = ⊕ 𝔞(x,y), its object
// idempotents, the central embedding of the base ring, and the radical.
template <class K>
struct CatContext {
  CatPtr<K> cat;
  AlgebraPtr<K> lambda;
  AlgebraPtr<K> ring_alg;            // base ring as an algebra
  std::vector<Vec<K>> obj_idems;     // id_x embedded in Λ
  Mat<K> iota;                       // central embedding R -> Λ (dim Λ x dim R)
  Mat<K> radical;                    // rad Λ
  std::vector<int> arrow_offset;     // flat offset of the (x,y) block, -1 if empty
  std::vector<Vec<K>> ring_idems;    // {1_R} for coefficient-module computations

  int n_objects() const { return cat->n_objects(); }
  int block(int x, int y) const { return arrow_offset[x * n_objects() + y]; }

  // embed a morphism into Λ coordinates
  Vec<K> embed(const Mor<K>& f) const {
    Vec<K> v = Vec<K>::Zero(lambda->dim());
    int off = block(f.src, f.dst);
    if (off >= 0 && f.v.size() > 0) v.segment(off, f.v.size()) = f.v;
    return v;
  }
  Mor<K> extract(const Vec<K>& v, int x, int y) const {
    Mor<K> f = cat->zero_mor(x, y);
    int off = block(x, y);
    if (off >= 0 && f.v.size() > 0) f.v = v.segment(off, f.v.size());
    return f;
  }
};

template <class K>
using CatCtxPtr = std::shared_ptr<const CatContext<K>>;

template <class K>
CatCtxPtr<K> make_context(const CatPtr<K>& cat) {
  auto ctx = std::make_shared<CatContext<K>>();
  ctx->cat = cat;
  const int n = cat->n_objects();
  const int d = cat->ring->dim();
  ctx->arrow_offset.assign(n * n, -1);
  int total = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (cat->hom_dim(x, y) == 0) continue;
      ctx->arrow_offset[x * n + y] = total;
      total += cat->hom_dim(x, y);
    }
  auto alg = std::make_shared<Algebra<K>>();
  alg->field = cat->ring->field;
  alg->lmul.assign(total, Mat<K>::Zero(total, total));
  // basis of the (x,y) block: flat morphism coordinates
  auto basis_mor_of = [&](int x, int y, int c) {
    Mor<K> f = cat->zero_mor(x, y);
    f.v(c) = cat->ring->field.make(1);
    return f;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int offxy = ctx->arrow_offset[x * n + y];
      if (offxy < 0) continue;
      for (int c = 0; c < cat->hom_dim(x, y); ++c) {
        Mor<K> g = basis_mor_of(x, y, c);
        // left multiplication by g on every block (w, x):  g ∘ (-)
        for (int w = 0; w < n; ++w) {
          int offwx = ctx->arrow_offset[w * n + x];
          if (offwx < 0) continue;
          int offwy = ctx->arrow_offset[w * n + y];
          Mat<K> post = cat->postcompose_matrix(g, w);  // Hom(w,x) -> Hom(w,y)
          if (offwy < 0) {
            if (!is_zero_matrix<K>(post))
              throw std::domain_error("make_context: composition lands in an empty hom");
            continue;
          }
          alg->lmul[offxy + c].block(offwy, offwx, cat->hom_dim(w, y), cat->hom_dim(w, x)) = post;
        }
      }
    }
  alg->unit = Vec<K>::Zero(total);
  for (int x = 0; x < n; ++x) {
    int off = ctx->arrow_offset[x * n + x];
    if (off >= 0) alg->unit.segment(off, cat->hom_dim(x, x)) = cat->identity[x];
  }
  ctx->lambda = alg;
  ctx->ring_alg = algebra_from_ring<K>(cat->ring);
  for (int x = 0; x < n; ++x) {
    Mor<K> idm = cat->identity_mor(x);
    ctx->obj_idems.push_back(ctx->embed(idm));
  }
  ctx->iota = Mat<K>::Zero(total, d);
  for (int i = 0; i < d; ++i) {
    Vec<K> v = Vec<K>::Zero(total);
    for (int x = 0; x < n; ++x) {
      Mor<K> scaled{x, x, r_scale(*cat->ring, cat->ring->gen(i), cat->identity[x])};
      v += ctx->embed(scaled);
    }
    ctx->iota.col(i) = v;
  }
  ctx->radical = radical_basis<K>(*alg);
  ctx->ring_idems = {cat->ring->one()};
  return ctx;
}

// view a Λ-invariant subspace of a Λ-module as an R-module via the central
// embedding; basis columns give the coordinates
template <class K>
AlgebraModule<K> coefficient_module(const CatContext<K>& ctx, const AlgebraModule<K>& v, const Mat<K>& basis) {
  AlgebraModule<K> m;
  m.alg = ctx.ring_alg;
  m.dim = (int)basis.cols();
  m.act.resize(ctx.ring_alg->dim());
  for (int i = 0; i < ctx.ring_alg->dim(); ++i) {
    Mat<K> big = v.act_of(Vec<K>(ctx.iota.col(i)));
    auto x = solve<K>(basis, Mat<K>(big * basis));
    if (!x) throw std::domain_error("coefficient_module: subspace not R-invariant");
    m.act[i] = *x;
  }
  return m;
}

// ---------------------------------------------------------------------------
// fp functor modules
// ---------------------------------------------------------------------------

// coker( ⊕_i 𝔞(A_i,−) → ⊕_j 𝔞(B_j,−) ), entries delta(j,i) ∈ 𝔞(B_j, A_i)
template <class K>
struct FpFunctorModule {
  CatCtxPtr<K> ctx;
  std::vector<int> targets;  // B_j — generators
  std::vector<int> sources;  // A_i — relations
  std::vector<std::vector<Mor<K>>> delta;  // delta[j][i]: B_j -> A_i

  static FpFunctorModule representable(const CatCtxPtr<K>& ctx, int obj) {
    FpFunctorModule f;
    f.ctx = ctx;
    f.targets = {obj};
    f.delta = {{}};
    return f;
  }
};

template <class K>
Presentation<K> to_presentation(const FpFunctorModule<K>& f) {
  Presentation<K> p;
  p.alg = f.ctx->lambda;
  for (int b : f.targets) p.gens.push_back(f.ctx->obj_idems[b]);
  for (int a : f.sources) p.rels.push_back(f.ctx->obj_idems[a]);
  p.delta.assign(f.targets.size(), std::vector<Vec<K>>(f.sources.size()));
  for (size_t j = 0; j < f.targets.size(); ++j)
    for (size_t i = 0; i < f.sources.size(); ++i) p.delta[j][i] = f.ctx->embed(f.delta[j][i]);
  return p;
}

template <class K>
ValidationReport validate_functor_module(const FpFunctorModule<K>& f) {
  ValidationReport rep;
  const auto& cat = *f.ctx->cat;
  if (f.delta.size() != f.targets.size()) {
    rep.fail("entry matrix has wrong number of rows");
    return rep;
  }
  for (size_t j = 0; j < f.targets.size(); ++j) {
    if (f.delta[j].size() != f.sources.size()) {
      rep.fail("entry matrix row has wrong length");
      return rep;
    }
    for (size_t i = 0; i < f.sources.size(); ++i) {
      const Mor<K>& m = f.delta[j][i];
      if (m.src != f.targets[j] || m.dst != f.sources[i])
        rep.fail("entry (" + std::to_string(j) + "," + std::to_string(i) + ") not in Hom(B_j, A_i)");
      else if ((int)m.v.size() != cat.hom_dim(m.src, m.dst))
        rep.fail("entry (" + std::to_string(j) + "," + std::to_string(i) + ") has wrong length");
    }
  }
  return rep;
}

template <class K>
ConcretePresentation<K> concrete_functor_module(const FpFunctorModule<K>& f) {
  return presentation_to_concrete<K>(to_presentation(f));
}

// back from a concrete Λ-module to a minimal fp presentation over the
// representables
template <class K>
FpFunctorModule<K> functor_module_from_concrete(const CatCtxPtr<K>& ctx, const AlgebraModule<K>& v) {
  auto pr = minimal_presentation<K>(v, ctx->obj_idems, ctx->radical);
  FpFunctorModule<K> f;
  f.ctx = ctx;
  f.targets = pr.gen_indices;
  f.sources = pr.rel_indices;
  f.delta.assign(f.targets.size(), std::vector<Mor<K>>(f.sources.size()));
  for (size_t j = 0; j < f.targets.size(); ++j)
    for (size_t i = 0; i < f.sources.size(); ++i)
      f.delta[j][i] = ctx->extract(pr.pres.delta[j][i], f.targets[j], f.sources[i]);
  return f;
}

template <class K>
int functor_module_dim(const FpFunctorModule<K>& f) {
  return concrete_functor_module(f).mod.dim;
}

// F(A) as an fp R-module (computed pointwise: the e_A part of the cokernel)
template <class K>
FpModule<K> evaluate(const FpFunctorModule<K>& f, int obj, AlgebraModule<K>* concrete_out = nullptr) {
  auto cp = concrete_functor_module(f);
  Mat<K> piece = column_space_basis<K>(cp.mod.act_of(f.ctx->obj_idems[obj]));
  AlgebraModule<K> over_r = coefficient_module<K>(*f.ctx, cp.mod, piece);
  if (concrete_out) *concrete_out = over_r;
  RingModuleContext<K> rctx(f.ctx->cat->ring);
  return minimal_fp_module<K>(rctx, over_r);
}

template <class K>
int evaluate_dim(const FpFunctorModule<K>& f, int obj) {
  auto cp = concrete_functor_module(f);
  return rank_of<K>(cp.mod.act_of(f.ctx->obj_idems[obj]));
}

// ---------------------------------------------------------------------------
// maps of functor modules
// ---------------------------------------------------------------------------

template <class K>
struct FunctorModuleMap {
  FpFunctorModule<K> source, target;
  // lift on representable covers: entries lift[j'][j] ∈ 𝔞(B'_{j'}, B_j),
  // mapping the source generator j into the target cover
  std::vector<std::vector<Mor<K>>> lift;
  Mat<K> concrete;  // target-concrete x source-concrete matrix
};

// the concrete matrix of the cover-level lift
template <class K>
Mat<K> lift_cover_matrix(const CatContext<K>& ctx, const Cover<K>& src_cover, const Cover<K>& dst_cover,
                         const std::vector<std::vector<Mor<K>>>& lift) {
  Mat<K> m = Mat<K>::Zero(dst_cover.dim, src_cover.dim);
  for (int j = 0; j < src_cover.summands(); ++j)
    for (int jp = 0; jp < dst_cover.summands(); ++jp) {
      Vec<K> elt = ctx.embed(lift[jp][j]);
      if (is_zero_matrix<K>(Mat<K>(elt))) continue;
      // column for basis b of Λe_{B_j}: b * lift_{j'j} placed in summand j'
      for (int bc = 0; bc < src_cover.bases[j].cols(); ++bc) {
        Vec<K> prod = ctx.lambda->mul(Vec<K>(src_cover.bases[j].col(bc)), elt);
        auto x = solve<K>(dst_cover.bases[jp], Mat<K>(prod));
        if (!x) throw std::domain_error("lift_cover_matrix: product escapes the summand");
        m.col(src_cover.offsets[j] + bc).segment(dst_cover.offsets[jp], dst_cover.bases[jp].cols()) =
            x->col(0);
      }
    }
  return m;
}

// build a map from a concrete intertwiner; derives the representable lift
template <class K>
FunctorModuleMap<K> make_functor_module_map(const FpFunctorModule<K>& src, const FpFunctorModule<K>& dst,
                                            const Mat<K>& concrete) {
  FunctorModuleMap<K> f;
  f.source = src;
  f.target = dst;
  f.concrete = concrete;
  auto scp = concrete_functor_module(src);
  auto dcp = concrete_functor_module(dst);
  const auto& ctx = *src.ctx;
  f.lift.assign(dst.targets.size(), std::vector<Mor<K>>(src.targets.size()));
  for (size_t j = 0; j < src.targets.size(); ++j) {
    // class of the generator of summand j
    Vec<K> gen_cover = scp.cover.embed((int)j, ctx.obj_idems[src.targets[j]]);
    Vec<K> img = concrete * (scp.proj * gen_cover);
    Vec<K> rep = dcp.sect * img;  // a cover representative of the image
    // force the e_{B_j}-component so blocks land in e_{B_j} Λ e_{B'_{j'}}
    rep = dcp.cover.mod.act_of(ctx.obj_idems[src.targets[j]]) * rep;
    for (size_t jp = 0; jp < dst.targets.size(); ++jp) {
      // the block lies in e_{B_j} Λ e_{B'_{j'}} = 𝔞(B'_{j'}, B_j)
      Vec<K> elt = dcp.cover.block_element(rep, (int)jp);
      f.lift[jp][j] = ctx.extract(elt, dst.targets[jp], src.targets[j]);
    }
  }
  return f;
}

template <class K>
ValidationReport validate_functor_module_map(const FunctorModuleMap<K>& f) {
  ValidationReport rep;
  auto scp = concrete_functor_module(f.source);
  auto dcp = concrete_functor_module(f.target);
  // the concrete matrix must intertwine the Λ-action
  for (int g = 0; g < f.source.ctx->lambda->dim(); ++g)
    if (!is_zero_matrix<K>(Mat<K>(f.concrete * scp.mod.act[g] - dcp.mod.act[g] * f.concrete))) {
      rep.fail("concrete matrix is not a module map");
      return rep;
    }
  // the representable lift must induce the same map: lift ∘ proj = proj ∘ L
  Mat<K> l = lift_cover_matrix<K>(*f.source.ctx, scp.cover, dcp.cover, f.lift);
  if (!is_zero_matrix<K>(Mat<K>(f.concrete * scp.proj - dcp.proj * l)))
    rep.fail("representable lift does not induce the map (relation compatibility fails)");
  return rep;
}

// Hom(F, G) as an fp R-module; also returns the concrete intertwiner basis
template <class K>
FpModule<K> hom_functor_modules(const FpFunctorModule<K>& f, const FpFunctorModule<K>& g,
                                std::vector<FunctorModuleMap<K>>* basis_out = nullptr) {
  auto fc = concrete_functor_module(f);
  auto gc = concrete_functor_module(g);
  Mat<K> homs = hom_space<K>(fc.mod, gc.mod);
  // R acts on Hom(F,G) through either side (they agree); use post-action
  AlgebraModule<K> m;
  m.alg = f.ctx->ring_alg;
  m.dim = (int)homs.cols();
  m.act.resize(m.alg->dim());
  for (int i = 0; i < m.alg->dim(); ++i) {
    Mat<K> rho = gc.mod.act_of(Vec<K>(f.ctx->iota.col(i)));
    Mat<K> big(homs.rows(), homs.cols());
    for (int c = 0; c < homs.cols(); ++c) {
      Mat<K> t = unvectorize<K>(Vec<K>(homs.col(c)), gc.mod.dim, fc.mod.dim);
      big.col(c) = vectorize<K>(Mat<K>(rho * t));
    }
    auto x = solve<K>(homs, big);
    if (!x) throw std::domain_error("hom_functor_modules: hom space not R-invariant");
    m.act[i] = *x;
  }
  if (basis_out) {
    basis_out->clear();
    for (int c = 0; c < homs.cols(); ++c)
      basis_out->push_back(make_functor_module_map<K>(
          f, g, unvectorize<K>(Vec<K>(homs.col(c)), gc.mod.dim, fc.mod.dim)));
  }
  RingModuleContext<K> rctx(f.ctx->cat->ring);
  return minimal_fp_module<K>(rctx, m);
}

template <class K>
int hom_dim_functor_modules(const FpFunctorModule<K>& f, const FpFunctorModule<K>& g) {
  auto fc = concrete_functor_module(f);
  auto gc = concrete_functor_module(g);
  return (int)hom_space<K>(fc.mod, gc.mod).cols();
}

// kernel / image / cokernel with inclusion & projection witnesses
template <class K>
struct SubquotientResult {
  FpFunctorModule<K> mod;
  Mat<K> witness;  // kernel: inclusion into source; image: inclusion into target;
                   // cokernel: projection from target (concrete coordinates)
};

template <class K>
SubquotientResult<K> kernel_of(const FunctorModuleMap<K>& f) {
  auto sc = concrete_functor_module(f.source);
  Mat<K> kb = kernel_basis<K>(f.concrete);
  AlgebraModule<K> ker = kb.cols() ? submodule_on<K>(sc.mod, kb) : zero_module<K>(f.source.ctx->lambda);
  return {functor_module_from_concrete<K>(f.source.ctx, ker), kb};
}

template <class K>
SubquotientResult<K> image_of(const FunctorModuleMap<K>& f) {
  auto tc = concrete_functor_module(f.target);
  Mat<K> ib = column_space_basis<K>(f.concrete);
  AlgebraModule<K> im = ib.cols() ? submodule_on<K>(tc.mod, ib) : zero_module<K>(f.source.ctx->lambda);
  return {functor_module_from_concrete<K>(f.source.ctx, im), ib};
}

template <class K>
SubquotientResult<K> cokernel_of(const FunctorModuleMap<K>& f) {
  auto tc = concrete_functor_module(f.target);
  Mat<K> proj;
  AlgebraModule<K> cok = quotient_module<K>(tc.mod, f.concrete, &proj, nullptr);
  return {functor_module_from_concrete<K>(f.source.ctx, cok), proj};
}

// ---------------------------------------------------------------------------
// resolutions and Ext over the category
// ---------------------------------------------------------------------------

template <class K>
struct CatResolution {
  Resolution<K> res;                       // covers are sums of representables
  std::vector<std::vector<int>> objects;   // object index per cover summand
};

template <class K>
CatResolution<K> projective_resolution(const FpFunctorModule<K>& f, int length) {
  auto cp = concrete_functor_module(f);
  CatResolution<K> r;
  r.res = resolve<K>(cp.mod, f.ctx->obj_idems, f.ctx->radical, length);
  r.objects = r.res.cover_indices;
  return r;
}

// Ext^i(F, G) as a concrete R-module, via Hom(P_•, G); the level-t space is
// the external direct sum ⊕_s e_{x_s} G over the cover summands
template <class K>
AlgebraModule<K> ext_concrete(const CatContext<K>& ctx, int i, const AlgebraModule<K>& fmod,
                              const AlgebraModule<K>& gmod) {
  Resolution<K> res = resolve<K>(fmod, ctx.obj_idems, ctx.radical, i + 1);
  struct Level {
    std::vector<Mat<K>> bases;  // basis of e_{x_s} G inside G, per summand
    std::vector<int> offs;
    int dim = 0;
  };
  auto level_space = [&](int t) -> Level {
    Level l;
    if (t >= (int)res.covers.size()) return l;
    for (int s = 0; s < res.covers[t].summands(); ++s) {
      Mat<K> b = column_space_basis<K>(gmod.act_of(res.covers[t].idems[s]));
      l.offs.push_back(l.dim);
      l.dim += (int)b.cols();
      l.bases.push_back(std::move(b));
    }
    return l;
  };
  std::vector<Level> levels;
  for (int t = 0; t <= i + 1; ++t) levels.push_back(level_space(t));
  // hom differential Hom(P_{t-1},G) -> Hom(P_t,G): block (j, i) = act(delta[i][j])
  auto hom_diff = [&](int t) -> Mat<K> {
    const Level& prev = levels[t - 1];
    const Level& cur = levels[t];
    Mat<K> m = Mat<K>::Zero(cur.dim, prev.dim);
    if (t - 1 >= (int)res.delta.size() || cur.dim == 0 || prev.dim == 0) return m;
    const auto& entries = res.delta[t - 1];
    for (int j = 0; j < res.covers[t].summands(); ++j)
      for (int s = 0; s < res.covers[t - 1].summands(); ++s) {
        Vec<K> d = entries[s][j];
        if (is_zero_matrix<K>(Mat<K>(d))) continue;
        auto x = solve<K>(cur.bases[j], Mat<K>(gmod.act_of(d) * prev.bases[s]));
        if (!x) throw std::domain_error("ext_concrete: hom differential escapes the block");
        m.block(cur.offs[j], prev.offs[s], x->rows(), x->cols()) = *x;
      }
    return m;
  };
  const Level& li = levels[i];
  // R acts blockwise through the central embedding
  AlgebraModule<K> space;
  space.alg = ctx.ring_alg;
  space.dim = li.dim;
  space.act.assign(ctx.ring_alg->dim(), Mat<K>::Zero(li.dim, li.dim));
  for (int r = 0; r < ctx.ring_alg->dim(); ++r) {
    Mat<K> rho = gmod.act_of(Vec<K>(ctx.iota.col(r)));
    for (size_t s = 0; s < li.bases.size(); ++s) {
      if (li.bases[s].cols() == 0) continue;
      auto x = solve<K>(li.bases[s], Mat<K>(rho * li.bases[s]));
      if (!x) throw std::domain_error("ext_concrete: block not R-invariant");
      space.act[r].block(li.offs[s], li.offs[s], x->rows(), x->cols()) = *x;
    }
  }
  Mat<K> d_in = i >= 1 ? hom_diff(i) : Mat<K>(Mat<K>(li.dim, 0));
  Mat<K> d_out = hom_diff(i + 1);
  return homology_at<K>(space, d_in, d_out).mod;
}

template <class K>
FpModule<K> ext_cat(const FpFunctorModule<K>& f, int i, const FpFunctorModule<K>& g) {
  auto fc = concrete_functor_module(f);
  auto gc = concrete_functor_module(g);
  AlgebraModule<K> h = ext_concrete<K>(*f.ctx, i, fc.mod, gc.mod);
  RingModuleContext<K> rctx(f.ctx->cat->ring);
  return minimal_fp_module<K>(rctx, h);
}

template <class K>
int ext_cat_dim(const FpFunctorModule<K>& f, int i, const FpFunctorModule<K>& g) {
  auto fc = concrete_functor_module(f);
  auto gc = concrete_functor_module(g);
  return ext_concrete<K>(*f.ctx, i, fc.mod, gc.mod).dim;
}

// ---------------------------------------------------------------------------
// pointwise ring functors (Prop 2.10 realizations)
// ---------------------------------------------------------------------------

// X ⊗_R F: cokernel of F^{q} -> F^{p} with blocks acting through the central
// embedding
template <class K>
AlgebraModule<K> tensor_pointwise_concrete(const CatContext<K>& ctx, const FpModule<K>& x,
                                           const AlgebraModule<K>& fmod) {
  const int p = x.pres.rows, q = x.pres.cols;
  const int m = fmod.dim;
  Mat<K> big = Mat<K>::Zero(p * m, q * m);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < q; ++b) {
      Vec<K> lam = ctx.iota * x.pres.at(a, b);
      big.block(a * m, b * m, m, m) = fmod.act_of(lam);
    }
  AlgebraModule<K> sum;
  sum.alg = ctx.lambda;
  sum.dim = p * m;
  sum.act.resize(ctx.lambda->dim());
  for (int g = 0; g < ctx.lambda->dim(); ++g) {
    sum.act[g] = Mat<K>::Zero(p * m, p * m);
    for (int a = 0; a < p; ++a) sum.act[g].block(a * m, a * m, m, m) = fmod.act[g];
  }
  return quotient_module<K>(sum, big);
}

template <class K>
FpFunctorModule<K> tensor_pointwise(const FpModule<K>& x, const FpFunctorModule<K>& f) {
  auto fc = concrete_functor_module(f);
  return functor_module_from_concrete<K>(f.ctx, tensor_pointwise_concrete<K>(*f.ctx, x, fc.mod));
}

// Hom_R(X, F): kernel of F^{p} -> F^{q}
template <class K>
AlgebraModule<K> hom_pointwise_concrete(const CatContext<K>& ctx, const FpModule<K>& x,
                                        const AlgebraModule<K>& fmod) {
  const int p = x.pres.rows, q = x.pres.cols;
  const int m = fmod.dim;
  Mat<K> big = Mat<K>::Zero(q * m, p * m);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < q; ++b) big.block(b * m, a * m, m, m) = fmod.act_of(Vec<K>(ctx.iota * x.pres.at(a, b)));
  Mat<K> kb = kernel_basis<K>(big);
  AlgebraModule<K> sum;
  sum.alg = ctx.lambda;
  sum.dim = p * m;
  sum.act.resize(ctx.lambda->dim());
  for (int g = 0; g < ctx.lambda->dim(); ++g) {
    sum.act[g] = Mat<K>::Zero(p * m, p * m);
    for (int a = 0; a < p; ++a) sum.act[g].block(a * m, a * m, m, m) = fmod.act[g];
  }
  return kb.cols() ? submodule_on<K>(sum, kb) : zero_module<K>(ctx.lambda);
}

template <class K>
FpFunctorModule<K> hom_pointwise(const FpModule<K>& x, const FpFunctorModule<K>& f) {
  auto fc = concrete_functor_module(f);
  return functor_module_from_concrete<K>(f.ctx, hom_pointwise_concrete<K>(*f.ctx, x, fc.mod));
}

// Tor_i / Ext^i against a ring module, pointwise over the category
template <class K>
AlgebraModule<K> tor_pointwise_concrete(const CatContext<K>& ctx, int i, const FpModule<K>& x,
                                        const AlgebraModule<K>& fmod) {
  if (i == 0) return tensor_pointwise_concrete<K>(ctx, x, fmod);
  RingModuleContext<K> rctx(ctx.cat->ring);
  FreeResolution<K> res = minimal_free_resolution<K>(rctx, x, i + 1);
  const int m = fmod.dim;
  auto ranks_at = [&](int t) { return t < (int)res.ranks.size() ? res.ranks[t] : 0; };
  auto expanded = [&](int t) {
    if (t < 1 || t - 1 >= (int)res.differentials.size() || ranks_at(t) == 0)
      return Mat<K>(Mat<K>::Zero(ranks_at(t - 1) * m, ranks_at(t) * m));
    const RingMat<K>& dm = res.differentials[t - 1];
    Mat<K> big = Mat<K>::Zero(dm.rows * m, dm.cols * m);
    for (int a = 0; a < dm.rows; ++a)
      for (int b = 0; b < dm.cols; ++b)
        big.block(a * m, b * m, m, m) = fmod.act_of(Vec<K>(ctx.iota * dm.at(a, b)));
    return big;
  };
  AlgebraModule<K> space;
  space.alg = ctx.lambda;
  space.dim = ranks_at(i) * m;
  space.act.resize(ctx.lambda->dim());
  for (int g = 0; g < ctx.lambda->dim(); ++g) {
    space.act[g] = Mat<K>::Zero(space.dim, space.dim);
    for (int a = 0; a < ranks_at(i); ++a) space.act[g].block(a * m, a * m, m, m) = fmod.act[g];
  }
  return homology_at<K>(space, expanded(i + 1), expanded(i)).mod;
}

template <class K>
AlgebraModule<K> ext_pointwise_concrete(const CatContext<K>& ctx, int i, const FpModule<K>& x,
                                        const AlgebraModule<K>& fmod) {
  if (i == 0) return hom_pointwise_concrete<K>(ctx, x, fmod);
  RingModuleContext<K> rctx(ctx.cat->ring);
  FreeResolution<K> res = minimal_free_resolution<K>(rctx, x, i + 1);
  const int m = fmod.dim;
  auto ranks_at = [&](int t) { return t < (int)res.ranks.size() ? res.ranks[t] : 0; };
  auto expanded = [&](int t) {  // Hom(d_t): F^{r_{t-1}} -> F^{r_t}
    if (t < 1 || t - 1 >= (int)res.differentials.size() || ranks_at(t) == 0)
      return Mat<K>(Mat<K>::Zero(ranks_at(t) * m, ranks_at(t - 1) * m));
    const RingMat<K>& dm = res.differentials[t - 1];
    Mat<K> big = Mat<K>::Zero(dm.cols * m, dm.rows * m);
    for (int a = 0; a < dm.rows; ++a)
      for (int b = 0; b < dm.cols; ++b)
        big.block(b * m, a * m, m, m) = fmod.act_of(Vec<K>(ctx.iota * dm.at(a, b)));
    return big;
  };
  AlgebraModule<K> space;
  space.alg = ctx.lambda;
  space.dim = ranks_at(i) * m;
  space.act.resize(ctx.lambda->dim());
  for (int g = 0; g < ctx.lambda->dim(); ++g) {
    space.act[g] = Mat<K>::Zero(space.dim, space.dim);
    for (int a = 0; a < ranks_at(i); ++a) space.act[g].block(a * m, a * m, m, m) = fmod.act[g];
  }
  return homology_at<K>(space, expanded(i), expanded(i + 1)).mod;
}

template <class K>
FpFunctorModule<K> tor_pointwise(int i, const FpModule<K>& x, const FpFunctorModule<K>& f) {
  auto fc = concrete_functor_module(f);
  return functor_module_from_concrete<K>(f.ctx, tor_pointwise_concrete<K>(*f.ctx, i, x, fc.mod));
}

template <class K>
FpFunctorModule<K> ext_pointwise(int i, const FpModule<K>& x, const FpFunctorModule<K>& f) {
  auto fc = concrete_functor_module(f);
  return functor_module_from_concrete<K>(f.ctx, ext_pointwise_concrete<K>(*f.ctx, i, x, fc.mod));
}

template <class K>
bool is_flat_functor(const FpFunctorModule<K>& f) {
  RingModuleContext<K> rctx(f.ctx->cat->ring);
  auto cp = concrete_functor_module(f);
  for (int x = 0; x < f.ctx->n_objects(); ++x) {
    Mat<K> piece = column_space_basis<K>(cp.mod.act_of(f.ctx->obj_idems[x]));
    AlgebraModule<K> val = coefficient_module<K>(*f.ctx, cp.mod, piece);
    FpModule<K> fp = minimal_fp_module<K>(rctx, val);
    if (!is_flat<K>(rctx, fp)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// injectives and reconstruction
// ---------------------------------------------------------------------------

template <class K>
struct InjCategory {
  CatCtxPtr<K> ctx;
  std::vector<AlgebraModule<K>> indecomposables;  // pairwise non-isomorphic
  // Hom tables between indecomposables (concrete intertwiner bases)
  std::vector<std::vector<Mat<K>>> hom_bases;
};

// structure of Λ, cached per call site
template <class K>
AlgebraStructure<K> category_structure(const CatContext<K>& ctx) {
  return analyze_algebra<K>(ctx.lambda);
}

template <class K>
InjCategory<K> injectives(const CatCtxPtr<K>& ctx, const AlgebraStructure<K>& st) {
  InjCategory<K> inj;
  inj.ctx = ctx;
  for (size_t i = 0; i < st.prim_idems.size(); ++i) {
    if (st.simple_class[i] != (int)i) continue;  // duplicate block
    inj.indecomposables.push_back(st.inj[i]);
  }
  const int n = (int)inj.indecomposables.size();
  inj.hom_bases.assign(n, std::vector<Mat<K>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      inj.hom_bases[a][b] = hom_space<K>(inj.indecomposables[a], inj.indecomposables[b]);
  return inj;
}

// injectivity test: Ext^1(S, F) = 0 for every simple S
template <class K>
bool is_injective_module(const CatContext<K>& ctx, const AlgebraStructure<K>& st,
                         const AlgebraModule<K>& f) {
  for (size_t i = 0; i < st.prim_idems.size(); ++i) {
    if (st.simple_class[i] != (int)i) continue;
    if (ext_concrete<K>(ctx, 1, st.simple[i], f).dim != 0) return false;
  }
  return true;
}

template <class K>
bool is_injective(const FpFunctorModule<K>& f) {
  auto st = category_structure<K>(*f.ctx);
  return is_injective_module<K>(*f.ctx, st, concrete_functor_module(f).mod);
}

// injective envelope via the dual of a projective cover of the dual module;
// returns the embedding matrix F -> E
template <class K>
struct EnvelopeResult {
  AlgebraModule<K> envelope;
  Mat<K> embedding;
};

template <class K>
EnvelopeResult<K> injective_envelope_concrete(const CatContext<K>& ctx, const AlgebraModule<K>& f) {
  AlgebraPtr<K> op = opposite_algebra<K>(ctx.lambda);
  AlgebraModule<K> fdual = dual_module<K>(f, op);
  // object idempotents work for the opposite algebra as well
  Mat<K> oprad = radical_basis<K>(*op);
  auto picks = minimal_generators<K>(fdual, ctx.obj_idems, oprad);
  std::vector<Vec<K>> idems;
  for (const auto& p : picks) idems.push_back(ctx.obj_idems[p.idem]);
  Cover<K> cov = make_cover<K>(op, idems);
  Mat<K> phi = cover_map<K>(cov, fdual, picks);  // cover -> F*
  EnvelopeResult<K> r;
  r.envelope = dual_module<K>(cov.mod, ctx.lambda);
  // careful: dual of a left op-module is a left Λ-module
  r.envelope.alg = ctx.lambda;
  r.embedding = phi.transpose();  // F = F** -> cover*
  return r;
}

// essentiality: soc(E) must land inside the image of F
template <class K>
bool embedding_is_essential(const CatContext<K>& ctx, const EnvelopeResult<K>& env) {
  Mat<K> soc = ideal_annihilator<K>(env.envelope, ctx.radical);
  Mat<K> img = column_space_basis<K>(env.embedding);
  return subspace_contained<K>(soc, img);
}

// Ψ(C) = ⊕_t Hom(C, I_t) as a module over the category algebra of Inj
template <class K>
struct InjAlgebra {
  AlgebraPtr<K> alg;          // ⊕_{s,t} Hom(I_s, I_t) with composition
  std::vector<int> offsets;   // block offsets  (s,t) -> index
  const InjCategory<K>* inj;
  int block_of(int s, int t) const { return offsets[s * (int)inj->indecomposables.size() + t]; }
};

template <class K>
InjAlgebra<K> inj_category_algebra(const InjCategory<K>& inj) {
  InjAlgebra<K> ia;
  ia.inj = &inj;
  const int n = (int)inj.indecomposables.size();
  ia.offsets.assign(n * n, -1);
  int total = 0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (inj.hom_bases[s][t].cols() == 0) continue;
      ia.offsets[s * n + t] = total;
      total += (int)inj.hom_bases[s][t].cols();
    }
  auto alg = std::make_shared<Algebra<K>>();
  alg->field = inj.ctx->cat->ring->field;
  alg->lmul.assign(total, Mat<K>::Zero(total, total));
  auto mat_of = [&](int s, int t, int c) {
    return unvectorize<K>(Vec<K>(inj.hom_bases[s][t].col(c)), inj.indecomposables[t].dim,
                          inj.indecomposables[s].dim);
  };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int off_st = ia.offsets[s * n + t];
      if (off_st < 0) continue;
      for (int c = 0; c < inj.hom_bases[s][t].cols(); ++c) {
        // left multiplication by g: Hom(w,s) -> Hom(w,t), h -> g∘h
        Mat<K> g = mat_of(s, t, c);
        for (int w = 0; w < n; ++w) {
          int off_ws = ia.offsets[w * n + s];
          if (off_ws < 0) continue;
          int off_wt = ia.offsets[w * n + t];
          for (int hc = 0; hc < inj.hom_bases[w][s].cols(); ++hc) {
            Vec<K> prod = vectorize<K>(Mat<K>(g * mat_of(w, s, hc)));
            if (is_zero_matrix<K>(Mat<K>(prod))) continue;
            if (off_wt < 0) throw std::domain_error("inj_category_algebra: composite escapes");
            auto x = solve<K>(inj.hom_bases[w][t], Mat<K>(prod));
            if (!x) throw std::domain_error("inj_category_algebra: composite not in hom basis");
            alg->lmul[off_st + c].col(off_ws + hc).segment(off_wt, x->rows()) = x->col(0);
          }
        }
      }
    }
  alg->unit = Vec<K>::Zero(total);
  for (int s = 0; s < n; ++s) {
    int off = ia.offsets[s * n + s];
    if (off < 0) throw std::domain_error("inj_category_algebra: missing endo block");
    Vec<K> idm = vectorize<K>(Mat<K>(Mat<K>::Identity(inj.indecomposables[s].dim, inj.indecomposables[s].dim)));
    auto x = solve<K>(inj.hom_bases[s][s], Mat<K>(idm));
    if (!x) throw std::domain_error("inj_category_algebra: identity not in hom basis");
    alg->unit.segment(off, x->rows()) = x->col(0);
  }
  ia.alg = alg;
  return ia;
}

// Ψ(C): the module over the Inj category algebra with value Hom(C, I_t) at I_t
template <class K>
AlgebraModule<K> psi_module_fwd(const InjAlgebra<K>& ia, const AlgebraModule<K>& c);

// Reconstruction check (Ψ: mod(𝔞)^op → mod(Inj) fully faithful): for every
// pair in the battery, the canonical map Hom(F,G) → Hom(ΨG, ΨF), φ ↦ (−∘φ),
// is bijective.
template <class K>
struct ReconstructionReport {
  bool fully_faithful = true;
  std::vector<std::string> failures;
  int pairs_checked = 0;
};

template <class K>
ReconstructionReport<K> reconstruct_from_injectives(const CatContext<K>& ctx, const InjCategory<K>& inj,
                                                    const InjAlgebra<K>& ia,
                                                    const std::vector<AlgebraModule<K>>& battery) {
  ReconstructionReport<K> rep;
  std::vector<AlgebraModule<K>> psi;
  std::vector<std::vector<Mat<K>>> values;  // per battery module: hom bases Hom(C, I_t)
  const int ni = (int)inj.indecomposables.size();
  for (const auto& c : battery) {
    psi.push_back(psi_module_fwd<K>(ia, c));
    std::vector<Mat<K>> vals;
    for (int t = 0; t < ni; ++t) vals.push_back(hom_space<K>(c, inj.indecomposables[t]));
    values.push_back(std::move(vals));
  }
  for (size_t a = 0; a < battery.size(); ++a)
    for (size_t b = 0; b < battery.size(); ++b) {
      Mat<K> homs = hom_space<K>(battery[a], battery[b]);          // Hom(F, G)
      Mat<K> psi_homs = hom_space<K>(psi[b], psi[a]);              // Hom(ΨG, ΨF)
      ++rep.pairs_checked;
      if (homs.cols() != psi_homs.cols()) {
        rep.fully_faithful = false;
        rep.failures.push_back("dim mismatch on pair (" + std::to_string(a) + "," + std::to_string(b) +
                               "): " + std::to_string(homs.cols()) + " vs " +
                               std::to_string(psi_homs.cols()));
        continue;
      }
      if (homs.cols() == 0) continue;
      // canonical map: φ -> blockdiag_t (ψ ∈ Hom(G,I_t) -> ψ∘φ)
      Mat<K> canon(psi[a].dim * psi[b].dim, homs.cols());
      for (int c = 0; c < homs.cols(); ++c) {
        Mat<K> phi = unvectorize<K>(Vec<K>(homs.col(c)), battery[b].dim, battery[a].dim);
        Mat<K> big = Mat<K>::Zero(psi[a].dim, psi[b].dim);
        int off_a = 0, off_b = 0;
        for (int t = 0; t < ni; ++t) {
          const Mat<K>& va = values[a][t];
          const Mat<K>& vb = values[b][t];
          // ψ ∈ Hom(G, I_t) basis col -> ψ∘φ expressed in Hom(F, I_t) basis
          for (int j = 0; j < vb.cols(); ++j) {
            Mat<K> psi_m = unvectorize<K>(Vec<K>(vb.col(j)), inj.indecomposables[t].dim, battery[b].dim);
            Vec<K> comp = vectorize<K>(Mat<K>(psi_m * phi));
            auto x = solve<K>(va, Mat<K>(comp));
            if (!x) throw std::domain_error("reconstruct: composite not in hom space");
            big.col(off_b + j).segment(off_a, x->rows()) = x->col(0);
          }
          off_a += (int)va.cols();
          off_b += (int)vb.cols();
        }
        canon.col(c) = vectorize<K>(big);
      }
      // bijectivity: the canonical images must span Hom(ΨG, ΨF) and be
      // independent
      auto coords = solve<K>(psi_homs, canon);
      if (!coords || rank_of<K>(*coords) != (int)homs.cols()) {
        rep.fully_faithful = false;
        rep.failures.push_back("canonical map not bijective on pair (" + std::to_string(a) + "," +
                               std::to_string(b) + ")");
      }
    }
  return rep;
}

// Ψ(C): the module over the Inj category algebra with value Hom(C, I_t) at I_t
template <class K>
AlgebraModule<K> psi_module(const InjAlgebra<K>& ia, const AlgebraModule<K>& c) {
  const auto& inj = *ia.inj;
  const int n = (int)inj.indecomposables.size();
  std::vector<Mat<K>> values;  // hom bases Hom(C, I_t)
  std::vector<int> offs;
  int total = 0;
  for (int t = 0; t < n; ++t) {
    values.push_back(hom_space<K>(c, inj.indecomposables[t]));
    offs.push_back(total);
    total += (int)values.back().cols();
  }
  AlgebraModule<K> m;
  m.alg = ia.alg;
  m.dim = total;
  m.act.assign(ia.alg->dim(), Mat<K>::Zero(total, total));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int off_st = ia.block_of(s, t);
      if (off_st < 0) continue;
      for (int gc = 0; gc < inj.hom_bases[s][t].cols(); ++gc) {
        Mat<K> g = unvectorize<K>(Vec<K>(inj.hom_bases[s][t].col(gc)), inj.indecomposables[t].dim,
                                  inj.indecomposables[s].dim);
        for (int hc = 0; hc < values[s].cols(); ++hc) {
          Mat<K> h = unvectorize<K>(Vec<K>(values[s].col(hc)), inj.indecomposables[s].dim, c.dim);
          Vec<K> prod = vectorize<K>(Mat<K>(g * h));
          if (is_zero_matrix<K>(Mat<K>(prod))) continue;
          auto x = solve<K>(values[t], Mat<K>(prod));
          if (!x) throw std::domain_error("psi_module: composite not in hom space");
          m.act[off_st + gc].col(offs[s] + hc).segment(offs[t], x->rows()) = x->col(0);
        }
      }
    }
  return m;
}


template <class K>
AlgebraModule<K> psi_module_fwd(const InjAlgebra<K>& ia, const AlgebraModule<K>& c) {
  return psi_module<K>(ia, c);
}

}  // namespace defcat
