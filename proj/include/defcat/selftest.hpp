#pragma once

#include "defcat/battery.hpp"

namespace defcat {

// Named invariant batteries, one per module, shared by the CLI selftest and
// the test suites.  Sizes scale with `effort` (1 = quick, 2 = full).

template <class K>
BatteryResult ring_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"ring"};
  Rng rng(seed);
  std::vector<RingPtr<K>> rings = {make_truncated_polynomial_ring<K>(field, 2),
                                   make_truncated_polynomial_ring<K>(field, 3)};
  for (const auto& R : rings) {
    out.check(validate_base_ring<K>(*R).ok(), "standard ring invalid");
    RingModuleContext<K> ctx(R);
    auto kmod = FpModule<K>::residue_field(R);
    // long exact Tor sequences on random short exact sequences
    FreeResolution<K> res = minimal_free_resolution<K>(ctx, kmod, 4);
    auto rho = [&](const Vec<K>& r, const AlgebraModule<K>& m) { return m.act_of(r); };
    for (int inst = 0; inst < 4 * effort; ++inst) {
      auto b = concrete_module<K>(ctx, random_fp_module<K>(rng, R)).mod;
      if (b.dim == 0) continue;
      auto ses = random_short_exact<K>(rng, b);
      long_exact_check<K>(out, res, rho, ses.a, ses.b, ses.c, ses.inc, ses.prj, 3);
    }
    // Tor symmetry, both sides computed independently
    for (int inst = 0; inst < 4 * effort; ++inst) {
      auto x = random_fp_module<K>(rng, R);
      auto m = random_fp_module<K>(rng, R);
      for (int i = 0; i <= 2; ++i)
        out.check(tor_dim<K>(ctx, i, x, m) == tor_dim<K>(ctx, i, m, x),
                  "Tor symmetry fails at degree " + std::to_string(i));
    }
    // flat ⟺ resolution length 0
    for (int inst = 0; inst < 6 * effort; ++inst) {
      auto m = random_fp_module<K>(rng, R);
      auto fr = minimal_free_resolution<K>(ctx, m, 1);
      bool len0 = fr.complete && fr.ranks.size() <= 1;
      out.check(is_flat<K>(ctx, m) == len0, "flat ⟺ free resolution length 0 fails");
    }
    // Remark 2.6 closure: kernel of an epi between frees is flat
    for (int inst = 0; inst < 3 * effort; ++inst) {
      int br = (int)rng.uniform(1, 3), cr = (int)rng.uniform(1, br);
      RingMat<K> epi(cr, br, *R);
      for (int i = 0; i < cr; ++i) {
        for (int j = 0; j < br; ++j) epi.at(i, j) = random_ring_element<K>(rng, *R, 2);
        epi.at(i, i) = R->one();  // guarantees surjectivity
      }
      auto bfree = concrete_module<K>(ctx, FpModule<K>::free_module(R, br)).mod;
      Mat<K> prj = expand(*R, epi);
      Mat<K> ker = kernel_basis<K>(prj);
      AlgebraModule<K> a = ker.cols() ? submodule_on<K>(bfree, ker) : zero_module<K>(ctx.alg);
      out.check(is_flat<K>(ctx, minimal_fp_module<K>(ctx, a)),
                "kernel of epi between flats is not flat (Remark 2.6)");
    }
    // biadditivity of dim(X⊗M) − dim Tor_1(X,M) in both slots
    for (int inst = 0; inst < 2 * effort; ++inst) {
      auto x1 = random_fp_module<K>(rng, R), x2 = random_fp_module<K>(rng, R);
      auto m = random_fp_module<K>(rng, R);
      auto chi = [&](const FpModule<K>& x, const FpModule<K>& y) {
        return k_dimension<K>(ctx, tensor_product<K>(x, y)) - tor_dim<K>(ctx, 1, x, y);
      };
      // direct sum presentation
      FpModule<K> sum;
      sum.ring = R;
      sum.pres = RingMat<K>(x1.pres.rows + x2.pres.rows, x1.pres.cols + x2.pres.cols, *R);
      for (int i = 0; i < x1.pres.rows; ++i)
        for (int j = 0; j < x1.pres.cols; ++j) sum.pres.at(i, j) = x1.pres.at(i, j);
      for (int i = 0; i < x2.pres.rows; ++i)
        for (int j = 0; j < x2.pres.cols; ++j)
          sum.pres.at(x1.pres.rows + i, x1.pres.cols + j) = x2.pres.at(i, j);
      out.check(chi(sum, m) == chi(x1, m) + chi(x2, m), "dim ⊗ − dim Tor_1 not biadditive");
    }
  }
  return out;
}

template <class K>
BatteryResult lincat_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"lincat"};
  Rng rng(seed);
  auto kf = make_field_ring<K>(field);
  auto R2 = make_truncated_polynomial_ring<K>(field, 2);
  auto dual = make_truncated_polynomial_ring<K>(field, 2);
  std::vector<CatPtr<K>> cats;
  cats.push_back(std::make_shared<LinCategory<K>>(one_object_category<K>(kf, *dual)));
  cats.push_back(std::make_shared<LinCategory<K>>(a2_path_category<K>(kf)));
  cats.push_back(std::make_shared<LinCategory<K>>(matrix_category<K>(R2, {1, 2})));
  for (const auto& c : cats) {
    out.check(validate_category<K>(*c).ok(), "fixture category invalid");
    // opposite is an involution
    LinCategory<K> opop = opposite<K>(opposite<K>(*c));
    bool same = opop.rank == c->rank && opop.comp.size() == c->comp.size();
    for (const auto& [key, t] : c->comp) {
      const auto* t2 = opop.table(key[0], key[1], key[2]);
      if (!t2) {
        same = false;
        break;
      }
      for (size_t i = 0; i < t.size() && same; ++i)
        for (size_t j = 0; j < t[i].size(); ++j)
          same = same && is_zero_matrix<K>(Mat<K>(t[i][j] - (*t2)[i][j]));
    }
    out.check(same, "opposite not an involution");
    out.check(validate_category<K>(opposite<K>(*c)).ok(), "opposite category invalid");
  }
  // base change preserves the axioms; strict reductions match mod I
  for (int inst = 0; inst < 3 * effort; ++inst) {
    auto theta = make_residue_surjection<K>(R2);
    auto twisted = gauge_twist<K>(rng, matrix_category<K>(R2, {1, 2}));
    out.check(validate_category<K>(*twisted).ok(), "gauge twist broke the axioms");
    auto d = strict_deformation_from_total<K>(twisted, theta);
    out.check(validate_category<K>(*d.reduced).ok(), "base change broke the axioms");
    out.check(validate_deformation<K>(d).ok(), "strict deformation invalid");
    out.check(strict_tables_match<K>(d), "strict tables do not match mod I");
  }
  // is_isomorphism agrees with brute-force pre/post-composition invertibility
  {
    auto theta = make_residue_surjection<K>(R2);
    auto mc = std::make_shared<LinCategory<K>>(matrix_category<K>(R2, {1, 2}));
    for (int inst = 0; inst < 8 * effort; ++inst) {
      int x = (int)rng.uniform(0, 1), y = (int)rng.uniform(0, 1);
      Mor<K> f = mc->zero_mor(x, y);
      for (int t = 0; t < (int)f.v.size(); ++t) f.v(t) = rng.scalar<K>(field, 2);
      bool direct = is_isomorphism<K>(*mc, f);
      bool brute = x == y || (mc->hom_dim(x, y) == mc->hom_dim(y, x) && mc->hom_dim(x, y) > 0);
      if (brute) {
        for (int w = 0; w < mc->n_objects() && brute; ++w) {
          if (mc->hom_dim(w, x) != mc->hom_dim(w, y) || mc->hom_dim(y, w) != mc->hom_dim(x, w)) {
            brute = false;
            break;
          }
          brute = brute && inverse<K>(mc->postcompose_matrix(f, w)).has_value() &&
                  inverse<K>(mc->precompose_matrix(f, w)).has_value();
        }
      }
      out.check(direct == brute, "is_isomorphism disagrees with brute-force composition matrices");
    }
    (void)theta;
  }
  return out;
}

template <class K>
BatteryResult funmod_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"funmod"};
  Rng rng(seed);
  auto R = make_truncated_polynomial_ring<K>(field, 2);
  auto kf = make_field_ring<K>(field);
  std::vector<CatCtxPtr<K>> ctxs;
  ctxs.push_back(make_context<K>(std::make_shared<LinCategory<K>>(matrix_category<K>(R, {1}))));
  ctxs.push_back(make_context<K>(std::make_shared<LinCategory<K>>(a2_path_category<K>(R))));
  for (const auto& ctx : ctxs) {
    const int n = ctx->n_objects();
    // Yoneda with witnessed dimension equality
    for (int inst = 0; inst < 3 * effort; ++inst) {
      auto f = random_functor_module<K>(rng, ctx);
      for (int x = 0; x < n; ++x)
        out.check(hom_dim_functor_modules<K>(FpFunctorModule<K>::representable(ctx, x), f) ==
                      evaluate_dim<K>(f, x),
                  "Yoneda dimension mismatch");
    }
    // exactness of the canonical factorization
    for (int inst = 0; inst < 3 * effort; ++inst) {
      auto f = random_functor_module<K>(rng, ctx);
      auto g = random_functor_module<K>(rng, ctx);
      std::vector<FunctorModuleMap<K>> maps;
      hom_functor_modules<K>(f, g, &maps);
      if (maps.empty()) continue;
      const auto& h = maps[(size_t)rng.uniform(0, (long long)maps.size() - 1)];
      auto ker = kernel_of<K>(h);
      auto img = image_of<K>(h);
      auto cok = cokernel_of<K>(h);
      int df = functor_module_dim<K>(f), dg = functor_module_dim<K>(g);
      out.check(functor_module_dim<K>(ker.mod) + functor_module_dim<K>(img.mod) == df,
                "rank-nullity fails for kernel/image");
      out.check(functor_module_dim<K>(img.mod) + functor_module_dim<K>(cok.mod) == dg,
                "rank-nullity fails for image/cokernel");
      out.check(validate_functor_module_map<K>(h).ok(), "hom basis element is not a valid map");
    }
    // pointwise coherence (Prop 2.10) for i ≤ 3
    for (int inst = 0; inst < 2 * effort; ++inst) {
      auto x = random_fp_module<K>(rng, R);
      auto f = random_functor_module<K>(rng, ctx);
      auto fc = concrete_functor_module<K>(f);
      RingModuleContext<K> rctx(R);
      for (int obj = 0; obj < n; ++obj) {
        AlgebraModule<K> val;
        evaluate<K>(f, obj, &val);
        FpModule<K> val_fp = minimal_fp_module<K>(rctx, val);
        {
          auto lhs = tensor_pointwise_concrete<K>(*ctx, x, fc.mod);
          int lhs_dim = rank_of<K>(lhs.act_of(ctx->obj_idems[obj]));
          int rhs_dim = k_dimension<K>(rctx, tensor_product<K>(x, val_fp));
          out.check(lhs_dim == rhs_dim, "pointwise tensor mismatch");
        }
        for (int i = 0; i <= 3; ++i) {
          auto lhs = tor_pointwise_concrete<K>(*ctx, i, x, fc.mod);
          int lhs_dim = rank_of<K>(lhs.act_of(ctx->obj_idems[obj]));
          out.check(lhs_dim == tor_dim<K>(rctx, i, x, val_fp),
                    "pointwise Tor mismatch at degree " + std::to_string(i));
          auto lhs2 = ext_pointwise_concrete<K>(*ctx, i, x, fc.mod);
          int lhs2_dim = rank_of<K>(lhs2.act_of(ctx->obj_idems[obj]));
          out.check(lhs2_dim == ext_dim<K>(rctx, i, x, val_fp),
                    "pointwise Ext mismatch at degree " + std::to_string(i));
        }
      }
      out.check(is_flat_functor<K>(FpFunctorModule<K>::representable(ctx, (int)rng.uniform(0, n - 1))),
                "representable not flat");
    }
    // δ-functor: long exact tor_pointwise sequences
    {
      RingModuleContext<K> rctx(R);
      FreeResolution<K> res = minimal_free_resolution<K>(rctx, FpModule<K>::residue_field(R), 4);
      auto rho = [&](const Vec<K>& r, const AlgebraModule<K>& m) {
        return m.act_of(Vec<K>(ctx->iota * r));
      };
      for (int inst = 0; inst < 2 * effort; ++inst) {
        auto b = concrete_functor_module<K>(random_functor_module<K>(rng, ctx)).mod;
        if (b.dim == 0) continue;
        auto ses = random_short_exact<K>(rng, b);
        long_exact_check<K>(out, res, rho, ses.a, ses.b, ses.c, ses.inc, ses.prj, 3);
      }
    }
  }
  (void)kf;
  return out;
}

template <class K>
BatteryResult basechange_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"basechange"};
  Rng rng(seed);
  for (int order = 2; order <= 3; ++order) {
    auto R = make_truncated_polynomial_ring<K>(field, order);
    auto theta = make_residue_surjection<K>(R);
    for (auto base : {0, 1}) {
      CatPtr<K> total = base == 0
                            ? std::make_shared<LinCategory<K>>(matrix_category<K>(R, {1}))
                            : std::make_shared<LinCategory<K>>(a2_path_category<K>(R));
      BaseChange<K> bc = make_base_change<K>(total, theta);
      for (int inst = 0; inst < 3 * effort; ++inst) {
        auto f = concrete_functor_module<K>(random_functor_module<K>(rng, bc.up)).mod;
        auto g = concrete_functor_module<K>(random_functor_module<K>(rng, bc.down)).mod;
        // tensor adjunction: Hom_𝔟(S⊗F, G) ≅ Hom_𝔞(F, res G), canonical map
        auto tu = tensor_up<K>(bc, f);
        AlgebraModule<K> rg = restrict_module<K>(bc, g);
        Mat<K> h1 = hom_space<K>(tu.mod, g);
        Mat<K> h2 = hom_space<K>(f, rg);
        out.check(h1.cols() == h2.cols(), "tensor adjunction dims differ");
        if (h1.cols() > 0 && h1.cols() == h2.cols()) {
          Mat<K> canon(h2.rows(), h1.cols());
          for (int c = 0; c < h1.cols(); ++c) {
            Mat<K> t = unvectorize<K>(Vec<K>(h1.col(c)), g.dim, tu.mod.dim);
            canon.col(c) = vectorize<K>(Mat<K>(t * tu.proj));
          }
          auto coords = solve<K>(h2, canon);
          out.check(coords.has_value() && rank_of<K>(*coords) == (int)h1.cols(),
                    "tensor adjunction canonical map not bijective");
        }
        // hom adjunction / identity (4.3): Hom_𝔞(res G, F) ≅ Hom_𝔟(G, Hom_R(S,F))
        auto hu = hom_up<K>(bc, f);
        Mat<K> h3 = hom_space<K>(rg, f);
        Mat<K> h4 = hom_space<K>(g, hu.mod);
        out.check(h3.cols() == h4.cols(), "hom adjunction dims differ (identity 4.3)");
        if (h3.cols() > 0 && h3.cols() == h4.cols()) {
          Mat<K> canon(h4.rows(), h3.cols());
          for (int c = 0; c < h3.cols(); ++c) {
            Mat<K> t = unvectorize<K>(Vec<K>(h3.col(c)), f.dim, rg.dim);
            // image lands in the I-annihilator; express through the inclusion
            auto inann = solve<K>(hu.incl, Mat<K>(t));
            if (!inann) {
              out.check(false, "hom adjunction image escapes the annihilator");
              break;
            }
            canon.col(c) = vectorize<K>(Mat<K>(*inann));
          }
          auto coords = solve<K>(h4, canon);
          out.check(coords.has_value() && rank_of<K>(*coords) == (int)h3.cols(),
                    "hom adjunction canonical map not bijective");
        }
        // triangle identities for both adjunctions, exactly
        {
          // unit η_F = proj: F -> res(S⊗F); counit ε_G: S⊗(res G) -> G is the
          // identity on coordinates since I·(res G) = 0.
          auto turg = tensor_up<K>(bc, rg);
          out.check(turg.mod.dim == g.dim &&
                        is_zero_matrix<K>(Mat<K>(turg.proj - Mat<K>::Identity(g.dim, g.dim))),
                    "counit of the tensor adjunction is not the identity");
          // triangle 1 on S⊗F: ε_{S⊗F} ∘ S⊗(η_F) = id; here S⊗(η_F) is the
          // map induced by η_F = tu.proj on the quotients
          Mat<K> s_eta = tensor_up_map<K>(bc, f, restrict_module<K>(bc, tu.mod),
                                          tu, tensor_up<K>(bc, restrict_module<K>(bc, tu.mod)), tu.proj);
          out.check(is_zero_matrix<K>(Mat<K>(s_eta - Mat<K>::Identity(tu.mod.dim, tu.mod.dim))),
                    "tensor triangle identity fails");
          // triangle 2 on res G: res(ε_G) ∘ η_{res G} = id; η on res G is the
          // projection by I·(res G) = 0, the identity
          auto hurg = hom_up<K>(bc, rg);
          out.check(hurg.mod.dim == g.dim && rank_of<K>(hurg.incl) == g.dim,
                    "unit of the hom adjunction is not an isomorphism");
          // hom triangle on hom_up F: corestriction of the counit to the
          // annihilator is the identity
          auto h_of_hu = hom_up<K>(bc, restrict_module<K>(bc, hu.mod));
          out.check(h_of_hu.mod.dim == hu.mod.dim, "hom triangle identity fails");
        }
        // gr: dimension bookkeeping
        auto grr = gr_module<K>(bc, f);
        out.check(grr.mod.dim == f.dim, "gr does not preserve total dimension");
        // Nakayama
        out.check(nakayama_is_zero<K>(bc, f).consistent(), "Nakayama fails");
        // reflects monomorphisms on hom basis elements
        Mat<K> homs = hom_space<K>(f, f);
        if (homs.cols() > 0) {
          Mat<K> t = unvectorize<K>(Vec<K>(homs.col((int)rng.uniform(0, homs.cols() - 1))), f.dim, f.dim);
          out.check(reflects_mono_check<K>(bc, f, f, t).implication_holds(),
                    "Hom_R(S,−) fails to reflect a monomorphism");
        }
      }
      // gr of a flat module: gr(R) ⊗ reduction objectwise
      for (int x = 0; x < total->n_objects(); ++x) {
        auto rep = concrete_functor_module<K>(FpFunctorModule<K>::representable(bc.up, x)).mod;
        auto grr = gr_module<K>(bc, rep);
        auto tu = tensor_up<K>(bc, rep);
        for (size_t layer = 0; layer < grr.layer_dims.size(); ++layer)
          out.check(grr.layer_dims[layer] == tu.mod.dim, "gr of flat module has wrong layer dimensions");
      }
    }
  }
  return out;
}

template <class K>
BatteryResult hochschild_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"hochschild"};
  Rng rng(seed);
  auto kf = make_field_ring<K>(field);
  auto dual = make_truncated_polynomial_ring<K>(field, 2);
  std::vector<CatPtr<K>> cats;
  cats.push_back(std::make_shared<LinCategory<K>>(one_object_category<K>(kf, *dual)));
  cats.push_back(std::make_shared<LinCategory<K>>(a2_path_category<K>(kf)));
  for (const auto& cat : cats) {
    auto h = make_hh_context<K>(cat);
    // d∘d = 0 on random cochains of degrees 0..2
    for (int deg = 0; deg <= 2; ++deg) {
      CochainSpace<K> s = cochain_space<K>(h, deg);
      for (int inst = 0; inst < 8 * effort; ++inst) {
        Vec<K> v(s.dim);
        for (int i = 0; i < s.dim; ++i) v(i) = rng.scalar<K>(field, 3);
        auto c = cochain_from_vec<K>(s, v);
        out.check(differential<K>(differential<K>(c)).val.empty(),
                  "d∘d ≠ 0 at degree " + std::to_string(deg));
      }
    }
    // cocycle ⟺ the deformed composition is associative
    CochainSpace<K> s2 = cochain_space<K>(h, 2);
    for (int inst = 0; inst < 6 * effort; ++inst) {
      Vec<K> v(s2.dim);
      for (int i = 0; i < s2.dim; ++i) v(i) = rng.scalar<K>(field, 3);
      auto c = cochain_from_vec<K>(s2, v);
      bool cocycle = differential<K>(c).val.empty();
      bool assoc = true;
      if (cocycle) {
        auto def = first_order_deformation<K>(h, c);
        assoc = validate_category<K>(*def.total).ok() && validate_deformation<K>(def).ok();
        out.check(assoc, "cocycle produced a non-associative deformation");
      } else {
        try {
          first_order_deformation<K>(h, c);
          out.check(false, "non-cocycle accepted by first_order_deformation");
        } catch (const std::invalid_argument&) {
          out.check(true, "");
        }
        // also check directly that m + εc fails associativity when forced
      }
    }
    // coboundaries give deformations equivalent (and strictifiable) to trivial
    CochainSpace<K> s1 = cochain_space<K>(h, 1);
    for (int inst = 0; inst < 4 * effort; ++inst) {
      Vec<K> v(s1.dim);
      for (int i = 0; i < s1.dim; ++i) v(i) = rng.scalar<K>(field, 3);
      auto g = cochain_from_vec<K>(s1, v);
      auto dg = differential<K>(g);
      auto r = are_equivalent_with_functor<K>(h, dg, Cochain<K>::zero(h, 2));
      out.check(r.equivalent && r.functor.has_value(), "coboundary not equivalent to trivial");
      // recovered witness has the same coboundary
      auto ddg = differential<K>(r.witness);
      CochainSpace<K> sp2 = cochain_space<K>(h, 2);
      out.check(is_zero_matrix<K>(Mat<K>(Mat<K>(cochain_to_vec<K>(sp2, ddg)) -
                                         Mat<K>(cochain_to_vec<K>(sp2, dg)))),
                "recovered witness has a different coboundary");
    }
    // classification: validity and pairwise inequivalence
    auto cl = classify<K>(h);
    out.check(cl.pairwise_inequivalent, "classification contains equivalent deformations");
    for (const auto& d : cl.deformations)
      out.check(validate_deformation<K>(d).ok(), "classified deformation invalid");
    // Prop 8.7: dim HH² is invariant under op
    auto hop = make_hh_context<K>(std::make_shared<LinCategory<K>>(opposite<K>(*cat)));
    out.check(hh<K>(h, 2).dim == hh<K>(hop, 2).dim, "dim HH² differs from the opposite category");
    out.check(hh<K>(h, 1).dim == hh<K>(hop, 1).dim, "dim HH¹ differs from the opposite category");
  }
  return out;
}

template <class K>
BatteryResult lift_invariants(FieldContext<K> field, unsigned seed, int effort, int n_order2,
                              int n_order3) {
  BatteryResult out{"lift"};
  Rng rng(seed);
  std::vector<std::pair<int, int>> plan = {{2, n_order2}, {3, n_order3}, {4, std::max(1, effort)}};
  for (auto [order, count] : plan) {
    auto R = make_truncated_polynomial_ring<K>(field, order);
    auto theta = make_residue_surjection<K>(R);
    for (int inst = 0; inst < count; ++inst) {
      // random gauge-twisted matrix category; objects 0 ⊕ 1 = 2
      auto c = gauge_twist<K>(rng, matrix_category<K>(R, {1, 1, 2}));
      auto d = strict_deformation_from_total<K>(c, theta);
      // --- Prop A.1
      int obj = (int)rng.uniform(0, 2);
      Mor<K> f = random_unit_endo<K>(rng, *c, obj, theta);
      // seed: inverse of the reduction, lifted through a section plus noise
      Mor<K> rf = d.red.apply(f);
      auto rinv = two_sided_inverse<K>(*d.reduced, rf);
      out.check(rinv.has_value(), "reduction of a unit is not invertible");
      if (!rinv) continue;
      Mor<K> g0 = c->zero_mor(obj, obj);
      Mat<K> sec = section_of<K>(theta);
      const int dS = theta.target->dim(), dR = theta.source->dim();
      for (int b = 0; b < c->rank[obj][obj]; ++b)
        g0.v.segment(b * dR, dR) = sec * rinv->v.segment(b * dS, dS);
      // random kernel noise on the seed
      Mat<K> ker = theta.kernel();
      for (int b = 0; b < c->rank[obj][obj]; ++b)
        for (int j = 0; j < ker.cols(); ++j)
          g0.v.segment(b * dR, dR) += rng.scalar<K>(field, 1) * ker.col(j);
      Mor<K> g = lift_isomorphism<K>(d, f, g0);
      out.check(is_zero_matrix<K>(Mat<K>(c->compose(g, f).v - c->identity[obj])) &&
                    is_zero_matrix<K>(Mat<K>(c->compose(f, g).v - c->identity[obj])),
                "A.1 equations fail exactly");
      // --- Prop A.5: transport the canonical idempotent 2 -> 0 -> 2
      {
        // in the twisted category, idempotents transport through the gauge;
        // build from an exact splitting pair and an invertible conjugation
        Mor<K> s0 = c->zero_mor(0, 2), r0 = c->zero_mor(2, 0);
        // recover the twisted images of the canonical injection/projection by
        // solving the splitting equations downstairs, then perturb
        // definitions: use hom bases directly
        // canonical: in matrix_category before twist these are E_{0,0}
        // after gauge twist the entries moved; search for a splitting of the
        // transported idempotent via linear solves
        Mor<K> u = random_unit_endo<K>(rng, *c, 2, theta);
        auto uinv = lift_isomorphism<K>(d, u, [&] {
          Mor<K> seed = c->zero_mor(2, 2);
          Mor<K> ru = d.red.apply(u);
          auto rui = two_sided_inverse<K>(*d.reduced, ru);
          for (int b = 0; b < c->rank[2][2]; ++b)
            seed.v.segment(b * dR, dR) = sec * rui->v.segment(b * dS, dS);
          return seed;
        }());
        // exact idempotent: conjugate of s∘r for an exact splitting of the
        // untwisted E00; build from the composition of hom basis elements
        // fall back: e = u ∘ (s1∘p1) ∘ u^{-1} where s1,p1 are found by
        // solving in the category
        // find exact splitting of the identity summand: solve r∘s = id_0
        Mat<K> pre = c->precompose_matrix(c->identity_mor(0), 0);
        (void)pre;
        // take s: 0->2, r: 2->0 with r∘s = id_0 exactly: solve linear system
        bool built = false;
        for (int attempt = 0; attempt < 32 && !built; ++attempt) {
          Mor<K> s_try = c->zero_mor(0, 2);
          for (int t = 0; t < (int)s_try.v.size(); ++t) s_try.v(t) = rng.scalar<K>(field, 2);
          // need r with r∘s = id_0: linear in r
          Mat<K> m = c->precompose_matrix(s_try, 0);  // r -> r∘s
          auto rsol = solve<K>(m, Mat<K>(c->identity[0]));
          if (!rsol) continue;
          Mor<K> r_try{2, 0, rsol->col(0)};
          Mor<K> e = c->compose(s_try, r_try);
          // conjugate by u for variety
          e = c->compose(u, c->compose(e, uinv));
          Mor<K> s_c = c->compose(u, s_try);
          Mor<K> r_c = c->compose(r_try, uinv);
          // perturb the splitting pair by kernel noise (reduction data intact)
          for (int t = 0; t < (int)s_c.v.size(); t += dR)
            for (int j = 0; j < ker.cols(); ++j)
              s_c.v.segment(t, dR) += rng.scalar<K>(field, 1) * ker.col(j);
          auto [r_fixed, s_fixed] = split_idempotent_lift<K>(d, e, r_c, s_c);
          out.check(is_zero_matrix<K>(Mat<K>(c->compose(s_fixed, r_fixed).v - e.v)) &&
                        is_zero_matrix<K>(Mat<K>(c->compose(r_fixed, s_fixed).v - c->identity[0])),
                    "A.5 equations fail exactly");
          built = true;
        }
        out.check(built, "could not build an A.5 instance");
      }
      // --- Prop A.6: biproduct corrections
      {
        bool built = false;
        for (int attempt = 0; attempt < 32 && !built; ++attempt) {
          Mor<K> s1 = c->zero_mor(0, 2), s2 = c->zero_mor(1, 2);
          for (int t = 0; t < (int)s1.v.size(); ++t) s1.v(t) = rng.scalar<K>(field, 2);
          for (int t = 0; t < (int)s2.v.size(); ++t) s2.v(t) = rng.scalar<K>(field, 2);
          // exact projections downstairs: solve the biproduct equations for
          // (p1, p2) in the reduced category, then lift with noise
          const auto& b = *d.reduced;
          Mor<K> rs1 = d.red.apply(s1), rs2 = d.red.apply(s2);
          // unknowns (p1, p2): stack equations p1 s1 = 1, p1 s2 = 0, p2 s2 = 1,
          // p2 s1 = 0, s1 p1 + s2 p2 = 1
          int d1 = b.hom_dim(2, 0), d2 = b.hom_dim(2, 1);
          Mat<K> m = Mat<K>::Zero(b.hom_dim(0, 0) + b.hom_dim(0, 1) + b.hom_dim(1, 1) + b.hom_dim(1, 0) +
                                      b.hom_dim(2, 2),
                                  d1 + d2);
          int row = 0;
          m.block(row, 0, b.hom_dim(0, 0), d1) = b.precompose_matrix(rs1, 0);
          row += b.hom_dim(0, 0);
          m.block(row, 0, b.hom_dim(0, 1), d1) = b.precompose_matrix(rs2, 0);
          row += b.hom_dim(0, 1);
          m.block(row, d1, b.hom_dim(1, 1), d2) = b.precompose_matrix(rs2, 1);
          row += b.hom_dim(1, 1);
          m.block(row, d1, b.hom_dim(1, 0), d2) = b.precompose_matrix(rs1, 1);
          row += b.hom_dim(1, 0);
          m.block(row, 0, b.hom_dim(2, 2), d1) = b.postcompose_matrix(rs1, 2);
          m.block(row, d1, b.hom_dim(2, 2), d2) = b.postcompose_matrix(rs2, 2);
          Vec<K> rhs = Vec<K>::Zero(m.rows());
          rhs.segment(0, b.hom_dim(0, 0)) = b.identity[0];
          rhs.segment(b.hom_dim(0, 0) + b.hom_dim(0, 1), b.hom_dim(1, 1)) = b.identity[1];
          rhs.segment(row, b.hom_dim(2, 2)) = b.identity[2];
          auto sol = solve<K>(m, Mat<K>(rhs));
          if (!sol) continue;
          Mor<K> p10 = c->zero_mor(2, 0), p20 = c->zero_mor(2, 1);
          for (int bb = 0; bb < c->rank[2][0]; ++bb)
            p10.v.segment(bb * dR, dR) = sec * sol->col(0).segment(bb * dS, dS);
          for (int bb = 0; bb < c->rank[2][1]; ++bb)
            p20.v.segment(bb * dR, dR) = sec * sol->col(0).segment(d1 + bb * dS, dS);
          // kernel noise
          for (int t = 0; t < (int)p10.v.size(); t += dR)
            for (int j = 0; j < ker.cols(); ++j)
              p10.v.segment(t, dR) += rng.scalar<K>(field, 1) * ker.col(j);
          auto bp = lift_biproduct<K>(d, s1, s2, p10, p20);
          out.check(biproduct_equations_hold<K>(*c, s1, s2, bp.p1, bp.p2), "A.6 equations fail exactly");
          built = true;
        }
        out.check(built, "could not build an A.6 instance");
      }
    }
  }
  return out;
}

// Karoubian transport: in a flat order-2 deformation of a Karoubian category,
// every enumerable idempotent of the total category splits.
template <class K>
BatteryResult karoubian_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"karoubian"};
  Rng rng(seed);
  (void)effort;
  long long p = field.characteristic();
  if (p == 0 || p > 5) {
    out.check(true, "");
    return out;  // enumeration only feasible over tiny prime fields
  }
  auto R = make_truncated_polynomial_ring<K>(field, 2);
  auto theta = make_residue_surjection<K>(R);
  auto c = std::make_shared<LinCategory<K>>(matrix_category<K>(R, {1, 1}));
  auto d = strict_deformation_from_total<K>(c, theta);
  for (int obj = 0; obj < 2; ++obj) {
    auto idems = enumerate_idempotents<K>(*c, obj, 1 << 22);
    for (const auto& e : idems) {
      // split the reduction downstairs: e mod I is idempotent in S ⊗ 𝔞;
      // over the matrix category its splitting is through object 0 or the
      // zero object; handle rank-0/rank-1 cases
      Mor<K> re = d.red.apply(e);
      const auto& b = *d.reduced;
      if (is_zero_matrix<K>(Mat<K>(re.v))) {
        // e reduces to 0: must itself be 0 by Nakayama-style rigidity of
        // idempotents (e = e^n ∈ I^n = 0)
        out.check(is_zero_matrix<K>(Mat<K>(e.v)), "idempotent over zero reduction is nonzero");
        continue;
      }
      if (is_zero_matrix<K>(Mat<K>(re.v - b.identity[obj]))) {
        auto [r, s] = split_idempotent_lift<K>(d, e, c->identity_mor(obj), c->identity_mor(obj));
        out.check(is_zero_matrix<K>(Mat<K>(c->compose(s, r).v - e.v)), "unit idempotent fails to split");
        continue;
      }
      out.check(false, "unexpected idempotent in a rank-1 hom");
    }
    out.check(!idems.empty(), "no idempotents enumerated");
  }
  (void)rng;
  return out;
}

template <class K>
BatteryResult strictify_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"strictify"};
  Rng rng(seed);
  auto kf = make_field_ring<K>(field);
  auto dual = make_truncated_polynomial_ring<K>(field, 2);
  auto cat = std::make_shared<LinCategory<K>>(one_object_category<K>(kf, *dual));
  auto h = make_hh_context<K>(cat);
  auto cl = classify<K>(h);
  for (int inst = 0; inst < effort; ++inst)
    for (const auto& d : cl.deformations) {
      // strict input: structurally identical output
      auto res = make_strict<K>(d);
      out.check(validate_deformation<K>(res.strict).ok(), "strictified deformation invalid");
      out.check(res.strict.total->rank == d.total->rank, "strict input changed shape");
      // non-strict fixture: duplicated object
      auto dup = duplicate_object_deformation<K>(d, 0);
      out.check(validate_deformation<K>(dup).ok(), "duplicated-object fixture invalid");
      auto fixed = make_strict<K>(dup);
      out.check(fixed.strict.strict && validate_deformation<K>(fixed.strict).ok(),
                "make_strict failed on the duplicated-object fixture");
      out.check(fixed.strict.total->n_objects() == d.reduced->n_objects(),
                "strictification did not use the reduced object set");
      auto nat = validate_nat_transform<K>(fixed.strict.red,
                                           compose_functors<K>(dup.red, fixed.phi), fixed.eta);
      out.check(nat.ok(), "strictification witness is not natural");
    }
  // strictify_equivalence: conjugation by a unit on the t²=ε deformation
  const auto& d2 = cl.deformations.back();
  {
    auto theta = d2.theta;
    Mor<K> u = random_unit_endo<K>(rng, *d2.total, 0, theta);
    auto uinv = two_sided_inverse<K>(*d2.total, u);
    if (uinv) {
      LinFunctor<K> phi = identity_functor<K>(d2.total);
      // φ(f) = u^{-1} ∘ f ∘ u
      phi.mats[0][0] = d2.total->precompose_matrix(u, 0) * d2.total->postcompose_matrix(*uinv, 0);
      out.check(validate_functor<K>(phi).ok(), "conjugation functor invalid");
      // η: f1 -> f2∘φ with components red(u)
      std::vector<Mor<K>> eta{d2.red.apply(u)};
      auto se = strictify_equivalence<K>(d2, d2, phi, eta);
      out.check(validate_functor<K>(se.phi_prime).ok(), "φ' invalid");
      LinFunctor<K> f2p = compose_functors<K>(d2.red, se.phi_prime);
      out.check(is_zero_matrix<K>(Mat<K>(f2p.mats[0][0] - d2.red.mats[0][0])), "f2∘φ' ≠ f1");
    }
  }
  return out;
}

template <class K>
BatteryResult diagram_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"diagram"};
  (void)seed;
  (void)effort;
  auto kf = make_field_ring<K>(field);
  // Sierpinski with constant field
  StructurePresheaf<K> o;
  o.poset.labels = {"p", "X"};
  o.poset.leq = {{true, true}, {false, true}};
  o.base = kf;
  o.algebra = {kf, kf};
  for (int i = 0; i < 2; ++i) o.res[{i, i}] = Mat<K>::Identity(1, 1);
  o.res[{1, 0}] = Mat<K>::Identity(1, 1);
  auto sp = make_space_context<K>(o, true);
  out.check(validate_category<K>(*sp.u).ok(), "diagram category invalid");
  // formula (8.4) as an executable identity
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) {
      auto pu = presheaf_to_module<K>(sp, representable_presheaf<K>(sp.o, u));
      auto pv = presheaf_to_module<K>(sp, representable_presheaf<K>(sp.o, v));
      int expected = o.poset.leq[u][v] ? o.algebra[u]->dim() : 0;
      out.check((int)hom_space<K>(pu, pv).cols() == expected, "formula (8.4) fails");
    }
  // cohomology degree 0 = value
  for (int u = 0; u < 2; ++u) {
    auto pu = presheaf_to_module<K>(sp, representable_presheaf<K>(sp.o, u));
    int val = rank_of<K>(pu.act_of(sp.ctx->obj_idems[u]));
    out.check(space_cohomology<K>(sp, u, pu, 0).dim == val, "H^0 is not the value");
  }
  out.check(acyclicity_check<K>(sp).pass, "constant sheaf not acyclic");
  auto sc = classify_space_deformations<K>(sp);
  out.check(sc.classes.hh2_dim == 0, "Sierpinski space not rigid");
  // one-point space with the dual numbers reproduces the Gerstenhaber run
  auto dual = make_truncated_polynomial_ring<K>(field, 2);
  StructurePresheaf<K> o2;
  o2.poset.labels = {"pt"};
  o2.poset.leq = {{true}};
  o2.base = kf;
  o2.algebra = {dual};
  o2.res[{0, 0}] = Mat<K>::Identity(2, 2);
  auto sp2 = make_space_context<K>(o2, true);
  auto sc2 = classify_space_deformations<K>(sp2);
  auto direct = classify<K>(make_hh_context<K>(std::make_shared<LinCategory<K>>(
      one_object_category<K>(kf, *dual))));
  out.check(sc2.classes.hh2_dim == direct.hh2_dim && sc2.classes.hh1_dim == direct.hh1_dim,
            "one-point space does not reduce to the algebra classification");
  out.check(sc2.classes.deformations.size() == direct.deformations.size(),
            "one-point space classification differs");
  // two incomparable points: rigid
  StructurePresheaf<K> o3;
  o3.poset.labels = {"a", "b"};
  o3.poset.leq = {{true, false}, {false, true}};
  o3.base = kf;
  o3.algebra = {kf, kf};
  o3.res[{0, 0}] = Mat<K>::Identity(1, 1);
  o3.res[{1, 1}] = Mat<K>::Identity(1, 1);
  auto sp3 = make_space_context<K>(o3, true);
  auto sc3 = classify_space_deformations<K>(sp3);
  out.check(sc3.classes.hh2_dim == 0, "discrete two-point space not rigid");
  return out;
}

template <class K>
BatteryResult reconstruction_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"reconstruction"};
  Rng rng(seed);
  (void)effort;
  auto kf = make_field_ring<K>(field);
  auto dual = make_truncated_polynomial_ring<K>(field, 2);
  std::vector<CatPtr<K>> cats;
  cats.push_back(std::make_shared<LinCategory<K>>(one_object_category<K>(kf, *make_field_ring<K>(field))));
  cats.push_back(std::make_shared<LinCategory<K>>(one_object_category<K>(kf, *dual)));
  cats.push_back(std::make_shared<LinCategory<K>>(a2_path_category<K>(kf)));
  for (const auto& cat : cats) {
    auto ctx = make_context<K>(cat);
    auto st = category_structure<K>(*ctx);
    auto inj = injectives<K>(ctx, st);
    auto ia = inj_category_algebra<K>(inj);
    std::vector<AlgebraModule<K>> battery;
    for (size_t i = 0; i < st.prim_idems.size(); ++i) {
      if (st.simple_class[i] != (int)i) continue;
      battery.push_back(st.simple[i]);
      battery.push_back(st.proj[i]);
      battery.push_back(st.inj[i]);
    }
    // a random extension: middle of a random short exact sequence
    auto b = concrete_functor_module<K>(random_functor_module<K>(rng, ctx)).mod;
    if (b.dim > 0) battery.push_back(b);
    auto rep = reconstruct_from_injectives<K>(*ctx, inj, ia, battery);
    out.check(rep.fully_faithful, "Ψ not fully faithful: " +
                                      (rep.failures.empty() ? std::string() : rep.failures.front()));
    // injective envelopes are essential monos
    for (const auto& m : battery) {
      if (m.dim == 0) continue;
      auto env = injective_envelope_concrete<K>(*ctx, m);
      out.check(rank_of<K>(env.embedding) == m.dim, "envelope embedding not mono");
      out.check(embedding_is_essential<K>(*ctx, env), "envelope embedding not essential");
      out.check(is_injective_module<K>(*ctx, st, env.envelope), "envelope not injective");
    }
  }
  return out;
}

// injective lifting battery (Cor 6.15 at finite scale)
template <class K>
BatteryResult injective_lift_invariants(FieldContext<K> field, unsigned seed, int effort) {
  BatteryResult out{"injective-lift"};
  (void)seed;
  (void)effort;
  auto kf = make_field_ring<K>(field);
  auto dual = make_truncated_polynomial_ring<K>(field, 2);
  auto cat = std::make_shared<LinCategory<K>>(one_object_category<K>(kf, *dual));
  auto h = make_hh_context<K>(cat);
  auto cl = classify<K>(h);  // trivial and t² = ε
  std::vector<CatPtr<K>> more = {std::make_shared<LinCategory<K>>(a2_path_category<K>(kf))};
  std::vector<LinearDeformation<K>> defs = cl.deformations;
  for (const auto& c : more) {
    auto hh2 = make_hh_context<K>(c);
    defs.push_back(first_order_deformation<K>(hh2, Cochain<K>::zero(hh2, 2)));
  }
  for (const auto& d : defs) {
    BaseChange<K> bc = make_base_change<K>(d.total, d.theta);
    auto up_st = analyze_algebra<K>(bc.up->lambda);
    auto down_st = analyze_algebra<K>(bc.down->lambda);
    for (size_t i = 0; i < down_st.prim_idems.size(); ++i) {
      if (down_st.simple_class[i] != (int)i) continue;
      auto lifts = lift_injective<K>(bc, up_st, down_st.inj[i]);
      out.check(!lifts.empty(), "no injective lift found");
      for (const auto& l : lifts) {
        out.check(is_injective_module<K>(*bc.up, up_st, l.lift), "lift not injective");
        auto hu = hom_up<K>(bc, l.lift);
        out.check(find_isomorphism<K>(hu.mod, down_st.inj[i]).has_value(),
                  "lift reduction not isomorphic to the input");
      }
      // a second computed lift: the injective envelope of the socle of the
      // first one; Cor 6.15 forces the two to be isomorphic
      Mat<K> soc = ideal_annihilator<K>(lifts[0].lift, bc.up->radical);
      AlgebraModule<K> socmod = soc.cols() ? submodule_on<K>(lifts[0].lift, soc)
                                           : zero_module<K>(bc.up->lambda);
      auto env = injective_envelope_concrete<K>(*bc.up, socmod);
      out.check(find_isomorphism<K>(env.envelope, lifts[0].lift).has_value(),
                "two computed lifts are not isomorphic");
    }
  }
  return out;
}

// the quantum-torus first-order deformation y x = (1+ε) x y of
// k[x,y]/(x^p − 1, y^p − 1), p = char k, as a one-object category
template <class K>
LinearDeformation<K> quantum_torus_deformation(FieldContext<K> field) {
  const int p = (int)field.characteristic();
  if (p <= 0) throw std::invalid_argument("quantum torus requires positive characteristic");
  auto R = make_truncated_polynomial_ring<K>(field, 2);
  auto total = std::make_shared<LinCategory<K>>();
  total->ring = R;
  total->objects = {"*"};
  const int rank = p * p;
  total->rank = {{rank}};
  auto bidx = [&](int a, int b) { return a * p + b; };
  typename LinCategory<K>::Table t(rank, std::vector<Vec<K>>(rank));
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int e = 0; e < p; ++e) {
          // (x^a y^b) · (x^c y^e) = (1 + b c ε) x^{a+c} y^{b+e}
          Vec<K> out = Vec<K>::Zero(rank * 2);
          int tgt = bidx((a + c) % p, (b + e) % p);
          out(tgt * 2) = field.make(1);
          out(tgt * 2 + 1) = field.make((long long)b * c);
          t[bidx(a, b)][bidx(c, e)] = std::move(out);
        }
  total->comp[{0, 0, 0}] = std::move(t);
  Vec<K> id = Vec<K>::Zero(rank * 2);
  id(0) = field.make(1);
  total->identity = {id};
  return strict_deformation_from_total<K>(total, make_residue_surjection<K>(R));
}

// the commutative reduction k[x,y]/(x^p−1, y^p−1) built directly, for the
// exact base-change comparison
template <class K>
LinCategory<K> commutative_torus_category(FieldContext<K> field, const RingPtr<K>& base) {
  const int p = (int)field.characteristic();
  LinCategory<K> c;
  c.ring = base;
  c.objects = {"*"};
  const int rank = p * p;
  c.rank = {{rank}};
  auto bidx = [&](int a, int b) { return a * p + b; };
  typename LinCategory<K>::Table t(rank, std::vector<Vec<K>>(rank));
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int cc = 0; cc < p; ++cc)
        for (int e = 0; e < p; ++e) {
          Vec<K> out = Vec<K>::Zero(rank);
          out(bidx((a + cc) % p, (b + e) % p)) = field.make(1);
          t[bidx(a, b)][bidx(cc, e)] = std::move(out);
        }
  c.comp[{0, 0, 0}] = std::move(t);
  Vec<K> id = Vec<K>::Zero(rank);
  id(0) = field.make(1);
  c.identity = {id};
  return c;
}

// ---------------------------------------------------------------------------
// Prop 2.9 identity battery on mod(𝔞): items (0)–(8) as dimension equalities
// with witnessed isomorphisms
// ---------------------------------------------------------------------------

// Hom of functor modules as a concrete R-module
template <class K>
AlgebraModule<K> hom_as_r_module(const CatContext<K>& ctx, const AlgebraModule<K>& a,
                                 const AlgebraModule<K>& b) {
  Mat<K> homs = hom_space<K>(a, b);
  AlgebraModule<K> m;
  m.alg = ctx.ring_alg;
  m.dim = (int)homs.cols();
  m.act.resize(ctx.ring_alg->dim());
  for (int i = 0; i < ctx.ring_alg->dim(); ++i) {
    if (m.dim == 0) {
      m.act[i] = Mat<K>(0, 0);
      continue;
    }
    Mat<K> rho = b.act_of(Vec<K>(ctx.iota.col(i)));
    Mat<K> big(homs.rows(), homs.cols());
    for (int c = 0; c < homs.cols(); ++c)
      big.col(c) = vectorize<K>(Mat<K>(rho * unvectorize<K>(Vec<K>(homs.col(c)), b.dim, a.dim)));
    m.act[i] = *solve<K>(homs, big);
  }
  return m;
}

template <class K>
BatteryResult prop29_battery(FieldContext<K> field, unsigned seed, int instances) {
  BatteryResult out{"prop-2.9"};
  Rng rng(seed);
  std::vector<int> orders = {2, 3};
  for (int inst = 0; inst < instances; ++inst) {
    int order = orders[inst % orders.size()];
    auto R = make_truncated_polynomial_ring<K>(field, order);
    RingModuleContext<K> rctx(R);
    bool use_a2 = inst % 3 == 2;
    CatPtr<K> cat = use_a2 ? std::make_shared<LinCategory<K>>(a2_path_category<K>(R))
                           : std::make_shared<LinCategory<K>>(matrix_category<K>(R, {1}));
    auto ctx = make_context<K>(cat);
    auto st = category_structure<K>(*ctx);
    const int n = ctx->n_objects();
    auto x = random_fp_module<K>(rng, R, 2, 2);
    auto y = random_fp_module<K>(rng, R, 2, 2);
    // flat-and-coflat C, D: sums of representables (free values over a
    // Frobenius base); injective E: sums of indecomposable injectives
    auto random_proj = [&]() {
      std::vector<AlgebraModule<K>> parts;
      int t = (int)rng.uniform(1, 2);
      for (int i = 0; i < t; ++i)
        parts.push_back(concrete_functor_module<K>(
                            FpFunctorModule<K>::representable(ctx, (int)rng.uniform(0, n - 1)))
                            .mod);
      return direct_sum<K>(parts);
    };
    auto random_inj = [&]() {
      std::vector<AlgebraModule<K>> parts;
      int t = (int)rng.uniform(1, 2);
      for (int i = 0; i < t; ++i) {
        int pick = (int)rng.uniform(0, (long long)st.prim_idems.size() - 1);
        parts.push_back(st.inj[st.simple_class[pick]]);
      }
      return direct_sum<K>(parts);
    };
    AlgebraModule<K> c = random_proj();
    AlgebraModule<K> dmod = random_proj();
    AlgebraModule<K> e = random_inj();
    auto iso_r = [&](const AlgebraModule<K>& p, const AlgebraModule<K>& q, const std::string& item) {
      out.check(p.dim == q.dim && (p.dim == 0 || find_isomorphism<K>(p, q).has_value()),
                item + " (order " + std::to_string(order) + ")");
    };
    // (0) 𝒞(X⊗C, D) ≅ Hom_R(X, 𝒞(C,D)) ≅ 𝒞(C, Hom_R(X,D))
    {
      AlgebraModule<K> xc = tensor_pointwise_concrete<K>(*ctx, x, c);
      AlgebraModule<K> lhs = hom_as_r_module<K>(*ctx, xc, dmod);
      FpModule<K> cd = minimal_fp_module<K>(rctx, hom_as_r_module<K>(*ctx, c, dmod));
      AlgebraModule<K> mid = hom_module<K>(rctx, x, cd).mod;
      AlgebraModule<K> rhs = hom_as_r_module<K>(*ctx, c, hom_pointwise_concrete<K>(*ctx, x, dmod));
      iso_r(lhs, mid, "(0) first identity fails");
      iso_r(mid, rhs, "(0) second identity fails");
    }
    // (1) Hom_R(X⊗Y, C) ≅ Hom_R(X, Hom_R(Y, C))
    {
      AlgebraModule<K> lhs = hom_pointwise_concrete<K>(*ctx, tensor_product<K>(x, y), c);
      AlgebraModule<K> rhs = hom_pointwise_concrete<K>(*ctx, x, hom_pointwise_concrete<K>(*ctx, y, c));
      out.check(lhs.dim == rhs.dim && (lhs.dim == 0 || find_isomorphism<K>(lhs, rhs).has_value()),
                "(1) hom-tensor adjunction fails");
    }
    // (2) (X⊗Y)⊗C ≅ X⊗(Y⊗C)
    {
      AlgebraModule<K> lhs = tensor_pointwise_concrete<K>(*ctx, tensor_product<K>(x, y), c);
      AlgebraModule<K> rhs = tensor_pointwise_concrete<K>(*ctx, x, tensor_pointwise_concrete<K>(*ctx, y, c));
      out.check(lhs.dim == rhs.dim && (lhs.dim == 0 || find_isomorphism<K>(lhs, rhs).has_value()),
                "(2) associativity of ⊗ fails");
    }
    // (3) C coflat: X ⊗ Hom_R(Y,C) ≅ Hom_R(Hom_R(X,Y), C)
    {
      AlgebraModule<K> lhs = tensor_pointwise_concrete<K>(*ctx, x, hom_pointwise_concrete<K>(*ctx, y, c));
      AlgebraModule<K> rhs = hom_pointwise_concrete<K>(*ctx, hom_fp<K>(rctx, x, y), c);
      out.check(lhs.dim == rhs.dim && (lhs.dim == 0 || find_isomorphism<K>(lhs, rhs).has_value()),
                "(3) coflat duality fails");
    }
    // (4) D flat: Hom_R(X, Y⊗D) ≅ Hom_R(X,Y) ⊗ D
    {
      AlgebraModule<K> lhs = hom_pointwise_concrete<K>(*ctx, x, tensor_pointwise_concrete<K>(*ctx, y, dmod));
      AlgebraModule<K> rhs = tensor_pointwise_concrete<K>(*ctx, hom_fp<K>(rctx, x, y), dmod);
      out.check(lhs.dim == rhs.dim && (lhs.dim == 0 || find_isomorphism<K>(lhs, rhs).has_value()),
                "(4) flat base change fails");
    }
    // (5) E injective: X ⊗ 𝒞(C,E) ≅ 𝒞(Hom_R(X,C), E)
    {
      FpModule<K> ce = minimal_fp_module<K>(rctx, hom_as_r_module<K>(*ctx, c, e));
      FpModule<K> lhs_fp = tensor_product<K>(x, ce);
      AlgebraModule<K> lhs = concrete_module<K>(rctx, lhs_fp).mod;
      AlgebraModule<K> rhs = hom_as_r_module<K>(*ctx, hom_pointwise_concrete<K>(*ctx, x, c), e);
      iso_r(lhs, rhs, "(5) injective duality fails");
    }
    // (6) E injective, C coflat ⟹ 𝒞(C,E) flat
    {
      FpModule<K> ce = minimal_fp_module<K>(rctx, hom_as_r_module<K>(*ctx, c, e));
      out.check(is_flat<K>(rctx, ce), "(6) 𝒞(C,E) not flat");
    }
    // (7) E injective, C flat ⟹ 𝒞(C,E) coflat
    {
      FpModule<K> ce = minimal_fp_module<K>(rctx, hom_as_r_module<K>(*ctx, c, e));
      out.check(is_coflat<K>(rctx, ce), "(7) 𝒞(C,E) not coflat");
    }
    // (8) Ext¹(C, Z⊗E') = 0 for all Z and E' flat ⟹ X ⊗ 𝒞(C,E') = 𝒞(C, X⊗E')
    //     and 𝒞(C,E') flat  (E' a flat module; hypothesis verified on a
    //     battery of Z including k, R, and a random module)
    {
      AlgebraModule<K> eflat = random_proj();
      bool hyp = true;
      std::vector<FpModule<K>> zs = {FpModule<K>::residue_field(R), FpModule<K>::free_module(R, 1),
                                     random_fp_module<K>(rng, R, 2, 2)};
      for (const auto& z : zs) {
        AlgebraModule<K> ze = tensor_pointwise_concrete<K>(*ctx, z, eflat);
        hyp = hyp && ext_concrete<K>(*ctx, 1, c, ze).dim == 0;
      }
      out.check(hyp, "(8) hypothesis unexpectedly fails for a projective C");
      if (hyp) {
        FpModule<K> ce = minimal_fp_module<K>(rctx, hom_as_r_module<K>(*ctx, c, eflat));
        AlgebraModule<K> lhs = concrete_module<K>(rctx, tensor_product<K>(x, ce)).mod;
        AlgebraModule<K> rhs =
            hom_as_r_module<K>(*ctx, c, tensor_pointwise_concrete<K>(*ctx, x, eflat));
        iso_r(lhs, rhs, "(8) conclusion fails");
        out.check(is_flat<K>(rctx, ce), "(8) 𝒞(C,E) not flat");
      }
    }
  }
  return out;
}

// 200 random fp modules over order ≤ 3 surjections (Prop 6.3 battery)
template <class K>
BatteryResult nakayama_battery(FieldContext<K> field, unsigned seed, int count) {
  BatteryResult out{"nakayama"};
  Rng rng(seed);
  for (int order = 2; order <= 3; ++order) {
    auto R = make_truncated_polynomial_ring<K>(field, order);
    auto theta = make_residue_surjection<K>(R);
    auto total = std::make_shared<LinCategory<K>>(matrix_category<K>(R, {1}));
    BaseChange<K> bc = make_base_change<K>(total, theta);
    for (int inst = 0; inst < count / 2; ++inst) {
      auto f = concrete_functor_module<K>(random_functor_module<K>(rng, bc.up, 2, 3)).mod;
      auto rep = nakayama_is_zero<K>(bc, f);
      out.check(rep.consistent(), "S ⊗ F = 0 does not match F = 0");
      // also the Hom_R(S,−) flavor
      auto hu = hom_up<K>(bc, f);
      out.check((hu.mod.dim == 0) == (f.dim == 0), "Hom_R(S,F) = 0 does not match F = 0");
    }
  }
  return out;
}

}  // namespace defcat
