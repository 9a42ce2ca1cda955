#pragma once

#include "defcat/basechange.hpp"

#include <functional>
#include <map>

namespace defcat {

// Hochschild cochains of a finite S-linear category, S a field.  Cochains
// are normalized: they vanish whenever an argument is (a multiple of) an
// identity, so argument slots run over a complement of the identity inside
// each endomorphism hom.
//
// Orientation: an n-cochain consumes (f_1, ..., f_n) with f_i ∈ 𝔟(x_i,
// x_{i-1}) — a string composable as f_1 ∘ f_2 ∘ ... ∘ f_n — and outputs in
// 𝔟(x_n, x_0).
template <class K>
struct HHContext {
  CatPtr<K> cat;
  std::vector<std::vector<Mat<K>>> red;       // red[x][y]: hom_dim x reduced_dim basis
  std::vector<std::vector<Mat<K>>> red_proj;  // reduced_dim x hom_dim projection killing id

  int reduced_dim(int x, int y) const { return (int)red[x][y].cols(); }
};

template <class K>
std::shared_ptr<const HHContext<K>> make_hh_context(const CatPtr<K>& cat) {
  if (cat->ring->dim() != 1)
    throw std::invalid_argument("hochschild: category must be linear over a field");
  auto h = std::make_shared<HHContext<K>>();
  h->cat = cat;
  const int n = cat->n_objects();
  h->red.assign(n, std::vector<Mat<K>>(n));
  h->red_proj.assign(n, std::vector<Mat<K>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int hd = cat->hom_dim(x, y);
      if (x != y) {
        h->red[x][y] = Mat<K>::Identity(hd, hd);
        h->red_proj[x][y] = Mat<K>::Identity(hd, hd);
        continue;
      }
      Mat<K> id(hd, 1);
      id.col(0) = cat->identity[x];
      Mat<K> comp = complement_basis<K>(id, hd);
      Mat<K> frame = hstack<K>(id, comp);
      auto finv = inverse<K>(frame);
      if (!finv) throw std::domain_error("hochschild: degenerate identity");
      h->red[x][y] = comp;
      h->red_proj[x][y] = finv->bottomRows(comp.cols());
    }
  return h;
}

template <class K>
using HHCtxPtr = std::shared_ptr<const HHContext<K>>;

// composable object tuples (x_0, ..., x_n) with every reduced slot nonzero
inline void enumerate_tuples(int n_objects, int length, std::vector<std::vector<int>>& out,
                             const std::function<bool(const std::vector<int>&, int)>& slot_ok) {
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if ((int)cur.size() == length) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x < n_objects; ++x) {
      cur.push_back(x);
      if (cur.size() < 2 || slot_ok(cur, (int)cur.size() - 1)) rec();
      cur.pop_back();
    }
  };
  rec();
}

template <class K>
struct Cochain {
  HHCtxPtr<K> hctx;
  int degree = 0;
  // objects tuple (x_0..x_n) -> matrix: rows = hom_dim(x_n, x_0),
  // cols = prod_i reduced_dim(x_i, x_{i-1}) in mixed-radix (last arg fastest)
  std::map<std::vector<int>, Mat<K>> val;

  static Cochain zero(const HHCtxPtr<K>& h, int degree) {
    Cochain c;
    c.hctx = h;
    c.degree = degree;
    return c;
  }
};

// those object tuples of the given degree with nonzero cochain slots
template <class K>
std::vector<std::vector<int>> cochain_tuples(const HHContext<K>& h, int degree) {
  std::vector<std::vector<int>> out;
  enumerate_tuples(h.cat->n_objects(), degree + 1, out, [&](const std::vector<int>& cur, int i) {
    return h.reduced_dim(cur[i], cur[i - 1]) > 0;
  });
  return out;
}

template <class K>
int arg_block_size(const HHContext<K>& h, const std::vector<int>& objs) {
  int s = 1;
  for (size_t i = 1; i < objs.size(); ++i) s *= h.reduced_dim(objs[i], objs[i - 1]);
  return s;
}

// evaluate on arbitrary morphisms f_i ∈ Hom(x_i, x_{i-1}) (projecting each
// argument to the reduced complement — normalization)
template <class K>
Mor<K> evaluate_cochain(const Cochain<K>& c, const std::vector<int>& objs, const std::vector<Mor<K>>& args) {
  const auto& h = *c.hctx;
  const auto& cat = *h.cat;
  Mor<K> out = cat.zero_mor(objs.back(), objs.front());
  auto it = c.val.find(objs);
  if (it == c.val.end()) return out;
  // kron of reduced argument coordinates, last argument fastest
  Vec<K> kron(1);
  kron(0) = K(1);
  for (size_t i = 1; i < objs.size(); ++i) {
    Vec<K> red = h.red_proj[objs[i]][objs[i - 1]] * args[i - 1].v;
    Vec<K> next(kron.size() * red.size());
    for (int a = 0; a < kron.size(); ++a)
      for (int b = 0; b < red.size(); ++b) next(a * red.size() + b) = kron(a) * red(b);
    kron = std::move(next);
  }
  out.v = it->second * kron;
  return out;
}

// standard alternating-sum differential on the normalized complex
template <class K>
Cochain<K> differential(const Cochain<K>& c) {
  const auto& h = *c.hctx;
  const auto& cat = *h.cat;
  const int n = c.degree;
  Cochain<K> d = Cochain<K>::zero(c.hctx, n + 1);
  for (const auto& objs : cochain_tuples<K>(h, n + 1)) {
    const int rows = cat.hom_dim(objs.back(), objs.front());
    const int cols = arg_block_size<K>(h, objs);
    Mat<K> m = Mat<K>::Zero(rows, cols);
    // iterate over reduced-basis argument tuples
    std::vector<int> radix;
    for (size_t i = 1; i < objs.size(); ++i) radix.push_back(h.reduced_dim(objs[i], objs[i - 1]));
    std::vector<int> idx(radix.size(), 0);
    for (int col = 0; col < cols; ++col) {
      // args from mixed radix
      std::vector<Mor<K>> args;
      for (size_t i = 0; i < radix.size(); ++i) {
        Mor<K> f = cat.zero_mor(objs[i + 1], objs[i]);
        f.v = h.red[objs[i + 1]][objs[i]].col(idx[i]);
        args.push_back(std::move(f));
      }
      Vec<K> acc = Vec<K>::Zero(rows);
      // term 0: f_1 ∘ c(f_2..f_{n+1})
      {
        std::vector<int> sub(objs.begin() + 1, objs.end());
        std::vector<Mor<K>> rest(args.begin() + 1, args.end());
        acc += cat.compose(args[0], evaluate_cochain<K>(c, sub, rest)).v;
      }
      // inner terms
      K sign(-1);
      for (int i = 1; i <= n; ++i) {
        std::vector<int> sub;
        for (int t = 0; t < (int)objs.size(); ++t)
          if (t != i) sub.push_back(objs[t]);
        std::vector<Mor<K>> margs;
        for (int t = 0; t < (int)args.size(); ++t) {
          if (t == i - 1) {
            margs.push_back(cat.compose(args[i - 1], args[i]));
            ++t;  // skip the absorbed argument
          } else {
            margs.push_back(args[t]);
          }
        }
        acc += sign * evaluate_cochain<K>(c, sub, margs).v;
        sign = -sign;
      }
      // last term: ± c(f_1..f_n) ∘ f_{n+1}
      {
        std::vector<int> sub(objs.begin(), objs.end() - 1);
        std::vector<Mor<K>> rest(args.begin(), args.end() - 1);
        acc += sign * cat.compose(evaluate_cochain<K>(c, sub, rest), args.back()).v;
      }
      m.col(col) = acc;
      // bump mixed radix, last fastest
      for (int i = (int)radix.size() - 1; i >= 0; --i) {
        if (++idx[i] < radix[i]) break;
        idx[i] = 0;
      }
    }
    if (!is_zero_matrix<K>(m)) d.val[objs] = std::move(m);
  }
  return d;
}

// ---------------------------------------------------------------------------
// cochain spaces as vectors
// ---------------------------------------------------------------------------

template <class K>
struct CochainSpace {
  HHCtxPtr<K> hctx;
  int degree;
  std::vector<std::vector<int>> tuples;
  std::vector<int> offsets;
  int dim = 0;
};

template <class K>
CochainSpace<K> cochain_space(const HHCtxPtr<K>& h, int degree) {
  CochainSpace<K> s;
  s.hctx = h;
  s.degree = degree;
  s.tuples = cochain_tuples<K>(*h, degree);
  for (const auto& objs : s.tuples) {
    s.offsets.push_back(s.dim);
    s.dim += h->cat->hom_dim(objs.back(), objs.front()) * arg_block_size<K>(*h, objs);
  }
  return s;
}

template <class K>
Vec<K> cochain_to_vec(const CochainSpace<K>& s, const Cochain<K>& c) {
  Vec<K> v = Vec<K>::Zero(s.dim);
  for (size_t t = 0; t < s.tuples.size(); ++t) {
    auto it = c.val.find(s.tuples[t]);
    if (it == c.val.end()) continue;
    v.segment(s.offsets[t], it->second.rows() * it->second.cols()) = vectorize<K>(it->second);
  }
  return v;
}

template <class K>
Cochain<K> cochain_from_vec(const CochainSpace<K>& s, const Vec<K>& v) {
  Cochain<K> c = Cochain<K>::zero(s.hctx, s.degree);
  for (size_t t = 0; t < s.tuples.size(); ++t) {
    const auto& objs = s.tuples[t];
    int rows = s.hctx->cat->hom_dim(objs.back(), objs.front());
    int cols = arg_block_size<K>(*s.hctx, objs);
    Mat<K> m = unvectorize<K>(Vec<K>(v.segment(s.offsets[t], rows * cols)), rows, cols);
    if (!is_zero_matrix<K>(m)) c.val[objs] = std::move(m);
  }
  return c;
}

// matrix of d: C^n -> C^{n+1}
template <class K>
Mat<K> differential_matrix(const CochainSpace<K>& sn, const CochainSpace<K>& sn1) {
  Mat<K> m(sn1.dim, sn.dim);
  for (int c = 0; c < sn.dim; ++c) {
    Vec<K> e = Vec<K>::Zero(sn.dim);
    e(c) = K(1);
    m.col(c) = cochain_to_vec<K>(sn1, differential<K>(cochain_from_vec<K>(sn, e)));
  }
  return m;
}

template <class K>
struct HHClass {
  Cochain<K> representative;
};

template <class K>
struct HHResult {
  int dim = 0;
  std::vector<HHClass<K>> basis;
  CochainSpace<K> space;       // C^n
  Mat<K> cocycles;             // basis of ker d^n
  Mat<K> coboundaries;         // basis of im d^{n-1}
};

template <class K>
HHResult<K> hh(const HHCtxPtr<K>& h, int degree) {
  CochainSpace<K> sn = cochain_space<K>(h, degree);
  CochainSpace<K> sn1 = cochain_space<K>(h, degree + 1);
  Mat<K> dn = differential_matrix<K>(sn, sn1);
  Mat<K> z = kernel_basis<K>(dn);
  Mat<K> b(sn.dim, 0);
  if (degree > 0) {
    CochainSpace<K> sm = cochain_space<K>(h, degree - 1);
    Mat<K> dm = differential_matrix<K>(sm, sn);
    b = column_space_basis<K>(dm);
  }
  HHResult<K> r{0, {}, sn, z, b};
  // representatives: columns of z extending the column space of b
  Mat<K> aug = hstack<K>(b, z);
  Mat<K> red = aug;
  std::vector<int> pivots = rref_in_place<K>(red);
  for (int c : pivots)
    if (c >= (int)b.cols()) {
      r.basis.push_back({cochain_from_vec<K>(sn, Vec<K>(z.col(c - b.cols())))});
      ++r.dim;
    }
  return r;
}

// ---------------------------------------------------------------------------
// first-order deformations
// ---------------------------------------------------------------------------

// category over S[ε]/(ε²) with composition m + ε·c
template <class K>
LinearDeformation<K> first_order_deformation(const HHCtxPtr<K>& h, const Cochain<K>& c) {
  const auto& cat = *h->cat;
  if (c.degree != 2) throw std::invalid_argument("first_order_deformation: cochain must have degree 2");
  // reject non-cocycles with the violated triple
  Cochain<K> dc = differential<K>(c);
  if (!dc.val.empty()) {
    const auto& objs = dc.val.begin()->first;
    throw std::invalid_argument("first_order_deformation: not a cocycle; differential nonzero on (" +
                                cat.objects[objs[0]] + "," + cat.objects[objs[1]] + "," +
                                cat.objects[objs[2]] + "," + cat.objects[objs[3]] + ")");
  }
  auto R = make_truncated_polynomial_ring<K>(cat.ring->field, 2);
  auto total = std::make_shared<LinCategory<K>>();
  total->ring = R;
  total->objects = cat.objects;
  total->rank = cat.rank;
  const int n = cat.n_objects();
  for (int x = 0; x < n; ++x) {
    Vec<K> id = Vec<K>::Zero(cat.hom_dim(x, x) * 2);
    for (int b = 0; b < cat.hom_dim(x, x); ++b) id(b * 2) = cat.identity[x](b);
    total->identity.push_back(std::move(id));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int r1 = cat.rank[x][y], r2 = cat.rank[y][z], r3 = cat.rank[x][z];
        if (r1 == 0 || r2 == 0) continue;
        typename LinCategory<K>::Table t(r2, std::vector<Vec<K>>(r1));
        bool any = false;
        for (int b2 = 0; b2 < r2; ++b2)
          for (int b1 = 0; b1 < r1; ++b1) {
            // m(g, f) + ε c(g, f): here g = f_1 ∈ Hom(y,z) = 𝔟(x_1,x_0)
            // with (x_0,x_1,x_2) = (z, y, x), f = f_2 ∈ Hom(x,y)
            Mor<K> g = cat.basis_mor(y, z, b2), f = cat.basis_mor(x, y, b1);
            Vec<K> m0 = cat.compose(g, f).v;
            Vec<K> eps = evaluate_cochain<K>(c, {z, y, x}, {g, f}).v;
            Vec<K> out = Vec<K>::Zero(r3 * 2);
            for (int b = 0; b < r3; ++b) {
              out(b * 2) = m0(b);
              out(b * 2 + 1) = eps(b);
            }
            any = any || !is_zero_matrix<K>(Mat<K>(out));
            t[b2][b1] = std::move(out);
          }
        if (any) total->comp[{x, y, z}] = std::move(t);
      }
  RingSurjection<K> theta = make_residue_surjection<K>(R);
  return strict_deformation_from_total<K>(total, theta);
}

// Gerstenhaber equivalence: c1 ~ c2 iff c1 - c2 = dg; on success returns the
// witness g and the deformation isomorphism 1 + εg
template <class K>
struct EquivalenceResult {
  bool equivalent = false;
  Cochain<K> witness;          // degree-1 g
  std::optional<LinFunctor<K>> functor;  // total(c1) -> total(c2)
};

template <class K>
LinFunctor<K> one_plus_epsilon_g(const HHCtxPtr<K>& h, const Cochain<K>& g, const CatPtr<K>& total1,
                                 const CatPtr<K>& total2) {
  const auto& cat = *h->cat;
  LinFunctor<K> phi;
  phi.source = total1;
  phi.target = total2;
  const int n = cat.n_objects();
  for (int x = 0; x < n; ++x) phi.obj.push_back(x);
  phi.mats.assign(n, std::vector<Mat<K>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int r = cat.rank[x][y];
      Mat<K> m = Mat<K>::Zero(r * 2, r * 2);
      for (int b = 0; b < r; ++b) {
        m(b * 2, b * 2) = K(1);
        m(b * 2 + 1, b * 2 + 1) = K(1);
        Vec<K> gb = evaluate_cochain<K>(g, {y, x}, {cat.basis_mor(x, y, b)}).v;
        for (int bb = 0; bb < r; ++bb) m(bb * 2 + 1, b * 2) += gb(bb);
      }
      phi.mats[x][y] = std::move(m);
    }
  return phi;
}

template <class K>
EquivalenceResult<K> are_equivalent(const HHCtxPtr<K>& h, const Cochain<K>& c1, const Cochain<K>& c2) {
  EquivalenceResult<K> r;
  CochainSpace<K> s1 = cochain_space<K>(h, 1);
  CochainSpace<K> s2 = cochain_space<K>(h, 2);
  Mat<K> d1 = differential_matrix<K>(s1, s2);
  Vec<K> rhs = cochain_to_vec<K>(s2, c1) - cochain_to_vec<K>(s2, c2);
  auto sol = solve<K>(d1, Mat<K>(rhs));
  if (!sol) return r;
  r.equivalent = true;
  r.witness = cochain_from_vec<K>(s1, Vec<K>(sol->col(0)));
  return r;
}

// full equivalence check with functor witness between the two deformations
template <class K>
EquivalenceResult<K> are_equivalent_with_functor(const HHCtxPtr<K>& h, const Cochain<K>& c1,
                                                 const Cochain<K>& c2) {
  EquivalenceResult<K> r = are_equivalent<K>(h, c1, c2);
  if (!r.equivalent) return r;
  auto d1 = first_order_deformation<K>(h, c1);
  auto d2 = first_order_deformation<K>(h, c2);
  LinFunctor<K> phi = one_plus_epsilon_g<K>(h, r.witness, d1.total, d2.total);
  auto rep = validate_functor<K>(phi);
  if (!rep.ok()) throw std::domain_error("are_equivalent: witness functor invalid: " + rep.summary());
  // isomorphism of deformations: f2 ∘ φ = f1 exactly
  for (int x = 0; x < h->cat->n_objects(); ++x)
    for (int y = 0; y < h->cat->n_objects(); ++y) {
      Mat<K> lhs = d2.red.mats[x][y] * phi.mats[x][y];
      if (!is_zero_matrix<K>(Mat<K>(lhs - d1.red.mats[x][y])))
        throw std::domain_error("are_equivalent: witness does not commute with reductions");
    }
  r.functor = phi;
  return r;
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

template <class K>
struct Classification {
  int hh1_dim = 0;
  int hh2_dim = 0;
  std::vector<LinearDeformation<K>> deformations;  // trivial first
  std::vector<Cochain<K>> cocycles;                // aligned with deformations
  bool pairwise_inequivalent = true;
};

template <class K>
Classification<K> classify(const HHCtxPtr<K>& h) {
  Classification<K> out;
  out.hh1_dim = hh<K>(h, 1).dim;
  HHResult<K> h2 = hh<K>(h, 2);
  out.hh2_dim = h2.dim;
  Cochain<K> zero = Cochain<K>::zero(h, 2);
  out.cocycles.push_back(zero);
  out.deformations.push_back(first_order_deformation<K>(h, zero));
  for (const auto& cls : h2.basis) {
    out.cocycles.push_back(cls.representative);
    out.deformations.push_back(first_order_deformation<K>(h, cls.representative));
  }
  for (size_t i = 0; i < out.cocycles.size() && out.pairwise_inequivalent; ++i)
    for (size_t j = i + 1; j < out.cocycles.size(); ++j)
      if (are_equivalent<K>(h, out.cocycles[i], out.cocycles[j]).equivalent) {
        out.pairwise_inequivalent = false;
        break;
      }
  return out;
}

// ---------------------------------------------------------------------------
// the module-category side of a deformation (Thm 8.16's μ at finite scale)
// ---------------------------------------------------------------------------

template <class K>
struct ModOfDeformationReport {
  bool representables_match = true;   // S ⊗ 𝔞(x,−) ≅ 𝔟(x,−)
  bool random_fp_reduce = true;       // tensor_up lands in mod(𝔟)
  bool flat_dims_match = true;        // dim F = dim R / dim S · dim S⊗F objectwise
  ValidationReport details;
};

template <class K>
ModOfDeformationReport<K> mod_of_deformation(const LinearDeformation<K>& d, unsigned seed = 99) {
  if (!d.flat) throw std::invalid_argument("mod_of_deformation: deformation must be flat");
  ModOfDeformationReport<K> rep;
  BaseChange<K> bc = make_base_change<K>(d.total, d.theta);
  const int n = d.total->n_objects();
  const int dim_ratio_num = d.theta.source->dim(), dim_ratio_den = d.theta.target->dim();
  for (int x = 0; x < n; ++x) {
    auto up_rep = concrete_functor_module<K>(FpFunctorModule<K>::representable(bc.up, x));
    auto down_rep = concrete_functor_module<K>(FpFunctorModule<K>::representable(bc.down, x));
    auto tu = tensor_up<K>(bc, up_rep.mod);
    if (!find_isomorphism<K>(tu.mod, down_rep.mod)) {
      rep.representables_match = false;
      rep.details.fail("representable at " + d.total->objects[x] + " does not reduce to a representable");
    }
    // flat dimension bookkeeping objectwise
    for (int y = 0; y < n; ++y) {
      int updim = rank_of<K>(up_rep.mod.act_of(bc.up->obj_idems[y]));
      int downdim = rank_of<K>(tu.mod.act_of(bc.down->obj_idems[y]));
      if (updim * dim_ratio_den != downdim * dim_ratio_num) {
        rep.flat_dims_match = false;
        rep.details.fail("flat dimension bookkeeping fails at (" + d.total->objects[x] + "," +
                         d.total->objects[y] + ")");
      }
    }
  }
  // random fp modules reduce to fp modules over 𝔟
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    FpFunctorModule<K> f;
    f.ctx = bc.up;
    int gens = 1 + (int)(rng() % 2), rels = (int)(rng() % 3);
    for (int i = 0; i < gens; ++i) f.targets.push_back((int)(rng() % n));
    for (int i = 0; i < rels; ++i) f.sources.push_back((int)(rng() % n));
    f.delta.assign(gens, std::vector<Mor<K>>(rels));
    for (int j = 0; j < gens; ++j)
      for (int i = 0; i < rels; ++i) {
        Mor<K> m = d.total->zero_mor(f.targets[j], f.sources[i]);
        for (int t = 0; t < (int)m.v.size(); ++t) m.v(t) = d.total->ring->field.make((long long)(rng() % 5));
        f.delta[j][i] = std::move(m);
      }
    auto fc = concrete_functor_module<K>(f);
    auto tu = tensor_up<K>(bc, fc.mod);
    try {
      auto back = functor_module_from_concrete<K>(bc.down, tu.mod);
      (void)back;
    } catch (const std::exception& e) {
      rep.random_fp_reduce = false;
      rep.details.fail(std::string("random fp module failed to reduce: ") + e.what());
    }
  }
  return rep;
}

}  // namespace defcat
