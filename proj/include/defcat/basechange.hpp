#pragma once

#include "defcat/funmod.hpp"

namespace defcat {

// The two module categories of a strict flat deformation 𝔞 over θ: R → S,
// with 𝔟 = S ⊗_R 𝔞 realized on the same objects.  q is the induced
// k-algebra surjection Λ(𝔞) → Λ(𝔟).
template <class K>
struct BaseChange {
  RingSurjection<K> theta;
  CatCtxPtr<K> up;    // Λ(𝔞)
  CatCtxPtr<K> down;  // Λ(𝔟)
  Mat<K> q;           // Λ(𝔞) -> Λ(𝔟)
  Mat<K> sec;         // k-linear section of q
  Mat<K> ring_kernel;  // basis of I ⊆ R
};

template <class K>
BaseChange<K> make_base_change(const CatPtr<K>& total, const RingSurjection<K>& theta) {
  BaseChange<K> bc;
  bc.theta = theta;
  bc.up = make_context<K>(total);
  auto reduced = std::make_shared<LinCategory<K>>(base_change_category<K>(*total, theta));
  bc.down = make_context<K>(reduced);
  const int n = total->n_objects();
  const int dR = theta.source->dim(), dS = theta.target->dim();
  bc.q = Mat<K>::Zero(bc.down->lambda->dim(), bc.up->lambda->dim());
  Mat<K> s = section_of<K>(theta);
  bc.sec = Mat<K>::Zero(bc.up->lambda->dim(), bc.down->lambda->dim());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int offu = bc.up->block(x, y), offd = bc.down->block(x, y);
      if (offu < 0) continue;
      for (int b = 0; b < total->rank[x][y]; ++b) {
        bc.q.block(offd + b * dS, offu + b * dR, dS, dR) = theta.theta;
        bc.sec.block(offu + b * dR, offd + b * dS, dR, dS) = s;
      }
    }
  bc.ring_kernel = theta.kernel();
  return bc;
}

// I·V for the ring-level kernel acting through the central embedding
template <class K>
Mat<K> kernel_times_module(const BaseChange<K>& bc, const AlgebraModule<K>& v) {
  if (bc.ring_kernel.cols() == 0) return Mat<K>(v.dim, 0);
  Mat<K> cols(v.dim, bc.ring_kernel.cols() * v.dim);
  int c = 0;
  for (int j = 0; j < bc.ring_kernel.cols(); ++j) {
    Mat<K> a = v.act_of(Vec<K>(bc.up->iota * bc.ring_kernel.col(j)));
    for (int t = 0; t < v.dim; ++t) cols.col(c++) = a.col(t);
  }
  return column_space_basis<K>(cols);
}

// restriction along 𝔞 → S ⊗ 𝔞: same space, action through q
template <class K>
AlgebraModule<K> restrict_module(const BaseChange<K>& bc, const AlgebraModule<K>& g) {
  AlgebraModule<K> r;
  r.alg = bc.up->lambda;
  r.dim = g.dim;
  r.act.resize(bc.up->lambda->dim());
  for (int i = 0; i < bc.up->lambda->dim(); ++i) r.act[i] = g.act_of(Vec<K>(bc.q * bc.up->lambda->gen(i)));
  return r;
}

// S ⊗_R F = F / IF with the induced Λ(𝔟)-action
template <class K>
struct TensorUpResult {
  AlgebraModule<K> mod;  // over Λ(𝔟)
  Mat<K> proj;           // F -> F/IF
  Mat<K> sect;
};

template <class K>
TensorUpResult<K> tensor_up(const BaseChange<K>& bc, const AlgebraModule<K>& f) {
  TensorUpResult<K> r;
  Mat<K> iv = kernel_times_module<K>(bc, f);
  Mat<K> proj, sect;
  AlgebraModule<K> quo_up = quotient_module<K>(f, iv, &proj, &sect);
  r.proj = proj;
  r.sect = sect;
  r.mod.alg = bc.down->lambda;
  r.mod.dim = quo_up.dim;
  r.mod.act.resize(bc.down->lambda->dim());
  for (int h = 0; h < bc.down->lambda->dim(); ++h)
    r.mod.act[h] = proj * f.act_of(Vec<K>(bc.sec * bc.down->lambda->gen(h))) * sect;
  return r;
}

// Hom_R(S, F) = { v : I v = 0 } with the induced Λ(𝔟)-action
template <class K>
struct HomUpResult {
  AlgebraModule<K> mod;  // over Λ(𝔟)
  Mat<K> incl;           // annihilator ⊆ F
};

template <class K>
HomUpResult<K> hom_up(const BaseChange<K>& bc, const AlgebraModule<K>& f) {
  HomUpResult<K> r;
  Mat<K> ann;
  if (bc.ring_kernel.cols() == 0) {
    ann = Mat<K>::Identity(f.dim, f.dim);
  } else {
    Mat<K> stacked(f.dim * bc.ring_kernel.cols(), f.dim);
    for (int j = 0; j < bc.ring_kernel.cols(); ++j)
      stacked.middleRows(j * f.dim, f.dim) = f.act_of(Vec<K>(bc.up->iota * bc.ring_kernel.col(j)));
    ann = kernel_basis<K>(stacked);
  }
  r.incl = ann;
  r.mod.alg = bc.down->lambda;
  r.mod.dim = (int)ann.cols();
  r.mod.act.resize(bc.down->lambda->dim());
  for (int h = 0; h < bc.down->lambda->dim(); ++h) {
    if (ann.cols() == 0) {
      r.mod.act[h] = Mat<K>(0, 0);
      continue;
    }
    auto x = solve<K>(ann, Mat<K>(f.act_of(Vec<K>(bc.sec * bc.down->lambda->gen(h))) * ann));
    if (!x) throw std::domain_error("hom_up: annihilator not invariant");
    r.mod.act[h] = *x;
  }
  return r;
}

// a map over 𝔞 induces maps on the three functors
template <class K>
Mat<K> tensor_up_map(const BaseChange<K>& bc, const AlgebraModule<K>& src, const AlgebraModule<K>& dst,
                     const TensorUpResult<K>& src_t, const TensorUpResult<K>& dst_t, const Mat<K>& f) {
  (void)src;
  (void)dst;
  return dst_t.proj * f * src_t.sect;
}

template <class K>
std::optional<Mat<K>> hom_up_map(const BaseChange<K>& bc, const HomUpResult<K>& src_h,
                                 const HomUpResult<K>& dst_h, const Mat<K>& f) {
  (void)bc;
  if (src_h.incl.cols() == 0) return Mat<K>(dst_h.incl.cols(), 0);
  auto x = solve<K>(dst_h.incl, Mat<K>(f * src_h.incl));
  if (!x) return std::nullopt;
  return *x;
}

// Nakayama (categorical): S ⊗_R F = 0 forces F = 0
template <class K>
struct NakayamaReport {
  bool tensor_zero = false;
  bool module_zero = false;
  bool consistent() const { return tensor_zero == module_zero; }
};

template <class K>
NakayamaReport<K> nakayama_is_zero(const BaseChange<K>& bc, const AlgebraModule<K>& f) {
  NakayamaReport<K> rep;
  rep.tensor_zero = tensor_up<K>(bc, f).mod.dim == 0;
  rep.module_zero = f.dim == 0;
  return rep;
}

// Hom_R(S,−) reflects monomorphisms: reports both sides of the implication
template <class K>
struct ReflectsMonoReport {
  bool hom_up_mono = false;
  bool mono = false;
  bool implication_holds() const { return !hom_up_mono || mono; }
};

template <class K>
ReflectsMonoReport<K> reflects_mono_check(const BaseChange<K>& bc, const AlgebraModule<K>& src,
                                          const AlgebraModule<K>& dst, const Mat<K>& f) {
  ReflectsMonoReport<K> rep;
  auto hs = hom_up<K>(bc, src);
  auto hd = hom_up<K>(bc, dst);
  auto hf = hom_up_map<K>(bc, hs, hd, f);
  if (!hf) throw std::domain_error("reflects_mono_check: map does not restrict");
  rep.hom_up_mono = rank_of<K>(*hf) == (int)hs.incl.cols();
  rep.mono = rank_of<K>(f) == src.dim;
  return rep;
}

// associated graded module ⊕_k I^k F / I^{k+1} F over Λ(𝔟)
template <class K>
struct GrResult {
  AlgebraModule<K> mod;        // over Λ(𝔟)
  std::vector<int> layer_dims;
};

template <class K>
GrResult<K> gr_module(const BaseChange<K>& bc, const AlgebraModule<K>& f) {
  // ring-level kernel powers
  std::vector<Mat<K>> powers;  // I^1, I^2, ... bases in R
  if (bc.ring_kernel.cols() > 0) {
    powers = ideal_power_chain<K>(*bc.theta.source, bc.ring_kernel);
    if (powers.back().cols() != 0) throw std::domain_error("gr_module: kernel not nilpotent");
  }
  std::vector<Mat<K>> layers;  // I^k F bases, k = 0, 1, ...
  layers.push_back(Mat<K>::Identity(f.dim, f.dim));
  for (const auto& pw : powers) {
    if (pw.cols() == 0) {
      layers.push_back(Mat<K>(f.dim, 0));
      break;
    }
    Mat<K> cols(f.dim, pw.cols() * f.dim);
    int c = 0;
    for (int j = 0; j < pw.cols(); ++j) {
      Mat<K> a = f.act_of(Vec<K>(bc.up->iota * pw.col(j)));
      for (int t = 0; t < f.dim; ++t) cols.col(c++) = a.col(t);
    }
    layers.push_back(column_space_basis<K>(cols));
  }
  if (layers.back().cols() != 0) layers.push_back(Mat<K>(f.dim, 0));
  GrResult<K> r;
  std::vector<AlgebraModule<K>> pieces;
  for (size_t t = 0; t + 1 < layers.size(); ++t) {
    // I^t F / I^{t+1} F with Λ(𝔟)-action
    AlgebraModule<K> sub = layers[t].cols() ? submodule_on<K>(f, layers[t]) : zero_module<K>(f.alg);
    Mat<K> next_in_sub =
        layers[t].cols() ? (layers[t + 1].cols() ? Mat<K>(*solve<K>(layers[t], Mat<K>(layers[t + 1])))
                                                 : Mat<K>(layers[t].cols(), 0))
                         : Mat<K>(0, 0);
    Mat<K> proj, sect;
    AlgebraModule<K> quo = sub.dim ? quotient_module<K>(sub, next_in_sub, &proj, &sect) : sub;
    AlgebraModule<K> piece;
    piece.alg = bc.down->lambda;
    piece.dim = quo.dim;
    piece.act.resize(bc.down->lambda->dim());
    for (int h = 0; h < bc.down->lambda->dim(); ++h) {
      if (quo.dim == 0) {
        piece.act[h] = Mat<K>(0, 0);
        continue;
      }
      piece.act[h] = proj * sub.act_of(Vec<K>(bc.sec * bc.down->lambda->gen(h))) * sect;
    }
    r.layer_dims.push_back(piece.dim);
    pieces.push_back(std::move(piece));
  }
  r.mod = pieces.empty() ? zero_module<K>(bc.down->lambda) : direct_sum<K>(pieces);
  return r;
}

// Injective lifting (Cor 6.15 at finite scale): all indecomposable
// injectives over 𝔞 whose Hom_R(S,−)-reduction is isomorphic to E.
template <class K>
struct InjectiveLift {
  AlgebraModule<K> lift;   // injective over Λ(𝔞)
  Mat<K> reduction_iso;    // hom_up(lift) ≅ E witness
};

template <class K>
std::vector<InjectiveLift<K>> lift_injective(const BaseChange<K>& bc, const AlgebraStructure<K>& up_st,
                                             const AlgebraModule<K>& e) {
  std::vector<InjectiveLift<K>> lifts;
  for (size_t i = 0; i < up_st.prim_idems.size(); ++i) {
    if (up_st.simple_class[i] != (int)i) continue;
    auto hu = hom_up<K>(bc, up_st.inj[i]);
    if (hu.mod.dim != e.dim) continue;
    auto iso = find_isomorphism<K>(hu.mod, e);
    if (iso) lifts.push_back({up_st.inj[i], *iso});
  }
  if (lifts.empty())
    throw std::domain_error(
        "lift_injective: no lift found — violates the unique-lift property for flat nilpotent "
        "deformations (internal invariant)");
  return lifts;
}

}  // namespace defcat
