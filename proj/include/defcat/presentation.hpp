#pragma once

#include "defcat/algebra.hpp"

#include <vector>

namespace defcat {

// Projective cover P = ⊕_i Λe_i for a list of idempotents.  For base rings
// all idempotents are 1 (free modules); for category algebras they are the
// object idempotents, so summands are representable functor modules.
template <class K>
struct Cover {
  AlgebraPtr<K> alg;
  std::vector<Vec<K>> idems;
  std::vector<Mat<K>> bases;  // basis of Λe_i inside Λ
  std::vector<int> offsets;
  int dim = 0;
  AlgebraModule<K> mod;  // the cover as a concrete module

  int summands() const { return (int)idems.size(); }

  // algebra element of Λe_i from its cover-block coordinates
  Vec<K> block_element(const Vec<K>& v, int i) const {
    return bases[i] * v.segment(offsets[i], bases[i].cols());
  }
  // cover coordinates of an element of Λe_i
  Vec<K> embed(int i, const Vec<K>& elt) const {
    auto x = solve<K>(bases[i], Mat<K>(elt));
    if (!x) throw std::domain_error("Cover::embed: element not in Λe");
    Vec<K> v = Vec<K>::Zero(dim);
    v.segment(offsets[i], bases[i].cols()) = x->col(0);
    return v;
  }
};

template <class K>
Cover<K> make_cover(const AlgebraPtr<K>& alg, const std::vector<Vec<K>>& idems) {
  Cover<K> c;
  c.alg = alg;
  c.idems = idems;
  for (const auto& e : idems) {
    c.offsets.push_back(c.dim);
    Mat<K> b = column_space_basis<K>(alg->rmul_of(e));  // Λe
    c.dim += (int)b.cols();
    c.bases.push_back(std::move(b));
  }
  c.mod.alg = alg;
  c.mod.dim = c.dim;
  c.mod.act.assign(alg->dim(), Mat<K>::Zero(c.dim, c.dim));
  for (int g = 0; g < alg->dim(); ++g)
    for (int i = 0; i < c.summands(); ++i) {
      auto x = solve<K>(c.bases[i], Mat<K>(alg->lmul[g] * c.bases[i]));
      if (!x) throw std::domain_error("make_cover: Λe not invariant (bad idempotent)");
      c.mod.act[g].block(c.offsets[i], c.offsets[i], c.bases[i].cols(), c.bases[i].cols()) = *x;
    }
  return c;
}

// Presentation of a module as coker(⊕_j Λf_j -> ⊕_i Λe_i); the component
// Λf_j -> Λe_i is right multiplication by delta[i][j] ∈ f_j Λ e_i.
template <class K>
struct Presentation {
  AlgebraPtr<K> alg;
  std::vector<Vec<K>> gens;
  std::vector<Vec<K>> rels;
  std::vector<std::vector<Vec<K>>> delta;  // [gens][rels], algebra elements

  static Presentation free_on(const AlgebraPtr<K>& alg, const std::vector<Vec<K>>& gens) {
    Presentation p;
    p.alg = alg;
    p.gens = gens;
    p.delta.assign(gens.size(), {});
    return p;
  }
};

template <class K>
struct ConcretePresentation {
  Cover<K> cover;        // generator cover
  Mat<K> rel_map;        // cover.dim x (relation cover dim)
  AlgebraModule<K> mod;  // the cokernel
  Mat<K> proj;           // cover coords -> module coords
  Mat<K> sect;           // module coords -> cover coords (a section of proj)
};

template <class K>
ConcretePresentation<K> presentation_to_concrete(const Presentation<K>& p) {
  ConcretePresentation<K> cp;
  cp.cover = make_cover<K>(p.alg, p.gens);
  Cover<K> relc = make_cover<K>(p.alg, p.rels);
  cp.rel_map = Mat<K>::Zero(cp.cover.dim, relc.dim);
  for (int j = 0; j < relc.summands(); ++j)
    for (int bc = 0; bc < relc.bases[j].cols(); ++bc) {
      Vec<K> b = relc.bases[j].col(bc);
      Vec<K> img = Vec<K>::Zero(cp.cover.dim);
      for (int i = 0; i < cp.cover.summands(); ++i) {
        Vec<K> elt = p.alg->mul(b, p.delta[i][j]);  // b * delta_{ij} in Λe_i
        auto x = solve<K>(cp.cover.bases[i], Mat<K>(elt));
        if (!x) throw std::domain_error("presentation_to_concrete: entry not in f Λ e");
        img.segment(cp.cover.offsets[i], cp.cover.bases[i].cols()) = x->col(0);
      }
      cp.rel_map.col(relc.offsets[j] + bc) = img;
    }
  cp.mod = quotient_module<K>(cp.cover.mod, cp.rel_map, &cp.proj, &cp.sect);
  return cp;
}

// Minimal generators of a module, adapted to an orthogonal idempotent family
// summing to 1: lifts of a basis of V/JV chosen inside the images of the
// idempotents (Nakayama).
template <class K>
struct GenPick {
  int idem;
  Vec<K> v;
};

template <class K>
std::vector<GenPick<K>> minimal_generators(const AlgebraModule<K>& v, const std::vector<Vec<K>>& idems,
                                           const Mat<K>& radical) {
  std::vector<GenPick<K>> picks;
  if (v.dim == 0) return picks;
  Mat<K> jv = ideal_times_module<K>(v, radical);
  Mat<K> proj, sect;
  quotient_module<K>(v, jv, &proj, &sect);
  const int g = (int)proj.rows();
  int total = 0;
  for (size_t t = 0; t < idems.size(); ++t) {
    Mat<K> q = proj * v.act_of(idems[t]) * sect;
    Mat<K> im = column_space_basis<K>(q);
    for (int c = 0; c < im.cols(); ++c)
      picks.push_back({(int)t, Vec<K>(v.act_of(idems[t]) * (sect * im.col(c)))});
    total += (int)im.cols();
  }
  if (total != g) throw std::domain_error("minimal_generators: idempotent family does not split the top");
  return picks;
}

// Cover map ⊕ Λe -> V sending each summand's elements through its generator.
template <class K>
Mat<K> cover_map(const Cover<K>& c, const AlgebraModule<K>& v, const std::vector<GenPick<K>>& picks) {
  Mat<K> phi(v.dim, c.dim);
  for (int i = 0; i < c.summands(); ++i)
    for (int bc = 0; bc < c.bases[i].cols(); ++bc)
      phi.col(c.offsets[i] + bc) = v.act_of(Vec<K>(c.bases[i].col(bc))) * picks[i].v;
  return phi;
}

// Minimal presentation of a concrete module: pick generators, compute the
// syzygy, pick its generators.
template <class K>
struct PresentationResult {
  Presentation<K> pres;
  Cover<K> cover;
  Mat<K> phi;          // cover -> module (surjective)
  Mat<K> kernel;       // basis of ker(phi) in cover coords
  std::vector<int> gen_indices;  // index into the idempotent family, per generator
  std::vector<int> rel_indices;
};

template <class K>
PresentationResult<K> minimal_presentation(const AlgebraModule<K>& v, const std::vector<Vec<K>>& idems,
                                           const Mat<K>& radical) {
  PresentationResult<K> r;
  auto picks = minimal_generators<K>(v, idems, radical);
  std::vector<Vec<K>> gen_idems;
  for (const auto& p : picks) {
    gen_idems.push_back(idems[p.idem]);
    r.gen_indices.push_back(p.idem);
  }
  r.cover = make_cover<K>(v.alg, gen_idems);
  r.phi = cover_map<K>(r.cover, v, picks);
  if (rank_of<K>(r.phi) != v.dim) throw std::domain_error("minimal_presentation: generators do not span");
  r.kernel = kernel_basis<K>(r.phi);
  AlgebraModule<K> ker = r.kernel.cols() ? submodule_on<K>(r.cover.mod, r.kernel) : zero_module<K>(v.alg);
  auto rel_picks = r.kernel.cols() ? minimal_generators<K>(ker, idems, radical) : std::vector<GenPick<K>>{};
  r.pres.alg = v.alg;
  r.pres.gens = gen_idems;
  for (const auto& p : rel_picks) {
    r.pres.rels.push_back(idems[p.idem]);
    r.rel_indices.push_back(p.idem);
  }
  r.pres.delta.assign(gen_idems.size(), std::vector<Vec<K>>(rel_picks.size()));
  for (size_t j = 0; j < rel_picks.size(); ++j) {
    Vec<K> w = r.kernel * rel_picks[j].v;  // in cover coords
    for (int i = 0; i < r.cover.summands(); ++i)
      r.pres.delta[i][j] = r.cover.block_element(w, i);
  }
  return r;
}

// Minimal projective resolution ... -> P_1 -> P_0 -> V -> 0 truncated at the
// requested length.
template <class K>
struct Resolution {
  std::vector<Cover<K>> covers;  // P_0, P_1, ...
  std::vector<Mat<K>> diff;      // diff[t]: P_{t+1} -> P_t in cover coords
  Mat<K> aug;                    // P_0 -> V
  std::vector<std::vector<std::vector<Vec<K>>>> delta;  // algebra entries of each diff
  std::vector<std::vector<int>> cover_indices;          // idempotent-family index per summand
  // kernel of the last computed map (resolution continues iff nonzero)
  Mat<K> last_kernel;

  int length() const { return (int)covers.size() - 1; }
};

template <class K>
Resolution<K> resolve(const AlgebraModule<K>& v, const std::vector<Vec<K>>& idems, const Mat<K>& radical,
                      int length) {
  Resolution<K> res;
  if (v.dim == 0) {
    res.aug = Mat<K>(0, 0);
    res.covers.push_back(make_cover<K>(v.alg, {}));
    res.cover_indices.push_back({});
    res.last_kernel = Mat<K>(0, 0);
    return res;
  }
  auto picks = minimal_generators<K>(v, idems, radical);
  std::vector<Vec<K>> gen_idems;
  res.cover_indices.emplace_back();
  for (const auto& p : picks) {
    gen_idems.push_back(idems[p.idem]);
    res.cover_indices.back().push_back(p.idem);
  }
  res.covers.push_back(make_cover<K>(v.alg, gen_idems));
  res.aug = cover_map<K>(res.covers[0], v, picks);
  res.last_kernel = kernel_basis<K>(res.aug);
  for (int t = 1; t <= length; ++t) {
    if (res.last_kernel.cols() == 0) break;
    AlgebraModule<K> ker = submodule_on<K>(res.covers.back().mod, res.last_kernel);
    auto kpicks = minimal_generators<K>(ker, idems, radical);
    std::vector<Vec<K>> kidems;
    res.cover_indices.emplace_back();
    for (const auto& p : kpicks) {
      kidems.push_back(idems[p.idem]);
      res.cover_indices.back().push_back(p.idem);
    }
    Cover<K> next = make_cover<K>(v.alg, kidems);
    Mat<K> phi_to_ker = cover_map<K>(next, ker, kpicks);
    Mat<K> d = res.last_kernel * phi_to_ker;  // into previous cover coords
    // algebra-element entries of d
    std::vector<std::vector<Vec<K>>> entries(res.covers.back().summands(),
                                             std::vector<Vec<K>>(next.summands()));
    for (int j = 0; j < next.summands(); ++j) {
      // entry = image of the summand's idempotent generator
      Vec<K> gen_coords = next.embed(j, next.idems[j]);
      Vec<K> img = d * gen_coords;
      for (int i = 0; i < res.covers.back().summands(); ++i)
        entries[i][j] = res.covers.back().block_element(img, i);
    }
    res.delta.push_back(std::move(entries));
    res.diff.push_back(d);
    res.covers.push_back(std::move(next));
    res.last_kernel = kernel_basis<K>(res.diff.back());
    // exactness within the window: im(d_t) = ker(previous)
  }
  return res;
}

// ---------------------------------------------------------------------------
// homology of complexes of concrete modules
// ---------------------------------------------------------------------------

template <class K>
struct HomologyResult {
  AlgebraModule<K> mod;
  Mat<K> cycles;  // basis of ker(d_out) in ambient coords
  Mat<K> proj;    // cycle coords -> homology coords
};

// homology at the middle of  C_in --d_in--> C --d_out--> C_next:
// ker(d_out) / im(d_in).  Pass a 0-column d_in for the end of a complex and
// a 0-row d_out for the start.
template <class K>
HomologyResult<K> homology_at(const AlgebraModule<K>& c, const Mat<K>& d_in, const Mat<K>& d_out) {
  HomologyResult<K> h;
  Mat<K> z = d_out.rows() == 0 ? Mat<K>(Mat<K>::Identity(c.dim, c.dim)) : kernel_basis<K>(d_out);
  h.cycles = z;
  AlgebraModule<K> zmod = z.cols() ? submodule_on<K>(c, z) : zero_module<K>(c.alg);
  Mat<K> b = d_in.cols() == 0 ? Mat<K>(c.dim, 0) : column_space_basis<K>(d_in);
  if (z.cols() == 0) {
    h.mod = zmod;
    h.proj = Mat<K>(0, 0);
    return h;
  }
  auto bz = solve<K>(z, b);
  if (!bz) throw std::domain_error("homology_at: boundaries not inside cycles");
  h.mod = quotient_module<K>(zmod, *bz, &h.proj, nullptr);
  return h;
}

}  // namespace defcat
