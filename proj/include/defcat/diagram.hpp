#pragma once

#include "defcat/hochschild.hpp"

namespace defcat {

// Basis poset of a finite ringed space: labels with a reflexive, transitive,
// antisymmetric relation (opens ordered by inclusion).
struct FinitePoset {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;  // leq[a][b]  ⟺  U_a ⊆ U_b

  int size() const { return (int)labels.size(); }
};

inline ValidationReport validate_poset(const FinitePoset& p) {
  ValidationReport rep;
  const int n = p.size();
  if ((int)p.leq.size() != n) {
    rep.fail("relation has wrong shape");
    return rep;
  }
  for (const auto& row : p.leq)
    if ((int)row.size() != n) {
      rep.fail("relation has wrong shape");
      return rep;
    }
  for (int a = 0; a < n; ++a)
    if (!p.leq[a][a]) rep.fail("relation not reflexive at " + p.labels[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && p.leq[a][b] && p.leq[b][a])
        rep.fail("relation not antisymmetric on (" + p.labels[a] + "," + p.labels[b] + ")");
      for (int c = 0; c < n; ++c)
        if (p.leq[a][b] && p.leq[b][c] && !p.leq[a][c])
          rep.fail("relation not transitive on (" + p.labels[a] + "," + p.labels[b] + "," + p.labels[c] + ")");
    }
  return rep;
}

// Structure presheaf on the basis: a commutative S-algebra per element and a
// restriction algebra map per relation, S a field.
template <class K>
struct StructurePresheaf {
  FinitePoset poset;
  RingPtr<K> base;                      // the field S
  std::vector<RingPtr<K>> algebra;      // O(U) per element
  std::map<std::pair<int, int>, Mat<K>> res;  // (V -> U) for U ⊆ V: dim O(U) x dim O(V)

  const Mat<K>& restriction(int from_v, int to_u) const {
    auto it = res.find({from_v, to_u});
    if (it == res.end()) throw std::invalid_argument("missing restriction map");
    return it->second;
  }
};

template <class K>
ValidationReport validate_presheaf(const StructurePresheaf<K>& o) {
  ValidationReport rep;
  auto prep = validate_poset(o.poset);
  if (!prep.ok()) return prep;
  if (o.base->dim() != 1) rep.fail("base must be a field");
  const int n = o.poset.size();
  if ((int)o.algebra.size() != n) {
    rep.fail("algebra count mismatch");
    return rep;
  }
  for (int u = 0; u < n; ++u) {
    auto r = validate_base_ring<K>(*o.algebra[u]);
    // sections algebras need not be local: accept any commutative algebra by
    // checking only unit/associativity/commutativity violations
    for (const auto& v : r.violations)
      if (v.find("maximal ideal") == std::string::npos) rep.fail("O(" + o.poset.labels[u] + "): " + v);
  }
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) {
      if (!o.poset.leq[u][v]) continue;
      auto it = o.res.find({v, u});
      if (it == o.res.end()) {
        rep.fail("missing restriction O(" + o.poset.labels[v] + ") -> O(" + o.poset.labels[u] + ")");
        continue;
      }
      const Mat<K>& m = it->second;
      if (m.rows() != o.algebra[u]->dim() || m.cols() != o.algebra[v]->dim()) {
        rep.fail("restriction shape mismatch on (" + o.poset.labels[v] + "," + o.poset.labels[u] + ")");
        continue;
      }
      if (!is_zero_matrix<K>(Mat<K>(Mat<K>(m * o.algebra[v]->one()) - Mat<K>(o.algebra[u]->one()))))
        rep.fail("restriction not unital on (" + o.poset.labels[v] + "," + o.poset.labels[u] + ")");
      for (int i = 0; i < o.algebra[v]->dim(); ++i) {
        Mat<K> lhs = m * o.algebra[v]->mult[i];
        Mat<K> rhs = o.algebra[u]->lmul(m * o.algebra[v]->gen(i)) * m;
        if (!is_zero_matrix<K>(Mat<K>(lhs - rhs))) {
          rep.fail("restriction not multiplicative on (" + o.poset.labels[v] + "," + o.poset.labels[u] + ")");
          break;
        }
      }
      if (u == v && !is_zero_matrix<K>(Mat<K>(m - Mat<K>::Identity(m.rows(), m.cols()))))
        rep.fail("restriction on (U,U) must be the identity");
    }
  // functoriality
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      for (int u = 0; u < n; ++u)
        if (o.poset.leq[u][v] && o.poset.leq[v][w]) {
          Mat<K> lhs = o.restriction(w, u);
          Mat<K> rhs = o.restriction(v, u) * o.restriction(w, v);
          if (!is_zero_matrix<K>(Mat<K>(lhs - rhs)))
            rep.fail("restrictions not functorial on (" + o.poset.labels[w] + "," + o.poset.labels[v] + "," +
                     o.poset.labels[u] + ")");
        }
  return rep;
}

// 𝔲(U,V) = O(U) if U ⊆ V else 0; composition restricts then multiplies
template <class K>
LinCategory<K> build_diagram_category(const StructurePresheaf<K>& o) {
  auto rep = validate_presheaf<K>(o);
  if (!rep.ok()) throw std::invalid_argument("build_diagram_category: invalid presheaf: " + rep.summary());
  const int n = o.poset.size();
  LinCategory<K> c;
  c.ring = o.base;
  c.objects = o.poset.labels;
  c.rank.assign(n, std::vector<int>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (o.poset.leq[u][v]) c.rank[u][v] = o.algebra[u]->dim();
  for (int u = 0; u < n; ++u) {
    Vec<K> id = o.algebra[u]->one();
    c.identity.push_back(id);
  }
  // composition 𝔲(v,w) ⊗ 𝔲(u,v) -> 𝔲(u,w): (g ∈ O(v), f ∈ O(u)) -> res(g)·f
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (!(o.poset.leq[u][v] && o.poset.leq[v][w])) continue;
        const int rv = o.algebra[v]->dim(), ru = o.algebra[u]->dim();
        typename LinCategory<K>::Table t(rv, std::vector<Vec<K>>(ru));
        const Mat<K>& res = o.restriction(v, u);
        for (int b2 = 0; b2 < rv; ++b2)
          for (int b1 = 0; b1 < ru; ++b1)
            t[b2][b1] = o.algebra[u]->mul(res * o.algebra[v]->gen(b2), o.algebra[u]->gen(b1));
        c.comp[{u, v, w}] = std::move(t);
      }
  return c;
}

// A presheaf of O-modules on the basis, with finite-dimensional values.
template <class K>
struct ModulePresheaf {
  std::vector<int> dims;                              // dim F(U)
  std::vector<std::vector<Mat<K>>> action;            // action[u][i]: O(U) basis i on F(U)
  std::map<std::pair<int, int>, Mat<K>> res;          // F(V) -> F(U) for U ⊆ V
};

// Pre(𝔲) = Mod(𝔲^op): value F(U) with the action of f ∈ 𝔲^op(V,U) = O(U)
// given by restriction followed by multiplication
template <class K>
struct SpaceContext {
  StructurePresheaf<K> o;
  CatPtr<K> u;        // the diagram category
  CatPtr<K> uop;      // its opposite
  CatCtxPtr<K> ctx;   // context over 𝔲^op (presheaves live here)
  bool minimal_open = false;
};

template <class K>
SpaceContext<K> make_space_context(const StructurePresheaf<K>& o, bool minimal_open) {
  SpaceContext<K> s;
  s.o = o;
  s.u = std::make_shared<LinCategory<K>>(build_diagram_category<K>(o));
  s.uop = std::make_shared<LinCategory<K>>(opposite<K>(*s.u));
  s.ctx = make_context<K>(s.uop);
  s.minimal_open = minimal_open;
  return s;
}

template <class K>
AlgebraModule<K> presheaf_to_module(const SpaceContext<K>& s, const ModulePresheaf<K>& f) {
  const int n = s.o.poset.size();
  std::vector<int> offs;
  int total = 0;
  for (int u = 0; u < n; ++u) {
    offs.push_back(total);
    total += f.dims[u];
  }
  AlgebraModule<K> m;
  m.alg = s.ctx->lambda;
  m.dim = total;
  m.act.assign(s.ctx->lambda->dim(), Mat<K>::Zero(total, total));
  // Λ(𝔲^op) basis: block (v,u) = 𝔲^op(v,u) = O(U) for u ⊆ v, acting F(V) -> F(U)
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) {
      if (!s.o.poset.leq[u][v]) continue;
      int off = s.ctx->block(v, u);
      if (off < 0) continue;
      auto it = f.res.find({v, u});
      if (it == f.res.end()) throw std::invalid_argument("presheaf_to_module: missing module restriction");
      for (int b = 0; b < s.o.algebra[u]->dim(); ++b)
        m.act[off + b].block(offs[u], offs[v], f.dims[u], f.dims[v]) = f.action[u][b] * it->second;
    }
  auto rep = validate_module<K>(m);
  if (!rep.ok()) throw std::invalid_argument("presheaf_to_module: not a module: " + rep.summary());
  return m;
}

// the representable P_U^b as a module presheaf: V -> O(V) for V ⊆ U
template <class K>
ModulePresheaf<K> representable_presheaf(const StructurePresheaf<K>& o, int u) {
  const int n = o.poset.size();
  ModulePresheaf<K> f;
  f.dims.assign(n, 0);
  f.action.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (!o.poset.leq[v][u]) continue;
    f.dims[v] = o.algebra[v]->dim();
    f.action[v] = o.algebra[v]->mult;
  }
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) {
      if (!o.poset.leq[v][w]) continue;  // restriction F(W) -> F(V)
      if (f.dims[w] == 0 || f.dims[v] == 0) {
        f.res[{w, v}] = Mat<K>::Zero(f.dims[v], f.dims[w]);
        continue;
      }
      f.res[{w, v}] = o.restriction(w, v);
    }
  // default zero action matrices where the value vanishes
  for (int v = 0; v < n; ++v)
    if (f.dims[v] == 0) f.action[v].assign(o.algebra[v]->dim(), Mat<K>(0, 0));
  return f;
}

// H^i(U, F) = Ext^i(P_U, F) in Pre(𝔲) (minimal-open bases only)
template <class K>
AlgebraModule<K> space_cohomology(const SpaceContext<K>& s, int u, const AlgebraModule<K>& f, int degree) {
  if (!s.minimal_open)
    throw std::domain_error(
        "space_cohomology: only supported when the basis is flagged as the minimal-open basis of a "
        "finite space");
  auto p = concrete_functor_module<K>(FpFunctorModule<K>::representable(s.ctx, u));
  return ext_concrete<K>(*s.ctx, degree, p.mod, f);
}

template <class K>
struct AcyclicityReport {
  bool pass = true;
  std::vector<std::tuple<int, int, int>> failures;  // (element, degree, dim)
};

// hypothesis of the ringed-space theorem: H^i(U, M ⊗_S O_U) = 0 for i = 1,2;
// over a field M = S suffices by additivity
template <class K>
AcyclicityReport<K> acyclicity_check(const SpaceContext<K>& s) {
  AcyclicityReport<K> rep;
  for (int u = 0; u < s.o.poset.size(); ++u) {
    AlgebraModule<K> ou = presheaf_to_module<K>(s, representable_presheaf<K>(s.o, u));
    for (int i = 1; i <= 2; ++i) {
      int d = space_cohomology<K>(s, u, ou, i).dim;
      if (d != 0) {
        rep.pass = false;
        rep.failures.push_back({u, i, d});
      }
    }
  }
  return rep;
}

template <class K>
struct SpaceClassification {
  AcyclicityReport<K> acyclicity;
  Classification<K> classes;  // over the diagram category
};

template <class K>
SpaceClassification<K> classify_space_deformations(const SpaceContext<K>& s) {
  SpaceClassification<K> out;
  out.acyclicity = acyclicity_check<K>(s);
  if (!out.acyclicity.pass) {
    auto [u, i, d] = out.acyclicity.failures.front();
    throw std::domain_error("classify_space_deformations: acyclicity fails at (U=" + s.o.poset.labels[u] +
                            ", i=" + std::to_string(i) + ")");
  }
  out.classes = classify<K>(make_hh_context<K>(s.u));
  return out;
}

}  // namespace defcat
