#pragma once

#include "defcat/module.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace defcat {

// Morphism coordinates are flat k-vectors of length rank * dim(R); the
// segment [b*d, (b+1)*d) is the R-coefficient of hom-basis element b.
template <class K>
struct Mor {
  int src = -1, dst = -1;
  Vec<K> v;
};

// multiply every R-coefficient of a flat morphism vector by r
template <class K>
Vec<K> r_scale(const BaseRing<K>& ring, const Vec<K>& r, const Vec<K>& flat) {
  const int d = ring.dim();
  Mat<K> l = ring.lmul(r);
  Vec<K> out(flat.size());
  for (int b = 0; b * d < (int)flat.size(); ++b) out.segment(b * d, d) = l * flat.segment(b * d, d);
  return out;
}

// Finite R-linear category: free Hom modules with chosen bases, composition
// by structure constants, identity coordinates per object.
template <class K>
struct LinCategory {
  RingPtr<K> ring;
  std::vector<std::string> objects;
  std::vector<std::vector<int>> rank;  // rank[x][y] = rank of Hom(x,y)
  // table[b2][b1] = flat coords of basis2 ∘ basis1 in Hom(x,z)
  using Table = std::vector<std::vector<Vec<K>>>;
  std::map<std::array<int, 3>, Table> comp;  // key {x,y,z}
  std::vector<Vec<K>> identity;              // flat coords in Hom(x,x)

  int n_objects() const { return (int)objects.size(); }
  int hom_rank(int x, int y) const { return rank[x][y]; }
  int hom_dim(int x, int y) const { return rank[x][y] * ring->dim(); }

  const Table* table(int x, int y, int z) const {
    auto it = comp.find({x, y, z});
    return it == comp.end() ? nullptr : &it->second;
  }

  Mor<K> zero_mor(int x, int y) const { return {x, y, Vec<K>::Zero(hom_dim(x, y))}; }
  Mor<K> identity_mor(int x) const { return {x, x, identity[x]}; }
  // basis arrow b of Hom(x,y) with coefficient 1
  Mor<K> basis_mor(int x, int y, int b) const {
    Mor<K> m = zero_mor(x, y);
    m.v(b * ring->dim()) = ring->field.make(1);
    return m;
  }

  Mor<K> compose(const Mor<K>& g, const Mor<K>& f) const {
    if (f.dst != g.src) throw std::invalid_argument("compose: objects mismatch");
    const int d = ring->dim();
    Mor<K> out = zero_mor(f.src, g.dst);
    const Table* t = table(f.src, f.dst, g.dst);
    if (!t) return out;
    for (int b2 = 0; b2 < rank[f.dst][g.dst]; ++b2)
      for (int b1 = 0; b1 < rank[f.src][f.dst]; ++b1) {
        Vec<K> coeff = ring->mul(g.v.segment(b2 * d, d), f.v.segment(b1 * d, d));
        if (is_zero_matrix<K>(Mat<K>(coeff))) continue;
        out.v += r_scale(*ring, coeff, (*t)[b2][b1]);
      }
    return out;
  }

  // matrix of g -> g ∘ f on flat coordinates, g ranging over Hom(f.dst, z)
  Mat<K> precompose_matrix(const Mor<K>& f, int z) const {
    const int d = ring->dim();
    Mat<K> m(hom_dim(f.src, z), hom_dim(f.dst, z));
    for (int b2 = 0; b2 < rank[f.dst][z]; ++b2)
      for (int i = 0; i < d; ++i) {
        Mor<K> g = zero_mor(f.dst, z);
        g.v(b2 * d + i) = ring->field.make(1);
        m.col(b2 * d + i) = compose(g, f).v;
      }
    return m;
  }
  // matrix of h -> g ∘ h, h ranging over Hom(x, g.src)
  Mat<K> postcompose_matrix(const Mor<K>& g, int x) const {
    const int d = ring->dim();
    Mat<K> m(hom_dim(x, g.dst), hom_dim(x, g.src));
    for (int b1 = 0; b1 < rank[x][g.src]; ++b1)
      for (int i = 0; i < d; ++i) {
        Mor<K> h = zero_mor(x, g.src);
        h.v(b1 * d + i) = ring->field.make(1);
        m.col(b1 * d + i) = compose(g, h).v;
      }
    return m;
  }
};

template <class K>
using CatPtr = std::shared_ptr<const LinCategory<K>>;

template <class K>
ValidationReport validate_category(const LinCategory<K>& c) {
  ValidationReport rep;
  const int n = c.n_objects();
  const int d = c.ring->dim();
  if ((int)c.rank.size() != n || (int)c.identity.size() != n) {
    rep.fail("shape mismatch in ranks or identities");
    return rep;
  }
  for (int x = 0; x < n; ++x) {
    if ((int)c.rank[x].size() != n) {
      rep.fail("rank row " + std::to_string(x) + " has wrong length");
      return rep;
    }
    if ((int)c.identity[x].size() != c.hom_dim(x, x)) {
      rep.fail("identity coords of " + c.objects[x] + " have wrong length");
      return rep;
    }
  }
  for (const auto& [key, t] : c.comp) {
    auto [x, y, z] = key;
    if ((int)t.size() != c.rank[y][z]) {
      rep.fail("composition table shape mismatch");
      return rep;
    }
    for (const auto& row : t) {
      if ((int)row.size() != c.rank[x][y]) {
        rep.fail("composition table shape mismatch");
        return rep;
      }
      for (const auto& v : row)
        if ((int)v.size() != c.hom_dim(x, z)) {
          rep.fail("composition table entry has wrong length");
          return rep;
        }
    }
  }
  // missing tables mean zero composition; that is a violation whenever all
  // three hom modules are nonzero and identities force nonzero composites,
  // caught by the unit checks below.
  for (int x = 0; x < n && rep.violations.size() < 32; ++x)
    for (int y = 0; y < n; ++y)
      for (int b = 0; b < c.rank[x][y]; ++b) {
        Mor<K> f = c.basis_mor(x, y, b);
        if (!is_zero_matrix<K>(Mat<K>(c.compose(c.identity_mor(y), f).v - f.v)))
          rep.fail("identity law fails: id_" + c.objects[y] + " ∘ (basis " + std::to_string(b) + " of Hom(" +
                   c.objects[x] + "," + c.objects[y] + "))");
        if (!is_zero_matrix<K>(Mat<K>(c.compose(f, c.identity_mor(x)).v - f.v)))
          rep.fail("identity law fails: (basis " + std::to_string(b) + " of Hom(" + c.objects[x] + "," +
                   c.objects[y] + ")) ∘ id_" + c.objects[x]);
      }
  const int dd = d;
  (void)dd;
  for (int x = 0; x < n && rep.violations.size() < 32; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          for (int b1 = 0; b1 < c.rank[x][y]; ++b1)
            for (int b2 = 0; b2 < c.rank[y][z]; ++b2)
              for (int b3 = 0; b3 < c.rank[z][w]; ++b3) {
                Mor<K> f1 = c.basis_mor(x, y, b1), f2 = c.basis_mor(y, z, b2), f3 = c.basis_mor(z, w, b3);
                Vec<K> lhs = c.compose(c.compose(f3, f2), f1).v;
                Vec<K> rhs = c.compose(f3, c.compose(f2, f1)).v;
                if (!is_zero_matrix<K>(Mat<K>(lhs - rhs)))
                  rep.fail("associativity fails on basis triple (" + c.objects[x] + "->" + c.objects[y] + "->" +
                           c.objects[z] + "->" + c.objects[w] + ", " + std::to_string(b1) + "," +
                           std::to_string(b2) + "," + std::to_string(b3) + ")");
              }
  return rep;
}

template <class K>
LinCategory<K> opposite(const LinCategory<K>& c) {
  LinCategory<K> op;
  op.ring = c.ring;
  op.objects = c.objects;
  const int n = c.n_objects();
  op.rank.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) op.rank[x][y] = c.rank[y][x];
  op.identity = c.identity;
  for (const auto& [key, t] : c.comp) {
    auto [x, y, z] = key;
    // the op-table at (z,y,x) composes b2 ∈ Hom_op(y,x) = Hom(x,y) after
    // b1 ∈ Hom_op(z,y) = Hom(y,z); the value is b1 ∘ b2 in c
    typename LinCategory<K>::Table ot(c.rank[x][y], std::vector<Vec<K>>(c.rank[y][z]));
    for (int b2 = 0; b2 < c.rank[x][y]; ++b2)
      for (int b1 = 0; b1 < c.rank[y][z]; ++b1)
        ot[b2][b1] = c.compose(c.basis_mor(y, z, b1), c.basis_mor(x, y, b2)).v;
    op.comp[{z, y, x}] = std::move(ot);
  }
  return op;
}

template <class K>
LinCategory<K> base_change_category(const LinCategory<K>& c, const RingSurjection<K>& theta) {
  if (c.ring->dim() != theta.source->dim())
    throw std::invalid_argument("base_change_category: category not over the source ring");
  LinCategory<K> out;
  out.ring = theta.target;
  out.objects = c.objects;
  out.rank = c.rank;
  const int dR = theta.source->dim(), dS = theta.target->dim();
  auto push = [&](const Vec<K>& flat) {
    Vec<K> s(flat.size() / dR * dS);
    for (int b = 0; b * dR < (int)flat.size(); ++b)
      s.segment(b * dS, dS) = theta.theta * flat.segment(b * dR, dR);
    return s;
  };
  for (const auto& v : c.identity) out.identity.push_back(push(v));
  for (const auto& [key, t] : c.comp) {
    typename LinCategory<K>::Table ot(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      ot[i].reserve(t[i].size());
      for (const auto& v : t[i]) ot[i].push_back(push(v));
    }
    out.comp[key] = std::move(ot);
  }
  return out;
}

// one-object category with Hom = the ring itself (viewed over base `ring`)
template <class K>
LinCategory<K> one_object_category(const RingPtr<K>& base, const BaseRing<K>& homalg,
                                   const std::string& name = "*") {
  // hom basis = basis of homalg; base must act through homalg's coefficients
  // (we only use base = field here, d = 1)
  if (base->dim() != 1) throw std::invalid_argument("one_object_category: base ring must be a field");
  LinCategory<K> c;
  c.ring = base;
  c.objects = {name};
  c.rank = {{homalg.dim()}};
  typename LinCategory<K>::Table t(homalg.dim(), std::vector<Vec<K>>(homalg.dim()));
  for (int i = 0; i < homalg.dim(); ++i)
    for (int j = 0; j < homalg.dim(); ++j) t[i][j] = homalg.mult[i].col(j);
  c.comp[{0, 0, 0}] = std::move(t);
  Vec<K> id = Vec<K>::Zero(homalg.dim());
  id(0) = base->field.make(1);
  c.identity = {id};
  return c;
}

// additive matrix category over R: objects are column ranks, Hom(x,y) =
// matrices of shape r_y x r_x with entries in R
template <class K>
LinCategory<K> matrix_category(const RingPtr<K>& ring, const std::vector<int>& ranks) {
  LinCategory<K> c;
  c.ring = ring;
  const int n = (int)ranks.size();
  const int d = ring->dim();
  for (int i = 0; i < n; ++i) c.objects.push_back("M" + std::to_string(ranks[i]) + "_" + std::to_string(i));
  c.rank.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) c.rank[x][y] = ranks[x] * ranks[y];
  // hom basis of Hom(x,y): matrix units E_{a,b}, a < r_y, b < r_x, index a*r_x+b
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        typename LinCategory<K>::Table t(c.rank[y][z], std::vector<Vec<K>>(c.rank[x][y]));
        for (int a = 0; a < ranks[z]; ++a)
          for (int b = 0; b < ranks[y]; ++b)
            for (int e = 0; e < ranks[y]; ++e)
              for (int f = 0; f < ranks[x]; ++f) {
                Vec<K> out = Vec<K>::Zero(c.rank[x][z] * d);
                if (b == e) out.segment((a * ranks[x] + f) * d, d) = ring->one();
                t[a * ranks[y] + b][e * ranks[x] + f] = std::move(out);
              }
        c.comp[{x, y, z}] = std::move(t);
      }
  for (int x = 0; x < n; ++x) {
    Vec<K> id = Vec<K>::Zero(c.rank[x][x] * d);
    for (int a = 0; a < ranks[x]; ++a) id.segment((a * ranks[x] + a) * d, d) = ring->one();
    c.identity.push_back(std::move(id));
  }
  return c;
}

// path category of the A2 quiver over a field-like ring
template <class K>
LinCategory<K> a2_path_category(const RingPtr<K>& ring) {
  LinCategory<K> c;
  c.ring = ring;
  c.objects = {"1", "2"};
  c.rank = {{1, 1}, {0, 1}};
  const int d = ring->dim();
  auto unit_flat = [&](int len) {
    Vec<K> v = Vec<K>::Zero(len * d);
    v.segment(0, d) = ring->one();
    return v;
  };
  c.identity = {unit_flat(1), unit_flat(1)};
  typename LinCategory<K>::Table t11(1, std::vector<Vec<K>>(1, unit_flat(1)));
  c.comp[{0, 0, 0}] = t11;
  c.comp[{1, 1, 1}] = t11;
  c.comp[{0, 0, 1}] = t11;  // arrow ∘ id_1
  c.comp[{0, 1, 1}] = t11;  // id_2 ∘ arrow
  return c;
}

// ---------------------------------------------------------------------------
// functors and natural transformations
// ---------------------------------------------------------------------------

template <class K>
struct LinFunctor {
  CatPtr<K> source, target;
  std::vector<int> obj;                     // object map
  std::vector<std::vector<Mat<K>>> mats;    // mats[x][y]: Hom(x,y) -> Hom(Fx,Fy) on flat coords

  Mor<K> apply(const Mor<K>& f) const {
    return {obj[f.src], obj[f.dst], Vec<K>(mats[f.src][f.dst] * f.v)};
  }
};

// theta = nullptr means both categories share the ring (R-linear check);
// otherwise the functor is semilinear through theta.
template <class K>
ValidationReport validate_functor(const LinFunctor<K>& F, const RingSurjection<K>* theta = nullptr) {
  ValidationReport rep;
  const auto& A = *F.source;
  const auto& B = *F.target;
  const int n = A.n_objects();
  if ((int)F.obj.size() != n || (int)F.mats.size() != n) {
    rep.fail("functor shape mismatch");
    return rep;
  }
  const int dA = A.ring->dim();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (F.mats[x][y].cols() != A.hom_dim(x, y) || F.mats[x][y].rows() != B.hom_dim(F.obj[x], F.obj[y])) {
        rep.fail("functor matrix on Hom(" + A.objects[x] + "," + A.objects[y] + ") has wrong shape");
        return rep;
      }
    }
  for (int x = 0; x < n; ++x)
    if (!is_zero_matrix<K>(Mat<K>(F.apply(A.identity_mor(x)).v - B.identity[F.obj[x]])))
      rep.fail("functor does not preserve identity of " + A.objects[x]);
  // composition on basis pairs
  for (int x = 0; x < n && rep.violations.size() < 16; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int b1 = 0; b1 < A.rank[x][y]; ++b1)
          for (int b2 = 0; b2 < A.rank[y][z]; ++b2) {
            Mor<K> f1 = A.basis_mor(x, y, b1), f2 = A.basis_mor(y, z, b2);
            Vec<K> lhs = F.apply(A.compose(f2, f1)).v;
            Vec<K> rhs = B.compose(F.apply(f2), F.apply(f1)).v;
            if (!is_zero_matrix<K>(Mat<K>(lhs - rhs)))
              rep.fail("functor not compatible with composition on (" + A.objects[x] + "->" + A.objects[y] +
                       "->" + A.objects[z] + ")");
          }
  // (semi)linearity over the base
  for (int x = 0; x < n && rep.violations.size() < 16; ++x)
    for (int y = 0; y < n; ++y)
      for (int b = 0; b < A.rank[x][y]; ++b)
        for (int i = 0; i < dA; ++i) {
          Mor<K> f = A.basis_mor(x, y, b);
          Vec<K> lhs = F.mats[x][y] * r_scale(*A.ring, A.ring->gen(i), f.v);
          Vec<K> rf = theta ? Vec<K>(theta->theta * A.ring->gen(i)) : A.ring->gen(i);
          Vec<K> rhs = r_scale(*B.ring, rf, Vec<K>(F.mats[x][y] * f.v));
          if (!is_zero_matrix<K>(Mat<K>(lhs - rhs))) {
            rep.fail("functor not linear over the base on Hom(" + A.objects[x] + "," + A.objects[y] + ")");
            break;
          }
        }
  return rep;
}

template <class K>
LinFunctor<K> identity_functor(const CatPtr<K>& c) {
  LinFunctor<K> f;
  f.source = f.target = c;
  const int n = c->n_objects();
  for (int x = 0; x < n; ++x) f.obj.push_back(x);
  f.mats.assign(n, std::vector<Mat<K>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      f.mats[x][y] = Mat<K>::Identity(c->hom_dim(x, y), c->hom_dim(x, y));
  return f;
}

template <class K>
LinFunctor<K> compose_functors(const LinFunctor<K>& g, const LinFunctor<K>& f) {
  LinFunctor<K> h;
  h.source = f.source;
  h.target = g.target;
  const int n = f.source->n_objects();
  for (int x = 0; x < n; ++x) h.obj.push_back(g.obj[f.obj[x]]);
  h.mats.assign(n, std::vector<Mat<K>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) h.mats[x][y] = g.mats[f.obj[x]][f.obj[y]] * f.mats[x][y];
  return h;
}

template <class K>
struct NatTransform {
  const LinFunctor<K>* source = nullptr;
  const LinFunctor<K>* target = nullptr;
  std::vector<Mor<K>> comp;  // comp[x]: F(x) -> G(x) in the target category
};

template <class K>
ValidationReport validate_nat_transform(const LinFunctor<K>& F, const LinFunctor<K>& G,
                                        const std::vector<Mor<K>>& eta) {
  ValidationReport rep;
  const auto& A = *F.source;
  const auto& B = *F.target;
  const int n = A.n_objects();
  if ((int)eta.size() != n) {
    rep.fail("component count mismatch");
    return rep;
  }
  for (int x = 0; x < n; ++x)
    if (eta[x].src != F.obj[x] || eta[x].dst != G.obj[x]) {
      rep.fail("component " + A.objects[x] + " has wrong endpoints");
      return rep;
    }
  for (int x = 0; x < n && rep.violations.size() < 16; ++x)
    for (int y = 0; y < n; ++y)
      for (int b = 0; b < A.rank[x][y]; ++b) {
        Mor<K> f = A.basis_mor(x, y, b);
        Vec<K> lhs = B.compose(eta[y], F.apply(f)).v;
        Vec<K> rhs = B.compose(G.apply(f), eta[x]).v;
        if (!is_zero_matrix<K>(Mat<K>(lhs - rhs)))
          rep.fail("naturality fails on basis " + std::to_string(b) + " of Hom(" + A.objects[x] + "," +
                   A.objects[y] + ")");
      }
  return rep;
}

// Two-sided inverse search for a single morphism: a linear solve.
template <class K>
std::optional<Mor<K>> two_sided_inverse(const LinCategory<K>& c, const Mor<K>& f) {
  const int x = f.src, y = f.dst;
  if (c.hom_dim(y, x) == 0) return std::nullopt;
  // unknown g in Hom(y,x): g∘f = id_x and f∘g = id_y
  Mat<K> pre = c.precompose_matrix(f, x);    // Hom(y,x) -> Hom(x,x): g -> g∘f
  Mat<K> post = c.postcompose_matrix(f, y);  // Hom(y,x) -> Hom(y,y): g -> f∘g
  Mat<K> sys = vstack<K>(pre, post);
  Vec<K> rhs(sys.rows());
  rhs.head(pre.rows()) = c.identity[x];
  rhs.tail(post.rows()) = c.identity[y];
  auto sol = solve<K>(sys, Mat<K>(rhs));
  if (!sol) return std::nullopt;
  return Mor<K>{y, x, sol->col(0)};
}

template <class K>
bool is_isomorphism(const LinCategory<K>& c, const Mor<K>& f) {
  return two_sided_inverse<K>(c, f).has_value();
}

// is there an isomorphism x ≅ y?  (used by essential-surjectivity searches)
template <class K>
std::optional<Mor<K>> find_object_isomorphism(const LinCategory<K>& c, int x, int y, unsigned seed = 7) {
  if (x == y) return c.identity_mor(x);
  if (c.hom_dim(x, y) == 0) return std::nullopt;
  const int d = c.ring->dim();
  // try basis arrows first, then seeded random combinations
  for (int b = 0; b < c.rank[x][y]; ++b) {
    Mor<K> f = c.basis_mor(x, y, b);
    if (is_isomorphism<K>(c, f)) return f;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 128; ++t) {
    Mor<K> f = c.zero_mor(x, y);
    for (int i = 0; i < (int)f.v.size(); i += d)
      f.v(i) = c.ring->field.make((long long)(rng() % 32) - 16);
    if (is_isomorphism<K>(c, f)) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// deformations (Def 5.1 data)
// ---------------------------------------------------------------------------

template <class K>
struct LinearDeformation {
  RingSurjection<K> theta;
  CatPtr<K> total;    // over R
  CatPtr<K> reduced;  // over S
  LinFunctor<K> red;  // total -> reduced, semilinear through theta
  bool strict = false;
  bool flat = true;  // hom modules are free by representation
};

// the canonical strict deformation: reduced := S ⊗_R total
template <class K>
LinearDeformation<K> strict_deformation_from_total(const CatPtr<K>& total, const RingSurjection<K>& theta) {
  LinearDeformation<K> d;
  d.theta = theta;
  d.total = total;
  d.reduced = std::make_shared<LinCategory<K>>(base_change_category<K>(*total, theta));
  const int n = total->n_objects();
  d.red.source = total;
  d.red.target = d.reduced;
  for (int x = 0; x < n; ++x) d.red.obj.push_back(x);
  const int dR = theta.source->dim(), dS = theta.target->dim();
  d.red.mats.assign(n, std::vector<Mat<K>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Mat<K> m = Mat<K>::Zero(total->rank[x][y] * dS, total->rank[x][y] * dR);
      for (int b = 0; b < total->rank[x][y]; ++b) m.block(b * dS, b * dR, dS, dR) = theta.theta;
      d.red.mats[x][y] = std::move(m);
    }
  d.strict = true;
  return d;
}

template <class K>
ValidationReport validate_deformation(const LinearDeformation<K>& d) {
  ValidationReport rep;
  auto r1 = validate_surjection<K>(d.theta);
  if (!r1.ok()) {
    rep.fail("surjection invalid: " + r1.summary());
    return rep;
  }
  auto r2 = validate_category<K>(*d.total);
  if (!r2.ok()) {
    rep.fail("total category invalid: " + r2.summary());
    return rep;
  }
  auto r3 = validate_category<K>(*d.reduced);
  if (!r3.ok()) {
    rep.fail("reduced category invalid: " + r3.summary());
    return rep;
  }
  auto r4 = validate_functor<K>(d.red, &d.theta);
  if (!r4.ok()) {
    rep.fail("reduction functor invalid: " + r4.summary());
    return rep;
  }
  // the induced S-functor S⊗total -> reduced has the same matrices restricted
  // along a section of theta; checking that the hom maps are bijections on
  // S-coordinates = checking rank equals hom_dim of the reduced category.
  const auto& A = *d.total;
  const auto& B = *d.reduced;
  const int n = A.n_objects();
  bool bijective_objects = true;
  {
    std::vector<int> seen(B.n_objects(), 0);
    for (int x = 0; x < n; ++x)
      if (d.red.obj[x] >= 0 && d.red.obj[x] < B.n_objects()) seen[d.red.obj[x]]++;
    for (int s : seen) bijective_objects = bijective_objects && s == 1;
    bijective_objects = bijective_objects && n == B.n_objects();
  }
  // fully faithful after base change: the reduction matrix, viewed on
  // S ⊗ Hom, must be invertible; equivalently rank(F on Hom(x,y)) = dim_S
  bool fully_faithful = true;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int r = rank_of<K>(d.red.mats[x][y]);
      if (r != B.hom_dim(d.red.obj[x], d.red.obj[y])) {
        fully_faithful = false;
        rep.fail("induced functor not full on Hom(" + A.objects[x] + "," + A.objects[y] + ")");
      }
      // faithfulness of S ⊗ F: kernel must be exactly I·Hom
      int expected_kernel = A.hom_dim(x, y) - B.hom_dim(d.red.obj[x], d.red.obj[y]);
      if (A.hom_dim(x, y) - r != expected_kernel)
        rep.fail("induced functor kernel mismatch on Hom(" + A.objects[x] + "," + A.objects[y] + ")");
    }
  if (d.strict) {
    if (!bijective_objects) rep.fail("strict deformation must be bijective on objects");
  } else if (fully_faithful) {
    // essential surjectivity of the induced functor
    for (int b = 0; b < B.n_objects(); ++b) {
      bool hit = false;
      for (int x = 0; x < n && !hit; ++x)
        hit = d.red.obj[x] == b || find_object_isomorphism<K>(B, d.red.obj[x], b).has_value();
      if (!hit) rep.fail("induced functor misses object " + B.objects[b] + " up to isomorphism");
    }
  }
  return rep;
}

// restricting total structure constants mod I reproduces the reduced tables
// entrywise (strictness in the sense of Def 5.1 for identity object maps)
template <class K>
bool strict_tables_match(const LinearDeformation<K>& d) {
  LinCategory<K> bc = base_change_category<K>(*d.total, d.theta);
  const auto& B = *d.reduced;
  if (bc.rank != B.rank) return false;
  for (const auto& [key, t] : bc.comp) {
    const auto* tb = B.table(key[0], key[1], key[2]);
    for (size_t i = 0; i < t.size(); ++i)
      for (size_t j = 0; j < t[i].size(); ++j) {
        Vec<K> other = tb ? (*tb)[i][j] : Vec<K>(Vec<K>::Zero(t[i][j].size()));
        if (!is_zero_matrix<K>(Mat<K>(t[i][j] - other))) return false;
      }
  }
  for (int x = 0; x < bc.n_objects(); ++x)
    if (!is_zero_matrix<K>(Mat<K>(bc.identity[x] - B.identity[x]))) return false;
  return true;
}

}  // namespace defcat
