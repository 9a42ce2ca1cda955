#pragma once

#include "defcat/linalg.hpp"
#include "defcat/poly.hpp"
#include "defcat/ring.hpp"

#include <memory>
#include <random>
#include <vector>

namespace defcat {

// Finite-dimensional associative unital k-algebra by structure constants.
// Used for base rings (commutative) and for category algebras of finite
// linear categories (not commutative); every homological computation in the
// toolkit reduces to exact k-linear algebra on modules over such an algebra.
template <class K>
struct Algebra {
  FieldContext<K> field;
  std::vector<Mat<K>> lmul;  // lmul[i] = matrix of left multiplication by basis i
  Vec<K> unit;

  int dim() const { return (int)lmul.size(); }

  Mat<K> lmul_of(const Vec<K>& a) const {
    Mat<K> m = Mat<K>::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      if (!a(i).is_zero()) m += a(i) * lmul[i];
    return m;
  }
  // matrix of x -> x*a
  Mat<K> rmul_of(const Vec<K>& a) const {
    Mat<K> m(dim(), dim());
    for (int j = 0; j < dim(); ++j) m.col(j) = lmul[j] * a;
    return m;
  }
  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const { return lmul_of(a) * b; }
  Vec<K> gen(int i) const {
    Vec<K> e = Vec<K>::Zero(dim());
    e(i) = field.make(1);
    return e;
  }
};

template <class K>
using AlgebraPtr = std::shared_ptr<const Algebra<K>>;

template <class K>
AlgebraPtr<K> algebra_from_ring(const RingPtr<K>& r) {
  auto a = std::make_shared<Algebra<K>>();
  a->field = r->field;
  a->lmul = r->mult;
  a->unit = r->one();
  return a;
}

template <class K>
AlgebraPtr<K> opposite_algebra(const AlgebraPtr<K>& a) {
  auto op = std::make_shared<Algebra<K>>();
  op->field = a->field;
  op->unit = a->unit;
  op->lmul.resize(a->dim());
  for (int i = 0; i < a->dim(); ++i) op->lmul[i] = a->rmul_of(a->gen(i));
  return op;
}

template <class K>
ValidationReport validate_algebra(const Algebra<K>& a) {
  ValidationReport rep;
  const int n = a.dim();
  Mat<K> lu = a.lmul_of(a.unit);
  if (!is_zero_matrix<K>(Mat<K>(lu - Mat<K>::Identity(n, n)))) rep.fail("unit is not a left unit");
  for (int i = 0; i < n; ++i)
    if (!is_zero_matrix<K>(Mat<K>(Mat<K>(a.lmul[i] * a.unit) - Mat<K>(a.gen(i)))))
      rep.fail("unit is not a right unit on basis " + std::to_string(i));
  for (int i = 0; i < n && rep.ok(); ++i)
    for (int j = 0; j < n; ++j) {
      Mat<K> lhs = a.lmul_of(a.lmul[i].col(j));
      if (!is_zero_matrix<K>(Mat<K>(lhs - a.lmul[i] * a.lmul[j]))) {
        rep.fail("associativity fails on (" + std::to_string(i) + "," + std::to_string(j) + ")");
        break;
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Jacobson radical
// ---------------------------------------------------------------------------

// Characteristic 0: Dickson's criterion — x is in the radical iff
// trace(L_{xy}) = 0 for all y.  Characteristic p: the chain of
// Cohen-Ivanyos-Wales, cutting with the coefficient of degree p^i of the
// characteristic polynomial of the regular representation; over the prime
// field each cut is a plain linear system.
template <class K>
Mat<K> radical_basis(const Algebra<K>& a) {
  const int n = a.dim();
  const long long p = a.field.characteristic();
  if (p == 0) {
    Mat<K> gram(n, n);
    std::vector<K> tr(n, K(0));
    for (int t = 0; t < n; ++t)
      for (int i = 0; i < n; ++i) tr[t] += a.lmul[t](i, i);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec<K> prod = a.lmul[i].col(j);
        K s(0);
        for (int t = 0; t < n; ++t) s += prod(t) * tr[t];
        gram(i, j) = s;
      }
    return kernel_basis<K>(gram);
  }
  Mat<K> basis = Mat<K>::Identity(n, n);
  for (long long q = 1; q <= n; q *= p) {
    const int s = (int)basis.cols();
    if (s == 0) break;
    Mat<K> gram(s, s);
    for (int t = 0; t < s; ++t)
      for (int u = 0; u < s; ++u) {
        Vec<K> prod = a.mul(basis.col(t), basis.col(u));
        std::vector<K> cp = char_poly<K>(a.lmul_of(prod));
        gram(t, u) = cp[(size_t)q];
      }
    basis = Mat<K>(basis * kernel_basis<K>(Mat<K>(gram.transpose())));
  }
  return column_space_basis<K>(basis);
}

// ---------------------------------------------------------------------------
// concrete modules
// ---------------------------------------------------------------------------

// A finite-dimensional left module: a representation of the algebra on k^m.
template <class K>
struct AlgebraModule {
  AlgebraPtr<K> alg;
  int dim = 0;
  std::vector<Mat<K>> act;  // per algebra basis element, dim x dim

  Mat<K> act_of(const Vec<K>& a) const {
    Mat<K> m = Mat<K>::Zero(dim, dim);
    for (int i = 0; i < (int)act.size(); ++i)
      if (!a(i).is_zero()) m += a(i) * act[i];
    return m;
  }
};

template <class K>
ValidationReport validate_module(const AlgebraModule<K>& m) {
  ValidationReport rep;
  const auto& a = *m.alg;
  if ((int)m.act.size() != a.dim()) {
    rep.fail("action table length mismatch");
    return rep;
  }
  if (!is_zero_matrix<K>(Mat<K>(m.act_of(a.unit) - Mat<K>::Identity(m.dim, m.dim))))
    rep.fail("unit does not act as identity");
  for (int i = 0; i < a.dim() && rep.ok(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      Mat<K> lhs = m.act_of(a.lmul[i].col(j));
      if (!is_zero_matrix<K>(Mat<K>(lhs - m.act[i] * m.act[j]))) {
        rep.fail("action not multiplicative on (" + std::to_string(i) + "," + std::to_string(j) + ")");
        break;
      }
    }
  return rep;
}

template <class K>
AlgebraModule<K> regular_module(const AlgebraPtr<K>& a) {
  AlgebraModule<K> m;
  m.alg = a;
  m.dim = a->dim();
  m.act = a->lmul;
  return m;
}

template <class K>
AlgebraModule<K> zero_module(const AlgebraPtr<K>& a) {
  AlgebraModule<K> m;
  m.alg = a;
  m.dim = 0;
  m.act.assign(a->dim(), Mat<K>(0, 0));
  return m;
}

template <class K>
AlgebraModule<K> direct_sum(const std::vector<AlgebraModule<K>>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty");
  AlgebraModule<K> m;
  m.alg = parts[0].alg;
  m.dim = 0;
  for (const auto& p : parts) m.dim += p.dim;
  m.act.assign(m.alg->dim(), Mat<K>::Zero(m.dim, m.dim));
  int off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < m.alg->dim(); ++i) m.act[i].block(off, off, p.dim, p.dim) = p.act[i];
    off += p.dim;
  }
  return m;
}

// Module on an invariant subspace, in the coordinates of `basis`.
template <class K>
AlgebraModule<K> submodule_on(const AlgebraModule<K>& m, const Mat<K>& basis) {
  AlgebraModule<K> s;
  s.alg = m.alg;
  s.dim = (int)basis.cols();
  s.act.resize(m.alg->dim());
  for (int i = 0; i < m.alg->dim(); ++i) {
    auto x = solve<K>(basis, Mat<K>(m.act[i] * basis));
    if (!x) throw std::domain_error("submodule_on: subspace not invariant");
    s.act[i] = *x;
  }
  return s;
}

// Quotient by an invariant subspace; also returns the projection matrix.
template <class K>
AlgebraModule<K> quotient_module(const AlgebraModule<K>& m, const Mat<K>& sub, Mat<K>* proj_out = nullptr,
                                 Mat<K>* sect_out = nullptr) {
  Mat<K> sb = column_space_basis<K>(sub);
  Mat<K> comp = complement_basis<K>(sb, m.dim);
  Mat<K> frame = hstack<K>(sb, comp);
  auto finv = inverse<K>(frame);
  if (!finv) throw std::domain_error("quotient_module: degenerate subspace");
  const int q = (int)comp.cols();
  Mat<K> proj = finv->bottomRows(q);
  AlgebraModule<K> r;
  r.alg = m.alg;
  r.dim = q;
  r.act.resize(m.alg->dim());
  for (int i = 0; i < m.alg->dim(); ++i) r.act[i] = proj * m.act[i] * comp;
  if (proj_out) *proj_out = proj;
  if (sect_out) *sect_out = comp;
  return r;
}

// Smallest invariant subspace containing the given vectors.
template <class K>
Mat<K> spin(const AlgebraModule<K>& m, const Mat<K>& seed) {
  Mat<K> basis = column_space_basis<K>(seed);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < m.alg->dim() && !grew; ++i) {
      Mat<K> bigger = column_space_basis<K>(hstack<K>(basis, Mat<K>(m.act[i] * basis)));
      if (bigger.cols() != basis.cols()) {
        basis = bigger;
        grew = true;
      }
    }
  }
  return basis;
}

// J*M for a two-sided ideal given by a basis of algebra elements.
template <class K>
Mat<K> ideal_times_module(const AlgebraModule<K>& m, const Mat<K>& ideal) {
  Mat<K> cols(m.dim, (int)ideal.cols() * m.dim);
  int c = 0;
  for (int j = 0; j < ideal.cols(); ++j) {
    Mat<K> a = m.act_of(ideal.col(j));
    for (int v = 0; v < m.dim; ++v) cols.col(c++) = a.col(v);
  }
  return column_space_basis<K>(cols);
}

// {v : J v = 0}
template <class K>
Mat<K> ideal_annihilator(const AlgebraModule<K>& m, const Mat<K>& ideal) {
  if (ideal.cols() == 0) return Mat<K>::Identity(m.dim, m.dim);
  Mat<K> stacked(m.dim * ideal.cols(), m.dim);
  for (int j = 0; j < ideal.cols(); ++j) stacked.middleRows(j * m.dim, m.dim) = m.act_of(ideal.col(j));
  return kernel_basis<K>(stacked);
}

// Dual space as a left module over the opposite algebra.
template <class K>
AlgebraModule<K> dual_module(const AlgebraModule<K>& m, const AlgebraPtr<K>& op) {
  AlgebraModule<K> d;
  d.alg = op;
  d.dim = m.dim;
  d.act.resize(m.alg->dim());
  for (int i = 0; i < m.alg->dim(); ++i) d.act[i] = m.act[i].transpose();
  return d;
}

// ---------------------------------------------------------------------------
// homomorphisms
// ---------------------------------------------------------------------------

// Basis of Hom_A(m, n); columns are column-major vectorizations of the
// (n.dim x m.dim) intertwiner matrices.
template <class K>
Mat<K> hom_space(const AlgebraModule<K>& m, const AlgebraModule<K>& n) {
  const int rows = n.dim, cols = m.dim;
  const int total = rows * cols;
  Mat<K> basis = Mat<K>::Identity(total, total);
  for (int g = 0; g < m.alg->dim(); ++g) {
    if ((int)basis.cols() == 0) break;
    Mat<K> constraint(total, basis.cols());
    for (int c = 0; c < basis.cols(); ++c) {
      Mat<K> t(rows, cols);
      for (int j = 0; j < cols; ++j) t.col(j) = basis.col(c).segment(j * rows, rows);
      Mat<K> err = t * m.act[g] - n.act[g] * t;
      for (int j = 0; j < cols; ++j) constraint.col(c).segment(j * rows, rows) = err.col(j);
    }
    basis = Mat<K>(basis * kernel_basis<K>(constraint));
  }
  return basis;
}

template <class K>
Mat<K> unvectorize(const Vec<K>& v, int rows, int cols) {
  Mat<K> t(rows, cols);
  for (int j = 0; j < cols; ++j) t.col(j) = v.segment(j * rows, rows);
  return t;
}

template <class K>
Vec<K> vectorize(const Mat<K>& t) {
  Vec<K> v(t.rows() * t.cols());
  for (int j = 0; j < t.cols(); ++j) v.segment(j * t.rows(), t.rows()) = t.col(j);
  return v;
}

// Isomorphism search: deterministic seeded sweep over the hom space.
// Returns an invertible intertwiner when one is found.
template <class K>
std::optional<Mat<K>> find_isomorphism(const AlgebraModule<K>& m, const AlgebraModule<K>& n,
                                       unsigned seed = 12345) {
  if (m.dim != n.dim) return std::nullopt;
  if (m.dim == 0) return Mat<K>(0, 0);
  Mat<K> homs = hom_space(m, n);
  for (int c = 0; c < homs.cols(); ++c) {
    Mat<K> t = unvectorize<K>(Vec<K>(homs.col(c)), n.dim, m.dim);
    if (auto inv = inverse<K>(t)) return t;
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 64 && homs.cols() > 0; ++trial) {
    Vec<K> combo = Vec<K>::Zero(homs.rows());
    for (int c = 0; c < homs.cols(); ++c)
      combo += m.alg->field.make((long long)(rng() % 1024) - 512) * homs.col(c);
    Mat<K> t = unvectorize<K>(combo, n.dim, m.dim);
    if (auto inv = inverse<K>(t)) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// idempotents
// ---------------------------------------------------------------------------

namespace detail {

// minimal polynomial of x inside the corner algebra with unit e:
// powers e, x, x^2, ... until linearly dependent
template <class K>
Poly<K> corner_min_poly(const Algebra<K>& a, const Vec<K>& e, const Vec<K>& x) {
  std::vector<Vec<K>> powers{e};
  Mat<K> span(a.dim(), 1);
  span.col(0) = e;
  for (;;) {
    Vec<K> next = a.mul(powers.back(), x);
    auto coords = solve<K>(span, Mat<K>(next));
    if (coords) {
      Poly<K> mu;
      mu.c.resize(powers.size() + 1, K(0));
      for (size_t i = 0; i < powers.size(); ++i) mu.c[i] = -(*coords)(i, 0);
      mu.c[powers.size()] = K(1);
      mu.trim();
      return mu;
    }
    powers.push_back(next);
    span = hstack<K>(span, Mat<K>(next));
  }
}

// roots of a polynomial in k, found without general factorization:
// exhaustive scan over F_p, rational root extraction over Q
inline std::vector<Fp> poly_roots(const FieldContext<Fp>& f, const Poly<Fp>& mu) {
  std::vector<Fp> roots;
  if (f.p > (1 << 20)) throw std::domain_error("root search unsupported for characteristic > 2^20");
  for (long long v = 0; v < f.p; ++v) {
    Fp cand = f.make(v);
    if (mu.eval(cand).is_zero()) roots.push_back(cand);
  }
  return roots;
}

inline std::vector<Rat> poly_roots(const FieldContext<Rat>&, const Poly<Rat>& mu) {
  std::vector<Rat> roots;
  if (mu.deg() < 1) return roots;
  // clear denominators to an integer polynomial
  mpz_class den(1);
  for (const auto& c : mu.c) {
    mpz_class d = c.value().get_den();
    den = den / gcd(den, d) * d;
  }
  std::vector<mpz_class> ic;
  for (const auto& c : mu.c) ic.push_back(mpq_class(c.value() * den).get_num());
  size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  if (low + 1 >= ic.size()) return roots;
  auto divisors = [](mpz_class n) {
    n = abs(n);
    if (n > mpz_class(1000000000000L)) throw std::domain_error("rational root search: coefficient too large");
    std::vector<mpz_class> ds;
    for (mpz_class d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        ds.push_back(n / d);
      }
    return ds;
  };
  std::vector<mpz_class> nums = divisors(ic[low]);
  std::vector<mpz_class> dens = divisors(ic.back());
  for (const auto& nu : nums)
    for (const auto& de : dens)
      for (int sign = -1; sign <= 1; sign += 2) {
        Rat cand(mpz_class(sign * nu), de);
        if (mu.eval(cand).is_zero()) {
          bool seen = false;
          for (const auto& r : roots) seen = seen || r == cand;
          if (!seen) roots.push_back(cand);
        }
      }
  return roots;
}

// Splits the corner idempotent e along the spectrum of x in e*A*e.  Returns
// orthogonal idempotents summing to e (possibly just {e} when nothing splits).
template <class K>
std::vector<Vec<K>> split_corner_by_element(const Algebra<K>& a, const Vec<K>& e, const Vec<K>& x) {
  Poly<K> mu = corner_min_poly<K>(a, e, x);
  if (mu.deg() <= 1) return {e};
  std::vector<K> roots = poly_roots(a.field, mu);
  if (roots.empty()) return {e};
  // factor mu = prod (t - r)^{m_r} * rest; chinese-remainder idempotents for
  // the full-split part, lumping `rest` into one leftover factor
  std::vector<Poly<K>> factors;
  Poly<K> rest = mu;
  for (const auto& r : roots) {
    Poly<K> lin;
    lin.c = {-r, K(1)};
    Poly<K> pw = Poly<K>::constant(K(1));
    for (;;) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = q;
      pw = pw * lin;
    }
    if (pw.deg() > 0) factors.push_back(pw);
  }
  if (!rest.is_zero() && rest.deg() > 0) factors.push_back(rest);
  if (factors.size() < 2) return {e};
  std::vector<Vec<K>> idems;
  auto eval_in_corner = [&](const Poly<K>& p) {
    Vec<K> r = Vec<K>::Zero(a.dim());
    Vec<K> pw = e;
    for (int i = 0; i <= p.deg(); ++i) {
      r += p.c[i] * pw;
      if (i < p.deg()) pw = a.mul(pw, x);
    }
    return r;
  };
  for (const auto& f : factors) {
    Poly<K> others = Poly<K>::constant(K(1));
    for (const auto& g : factors)
      if (&g != &f) others = others * g;
    Poly<K> gg, u, v;
    poly_xgcd(f, others, gg, u, v);
    if (gg.deg() != 0) return {e};  // not coprime; give up on this element
    // idempotent component for factor f: (v*others)(x)
    idems.push_back(eval_in_corner(v * others));
  }
  return idems;
}

}  // namespace detail

// A complete family of orthogonal primitive idempotents of a semisimple
// algebra whose simple blocks are split (matrix algebras over k).  Throws
// when a block cannot be split over k.
template <class K>
std::vector<Vec<K>> primitive_idempotents_semisimple(const Algebra<K>& sigma, unsigned seed = 905) {
  std::vector<Vec<K>> corners{sigma.unit};
  auto corner_dim = [&](const Vec<K>& e) {
    // dim e*Sigma*e
    Mat<K> im = column_space_basis<K>(Mat<K>(sigma.lmul_of(e) * sigma.rmul_of(e)));
    return (int)im.cols();
  };
  std::mt19937_64 rng(seed);
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<Vec<K>> next;
    for (const auto& e : corners) {
      if (corner_dim(e) <= 1) {
        next.push_back(e);
        continue;
      }
      std::vector<Vec<K>> split{e};
      // candidate elements of e*Sigma*e: compressed basis vectors, then
      // seeded random combinations
      std::vector<Vec<K>> cands;
      for (int i = 0; i < sigma.dim(); ++i)
        cands.push_back(sigma.mul(e, sigma.mul(sigma.gen(i), e)));
      for (int t = 0; t < 40; ++t) {
        Vec<K> c = Vec<K>::Zero(sigma.dim());
        for (int i = 0; i < sigma.dim(); ++i)
          c += sigma.field.make((long long)(rng() % 64) - 32) * sigma.gen(i);
        cands.push_back(sigma.mul(e, sigma.mul(c, e)));
      }
      for (const auto& x : cands) {
        split = detail::split_corner_by_element<K>(sigma, e, x);
        if (split.size() > 1) break;
      }
      if (split.size() > 1) progress = true;
      for (auto& s : split) next.push_back(s);
    }
    corners = std::move(next);
  }
  for (const auto& e : corners)
    if (corner_dim(e) > 1)
      throw std::domain_error("primitive_idempotents: non-split simple block (extension field needed)");
  return corners;
}

// quotient algebra A/span(ideal) together with projection/section
template <class K>
struct QuotientAlgebra {
  AlgebraPtr<K> quo;
  Mat<K> proj;  // dim(quo) x dim(A)
  Mat<K> sect;  // dim(A) x dim(quo)
};

template <class K>
QuotientAlgebra<K> quotient_algebra(const Algebra<K>& a, const Mat<K>& ideal) {
  Mat<K> ib = column_space_basis<K>(ideal);
  Mat<K> comp = complement_basis<K>(ib, a.dim());
  Mat<K> frame = hstack<K>(ib, comp);
  auto finv = inverse<K>(frame);
  if (!finv) throw std::domain_error("quotient_algebra: degenerate ideal");
  const int q = (int)comp.cols();
  Mat<K> proj = finv->bottomRows(q);
  auto quo = std::make_shared<Algebra<K>>();
  quo->field = a.field;
  quo->unit = proj * a.unit;
  quo->lmul.resize(q);
  for (int i = 0; i < q; ++i) {
    quo->lmul[i] = Mat<K>::Zero(q, q);
    for (int j = 0; j < q; ++j) quo->lmul[i].col(j) = proj * a.mul(comp.col(i), comp.col(j));
  }
  return {quo, proj, comp};
}

// Lift a complete orthogonal family of idempotents of A/J to A, exactly.
template <class K>
std::vector<Vec<K>> lift_idempotents(const Algebra<K>& a, const Mat<K>& radical,
                                     const QuotientAlgebra<K>& q,
                                     const std::vector<Vec<K>>& idems_mod_j) {
  auto idempotentize = [&](Vec<K> e) {
    for (int it = 0; it < 64; ++it) {
      Vec<K> e2 = a.mul(e, e);
      if (is_zero_matrix<K>(Mat<K>(e2 - e))) return e;
      // e <- 3e^2 - 2e^3
      e = K(3) * e2 - K(2) * a.mul(e2, e);
    }
    throw std::domain_error("lift_idempotents: idempotent refinement did not converge");
  };
  std::vector<Vec<K>> lifted;
  Vec<K> partial = Vec<K>::Zero(a.dim());  // sum of finished idempotents
  for (size_t i = 0; i < idems_mod_j.size(); ++i) {
    if (i + 1 == idems_mod_j.size()) {
      lifted.push_back(Vec<K>(a.unit - partial));
      break;
    }
    Vec<K> e0 = q.sect * idems_mod_j[i];
    Vec<K> u = a.unit - partial;
    Vec<K> e = idempotentize(a.mul(u, a.mul(e0, u)));
    lifted.push_back(e);
    partial += e;
  }
  // exactness checks
  for (size_t i = 0; i < lifted.size(); ++i)
    for (size_t j = 0; j < lifted.size(); ++j) {
      Vec<K> prod = a.mul(lifted[i], lifted[j]);
      Vec<K> expect = (i == j) ? lifted[i] : Vec<K>(Vec<K>::Zero(a.dim()));
      if (!is_zero_matrix<K>(Mat<K>(prod - expect)))
        throw std::domain_error("lift_idempotents: family is not orthogonal after lifting");
    }
  return lifted;
}

// Structural data computed once per algebra: radical, semisimple quotient,
// primitive idempotents (lifted), projectives, injectives, simples.
template <class K>
struct AlgebraStructure {
  AlgebraPtr<K> alg;
  AlgebraPtr<K> op;
  Mat<K> radical;
  QuotientAlgebra<K> semisimple;
  std::vector<Vec<K>> prim_idems;

  // per primitive idempotent
  std::vector<AlgebraModule<K>> proj;    // P_i = A e_i
  std::vector<Mat<K>> proj_basis;        // basis of A e_i inside A
  std::vector<AlgebraModule<K>> inj;     // I_i = (e_i A)^* as left module
  std::vector<Mat<K>> rproj_basis;       // basis of e_i A inside A
  std::vector<AlgebraModule<K>> simple;  // top of P_i
  std::vector<int> simple_class;         // index of the first idempotent with isomorphic simple
};

template <class K>
AlgebraStructure<K> analyze_algebra(const AlgebraPtr<K>& a) {
  AlgebraStructure<K> s;
  s.alg = a;
  s.op = opposite_algebra<K>(a);
  s.radical = radical_basis<K>(*a);
  s.semisimple = quotient_algebra<K>(*a, s.radical);
  auto idems_ss = primitive_idempotents_semisimple<K>(*s.semisimple.quo);
  s.prim_idems = lift_idempotents<K>(*a, s.radical, s.semisimple, idems_ss);

  AlgebraModule<K> reg = regular_module<K>(a);
  AlgebraModule<K> regop = regular_module<K>(s.op);
  for (const auto& e : s.prim_idems) {
    Mat<K> pb = column_space_basis<K>(a->rmul_of(e));  // A e
    s.proj_basis.push_back(pb);
    s.proj.push_back(submodule_on<K>(reg, pb));
    Mat<K> rb = column_space_basis<K>(a->lmul_of(e));  // e A  (= A^op e)
    s.rproj_basis.push_back(rb);
    AlgebraModule<K> right = submodule_on<K>(regop, rb);
    // dual of a right module is a left module again
    s.inj.push_back(dual_module<K>(right, a));
    // top of P_i: quotient by rad * P_i
    Mat<K> radp = ideal_times_module<K>(s.proj.back(), s.radical);
    s.simple.push_back(quotient_module<K>(s.proj.back(), radp));
  }
  // group isomorphic simples
  s.simple_class.assign(s.prim_idems.size(), -1);
  for (size_t i = 0; i < s.prim_idems.size(); ++i) {
    s.simple_class[i] = (int)i;
    for (size_t j = 0; j < i; ++j)
      if (s.simple_class[j] == (int)j && s.simple[i].dim == s.simple[j].dim &&
          find_isomorphism<K>(s.simple[i], s.simple[j]).has_value()) {
        s.simple_class[i] = (int)j;
        break;
      }
  }
  return s;
}

}  // namespace defcat
