#pragma once

#include "defcat/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace defcat {

// Finite-dimensional commutative local k-algebra given by structure
// constants.  Basis element 0 is the unit; the maximal ideal is the span of
// basis elements 1..d-1 and must be nilpotent.  Elements are coordinate
// vectors of length d.
template <class K>
struct BaseRing {
  FieldContext<K> field;
  std::vector<std::string> basis;  // basis[0] is the unit
  std::vector<Mat<K>> mult;        // mult[i] = matrix of multiplication by basis i

  int dim() const { return (int)basis.size(); }

  Vec<K> zero() const { return Vec<K>::Zero(dim()); }
  Vec<K> one() const {
    Vec<K> e = zero();
    e(0) = field.make(1);
    return e;
  }
  Vec<K> gen(int i) const {
    Vec<K> e = zero();
    e(i) = field.make(1);
    return e;
  }

  // matrix of multiplication by a
  Mat<K> lmul(const Vec<K>& a) const {
    Mat<K> m = Mat<K>::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      if (!a(i).is_zero()) m += a(i) * mult[i];
    return m;
  }

  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const { return lmul(a) * b; }

  bool is_unit(const Vec<K>& a) const { return !a(0).is_zero(); }

  Vec<K> inv(const Vec<K>& a) const {
    auto x = solve<K>(lmul(a), Mat<K>(one()));
    if (!x) throw std::domain_error("BaseRing: element not invertible");
    return x->col(0);
  }

  // basis of the maximal ideal as a coordinate matrix
  Mat<K> max_ideal_basis() const {
    Mat<K> m = Mat<K>::Zero(dim(), dim() - 1);
    for (int i = 1; i < dim(); ++i) m(i, i - 1) = field.make(1);
    return m;
  }
};

template <class K>
using RingPtr = std::shared_ptr<const BaseRing<K>>;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void fail(std::string msg) { violations.push_back(std::move(msg)); }
  std::string summary() const {
    if (ok()) return "valid";
    std::string s;
    for (const auto& v : violations) s += v + "; ";
    return s;
  }
};

// span of products x*y for x in a, y in b (column-space bases)
template <class K>
Mat<K> ideal_product(const BaseRing<K>& r, const Mat<K>& a, const Mat<K>& b) {
  Mat<K> prod(r.dim(), a.cols() * b.cols());
  int c = 0;
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < b.cols(); ++j) prod.col(c++) = r.mul(a.col(i), b.col(j));
  return column_space_basis<K>(prod);
}

// descending chain m ⊇ m^2 ⊇ ... until it stabilizes (last entry repeated
// if nonzero, meaning the chain is not nilpotent)
template <class K>
std::vector<Mat<K>> ideal_power_chain(const BaseRing<K>& r, const Mat<K>& ideal) {
  std::vector<Mat<K>> chain;
  chain.push_back(column_space_basis<K>(ideal));
  while (chain.back().cols() > 0) {
    Mat<K> next = ideal_product(r, ideal, chain.back());
    if (next.cols() == chain.back().cols()) {  // stabilized nonzero
      chain.push_back(next);
      break;
    }
    chain.push_back(next);
  }
  return chain;
}

template <class K>
ValidationReport validate_base_ring(const BaseRing<K>& r) {
  ValidationReport rep;
  const int d = r.dim();
  if (d <= 0) {
    rep.fail("empty basis");
    return rep;
  }
  if ((int)r.mult.size() != d) {
    rep.fail("structure constant table has wrong length");
    return rep;
  }
  for (int i = 0; i < d; ++i)
    if (r.mult[i].rows() != d || r.mult[i].cols() != d) {
      rep.fail("structure constant block " + std::to_string(i) + " has wrong shape");
      return rep;
    }
  long long p = r.field.characteristic();
  if (p != 0 && !is_probable_prime(p)) rep.fail("field characteristic is neither 0 nor prime");
  // unit laws: e0 * x = x and x * e0 = x
  if (!is_zero_matrix<K>(Mat<K>(r.mult[0] - Mat<K>::Identity(d, d))))
    rep.fail("basis element 0 is not a left unit");
  for (int i = 0; i < d; ++i)
    if (!is_zero_matrix<K>(Mat<K>(Mat<K>(r.mult[i].col(0)) - Mat<K>(r.gen(i)))))
      rep.fail("basis element 0 is not a right unit on basis " + std::to_string(i));
  // commutativity: e_i e_j = e_j e_i
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!is_zero_matrix<K>(Mat<K>(Mat<K>(r.mult[i].col(j)) - Mat<K>(r.mult[j].col(i)))))
        rep.fail("commutativity fails on pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  // associativity: L_{e_i e_j} = L_{e_i} L_{e_j}
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat<K> lhs = Mat<K>::Zero(d, d);
      Vec<K> prod = r.mult[i].col(j);
      for (int t = 0; t < d; ++t)
        if (!prod(t).is_zero()) lhs += prod(t) * r.mult[t];
      if (!is_zero_matrix<K>(Mat<K>(lhs - r.mult[i] * r.mult[j])))
        rep.fail("associativity fails on pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  if (!rep.ok()) return rep;
  // maximal ideal span(e_1..e_{d-1}): closed under multiplication and nilpotent
  for (int i = 1; i < d; ++i)
    for (int j = 1; j < d; ++j)
      if (!r.mult[i].col(j)(0).is_zero())
        rep.fail("maximal ideal not closed: product of basis " + std::to_string(i) + "," +
                 std::to_string(j) + " has a unit component");
  auto chain = ideal_power_chain<K>(r, r.max_ideal_basis());
  if (chain.back().cols() != 0) rep.fail("maximal ideal is not nilpotent");
  return rep;
}

// nilpotency order of the maximal ideal: least n with m^n = 0
template <class K>
int max_ideal_nilpotency(const BaseRing<K>& r) {
  auto chain = ideal_power_chain<K>(r, r.max_ideal_basis());
  return (int)chain.size();  // chain = [m, m^2, ..., 0]
}

// Surjection theta: R -> S of base rings with nilpotent kernel I.
template <class K>
struct RingSurjection {
  RingPtr<K> source;  // R
  RingPtr<K> target;  // S
  Mat<K> theta;       // dim(S) x dim(R)

  Mat<K> kernel() const { return kernel_basis<K>(theta); }
};

template <class K>
ValidationReport validate_surjection(const RingSurjection<K>& s) {
  ValidationReport rep;
  const auto& R = *s.source;
  const auto& S = *s.target;
  if (s.theta.rows() != S.dim() || s.theta.cols() != R.dim()) {
    rep.fail("matrix shape mismatch");
    return rep;
  }
  if (R.field.characteristic() != S.field.characteristic()) rep.fail("field mismatch");
  if (!is_zero_matrix<K>(Mat<K>(Mat<K>(s.theta * R.one()) - Mat<K>(S.one()))))
    rep.fail("theta does not preserve the unit");
  for (int i = 0; i < R.dim(); ++i) {
    // theta(e_i * x) = theta(e_i) * theta(x)
    Mat<K> lhs = s.theta * R.mult[i];
    Mat<K> rhs = S.lmul(s.theta * R.gen(i)) * s.theta;
    if (!is_zero_matrix<K>(Mat<K>(lhs - rhs))) {
      rep.fail("theta is not multiplicative on basis " + std::to_string(i));
      break;
    }
  }
  if (rank_of<K>(s.theta) != S.dim()) rep.fail("theta is not surjective");
  if (!rep.ok()) return rep;
  Mat<K> ker = s.kernel();
  if (ker.cols() > 0) {
    auto chain = ideal_power_chain<K>(R, ker);
    if (chain.back().cols() != 0) rep.fail("kernel is not nilpotent");
  }
  return rep;
}

// Bases of I ⊇ I^2 ⊇ ... ⊇ I^n = 0; length = nilpotency order.
template <class K>
std::vector<Mat<K>> kernel_filtration(const RingSurjection<K>& s) {
  auto rep = validate_surjection(s);
  if (!rep.ok()) throw std::invalid_argument("kernel_filtration: invalid surjection: " + rep.summary());
  Mat<K> ker = s.kernel();
  if (ker.cols() == 0) return {Mat<K>(s.source->dim(), 0)};
  return ideal_power_chain<K>(*s.source, ker);
}

template <class K>
int nilpotency_order(const RingSurjection<K>& s) {
  return (int)kernel_filtration(s).size();
}

// k-linear section of theta (theta ∘ sec = id).
template <class K>
Mat<K> section_of(const RingSurjection<K>& s) {
  auto x = solve<K>(s.theta, Mat<K>::Identity(s.target->dim(), s.target->dim()));
  if (!x) throw std::domain_error("section_of: not surjective");
  return *x;
}

// Quotient ring R/I for an ideal I given by a column-space basis, together
// with the projection.  Basis of the quotient: unit class first, then the
// standard-basis classes complementing I.
template <class K>
RingSurjection<K> quotient_ring(const RingPtr<K>& R, const Mat<K>& ideal) {
  const int d = R->dim();
  Mat<K> ib = column_space_basis<K>(ideal);
  Mat<K> comp = complement_basis<K>(ib, d);  // standard basis vectors
  // ensure the unit class is representable: assemble [ib | comp] and express
  // vectors in that frame; the quotient coordinates are the comp-part.
  Mat<K> frame = hstack<K>(ib, comp);
  auto frame_inv = inverse<K>(frame);
  if (!frame_inv) throw std::domain_error("quotient_ring: ideal basis is degenerate");
  const int q = (int)comp.cols();
  auto project = [&](const Vec<K>& v) -> Vec<K> {
    Vec<K> coords = (*frame_inv) * v;
    return coords.tail(q);
  };
  // quotient unit must be the class of 1; reorder comp so that the class of 1
  // has a nonzero leading coordinate, then change basis so the unit is e0.
  Vec<K> unit_q = project(R->one());
  int lead = -1;
  for (int i = 0; i < q; ++i)
    if (!unit_q(i).is_zero()) { lead = i; break; }
  if (lead < 0) throw std::domain_error("quotient_ring: unit lies in the ideal");
  // new quotient basis: b0 = unit class, b_i = remaining comp classes
  Mat<K> qbasis = Mat<K>::Zero(q, q);
  qbasis.col(0) = unit_q;
  int c = 1;
  for (int i = 0; i < q; ++i)
    if (i != lead) qbasis(i, c++) = K(1);
  auto qbasis_inv = inverse<K>(qbasis);
  if (!qbasis_inv) throw std::domain_error("quotient_ring: basis construction failed");

  auto S = std::make_shared<BaseRing<K>>();
  S->field = R->field;
  for (int i = 0; i < q; ++i) S->basis.push_back("q" + std::to_string(i));
  S->basis[0] = "1";
  // representatives of the quotient basis inside R
  Mat<K> reps = comp * qbasis;
  S->mult.resize(q);
  for (int i = 0; i < q; ++i) {
    S->mult[i] = Mat<K>::Zero(q, q);
    for (int j = 0; j < q; ++j)
      S->mult[i].col(j) = (*qbasis_inv) * project(R->mul(reps.col(i), reps.col(j)));
  }
  RingSurjection<K> s;
  s.source = R;
  s.target = S;
  s.theta = Mat<K>::Zero(q, d);
  for (int j = 0; j < d; ++j) s.theta.col(j) = (*qbasis_inv) * project(R->gen(j));
  return s;
}

// ---------------------------------------------------------------------------
// standard constructions used throughout the test batteries
// ---------------------------------------------------------------------------

// k itself
template <class K>
RingPtr<K> make_field_ring(FieldContext<K> field) {
  auto r = std::make_shared<BaseRing<K>>();
  r->field = field;
  r->basis = {"1"};
  r->mult = {Mat<K>::Identity(1, 1)};
  return r;
}

// k[e]/(e^n)
template <class K>
RingPtr<K> make_truncated_polynomial_ring(FieldContext<K> field, int n) {
  auto r = std::make_shared<BaseRing<K>>();
  r->field = field;
  for (int i = 0; i < n; ++i) r->basis.push_back(i == 0 ? "1" : (i == 1 ? "e" : "e^" + std::to_string(i)));
  r->mult.resize(n);
  for (int i = 0; i < n; ++i) {
    r->mult[i] = Mat<K>::Zero(n, n);
    for (int j = 0; j + i < n; ++j) r->mult[i](i + j, j) = field.make(1);
  }
  return r;
}

// the reduction k[e]/(e^n) -> k
template <class K>
RingSurjection<K> make_residue_surjection(const RingPtr<K>& R) {
  RingSurjection<K> s;
  s.source = R;
  s.target = make_field_ring<K>(R->field);
  s.theta = Mat<K>::Zero(1, R->dim());
  s.theta(0, 0) = R->field.make(1);
  return s;
}

}  // namespace defcat
