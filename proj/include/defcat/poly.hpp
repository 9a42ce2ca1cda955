#pragma once

#include "defcat/scalar.hpp"

#include <vector>

namespace defcat {

// Dense univariate polynomials over a field scalar, coefficients low-to-high.
template <class K>
struct Poly {
  std::vector<K> c;

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  K lead() const { return c.back(); }

  static Poly zero() { return {}; }
  static Poly constant(K v) {
    Poly p;
    if (!v.is_zero()) p.c = {v};
    return p;
  }

  K eval(const K& x) const {
    K r(0);
    for (int i = deg(); i >= 0; --i) r = r * x + c[i];
    return r;
  }
};

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r;
  r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  r.trim();
  return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r;
  r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  r.trim();
  return r;
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<K>::zero();
  Poly<K> r;
  r.c.assign(a.c.size() + b.c.size() - 1, K(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

template <class K>
Poly<K> scale(const Poly<K>& a, const K& s) {
  Poly<K> r = a;
  for (auto& x : r.c) x *= s;
  r.trim();
  return r;
}

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw std::domain_error("poly division by zero");
  Poly<K> r = a, q;
  if (a.deg() >= b.deg()) q.c.assign(a.deg() - b.deg() + 1, K(0));
  K linv = K(1) / b.lead();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    K f = r.lead() * linv;
    q.c[shift] = f;
    for (int i = 0; i <= b.deg(); ++i) r.c[shift + i] -= f * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

template <class K>
Poly<K> make_monic(const Poly<K>& a) {
  if (a.is_zero()) return a;
  return scale(a, K(1) / a.lead());
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = b;
    b = r;
  }
  return make_monic(a);
}

// g = gcd(a,b) = u*a + v*b
template <class K>
void poly_xgcd(const Poly<K>& a, const Poly<K>& b, Poly<K>& g, Poly<K>& u, Poly<K>& v) {
  Poly<K> r0 = a, r1 = b;
  Poly<K> u0 = Poly<K>::constant(K(1)), u1 = Poly<K>::zero();
  Poly<K> v0 = Poly<K>::zero(), v1 = Poly<K>::constant(K(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1; r1 = r;
    Poly<K> nu = u0 - q * u1; u0 = u1; u1 = nu;
    Poly<K> nv = v0 - q * v1; v0 = v1; v1 = nv;
  }
  if (!r0.is_zero()) {
    K linv = K(1) / r0.lead();
    g = scale(r0, linv); u = scale(u0, linv); v = scale(v0, linv);
  } else {
    g = r0; u = u0; v = v0;
  }
}

template <class K>
Poly<K> derivative(const Poly<K>& a) {
  Poly<K> r;
  for (int i = 1; i <= a.deg(); ++i) {
    K coef = a.c[i];
    K factor(0);
    for (int t = 0; t < i; ++t) factor += K(1);  // i as a field element
    r.c.push_back(coef * factor);
  }
  r.trim();
  return r;
}

}  // namespace defcat
