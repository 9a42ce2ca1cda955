#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace defcat {

// Prime-field element with the modulus carried per value.  A modulus of 0
// marks an unbound integer literal (Scalar(0), Scalar(1), ... produced by
// generic code); binary operations merge moduli so literals combine freely
// with bound elements.
class Fp {
public:
  Fp() : v_(0), p_(0) {}
  Fp(long long v) : v_(v), p_(0) {}
  Fp(long long v, long long p) : v_(v), p_(p) { reduce(); }

  long long value() const { return v_; }
  long long modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    long long p = merged(a, b);
    return make(add_raw(a.v_, b.v_, p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    long long p = merged(a, b);
    return make(add_raw(a.v_, -b.v_, p), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    long long p = merged(a, b);
    return make(mul_raw(a.v_, b.v_, p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp operator-() const { return make(p_ ? (v_ ? p_ - v_ : 0) : -v_, p_); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp inverse() const {
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) return *this;
      throw std::domain_error("Fp: inverse of unbound literal " + std::to_string(v_));
    }
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    // extended Euclid
    long long a = v_, b = p_, x0 = 1, x1 = 0;
    while (b) {
      long long q = a / b;
      a -= q * b; std::swap(a, b);
      x0 -= q * x1; std::swap(x0, x1);
    }
    if (a != 1) throw std::domain_error("Fp: modulus not prime at inversion");
    return make(x0 % p_ < 0 ? x0 % p_ + p_ : x0 % p_, p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    long long p = merged(a, b);
    if (p == 0) return a.v_ == b.v_;
    return add_raw(a.v_, -b.v_, p) == 0;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

private:
  static Fp make(long long v, long long p) {
    Fp r; r.v_ = v; r.p_ = p; r.reduce(); return r;
  }
  static long long merged(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_)
      throw std::domain_error("Fp: mixed moduli " + std::to_string(a.p_) + " vs " + std::to_string(b.p_));
    return a.p_ ? a.p_ : b.p_;
  }
  static long long add_raw(long long a, long long b, long long p) {
    if (p == 0) return a + b;
    __int128 s = (__int128)a + b;
    long long r = (long long)(s % p);
    return r < 0 ? r + p : r;
  }
  static long long mul_raw(long long a, long long b, long long p) {
    __int128 s = (__int128)a * b;
    if (p == 0) {
      if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("Fp: literal overflow");
      return (long long)s;
    }
    long long r = (long long)(s % p);
    return r < 0 ? r + p : r;
  }
  void reduce() {
    if (p_) { v_ %= p_; if (v_ < 0) v_ += p_; }
  }

  long long v_;
  long long p_;
};

// Exact rational, GMP-backed.
class Rat {
public:
  Rat() : q_(0) {}
  Rat(long long v) : q_((long)v) {}
  Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  Rat(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return q_ == 0; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.q_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
  }
  Rat operator-() const { return Rat(mpq_class(-q_)); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  Rat inverse() const {
    if (q_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(1 / q_));
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& a) { return os << a.q_.get_str(); }

private:
  mpq_class q_;
};

// Runtime field descriptor: characteristic 0 = rationals, p = prime field.
// Binds JSON-level integers to concrete scalar values.
template <class K>
struct FieldContext;

template <>
struct FieldContext<Fp> {
  long long p = 0;
  Fp make(long long v) const { return Fp(v, p); }
  long long characteristic() const { return p; }
};

template <>
struct FieldContext<Rat> {
  Rat make(long long v) const { return Rat(v); }
  long long characteristic() const { return 0; }
};

inline bool is_probable_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace defcat

namespace Eigen {

template <>
struct NumTraits<defcat::Fp> : GenericNumTraits<defcat::Fp> {
  typedef defcat::Fp Real;
  typedef defcat::Fp NonInteger;
  typedef defcat::Fp Nested;
  static inline Real epsilon() { return defcat::Fp(0); }
  static inline Real dummy_precision() { return defcat::Fp(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0, IsSigned = 1, IsComplex = 0, RequireInitialization = 1,
    ReadCost = 2, AddCost = 4, MulCost = 8
  };
};

template <>
struct NumTraits<defcat::Rat> : GenericNumTraits<defcat::Rat> {
  typedef defcat::Rat Real;
  typedef defcat::Rat NonInteger;
  typedef defcat::Rat Nested;
  static inline Real epsilon() { return defcat::Rat(0); }
  static inline Real dummy_precision() { return defcat::Rat(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0, IsSigned = 1, IsComplex = 0, RequireInitialization = 1,
    ReadCost = 8, AddCost = 150, MulCost = 200
  };
};

}  // namespace Eigen

namespace defcat {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

}  // namespace defcat
