#pragma once

// Exact scalar types used everywhere: arbitrary-precision integers and
// rationals (GMP), and a small prime-field element with run-time modulus.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quivhom {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat parse_rational(const std::string& s) {
  // accepts "p", "-p", "p/q"
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::runtime_error("invalid rational literal: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw std::runtime_error("zero denominator: " + s);
  return r;
}

// Element of F_p. The additive identity may carry modulus 0 (a "blank" zero)
// so that default-constructed values combine with anything; all nonzero
// values know their modulus.
struct Fp {
  uint64_t v = 0;
  uint64_t p = 0;

  Fp() = default;
  Fp(uint64_t value, uint64_t mod) : v(mod ? value % mod : value), p(mod) {}

  static Fp zero() { return Fp(); }
  bool blank() const { return p == 0; }

  friend uint64_t common_mod(const Fp& a, const Fp& b) {
    if (a.p == 0) return b.p;
    if (b.p == 0 || a.p == b.p) return a.p;
    throw std::logic_error("Fp modulus mismatch");
  }
  friend Fp operator+(const Fp& a, const Fp& b) {
    uint64_t m = common_mod(a, b);
    if (m == 0) return Fp();
    return Fp((a.v + b.v) % m, m);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    uint64_t m = common_mod(a, b);
    if (m == 0) return Fp();
    return Fp((a.v + m - b.v % m) % m, m);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    uint64_t m = common_mod(a, b);
    if (m == 0) return Fp();
    return Fp((a.v * b.v) % m, m);
  }
  Fp operator-() const { return p ? Fp(p - v, p) : Fp(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p && b.p && a.p != b.p) return false;
    return a.v == b.v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp inv() const {
    if (p == 0 || v == 0) throw std::domain_error("Fp: inverse of zero");
    // extended Euclid
    int64_t t = 0, nt = 1;
    int64_t r = (int64_t)p, nr = (int64_t)v;
    while (nr != 0) {
      int64_t q = r / nr;
      t -= q * nt; std::swap(t, nt);
      r -= q * nr; std::swap(r, nr);
    }
    if (r != 1) throw std::domain_error("Fp: modulus not prime?");
    if (t < 0) t += (int64_t)p;
    return Fp((uint64_t)t, p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
};

// Uniform field interface used by the templated linear algebra and complexes.
template <class K>
struct field {
  static bool is_zero(const K& x) { return x == 0; }
  static K neg(const K& x) { return -x; }
  static K inv(const K& x) { return K(1) / x; }
  static K zero(const K&) { return K(0); }
  // the multiplicative unit of the same field instance as `sample`
  static K one(const K&) { return K(1); }
  static K from_int(long n, const K&) { return K(n); }
  static std::string str(const K& x) {
    mpq_class q(x);
    return q.get_str();
  }
};

template <>
struct field<Fp> {
  static bool is_zero(const Fp& x) { return x.v == 0; }
  static Fp neg(const Fp& x) { return -x; }
  static Fp inv(const Fp& x) { return x.inv(); }
  static Fp zero(const Fp&) { return Fp(); }
  static Fp one(const Fp& sample) {
    if (sample.p == 0) throw std::logic_error("Fp: blank sample has no unit");
    return Fp(1, sample.p);
  }
  static Fp from_int(long n, const Fp& sample) {
    if (sample.p == 0) throw std::logic_error("Fp: blank sample");
    long r = n % (long)sample.p;
    if (r < 0) r += (long)sample.p;
    return Fp((uint64_t)r, sample.p);
  }
  static std::string str(const Fp& x) { return std::to_string(x.v); }
};

inline Fp rat_to_fp(const Rat& r, uint64_t p) {
  Int num = r.get_num(), den = r.get_den();
  Int pm((unsigned long)p);
  Int nm = num % pm; if (nm < 0) nm += pm;
  Int dm = den % pm;
  if (dm == 0) throw std::runtime_error("coefficient denominator divisible by field characteristic");
  Fp n(nm.get_ui(), p), d(dm.get_ui(), p);
  return n / d;
}

inline Rat int_to_rat(const Int& z) { return Rat(z); }
inline Fp int_to_fp(const Int& z, uint64_t p) {
  Int pm((unsigned long)p);
  Int m = z % pm; if (m < 0) m += pm;
  return Fp(m.get_ui(), p);
}

}  // namespace quivhom
