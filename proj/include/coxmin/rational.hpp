#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "coxmin/common.hpp"

namespace coxmin {

// Arbitrary-precision rational, always canonical (gcd(num,den)=1, den>=1).
// Thin eager wrapper over mpq_class: gmpxx's expression templates must not
// leak into Eigen expressions, so every operator here returns a materialized
// value.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}           // NOLINT: implicit by design
  Rational(int n) : v_(n) {}            // NOLINT
  explicit Rational(const mpz_class& n) : v_(n) {}
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
  Rational(long num, long den) : v_(num, den) {
    COXMIN_CHECK(den != 0, "Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    COXMIN_CHECK(den != 0, "Rational: zero denominator");
    v_.canonicalize();
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool isZero() const { return sgn(v_) == 0; }
  bool isOne() const { return v_ == 1; }
  bool isInteger() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    COXMIN_CHECK(!o.isZero(), "Rational: division by zero");
    return Rational(mpq_class(v_ / o.v_));
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    COXMIN_CHECK(!o.isZero(), "Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  Rational inverse() const {
    COXMIN_CHECK(!isZero(), "Rational: inverse of zero");
    return Rational(mpq_class(1 / v_));
  }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  // Canonical text: "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (isInteger()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  std::size_t hash() const {
    std::uint64_t h = hashLimbs(v_.get_num_mpz_t(), 0xcbf29ce484222325ull);
    return hashLimbs(v_.get_den_mpz_t(), h);
  }

 private:
  static std::uint64_t hashLimbs(const mpz_srcptr z, std::uint64_t h) {
    int sz = z->_mp_size;
    h = fnv1a64(&sz, sizeof sz, h);
    std::size_t n = sz < 0 ? -sz : sz;
    return fnv1a64(z->_mp_d, n * sizeof(mp_limb_t), h);
  }

  mpq_class v_;
};

inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }
inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

// Exact gcd/lcm on machine-size positive integers.
inline std::int64_t gcdI(std::int64_t a, std::int64_t b) {
  while (b) { auto t = a % b; a = b; b = t; }
  return a < 0 ? -a : a;
}
inline std::int64_t lcmI(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcdI(a, b) * b;
}

}  // namespace coxmin
