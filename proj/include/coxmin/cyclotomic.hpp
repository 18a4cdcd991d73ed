#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxmin/rational.hpp"

namespace coxmin {

unsigned eulerPhi(unsigned n);

// Shared per-conductor data: the minimal polynomial of zeta_N over Q and
// reduction rows for the product tail, x^(deg+k) mod Phi_N for k < deg-1.
struct Cyclotomy {
  unsigned conductor = 1;
  unsigned degree = 1;                          // phi(conductor)
  std::vector<Rational> phi;                    // Phi_N, monic, size degree+1
  std::vector<std::vector<Rational>> reduction; // reduction[k] has size <= degree

  static const Cyclotomy& get(unsigned conductor);
};

// Element of Q(zeta_N) on the power basis 1, z, ..., z^(phi(N)-1) where
// z = zeta_N. Canonical form: reduced mod Phi_N, trailing zeros trimmed
// (so rational values stay one-coefficient cheap at any conductor).
// The conductor is declared, not minimized; equality compares values and
// embeds across conductors when they differ. hash() agrees only between
// equal values of the SAME declared conductor.
class CycNum {
 public:
  CycNum() = default;
  CycNum(long v) { if (v != 0) c_.assign(1, Rational(v)); }  // NOLINT
  CycNum(int v) : CycNum(static_cast<long>(v)) {}            // NOLINT
  CycNum(const Rational& v) { if (!v.isZero()) c_.assign(1, v); }  // NOLINT

  // zeta_N^k at conductor N.
  static CycNum zeta(unsigned conductor, long k = 1);
  // Coefficients on the power basis, any length; reduced mod Phi_N.
  static CycNum fromCoeffs(unsigned conductor, std::vector<Rational> coeffs);

  unsigned conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool isZero() const { return c_.empty(); }
  bool isRational() const { return c_.size() <= 1; }
  bool isOne() const { return c_.size() == 1 && c_[0].isOne(); }
  Rational asRational() const {
    COXMIN_CHECK(isRational(), "CycNum: not a rational value");
    return c_.empty() ? Rational(0) : c_[0];
  }

  // Reinterpret at conductor m (m must be a multiple of the own conductor).
  CycNum embedded(unsigned m) const;

  CycNum operator-() const;
  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator/(const CycNum& o) const { return *this * o.inverse(); }
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  CycNum& operator/=(const CycNum& o) { return *this = *this / o; }

  // Extended Euclid against Phi_N; total since Phi_N is irreducible.
  CycNum inverse() const;
  CycNum pow(long e) const;

  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  // e with *this == zeta_r^e, if the value is such a root of unity.
  std::optional<unsigned> rootOfUnityExponent(unsigned r) const;

  // Canonical text in the scalar grammar, z = zeta_N of the own conductor.
  std::string str() const;

  std::size_t hash() const;

 private:
  unsigned n_ = 1;
  std::vector<Rational> c_;  // trimmed; empty means 0

  void trim();
};

inline CycNum operator*(const Rational& a, const CycNum& b) { return CycNum(a) * b; }
inline CycNum operator*(long a, const CycNum& b) { return CycNum(a) * b; }

}  // namespace coxmin
