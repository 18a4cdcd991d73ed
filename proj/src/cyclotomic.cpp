#include "coxmin/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace coxmin {
namespace {

using Coeffs = std::vector<Rational>;

void trimZeros(Coeffs& c) {
  while (!c.empty() && c.back().isZero()) c.pop_back();
}

// In-place remainder of c mod the monic polynomial m.
void modMonic(Coeffs& c, const Coeffs& m) {
  const std::size_t deg = m.size() - 1;
  for (std::size_t i = c.size(); i-- > deg;) {
    if (c[i].isZero()) continue;
    Rational lead = c[i];
    c[i] = Rational(0);
    for (std::size_t j = 0; j < deg; ++j) c[i - deg + j] -= lead * m[j];
  }
  if (c.size() > deg) c.resize(deg);
  trimZeros(c);
}

// Quotient of a by monic b (exact division when the remainder is known zero).
Coeffs divMonicExact(Coeffs a, const Coeffs& b) {
  const std::size_t deg = b.size() - 1;
  COXMIN_CHECK(a.size() >= deg, "cyclotomic: bad exact division");
  Coeffs q(a.size() - deg, Rational(0));
  for (std::size_t i = a.size(); i-- > deg;) {
    if (a[i].isZero()) continue;
    Rational lead = a[i];
    q[i - deg] = lead;
    for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] -= lead * b[j];
  }
  trimZeros(a);
  COXMIN_CHECK(a.empty(), "cyclotomic: division was not exact");
  return q;
}

const Coeffs& cyclotomicPoly(unsigned n) {
  static std::map<unsigned, Coeffs> memo;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  Coeffs f(n + 1, Rational(0));
  f[0] = Rational(-1);
  f[n] = Rational(1);
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) f = divMonicExact(std::move(f), cyclotomicPoly(d));
  return memo.emplace(n, std::move(f)).first->second;
}

}  // namespace

unsigned eulerPhi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const Cyclotomy& Cyclotomy::get(unsigned conductor) {
  COXMIN_CHECK(conductor >= 1, "Cyclotomy: conductor must be positive");
  static std::map<unsigned, std::unique_ptr<Cyclotomy>> registry;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(conductor);
  if (it != registry.end()) return *it->second;

  auto cy = std::make_unique<Cyclotomy>();
  cy->conductor = conductor;
  cy->phi = cyclotomicPoly(conductor);
  cy->degree = static_cast<unsigned>(cy->phi.size() - 1);
  COXMIN_CHECK(cy->degree == eulerPhi(conductor), "Cyclotomy: degree mismatch");
  // reduction[k] = x^(degree+k) mod Phi, enough to reduce a product tail.
  if (cy->degree >= 1) {
    Coeffs row(cy->phi.begin(), cy->phi.end() - 1);
    for (auto& c : row) c = -c;
    trimZeros(row);
    for (unsigned k = 0; k + 1 < cy->degree; ++k) {
      cy->reduction.push_back(row);
      // row <- x*row mod Phi
      row.insert(row.begin(), Rational(0));
      if (row.size() > cy->degree) {
        Rational lead = row.back();
        row.pop_back();
        if (!lead.isZero())
          for (std::size_t j = 0; j < cy->reduction[0].size(); ++j)
            row[j] += lead * cy->reduction[0][j];
      }
      trimZeros(row);
    }
  }
  return *registry.emplace(conductor, std::move(cy)).first->second;
}

void CycNum::trim() { trimZeros(c_); }

CycNum CycNum::fromCoeffs(unsigned conductor, std::vector<Rational> coeffs) {
  const Cyclotomy& cy = Cyclotomy::get(conductor);
  trimZeros(coeffs);
  if (coeffs.size() > cy.degree) modMonic(coeffs, cy.phi);
  CycNum r;
  r.n_ = conductor;
  r.c_ = std::move(coeffs);
  r.trim();
  return r;
}

CycNum CycNum::zeta(unsigned conductor, long k) {
  k %= static_cast<long>(conductor);
  if (k < 0) k += conductor;
  std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
  c.back() = Rational(1);
  return fromCoeffs(conductor, std::move(c));
}

CycNum CycNum::embedded(unsigned m) const {
  if (m == n_) return *this;
  COXMIN_CHECK(m % n_ == 0, "CycNum: embedding target must be a multiple of the conductor");
  const unsigned step = m / n_;
  std::vector<Rational> c;
  c.resize(c_.empty() ? 0 : (c_.size() - 1) * step + 1, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) c[k * step] = c_[k];
  return fromCoeffs(m, std::move(c));
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycNum CycNum::operator+(const CycNum& o) const {
  if (n_ != o.n_) {
    unsigned m = static_cast<unsigned>(lcmI(n_, o.n_));
    return embedded(m) + o.embedded(m);
  }
  CycNum r = *this;
  if (r.c_.size() < o.c_.size()) r.c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

CycNum CycNum::operator-(const CycNum& o) const { return *this + (-o); }

CycNum CycNum::operator*(const CycNum& o) const {
  if (n_ != o.n_) {
    unsigned m = static_cast<unsigned>(lcmI(n_, o.n_));
    return embedded(m) * o.embedded(m);
  }
  if (isZero() || o.isZero()) return CycNum();
  if (isRational()) {
    CycNum r = o;
    for (auto& x : r.c_) x *= c_[0];
    r.n_ = n_;
    return r;
  }
  if (o.isRational()) return o * *this;

  const Cyclotomy& cy = Cyclotomy::get(n_);
  std::vector<Rational> prod(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].isZero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].isZero()) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  // Fold the tail back with the precomputed rows.
  std::vector<Rational> res(std::min<std::size_t>(prod.size(), cy.degree), Rational(0));
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = prod[i];
  for (std::size_t i = cy.degree; i < prod.size(); ++i) {
    if (prod[i].isZero()) continue;
    const auto& row = cy.reduction[i - cy.degree];
    for (std::size_t j = 0; j < row.size(); ++j) res[j] += prod[i] * row[j];
  }
  CycNum r;
  r.n_ = n_;
  r.c_ = std::move(res);
  r.trim();
  return r;
}

CycNum CycNum::inverse() const {
  COXMIN_CHECK(!isZero(), "CycNum: inverse of zero");
  if (isRational()) {
    CycNum r;
    r.n_ = n_;
    r.c_.assign(1, c_[0].inverse());
    return r;
  }
  // Extended Euclid: u*f + v*Phi = 1, so u is the inverse of f mod Phi.
  const Cyclotomy& cy = Cyclotomy::get(n_);
  Coeffs r0 = cy.phi, r1 = c_;
  Coeffs u0{}, u1{Rational(1)};  // coefficients of f in r0, r1
  while (!r1.empty()) {
    // r0 = q*r1 + r2 via schoolbook division (r1 need not be monic).
    Coeffs q;
    Coeffs rem = r0;
    const std::size_t d1 = r1.size() - 1;
    Rational lead1 = r1.back();
    while (rem.size() >= r1.size() && !rem.empty()) {
      std::size_t shift = rem.size() - r1.size();
      Rational factor = rem.back() / lead1;
      if (q.size() < shift + 1) q.resize(shift + 1, Rational(0));
      q[shift] += factor;
      for (std::size_t j = 0; j <= d1; ++j) rem[shift + j] -= factor * r1[j];
      trimZeros(rem);
      if (rem.size() <= d1) break;
    }
    // u2 = u0 - q*u1
    Coeffs u2 = u0;
    if (!q.empty() && !u1.empty()) {
      if (u2.size() < q.size() + u1.size() - 1) u2.resize(q.size() + u1.size() - 1, Rational(0));
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i].isZero()) continue;
        for (std::size_t j = 0; j < u1.size(); ++j) u2[i + j] -= q[i] * u1[j];
      }
    }
    trimZeros(u2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  // r0 is the gcd, a nonzero constant since Phi is irreducible.
  COXMIN_CHECK(r0.size() == 1, "CycNum: gcd with Phi not constant");
  Rational scale = r0[0].inverse();
  for (auto& x : u0) x *= scale;
  return fromCoeffs(n_, std::move(u0));
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum base = *this, acc = CycNum(1L);
  acc = acc.embedded(n_);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool CycNum::operator==(const CycNum& o) const {
  if (n_ == o.n_) return c_ == o.c_;
  unsigned m = static_cast<unsigned>(lcmI(n_, o.n_));
  return embedded(m).c_ == o.embedded(m).c_;
}

std::optional<unsigned> CycNum::rootOfUnityExponent(unsigned r) const {
  for (unsigned e = 0; e < r; ++e)
    if (*this == zeta(r, e)) return e;
  return std::nullopt;
}

std::string CycNum::str() const {
  if (isZero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].isZero()) continue;
    Rational c = c_[k];
    if (first) {
      if (c.sign() < 0) { out << "-"; c = -c; }
      first = false;
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    }
    if (k == 0) {
      out << c.str();
    } else {
      if (!c.isOne()) out << c.str() << "*";
      out << "z";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

std::size_t CycNum::hash() const {
  std::size_t h = fnv1a64(&n_, sizeof n_);
  for (const auto& c : c_) h = hashCombine(h, c.hash());
  return h;
}

}  // namespace coxmin
