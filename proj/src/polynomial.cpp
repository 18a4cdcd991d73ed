#include "coxmin/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace coxmin {

namespace mono {

Mono mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    unsigned s = static_cast<unsigned>(a[i]) + b[i];
    COXMIN_CHECK(s <= 0xffff, "monomial exponent overflow");
    r[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

bool divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono div(const Mono& b, const Mono& a) {
  Mono r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    COXMIN_CHECK(a[i] <= b[i], "monomial division underflow");
    r[i] = static_cast<std::uint16_t>(b[i] - a[i]);
  }
  return r;
}

Mono lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

long deg(const Mono& a) {
  long d = 0;
  for (auto e : a) d += e;
  return d;
}

long wdeg(const Mono& a, const std::vector<long>& w) {
  long d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += w[i] * a[i];
  return d;
}

}  // namespace mono

MonomialOrder MonomialOrder::grevlex(unsigned nvars) {
  MonomialOrder o;
  if (nvars) o.blocks_.push_back({0, nvars, false});
  return o;
}

MonomialOrder MonomialOrder::lex(unsigned nvars) {
  MonomialOrder o;
  if (nvars) o.blocks_.push_back({0, nvars, true});
  return o;
}

MonomialOrder MonomialOrder::elimination(unsigned head, unsigned nvars) {
  COXMIN_CHECK(head <= nvars, "elimination block too large");
  if (head == 0 || head == nvars) return grevlex(nvars);
  MonomialOrder o;
  o.blocks_.push_back({0, head, false});
  o.blocks_.push_back({head, nvars, false});
  return o;
}

int MonomialOrder::compare(const Mono& a, const Mono& b) const {
  for (const auto& blk : blocks_) {
    if (blk.lex) {
      for (unsigned i = blk.begin; i < blk.end; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
    } else {
      long da = 0, db = 0;
      for (unsigned i = blk.begin; i < blk.end; ++i) { da += a[i]; db += b[i]; }
      if (da != db) return da < db ? -1 : 1;
      for (unsigned i = blk.end; i-- > blk.begin;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;  // reverse lex
      }
    }
  }
  return 0;
}

std::string MonomialOrder::key() const {
  std::ostringstream out;
  for (const auto& blk : blocks_)
    out << (blk.lex ? "lex" : "grevlex") << "[" << blk.begin << "," << blk.end << ")";
  return out.str();
}

RingPtr Ring::make(std::vector<std::string> vars, MonomialOrder order,
                   unsigned conductor) {
  auto r = std::make_shared<Ring>();
  r->vars = std::move(vars);
  r->order = std::move(order);
  r->conductor = conductor;
  return r;
}

RingPtr Ring::grevlexRing(std::vector<std::string> vars, unsigned conductor) {
  auto n = static_cast<unsigned>(vars.size());
  return make(std::move(vars), MonomialOrder::grevlex(n), conductor);
}

int Ring::varIndex(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

std::string Ring::key() const {
  std::ostringstream out;
  out << "Q(zeta_" << conductor << ")[";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out << ",";
    out << vars[i];
  }
  out << "]/" << order.key();
  return out.str();
}

void Poly::normalize() {
  std::sort(t_.begin(), t_.end(), [&](const Term& a, const Term& b) {
    return ring_->order.compare(a.m, b.m) > 0;
  });
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& term : t_) {
    if (!out.empty() && out.back().m == term.m)
      out.back().c += term.c;
    else
      out.push_back(std::move(term));
    if (!out.empty() && out.back().c.isZero()) out.pop_back();
  }
  t_ = std::move(out);
}

Poly Poly::constant(RingPtr ring, CycNum c) {
  Poly p(std::move(ring));
  if (!c.isZero()) p.t_.push_back({Mono(p.ring_->nvars(), 0), std::move(c)});
  return p;
}

Poly Poly::variable(RingPtr ring, unsigned var, unsigned power) {
  Poly p(std::move(ring));
  COXMIN_CHECK(var < p.ring_->nvars(), "variable index out of range");
  if (power == 0) return constant(p.ring_, CycNum(1));
  Mono m(p.ring_->nvars(), 0);
  m[var] = static_cast<std::uint16_t>(power);
  p.t_.push_back({std::move(m), CycNum(1)});
  return p;
}

Poly Poly::fromTerms(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.t_ = std::move(terms);
  p.normalize();
  return p;
}

const Mono& Poly::leadingMono() const {
  COXMIN_CHECK(!t_.empty(), "leading monomial of zero");
  return t_.front().m;
}

const CycNum& Poly::leadingCoeff() const {
  COXMIN_CHECK(!t_.empty(), "leading coefficient of zero");
  return t_.front().c;
}

bool Poly::isConstant() const {
  return t_.empty() || (t_.size() == 1 && mono::deg(t_[0].m) == 0);
}

CycNum Poly::constantValue() const {
  COXMIN_CHECK(isConstant(), "constantValue of non-constant");
  return t_.empty() ? CycNum() : t_[0].c;
}

long Poly::degree() const {
  long d = -1;
  for (const auto& term : t_) d = std::max(d, mono::deg(term.m));
  return d;
}

std::optional<std::pair<long, long>> Poly::wdegRange(const std::vector<long>& w) const {
  if (t_.empty()) return std::nullopt;
  long lo = mono::wdeg(t_[0].m, w), hi = lo;
  for (const auto& term : t_) {
    long d = mono::wdeg(term.m, w);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return std::make_pair(lo, hi);
}

bool Poly::isHomogeneous(const std::vector<long>& w) const {
  auto r = wdegRange(w);
  return !r || r->first == r->second;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& term : p.t_) term.c = -term.c;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  COXMIN_CHECK(ring_ && o.ring_, "poly without ring");
  Poly r(ring_);
  r.t_.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    int c = ring_->order.compare(t_[i].m, o.t_[j].m);
    if (c > 0) {
      r.t_.push_back(t_[i++]);
    } else if (c < 0) {
      r.t_.push_back(o.t_[j++]);
    } else {
      CycNum s = t_[i].c + o.t_[j].c;
      if (!s.isZero()) r.t_.push_back({t_[i].m, std::move(s)});
      ++i; ++j;
    }
  }
  for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
  for (; j < o.t_.size(); ++j) r.t_.push_back(o.t_[j]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  auto cmp = [this](const Mono& a, const Mono& b) {
    return ring_->order.compare(a, b) > 0;
  };
  std::map<Mono, CycNum, decltype(cmp)> acc(cmp);
  for (const auto& a : t_)
    for (const auto& b : o.t_) {
      Mono m = mono::mul(a.m, b.m);
      CycNum c = a.c * b.c;
      auto it = acc.find(m);
      if (it == acc.end())
        acc.emplace(std::move(m), std::move(c));
      else
        it->second += c;
    }
  Poly r(ring_);
  for (auto& [m, c] : acc)
    if (!c.isZero()) r.t_.push_back({m, c});
  return r;
}

Poly Poly::scaled(const CycNum& c) const {
  if (c.isZero()) return Poly(ring_);
  Poly r = *this;
  for (auto& term : r.t_) term.c *= c;
  return r;
}

Poly Poly::mulTerm(const Mono& m, const CycNum& c) const {
  if (c.isZero()) return Poly(ring_);
  Poly r(ring_);
  r.t_.reserve(t_.size());
  for (const auto& term : t_) r.t_.push_back({mono::mul(term.m, m), term.c * c});
  return r;
}

Poly Poly::monic() const {
  COXMIN_CHECK(!t_.empty(), "monic of zero");
  return scaled(t_[0].c.inverse());
}

Poly Poly::pow(unsigned e) const {
  Poly acc = constant(ring_, CycNum(1));
  Poly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
  return true;
}

Poly Poly::substituted(const RingPtr& target, const std::vector<Poly>& images) const {
  COXMIN_CHECK(images.size() == ring_->nvars(), "substitution arity mismatch");
  // Cache variable powers; repeated squaring keeps intermediate growth down.
  std::vector<std::vector<Poly>> powers(images.size());
  auto powerOf = [&](unsigned v, unsigned e) -> const Poly& {
    auto& cache = powers[v];
    if (cache.empty()) {
      cache.push_back(Poly::constant(target, CycNum(1)));
      cache.push_back(images[v]);
    }
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Poly acc(target);
  for (const auto& term : t_) {
    Poly prod = Poly::constant(target, term.c);
    for (unsigned v = 0; v < images.size(); ++v)
      if (term.m[v]) prod = prod * powerOf(v, term.m[v]);
    acc += prod;
  }
  return acc;
}

Poly Poly::withVarSet(unsigned var, const CycNum& value) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& term : t_) {
    if (term.m[var] == 0) {
      out.push_back(term);
      continue;
    }
    CycNum c = term.c * value.pow(term.m[var]);
    if (c.isZero()) continue;
    Term nt{term.m, std::move(c)};
    nt.m[var] = 0;
    out.push_back(std::move(nt));
  }
  return fromTerms(ring_, std::move(out));
}

Poly Poly::mappedTo(const RingPtr& target) const {
  std::vector<int> map(ring_->nvars());
  for (unsigned v = 0; v < ring_->nvars(); ++v) {
    map[v] = target->varIndex(ring_->vars[v]);
  }
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& term : t_) {
    Mono m(target->nvars(), 0);
    for (unsigned v = 0; v < ring_->nvars(); ++v) {
      if (!term.m[v]) continue;
      COXMIN_CHECK(map[v] >= 0, "mappedTo: variable " + ring_->vars[v] + " missing in target");
      m[map[v]] = term.m[v];
    }
    out.push_back({std::move(m), term.c});
  }
  return fromTerms(target, std::move(out));
}

Poly Poly::primitive() const {
  if (t_.empty()) return *this;
  mpz_class num(0), den(1);
  for (const auto& term : t_)
    for (const auto& r : term.c.coeffs()) {
      if (r.isZero()) continue;
      mpz_class n = r.numerator(), d = r.denominator();
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  COXMIN_CHECK(num != 0, "primitive: content of zero");
  Rational scale{den, num};  // multiply by den/num clears content
  Poly r = scaled(CycNum(scale.abs()));
  // Canonical sign: highest power basis coefficient of the leading term positive.
  const auto& lc = r.t_[0].c.coeffs();
  if (!lc.empty() && lc.back().sign() < 0) r = -r;
  return r;
}

Poly Poly::exactDiv(const Poly& divisor) const {
  COXMIN_CHECK(!divisor.isZero(), "exactDiv by zero");
  Poly rem = *this;
  Poly q(ring_);
  const Mono& dm = divisor.leadingMono();
  CycNum dcInv = divisor.leadingCoeff().inverse();
  while (!rem.isZero()) {
    COXMIN_CHECK(mono::divides(dm, rem.leadingMono()), "exactDiv: not divisible");
    Mono m = mono::div(rem.leadingMono(), dm);
    CycNum c = rem.leadingCoeff() * dcInv;
    q.t_.push_back({m, c});
    rem = rem - divisor.mulTerm(m, c);
  }
  q.normalize();
  return q;
}

namespace {

// Scalar text with a configurable symbol for the root of unity, so that
// polynomial coefficients can use "zeta" and never collide with a ring
// variable named z.
std::string cycText(const CycNum& v, const char* sym) {
  std::string s = v.str();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'z')
      out += sym;
    else
      out += s[i];
  }
  return out;
}

std::string monoText(const Ring& ring, const Mono& m) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (!m[v]) continue;
    if (!first) out << "*";
    first = false;
    out << ring.vars[v];
    if (m[v] > 1) out << "^" << m[v];
  }
  return out.str();
}

}  // namespace

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& term : t_) {
    std::string mt = monoText(*ring_, term.m);
    if (term.c.isRational()) {
      Rational r = term.c.asRational();
      if (first) {
        if (r.sign() < 0) { out << "-"; r = -r; }
      } else {
        out << (r.sign() < 0 ? " - " : " + ");
        if (r.sign() < 0) r = -r;
      }
      if (mt.empty())
        out << r.str();
      else if (r.isOne())
        out << mt;
      else
        out << r.str() << "*" << mt;
    } else {
      if (!first) out << " + ";
      out << "(" << cycText(term.c, "zeta") << ")";
      if (!mt.empty()) out << "*" << mt;
    }
    first = false;
  }
  return out.str();
}

Poly derivative(const Poly& f, unsigned var) {
  COXMIN_CHECK(f.ring() && var < f.ring()->nvars(), "derivative: bad variable");
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& term : f.terms()) {
    if (!term.m[var]) continue;
    Term t{term.m, term.c * CycNum(static_cast<long>(term.m[var]))};
    --t.m[var];
    out.push_back(std::move(t));
  }
  return Poly::fromTerms(f.ring(), std::move(out));
}

}  // namespace coxmin
