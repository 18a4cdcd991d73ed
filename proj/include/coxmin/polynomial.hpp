#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxmin/cyclotomic.hpp"

namespace coxmin {

// Exponent vector; one entry per ring variable.
using Mono = std::vector<std::uint16_t>;

namespace mono {
Mono mul(const Mono& a, const Mono& b);
bool divides(const Mono& a, const Mono& b);  // a | b componentwise
Mono div(const Mono& b, const Mono& a);      // b / a, requires divides(a, b)
Mono lcm(const Mono& a, const Mono& b);
bool coprime(const Mono& a, const Mono& b);
long deg(const Mono& a);
long wdeg(const Mono& a, const std::vector<long>& w);
}  // namespace mono

// Monomial order as a sequence of blocks over contiguous variable ranges.
// Within a block: graded reverse lexicographic, or plain lexicographic.
// An earlier block dominates, which gives elimination orders.
class MonomialOrder {
 public:
  struct Block {
    unsigned begin = 0, end = 0;
    bool lex = false;
  };

  static MonomialOrder grevlex(unsigned nvars);
  static MonomialOrder lex(unsigned nvars);
  // First `head` variables in their own leading grevlex block.
  static MonomialOrder elimination(unsigned head, unsigned nvars);

  int compare(const Mono& a, const Mono& b) const;  // <0, 0, >0
  bool less(const Mono& a, const Mono& b) const { return compare(a, b) < 0; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::string key() const;

 private:
  std::vector<Block> blocks_;
};

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct Ring {
  std::vector<std::string> vars;
  MonomialOrder order;
  unsigned conductor = 1;  // ambient coefficient field Q(zeta_conductor)

  static RingPtr make(std::vector<std::string> vars, MonomialOrder order,
                      unsigned conductor);
  static RingPtr grevlexRing(std::vector<std::string> vars, unsigned conductor);

  unsigned nvars() const { return static_cast<unsigned>(vars.size()); }
  int varIndex(const std::string& name) const;
  std::string key() const;  // canonical signature (vars, order, conductor)
  bool sameAs(const Ring& o) const { return key() == o.key(); }
};

struct Term {
  Mono m;
  CycNum c;
};

// Multivariate polynomial over Q(zeta_N); terms sorted descending in the
// ring's order, no zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, CycNum c);
  static Poly variable(RingPtr ring, unsigned var, unsigned power = 1);
  static Poly fromTerms(RingPtr ring, std::vector<Term> terms);  // normalizes

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return t_; }
  bool isZero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  const Mono& leadingMono() const;
  const CycNum& leadingCoeff() const;
  bool isConstant() const;
  CycNum constantValue() const;  // requires isConstant()

  long degree() const;  // max total degree, -1 for zero
  // Weighted degree range over terms; nullopt for the zero polynomial.
  std::optional<std::pair<long, long>> wdegRange(const std::vector<long>& w) const;
  bool isHomogeneous(const std::vector<long>& w) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  Poly scaled(const CycNum& c) const;
  Poly mulTerm(const Mono& m, const CycNum& c) const;
  Poly monic() const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Image under var -> images[var], collecting in the images' ring.
  Poly substituted(const RingPtr& target, const std::vector<Poly>& images) const;
  // Same ring, one variable pinned to a constant.
  Poly withVarSet(unsigned var, const CycNum& value) const;

  // Transport to a ring that contains (at least) the same variable names.
  Poly mappedTo(const RingPtr& target) const;

  // Divide by rational content and normalize sign of the leading rational;
  // returns the primitive polynomial (integral coefficients).
  Poly primitive() const;

  // Quotient of an exact division (throws InternalError if not divisible).
  Poly exactDiv(const Poly& divisor) const;

  std::string str() const;  // canonical text, see expr.hpp for the grammar

 private:
  RingPtr ring_;
  std::vector<Term> t_;

  void normalize();
};

// Formal partial derivative with respect to one ring variable.
Poly derivative(const Poly& f, unsigned var);

}  // namespace coxmin
