#pragma once

#include <string>
#include <vector>

#include "coxmin/groebner.hpp"

namespace coxmin {

// An ideal held in canonical form: its reduced monic Groebner basis under
// the ring's order, sorted by descending leading monomial. Two Ideal values
// over the same ring are equal as ideals iff their basis vectors are equal.
struct Ideal {
  RingPtr ring;
  std::vector<Poly> basis;

  bool isZero() const { return basis.empty(); }
  bool contains(const Poly& f) const { return inIdeal(f, basis); }
};

Ideal makeIdeal(const RingPtr& ring, const std::vector<Poly>& gens, Cache* cache = nullptr,
                const GroebnerProgress& progress = {});

// Wraps polynomials already known to be a reduced Groebner basis (sorts and
// checks monicity; does not re-run Buchberger).
Ideal idealFromReducedBasis(const RingPtr& ring, std::vector<Poly> basis);

bool idealEqual(const Ideal& a, const Ideal& b);
bool idealContainsIdeal(const Ideal& outer, const Ideal& inner);  // inner subset of outer

// --- ring shape helpers --------------------------------------------------

// True if every order block is graded reverse lexicographic.
bool isPureGrevlex(const RingPtr& ring);

// A variable name not present in the ring: `base`, else base1, base2, ...
std::string freshVarName(const RingPtr& ring, const std::string& base);

// Same conductor, variables plus one appended, grevlex over everything.
RingPtr ringAppendVar(const RingPtr& base, const std::string& name);

// Ring without the given variable indices, grevlex, same conductor.
RingPtr ringDropVars(const RingPtr& base, const std::vector<unsigned>& vars);

// --- core operations ------------------------------------------------------
// All operate on pure-grevlex rings (checked) and return canonical ideals.

// Intersection ideal of the ring's subalgebra in the non-eliminated
// variables, as an ideal over ringDropVars(ring, vars).
Ideal eliminateVars(const Ideal& I, const std::vector<unsigned>& vars, Cache* cache = nullptr,
                    const GroebnerProgress& progress = {});

Ideal intersectIdeals(const Ideal& a, const Ideal& b, Cache* cache = nullptr,
                      const GroebnerProgress& progress = {});

Ideal quotientByPoly(const Ideal& I, const Poly& f, Cache* cache = nullptr,
                     const GroebnerProgress& progress = {});

// I : f^infinity, computed as a stabilized chain of quotients.
Ideal saturateByPoly(const Ideal& I, const Poly& f, Cache* cache = nullptr,
                     const GroebnerProgress& progress = {});

// Kernel of the algebra map C[names] -> targets' ring, X_j -> targets[j],
// over a fresh grevlex ring in `names` with the targets' conductor. When
// every target is homogeneous of positive degree, an exact Jacobian rank
// computation certifies zero or principal kernels and finds the principal
// generator degree by degree; otherwise falls back to elimination on the
// graph ideal. `seeds` are known kernel members (polynomials in a subset of
// `names`); they are added to the graph ideal to warm-start the elimination.
Ideal ringMapKernel(const std::vector<Poly>& targets, const std::vector<std::string>& names,
                    Cache* cache = nullptr, const GroebnerProgress& progress = {},
                    const std::vector<Poly>& seeds = {});

// Transcendence degree of the subalgebra generated by the targets: the rank
// of their Jacobian over the fraction field (characteristic zero).
unsigned jacobianRank(const std::vector<Poly>& targets);

// Per-generator weighted homogenization, in place over the generators' own
// ring: multiplies each term by aux^(wdeg - lowest) (toMin) or
// aux^(highest - wdeg) (toMax). Weights are indexed by ring variable; the
// aux variable must carry weight zero.
std::vector<Poly> homogenized(const std::vector<Poly>& gens, const std::vector<long>& w,
                              unsigned auxVar, bool toMin);

// Largest subideal generated by elements that are semi-invariant for the
// diagonal cyclic action X_j -> zeta_r^(a_j) X_j: homogenize by an auxiliary
// variable of weight 1 against the weights a_j, saturate, impose s^r = 1,
// and eliminate s.
Ideal charHomogeneousPart(const Ideal& I, const std::vector<unsigned>& a, unsigned r,
                          Cache* cache = nullptr, const GroebnerProgress& progress = {});

}  // namespace coxmin
