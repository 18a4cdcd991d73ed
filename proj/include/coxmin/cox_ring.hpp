#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxmin/ideal_ops.hpp"
#include "coxmin/invariant_ring.hpp"
#include "coxmin/matrix_group.hpp"
#include "coxmin/valuation.hpp"

namespace coxmin {

// One round of one refinement step. `added` holds the invariants appended
// during the round; an empty list means the round's comparison already held
// and the step moved on.
struct StepRecord {
  std::string label;  // "(0)", "(0,2)", "(1,3)", ... (1-based junior indices)
  unsigned round = 1;
  std::vector<GradedPoly> added;
};

// One Cox-ring generator: an invariant psi = phi * prod_i t_i^(nu_i(phi)),
// or a boundary generator T_i = t_i^(-r_i) (zero polynomial, exponent -r_i
// on coordinate i).
struct CoxGenerator {
  Poly poly;
  AbCharacter chi;
  std::vector<long> exponents;  // length m
  bool boundary = false;
};

struct CoxPresentation {
  RingPtr ring;                            // coordinate ring of V
  std::vector<GradedPoly> invariants;      // final S
  std::vector<std::vector<long>> nuTable;  // m rows, |S| columns
  std::vector<long> orders;                // r_1..r_m
  std::vector<StepRecord> history;
  RingPtr xRing;   // C[X1..Xk], X_j -> invariants[j]
  Ideal kernel;    // relations among the invariants
  RingPtr xyRing;  // C[X1..Xk, Y1..Ym]
  Ideal relations; // relations of the Cox-ring generators (Y_i -> T_i)
  std::vector<CoxGenerator> generators;    // |S| + m records
};

struct CoxOptions {
  unsigned roundCap = 64;  // rounds allowed within a single step
  Cache* cache = nullptr;
  GroebnerProgress progress;
  std::function<void(const std::string&)> log;  // optional narration hook
};

// Generator-completion algorithm for the Cox ring of a minimal model of
// V/G. Starting from Ab(G)-homogeneous generators of the commutator
// invariant ring, it enlarges the set until the minimal parts at every
// junior valuation, and then every pair of valuations, impose no further
// generators. Intermediate ideals are exposed for inspection and testing;
// junior classes are indexed 1..m in step labels and method arguments,
// matching row i-1 of the valuation table.
class CoxAlgorithm {
 public:
  CoxAlgorithm(const MatrixGroup& g, const InvariantBasis& seed, CoxOptions opt = {});

  const MatrixGroup& group() const { return *group_; }
  const RingPtr& ring() const { return ring_; }
  const Valuations& valuations() const { return vals_; }
  std::size_t juniorCount() const { return vals_.count(); }
  const std::vector<GradedPoly>& current() const { return S_; }
  const RingPtr& xRing() const { return xRing_; }
  const Ideal& kernel() const { return kernel_; }
  const std::vector<std::vector<long>>& nuTable() const { return nuTable_; }
  const std::vector<StepRecord>& history() const { return history_; }

  // Ideal of minimal parts of relations at junior i: homogenize the kernel
  // by an auxiliary degree -1 variable against deg_i, saturate, set it to 0.
  Ideal minIdealI(unsigned i) const;

  // Ideal generated by the Ab(G)-homogeneous relations of the minimal parts
  // min_i(phi_j): kernel of X_j -> min_i(phi_j) cut to semi-invariant
  // elements factor by factor.
  Ideal minIdealJ(unsigned i) const;

  // R_A = C[X.., {t_i}_{i in A}] and the multi-homogeneous ideal I_A:
  // the kernel homogenized and saturated by each t_i in turn.
  RingPtr ringA(const std::vector<unsigned>& A) const;
  Ideal idealA(const std::vector<unsigned>& A) const;

  // The comparison pair of step (i',i) over A = {1..i', i}:
  // first  I_A intersect (t_i', t_i),
  // second (I_A intersect (t_i')) + (I_A intersect (t_i)).
  std::pair<Ideal, Ideal> tildePair(unsigned ip, unsigned i) const;

  // Run one step to completion (repeating rounds while it keeps adding).
  // Returns true if any invariant was added.
  bool runStep0(unsigned i);
  bool runStepPair(unsigned ip, unsigned i);

  // Full schedule (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ... followed by
  // assembly of the presentation.
  CoxPresentation run();

  // Relation ideal of the Cox-ring generators in C[X1..Xk, Y1..Ym]:
  // I_{1..m} with every t_i^(r_i) replaced by Y_i.
  std::pair<RingPtr, Ideal> relationIdeal() const;

  // Assemble the presentation from the current state without stepping.
  CoxPresentation presentation() const;

  // Certificate that f needs no new generator: h with alpha(h) = f and
  // deg_i(h) >= nu_i(f) for all i, found by exact linear algebra over the
  // candidate monomials in the current S. Requires homogeneous nonzero f;
  // nullopt when no combination exists.
  std::optional<Poly> verifyStar(const Poly& f) const;

 private:
  void rebuild(const std::vector<Poly>& priorKernelBasis);
  std::vector<long> nuRow(unsigned i) const;  // weights on the X variables
  Poly alphaOf(const Poly& hX) const;
  AbCharacter characterOfX(const Poly& hX) const;
  // Nonzero normal forms of the larger basis modulo the smaller ideal,
  // monic, deduplicated, sorted by (total degree, text).
  std::vector<Poly> gapGenerators(const Ideal& larger, const Ideal& smaller) const;
  // alpha-images of the candidates appended to S (validated, deduplicated);
  // returns the records actually added.
  std::vector<GradedPoly> extendBy(const std::vector<Poly>& candidatesX);
  void note(const std::string& line) const;

  const MatrixGroup* group_;
  RingPtr ring_;
  Valuations vals_;
  CoxOptions opt_;
  std::vector<GradedPoly> S_;
  std::vector<std::string> xNames_;
  RingPtr xRing_;
  Ideal kernel_;
  std::vector<std::vector<long>> nuTable_;
  std::vector<StepRecord> history_;
};

}  // namespace coxmin
