#pragma once

#include <string>
#include <vector>

#include "coxmin/matrix_group.hpp"
#include "coxmin/polynomial.hpp"

namespace coxmin {

// Character of Ab(G) in invariant-factor coordinates: one residue per factor,
// residues[j] in [0, f_j). The value at a group element with Ab-coordinates
// (c_j) is prod_j zeta_{f_j}^(residues[j] * c_j).
struct AbCharacter {
  std::vector<long> residues;

  bool isTrivial() const;
  bool operator==(const AbCharacter& o) const { return residues == o.residues; }
  bool operator!=(const AbCharacter& o) const { return !(*this == o); }
  bool operator<(const AbCharacter& o) const { return residues < o.residues; }
  std::string str() const;  // "(r1, r2, ...)", "()" for a trivial Ab(G)
};

// A [G, G]-invariant polynomial on which the whole group acts through the
// Ab(G)-character chi.
struct GradedPoly {
  Poly poly;
  AbCharacter chi;
};

// Substitution action of an invertible matrix: x_i is replaced by the linear
// form whose coefficient column is M e_i. Coefficient columns of linear forms
// then transform by c -> M c, and applyMatrix(A, applyMatrix(B, f)) equals
// applyMatrix(A * B, f). Matrix entries must embed into the ring's conductor.
Poly applyMatrix(const CMat& m, const Poly& f);

// Least common conductor of the group entries, the eigenvalues of all junior
// elements, and `extra` — every scalar the downstream computations produce
// lives in Q(zeta) at this conductor.
unsigned ambientConductor(const MatrixGroup& g, unsigned extra = 1);

// Coordinate ring of the representation at ambientConductor(g, extra):
// variables x, y, z, w for dimension <= 4, else x1..xn; grevlex.
RingPtr coordinateRing(const MatrixGroup& g, unsigned extra = 1);

// Dimension of the degree-d piece of C[V]^H for d = 0..cap, exactly, via
// (1/|H|) sum_{h in H} 1/det(1 - q h). `subgroup` holds element indices and
// must be closed under multiplication; an empty list means all of G.
std::vector<long> molienSeries(const MatrixGroup& g, unsigned cap,
                               const std::vector<std::size_t>& subgroup = {});

struct InvariantBasis {
  RingPtr ring;
  std::vector<GradedPoly> generators;
};

struct InvariantSearchOptions {
  // Highest degree searched; 0 selects |[G, G]|, which always suffices.
  unsigned degreeCap = 0;
  // Extra conductor folded into the ambient ring (for later comparisons
  // against externally supplied polynomials).
  unsigned extraConductor = 1;
};

// Minimal generating set of C[V]^[G,G], each generator Ab(G)-homogeneous with
// its character recorded. Deterministic: degree by degree, Reynolds images of
// monomials in order, reduced against the subalgebra generated so far.
// Throws CapError when the cap cuts the search off before completion.
InvariantBasis invariantGenerators(const MatrixGroup& g,
                                   const InvariantSearchOptions& opt = {});

// Validates user-supplied polynomials: nonzero, [G, G]-invariant, and
// semi-invariant for the full group, i.e. Ab(G)-homogeneous. Returns them
// with their characters. Throws ValidationError naming the first violating
// polynomial and group element otherwise. Polynomials must share a ring whose
// variable count matches the representation and whose conductor is a multiple
// of the group conductor.
InvariantBasis acceptUserGenerators(const MatrixGroup& g, const std::vector<Poly>& polys);

// Same validation, but each polynomial arrives with a claimed character that
// must match the computed one exactly; a mismatch is rejected naming the
// group element whose action disagrees with the claim.
InvariantBasis acceptUserGenerators(const MatrixGroup& g, const std::vector<GradedPoly>& polys);

// Invariant list file: `conductor N` header, `vars x y ...` line, then one
// polynomial per line in the expression grammar (`zeta` is the primitive
// N-th root of unity; a variable named z shadows the short alias). Blank
// lines and '#' comments are skipped.
struct InvariantFile {
  unsigned conductor = 1;
  std::vector<std::string> vars;
  std::vector<std::string> polys;
};

InvariantFile parseInvariantText(const std::string& text);
InvariantFile loadInvariantFile(const std::string& path);
std::string writeInvariantText(const InvariantBasis& basis);

// Load a file, parse each polynomial at the file's conductor (so "zeta" in
// the file text is always the primitive file-conductor-th root), embed into a
// ring whose conductor also covers the group, and validate the result.
InvariantBasis loadInvariants(const MatrixGroup& g, const std::string& path);

}  // namespace coxmin
