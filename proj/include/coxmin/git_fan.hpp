#pragma once

#include <string>
#include <vector>

#include "coxmin/cox_ring.hpp"
#include "coxmin/rational.hpp"

namespace coxmin {

// Integer vector in the character lattice Z^m of boundary-divisor degrees
// (the t-exponent lattice of a Cox presentation).
using LatticeVec = std::vector<long>;

// v divided by the gcd of its entries; the zero vector stays zero.
LatticeVec primitiveVec(LatticeVec v);

// Nonnegative span of primitive, pairwise-distinct ray generators.
struct Cone {
  std::vector<LatticeVec> rays;
};

// The fan induced on the degree lattice by the cones of generator subsets:
// its rays are the primitive degree directions, and in rank <= 2 the
// chambers are enumerated exactly as the angular sectors between adjacent
// rays inside the support. In higher rank the chamber list stays empty and
// chambersExact is false; rays, support, and point location remain exact.
struct RefinementFan {
  unsigned rank = 0;
  std::vector<long> orders;         // lattice scaling: class basis vector i is orders[i] * e_i
  std::vector<LatticeVec> degrees;  // one degree vector per generator, input order
  std::vector<LatticeVec> rays;     // primitive ray directions, deduplicated
  Cone support;                     // generated by all nonzero degrees
  bool fullSupport = false;         // support is the whole lattice tensor R
  std::vector<Cone> chambers;       // full-dimensional cones, adjacent pairs of rays
  bool chambersExact = false;       // true when the chamber list is complete (rank <= 2)
};

struct FanLocation {
  enum class Kind { Origin, OnRay, InChamber, InSupport, Exterior };
  Kind kind = Kind::Exterior;
  int ray = -1;      // for OnRay
  int chamber = -1;  // for InChamber with an enumerated chamber list
};

// Exact membership of a rational point in the cone spanned by integer rays
// (Caratheodory reduction to linearly independent subsets).
bool coneContains(const std::vector<LatticeVec>& rays, const std::vector<Rational>& point);

// Fan of the given generator degrees. Throws ValidationError when the
// degrees do not span the whole lattice (degenerate presentation).
RefinementFan refinementFan(const std::vector<LatticeVec>& degrees, std::vector<long> orders);
RefinementFan refinementFan(const CoxPresentation& pres);

// Nonnegative span of the degrees of the non-boundary generators, reduced
// to extreme rays.
Cone movableCone(const CoxPresentation& pres);

FanLocation locateInFan(const RefinementFan& fan, const std::vector<Rational>& point);

// All size-rank generator-index subsets whose degree cone contains the
// chamber (tested at an exact interior point). The zero locus of each
// subset's generators is one piece of the unstable-locus intersection.
std::vector<std::vector<std::size_t>> unstableLocusSubsets(const std::vector<LatticeVec>& degrees,
                                                           const RefinementFan& fan,
                                                           std::size_t chamber);

// Rank-2 fans drawn as a standalone SVG: rays with labels, generator degree
// points with multiplicities, movable cone shaded.
std::string fanSvg(const RefinementFan& fan, const Cone& movable);

}  // namespace coxmin
