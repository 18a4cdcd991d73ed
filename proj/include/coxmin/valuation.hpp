#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "coxmin/invariant_ring.hpp"
#include "coxmin/matrix_group.hpp"

namespace coxmin {

// Monomial valuation attached to one junior conjugacy class: on the
// eigen-coordinate monomial prod x~_j^(alpha_j) of the representative its
// value is sum alpha_j a_j, extended to polynomials by the minimum.
struct ValuationData {
  std::size_t junior = 0;   // position among juniorRepresentatives()
  std::size_t element = 0;  // representative element index
  unsigned order = 1;       // r_i
  EigenData eigen;          // forms rows; exponents a_j ascending
  CMat substitution;        // applyMatrix(substitution, f) rewrites f in eigen coords
};

// All junior valuations of one group over a fixed coordinate ring. Rewrites
// are memoized per (class, polynomial); queries are thread-safe.
class Valuations {
 public:
  Valuations(const MatrixGroup& g, RingPtr ring);

  std::size_t count() const { return data_.size(); }
  const ValuationData& data(std::size_t i) const { return data_.at(i); }
  const RingPtr& ring() const { return ring_; }
  std::vector<long> orders() const;  // r_i per junior class

  // f rewritten in the eigen-coordinates of junior i (same variable slots).
  Poly toEigenCoords(std::size_t i, const Poly& f) const;

  long nu(std::size_t i, const Poly& f) const;  // ValidationError on f = 0
  std::vector<long> nuVector(const Poly& f) const;

  // The nu_i-minimal monomials of f, in eigen-coordinates of junior i.
  Poly minPart(std::size_t i, const Poly& f) const;

  // Matrix nu_i(phi_j): one row per junior class, one column per polynomial.
  std::vector<std::vector<long>> degreeMatrix(const std::vector<Poly>& polys) const;

 private:
  const Poly& rewrite(std::size_t i, const Poly& f) const;

  RingPtr ring_;
  std::vector<ValuationData> data_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, std::string>, Poly> memo_;
};

// Weighted degree of the lowest monomials: min over terms of mono::wdeg.
long minWeightedDegree(const Poly& f, const std::vector<long>& w);

// Sum of the terms attaining the minimal weighted degree.
Poly weightedMinPart(const Poly& f, const std::vector<long>& w);

}  // namespace coxmin
