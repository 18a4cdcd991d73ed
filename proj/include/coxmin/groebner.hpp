#pragma once

#include <functional>
#include <vector>

#include "coxmin/cache.hpp"
#include "coxmin/polynomial.hpp"

namespace coxmin {

// Periodic progress hook: (pending s-pairs, basis size, sugar degree of the
// pair being processed). Invoked every few hundred reductions.
using GroebnerProgress = std::function<void(std::size_t, std::size_t, long)>;

// Reduced monic Groebner basis of the ideal generated by `gens` under the
// ring's monomial order, sorted by descending leading monomial. The result
// is the unique reduced basis, so it is deterministic and usable as a
// canonical form of the ideal. An empty vector means the zero ideal.
std::vector<Poly> groebnerBasis(const RingPtr& ring, const std::vector<Poly>& gens,
                                Cache* cache = nullptr,
                                const GroebnerProgress& progress = {});

// Remainder of f on division by `basis` (top and tail reduction). Exact:
// f - normalForm(f, basis) lies in the ideal generated by the basis. When
// `basis` is a Groebner basis, a zero remainder characterizes membership.
Poly normalForm(const Poly& f, const std::vector<Poly>& basis);

bool inIdeal(const Poly& f, const std::vector<Poly>& groebner);

// Canonical single-line key for a generator set (used for caching).
std::string idealKey(const RingPtr& ring, const std::vector<Poly>& gens);

}  // namespace coxmin
