#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "coxmin/groebner.hpp"
#include "coxmin/polynomial.hpp"

namespace coxmin {

// Numerator of the Hilbert series of C[vars]/(monomial ideal) over the
// common denominator prod_v (1 - t^(w_v)): an exact integer polynomial,
// returned as its coefficient vector (empty means the zero polynomial).
// Weights must be positive.
std::vector<mpz_class> hilbertNumerator(const std::vector<Mono>& gens,
                                        const std::vector<long>& w);

// Reduced Groebner basis of ker(X_j -> targets[j]), where the X_j are the
// variables of `xring`, computed by eliminating the source variables from
// the graph ideal modulo machine primes and certifying the lifted result
// exactly:
//   - every lifted element whose leading monomial is not a monomial multiple
//     of a graph generator's leading monomial is checked to vanish under the
//     substitution X_j -> targets[j] (exact arithmetic), which places it in
//     the graph ideal, and
//   - the leading monomials of the lifted basis are checked to give the
//     Hilbert series of the source polynomial ring, which the graph quotient
//     is isomorphic to; equality pins the leading-term ideal exactly.
// Together the two checks prove the result is the reduced basis of the
// kernel, independently of the primes used. Requires homogeneous nonconstant
// targets over the same ring, with conductor equal to xring's. Returns
// nullopt when no modular run certifies within the prime budget; callers
// fall back to the exact elimination.
std::optional<std::vector<Poly>> modularKernelBasis(const std::vector<Poly>& targets,
                                                    const RingPtr& xring,
                                                    const GroebnerProgress& progress = {});

}  // namespace coxmin
