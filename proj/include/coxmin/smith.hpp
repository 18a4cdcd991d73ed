#pragma once

#include <vector>

namespace coxmin {

// Smith normal form data of an integer relation lattice. For a row-space
// lattice L in Z^k presented by `rows`, the quotient Z^k / L is isomorphic
// to the direct sum of Z/diagonal[j] via x -> (x * rightTransform) mod
// diagonal, componentwise. diagonal[j] = 0 encodes a free factor.
struct SmithResult {
  std::vector<long> diagonal;                        // d_1 | d_2 | ... , size k
  std::vector<std::vector<long>> rightTransform;     // k x k unimodular
};

SmithResult smithNormalForm(const std::vector<std::vector<long>>& rows, unsigned cols);

}  // namespace coxmin
