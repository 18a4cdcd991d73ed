#include "coxmin/smith.hpp"

#include <gmpxx.h>

#include <algorithm>

#include "coxmin/common.hpp"

namespace coxmin {

namespace {

using Big = mpz_class;
using BigMat = std::vector<std::vector<Big>>;

bool nonZeroBelow(const BigMat& m, std::size_t k) {
  for (std::size_t i = k; i < m.size(); ++i)
    for (std::size_t j = k; j < m[i].size(); ++j)
      if (m[i][j] != 0) return true;
  return false;
}

}  // namespace

SmithResult smithNormalForm(const std::vector<std::vector<long>>& rows, unsigned cols) {
  const std::size_t k = cols;
  BigMat m(rows.size(), std::vector<Big>(k));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    COXMIN_CHECK(rows[i].size() == k, "smithNormalForm: ragged rows");
    for (std::size_t j = 0; j < k; ++j) m[i][j] = rows[i][j];
  }
  BigMat v(k, std::vector<Big>(k, 0));  // accumulated column operations
  for (std::size_t j = 0; j < k; ++j) v[j][j] = 1;

  auto swapCols = [&](std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
  };
  auto addColMultiple = [&](std::size_t dst, std::size_t src, const Big& q) {
    for (auto& row : m) row[dst] += q * row[src];
    for (auto& row : v) row[dst] += q * row[src];
  };
  auto negateCol = [&](std::size_t a) {
    for (auto& row : m) row[a] = -row[a];
    for (auto& row : v) row[a] = -row[a];
  };

  const std::size_t steps = std::min(m.size(), k);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    if (!nonZeroBelow(m, t)) break;
    for (;;) {
      // Move a minimal-magnitude nonzero entry of the trailing block to (t,t).
      std::size_t bi = t, bj = t;
      bool found = false;
      for (std::size_t i = t; i < m.size(); ++i)
        for (std::size_t j = t; j < k; ++j) {
          if (m[i][j] == 0) continue;
          if (!found || cmp(abs(m[i][j]), abs(m[bi][bj])) < 0) {
            bi = i;
            bj = j;
            found = true;
          }
        }
      COXMIN_CHECK(found, "smithNormalForm: lost pivot");
      if (bi != t) std::swap(m[bi], m[t]);
      if (bj != t) swapCols(bj, t);
      if (m[t][t] < 0) negateCol(t);

      // Clear the pivot row by column operations, the pivot column by row
      // operations; restart whenever a remainder shrinks the pivot.
      bool dirty = false;
      for (std::size_t j = t + 1; j < k; ++j) {
        if (m[t][j] == 0) continue;
        Big q = m[t][j] / m[t][t];  // truncated division is fine: remainders shrink
        addColMultiple(j, t, -q);
        if (m[t][j] != 0) dirty = true;
      }
      for (std::size_t i = t + 1; i < m.size(); ++i) {
        if (m[i][t] == 0) continue;
        Big q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < k; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) dirty = true;
      }
      if (dirty) continue;

      // Row and column are clear; enforce divisibility of the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m.size() && divides; ++i)
        for (std::size_t j = t + 1; j < k && divides; ++j)
          if (m[i][j] % m[t][t] != 0) {
            // Fold that row into row t so the gcd surfaces at the pivot.
            for (std::size_t l = t; l < k; ++l) m[t][l] += m[i][l];
            divides = false;
          }
      if (divides) break;
    }
  }

  SmithResult out;
  out.diagonal.assign(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    Big d = j < m.size() && j < steps ? m[j][j] : 0;
    COXMIN_CHECK(d.fits_slong_p(), "smithNormalForm: diagonal overflow");
    out.diagonal[j] = d.get_si();
  }
  out.rightTransform.assign(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      COXMIN_CHECK(v[i][j].fits_slong_p(), "smithNormalForm: transform overflow");
      out.rightTransform[i][j] = v[i][j].get_si();
    }
  return out;
}

}  // namespace coxmin
