#include "coxmin/linalg.hpp"

#include "coxmin/common.hpp"

namespace coxmin {

CMat cIdentity(Eigen::Index n) {
  CMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = CycNum(i == j ? 1 : 0);
  return m;
}

bool matEq(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

CycNum detOf(CMat m) {
  COXMIN_CHECK(m.rows() == m.cols(), "detOf: square matrix required");
  const Eigen::Index n = m.rows();
  CycNum det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c).isZero()) ++p;
    if (p == n) return CycNum(0);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det = det * m(c, c);
    CycNum inv = m(c, c).inverse();
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (m(i, c).isZero()) continue;
      CycNum f = m(i, c) * inv;
      for (Eigen::Index j = c + 1; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

unsigned rankOf(CMat m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  unsigned rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < static_cast<unsigned>(rows); ++c) {
    Eigen::Index p = rank;
    while (p < rows && m(p, c).isZero()) ++p;
    if (p == rows) continue;
    if (p != static_cast<Eigen::Index>(rank)) m.row(p).swap(m.row(rank));
    CycNum inv = m(rank, c).inverse();
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      if (m(i, c).isZero()) continue;
      CycNum f = m(i, c) * inv;
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

CMat inverseOf(CMat m) {
  COXMIN_CHECK(m.rows() == m.cols(), "inverseOf: square matrix required");
  const Eigen::Index n = m.rows();
  CMat inv = cIdentity(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c).isZero()) ++p;
    COXMIN_CHECK(p < n, "inverseOf: singular matrix");
    if (p != c) {
      m.row(p).swap(m.row(c));
      inv.row(p).swap(inv.row(c));
    }
    CycNum s = m(c, c).inverse();
    for (Eigen::Index j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * s;
      inv(c, j) = inv(c, j) * s;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || m(i, c).isZero()) continue;
      CycNum f = m(i, c);
      for (Eigen::Index j = 0; j < n; ++j) {
        m(i, j) = m(i, j) - f * m(c, j);
        inv(i, j) = inv(i, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<CVec> kernelColumns(const CMat& input) {
  CMat m = input;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivotCol;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c).isZero()) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    CycNum inv = m(r, c).inverse();
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).isZero()) continue;
      CycNum f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivotCol.push_back(c);
    ++r;
  }
  std::vector<bool> isPivot(cols, false);
  for (Eigen::Index c : pivotCol) isPivot[c] = true;
  std::vector<CVec> basis;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    CVec v(cols);
    for (Eigen::Index j = 0; j < cols; ++j) v(j) = CycNum(0);
    v(free) = CycNum(1);
    for (std::size_t i = 0; i < pivotCol.size(); ++i) v(pivotCol[i]) = -m(i, free);
    Eigen::Index firstNz = 0;
    while (v(firstNz).isZero()) ++firstNz;
    CycNum s = v(firstNz).inverse();
    for (Eigen::Index j = firstNz; j < cols; ++j) v(j) = v(j) * s;
    basis.push_back(std::move(v));
  }
  return basis;
}

unsigned rankOfQ(QMat m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  unsigned rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < static_cast<unsigned>(rows); ++c) {
    Eigen::Index p = rank;
    while (p < rows && m(p, c).isZero()) ++p;
    if (p == rows) continue;
    if (p != static_cast<Eigen::Index>(rank)) m.row(p).swap(m.row(rank));
    Rational inv = m(rank, c).inverse();
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      if (m(i, c).isZero()) continue;
      Rational f = m(i, c) * inv;
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

QMat inverseOfQ(QMat m) {
  COXMIN_CHECK(m.rows() == m.cols(), "inverseOfQ: square matrix required");
  const Eigen::Index n = m.rows();
  QMat inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = Rational(i == j ? 1 : 0);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c).isZero()) ++p;
    COXMIN_CHECK(p < n, "inverseOfQ: singular matrix");
    if (p != c) {
      m.row(p).swap(m.row(c));
      inv.row(p).swap(inv.row(c));
    }
    Rational s = m(c, c).inverse();
    for (Eigen::Index j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * s;
      inv(c, j) = inv(c, j) * s;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || m(i, c).isZero()) continue;
      Rational f = m(i, c);
      for (Eigen::Index j = 0; j < n; ++j) {
        m(i, j) = m(i, j) - f * m(c, j);
        inv(i, j) = inv(i, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace coxmin
