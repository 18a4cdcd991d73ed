#pragma once

#include <Eigen/Core>
#include <vector>

#include "coxmin/cyclotomic.hpp"
#include "coxmin/rational.hpp"

// Dense exact matrices: Eigen supplies the container and product machinery;
// decompositions are hand-written below because pivot selection in Eigen's
// own solvers requires abs(), which has no canonical meaning in Q(zeta).
// Only construction, coefficient access, products, transposes and the free
// functions here are supported on these scalar types — norm-based Eigen API
// must not be used.

namespace Eigen {

template <>
struct NumTraits<coxmin::CycNum> : GenericNumTraits<coxmin::CycNum> {
  typedef coxmin::CycNum Real;
  typedef coxmin::CycNum NonInteger;
  typedef coxmin::CycNum Nested;
  typedef coxmin::CycNum Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 32,
    AddCost = 64,
    MulCost = 256,
  };
  static inline Real epsilon() { return coxmin::CycNum(0); }
  static inline Real dummy_precision() { return coxmin::CycNum(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<coxmin::Rational> : GenericNumTraits<coxmin::Rational> {
  typedef coxmin::Rational Real;
  typedef coxmin::Rational NonInteger;
  typedef coxmin::Rational Nested;
  typedef coxmin::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 32,
  };
  static inline Real epsilon() { return coxmin::Rational(0); }
  static inline Real dummy_precision() { return coxmin::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace coxmin {

using CMat = Eigen::Matrix<CycNum, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<CycNum, Eigen::Dynamic, 1>;
using QMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

CMat cIdentity(Eigen::Index n);
bool matEq(const CMat& a, const CMat& b);

CycNum detOf(CMat m);
unsigned rankOf(CMat m);
CMat inverseOf(CMat m);  // throws InternalError on a singular matrix

// Basis of the right kernel {v : M v = 0}; reduced-echelon construction,
// deterministic, each vector scaled so its first nonzero coordinate is 1.
std::vector<CVec> kernelColumns(const CMat& m);

unsigned rankOfQ(QMat m);
QMat inverseOfQ(QMat m);  // throws InternalError on a singular matrix

}  // namespace coxmin
