#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxmin/linalg.hpp"
#include "coxmin/rational.hpp"

namespace coxmin {

// Finite abelian group in invariant-factor form: Z/f_1 x ... x Z/f_m with
// 1 < f_1 | f_2 | ... | f_m.  Trivial group: empty factor list.
struct AbelianGroup {
  std::vector<long> factors;

  long order() const {
    long o = 1;
    for (long f : factors) o *= f;
    return o;
  }
};

// Eigen decomposition of one group element g of order r.  Row i of `forms`
// holds the coefficients of a linear form ell_i with g . ell_i = zeta_r^e for
// e = exponents[i]; rows are normalized so the first nonzero entry is 1 and
// sorted by ascending exponent (ties keep reduced-echelon pivot order).
// Matrix entries live in Q(zeta_conductor).
struct EigenData {
  unsigned order = 1;
  std::vector<unsigned> exponents;
  CMat forms;
  unsigned conductor = 1;
};

// Parsed group description: n x n generator matrices over Q(zeta_conductor),
// plus an optional symplectic Gram matrix the group must preserve.
struct GroupInput {
  unsigned conductor = 1;
  unsigned dimension = 0;
  std::vector<CMat> generators;
  std::optional<CMat> symplectic;
  std::string label;
};

// A finite subgroup of SL(n, C) realized by explicit matrices, closed by
// breadth-first multiplication at construction time.  Construction validates
// the input (square shape, determinant one, symplectic-form preservation,
// closure below the cap, absence of pseudo-reflections) and precomputes the
// Cayley structure; afterwards the object is immutable and every query is
// const and thread-safe.
//
// Element indices are stable: index 0 is the identity and indices follow
// breadth-first discovery order, so all derived data is deterministic for a
// fixed generator list.
class MatrixGroup {
 public:
  explicit MatrixGroup(const GroupInput& input, std::size_t cap = 10000);

  unsigned dimension() const { return n_; }
  unsigned conductor() const { return conductor_; }
  const std::string& label() const { return label_; }
  std::size_t order() const { return elems_.size(); }
  std::size_t identity() const { return 0; }
  const std::vector<std::size_t>& generatorIndices() const { return genIdx_; }
  const std::optional<CMat>& symplecticForm() const { return symplectic_; }

  const CMat& element(std::size_t i) const { return elems_[i]; }

  // Index of a matrix whose entries live in a conductor dividing the group
  // conductor; nullopt when the matrix is not an element.
  std::optional<std::size_t> find(const CMat& m) const;

  // Group arithmetic in index space (word application, no matrix products).
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inv(std::size_t i) const;
  unsigned elementOrder(std::size_t i) const { return orders_[i]; }

  const std::vector<std::vector<std::size_t>>& conjugacyClasses() const { return classes_; }
  std::size_t classOf(std::size_t i) const { return classOf_[i]; }

  // Sorted element indices of the commutator subgroup [G, G].
  const std::vector<std::size_t>& commutatorSubgroup() const { return commutator_; }

  const AbelianGroup& abelianization() const { return ab_; }

  // Coordinates of the image of element i in Ab(G), one value in [0, f_j)
  // per invariant factor.
  std::vector<long> abCoords(std::size_t i) const;

  // Value at element i of the character dual to factor j: zeta_{f_j}^{coord_j}.
  CycNum characterValue(std::size_t j, std::size_t i) const;

  // age(g) = (1/r) sum of the eigenvalue exponents in [0, r); an integer for
  // determinant-one matrices.  Constant on conjugacy classes; memoized.
  long age(std::size_t i) const;

  EigenData eigenData(std::size_t i) const;

  // Representatives of the age-one conjugacy classes, one element index per
  // class, ordered by (element order, entry key) of the class-minimal
  // representative under the same comparison.
  const std::vector<std::size_t>& juniorRepresentatives() const { return juniors_; }

  bool generatedByJuniors() const { return generatedByJuniors_; }
  bool classGroupTorsionFree() const { return torsionFree_; }

  unsigned fixedSubspaceCodim(std::size_t i) const;

  // Size of the subgroup generated by the given elements.
  std::size_t subgroupClosureSize(const std::vector<std::size_t>& seeds) const;

 private:
  std::vector<std::size_t> closureOf(std::vector<std::size_t> seeds) const;
  std::size_t applyWord(std::size_t start, std::size_t wordOf) const;
  void computeClasses();
  void computeCommutator();
  void computeAbelianization();
  void computeJuniors();

  unsigned n_ = 0;
  unsigned conductor_ = 1;
  std::string label_;
  std::optional<CMat> symplectic_;
  std::vector<CMat> elems_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> genIdx_;
  // Cayley structure: right[g][i] = index of elems_[i] * generator g, and the
  // inverse permutations; parent_/parentGen_ give the breadth-first word.
  std::vector<std::vector<std::size_t>> right_;
  std::vector<std::vector<std::size_t>> rightInv_;
  std::vector<std::size_t> parent_;
  std::vector<unsigned> parentGen_;
  std::vector<std::vector<long>> wordSum_;
  std::vector<std::vector<long>> relations_;
  std::vector<unsigned> orders_;
  std::vector<std::size_t> inv_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> classOf_;
  std::vector<std::size_t> commutator_;
  AbelianGroup ab_;
  std::vector<std::vector<long>> abTransform_;  // column j per invariant factor
  std::vector<std::size_t> juniors_;
  bool generatedByJuniors_ = false;
  bool torsionFree_ = false;
  mutable std::mutex ageMutex_;
  mutable std::vector<long> classAge_;  // -1 = not yet computed
};

}  // namespace coxmin
