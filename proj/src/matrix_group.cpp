#include "coxmin/matrix_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "coxmin/common.hpp"
#include "coxmin/smith.hpp"

namespace coxmin {

namespace {

std::string matrixKey(const CMat& m) {
  std::string key;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      key += m(r, c).str();
      key += ';';
    }
  return key;
}

CMat embedMat(const CMat& m, unsigned conductor) {
  CMat out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(r, c) = m(r, c).embedded(conductor);
  return out;
}

}  // namespace

MatrixGroup::MatrixGroup(const GroupInput& input, std::size_t cap) {
  n_ = input.dimension;
  conductor_ = input.conductor;
  label_ = input.label;
  if (n_ == 0) throw ValidationError("group dimension must be positive");
  if (conductor_ == 0) throw ValidationError("group conductor must be positive");

  std::vector<CMat> gens;
  gens.reserve(input.generators.size());
  for (std::size_t gi = 0; gi < input.generators.size(); ++gi) {
    const CMat& raw = input.generators[gi];
    if (raw.rows() != static_cast<Eigen::Index>(n_) ||
        raw.cols() != static_cast<Eigen::Index>(n_))
      throw ValidationError("generator " + std::to_string(gi + 1) + " is not " +
                            std::to_string(n_) + "x" + std::to_string(n_));
    for (Eigen::Index r = 0; r < raw.rows(); ++r)
      for (Eigen::Index c = 0; c < raw.cols(); ++c)
        if (conductor_ % raw(r, c).conductor() != 0)
          throw ValidationError("generator " + std::to_string(gi + 1) +
                                " has an entry outside Q(zeta_" +
                                std::to_string(conductor_) + ")");
    CMat g = embedMat(raw, conductor_);
    if (detOf(g) != CycNum(1))
      throw ValidationError("generator " + std::to_string(gi + 1) +
                            " does not have determinant 1");
    gens.push_back(std::move(g));
  }

  if (input.symplectic) {
    const CMat& raw = *input.symplectic;
    if (raw.rows() != static_cast<Eigen::Index>(n_) ||
        raw.cols() != static_cast<Eigen::Index>(n_))
      throw ValidationError("symplectic form is not " + std::to_string(n_) + "x" +
                            std::to_string(n_));
    CMat form = embedMat(raw, conductor_);
    if (!matEq(form.transpose(), CMat(-form)))
      throw ValidationError("symplectic form is not antisymmetric");
    if (rankOf(form) != n_)
      throw ValidationError("symplectic form is degenerate");
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      CMat pulled = gens[gi].transpose() * form * gens[gi];
      if (!matEq(pulled, form))
        throw ValidationError("generator " + std::to_string(gi + 1) +
                              " does not preserve the symplectic form");
    }
    symplectic_ = std::move(form);
  }

  const std::size_t k = gens.size();

  elems_.push_back(embedMat(cIdentity(n_), conductor_));
  keys_.push_back(matrixKey(elems_[0]));
  index_.emplace(keys_[0], 0);
  parent_.push_back(0);
  parentGen_.push_back(0);
  wordSum_.push_back(std::vector<long>(k, 0));
  right_.assign(k, {});

  for (std::size_t cur = 0; cur < elems_.size(); ++cur) {
    for (std::size_t g = 0; g < k; ++g) {
      CMat prod = elems_[cur] * gens[g];
      std::string key = matrixKey(prod);
      auto it = index_.find(key);
      if (it == index_.end()) {
        std::size_t idx = elems_.size();
        if (idx >= cap)
          throw ValidationError("group closure exceeded the cap of " +
                                std::to_string(cap) + " elements");
        elems_.push_back(std::move(prod));
        keys_.push_back(std::move(key));
        index_.emplace(keys_.back(), idx);
        parent_.push_back(cur);
        parentGen_.push_back(static_cast<unsigned>(g));
        std::vector<long> w = wordSum_[cur];
        ++w[g];
        wordSum_.push_back(std::move(w));
        right_[g].push_back(idx);
      } else {
        right_[g].push_back(it->second);
        std::vector<long> rel = wordSum_[cur];
        ++rel[g];
        const std::vector<long>& target = wordSum_[it->second];
        bool nonzero = false;
        for (std::size_t c = 0; c < k; ++c) {
          rel[c] -= target[c];
          nonzero = nonzero || rel[c] != 0;
        }
        if (nonzero) relations_.push_back(std::move(rel));
      }
    }
  }

  const std::size_t N = elems_.size();
  rightInv_.assign(k, std::vector<std::size_t>(N));
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t i = 0; i < N; ++i) rightInv_[g][right_[g][i]] = i;

  genIdx_.reserve(k);
  for (std::size_t g = 0; g < k; ++g) genIdx_.push_back(right_[g][0]);

  // In SL(n, C) a fixed space of codimension one would force a determinant
  // other than one, but the scan also guards hand-edited inputs.
  for (std::size_t i = 1; i < N; ++i)
    if (fixedSubspaceCodim(i) == 1)
      throw ValidationError("element " + std::to_string(i) +
                            " is a pseudo-reflection; such actions are not supported");

  inv_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    std::size_t idx = 0;
    for (std::size_t v = i; v != 0; v = parent_[v]) idx = rightInv_[parentGen_[v]][idx];
    inv_[i] = idx;
  }

  orders_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    unsigned r = 1;
    std::size_t j = i;
    while (j != 0) {
      j = mul(j, i);
      ++r;
    }
    orders_[i] = r;
  }

  computeClasses();
  computeCommutator();
  computeAbelianization();
  classAge_.assign(classes_.size(), -1);
  computeJuniors();

  std::vector<std::size_t> juniorElems;
  for (std::size_t rep : juniors_)
    for (std::size_t e : classes_[classOf_[rep]]) juniorElems.push_back(e);
  generatedByJuniors_ = closureOf(juniorElems).size() == N;
  std::vector<std::size_t> withCommutator = juniorElems;
  withCommutator.insert(withCommutator.end(), commutator_.begin(), commutator_.end());
  torsionFree_ = closureOf(withCommutator).size() == N;
}

std::optional<std::size_t> MatrixGroup::find(const CMat& m) const {
  if (m.rows() != static_cast<Eigen::Index>(n_) ||
      m.cols() != static_cast<Eigen::Index>(n_))
    return std::nullopt;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (conductor_ % m(r, c).conductor() != 0) return std::nullopt;
  auto it = index_.find(matrixKey(embedMat(m, conductor_)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MatrixGroup::applyWord(std::size_t start, std::size_t wordOf) const {
  std::vector<unsigned> seq;
  for (std::size_t v = wordOf; v != 0; v = parent_[v]) seq.push_back(parentGen_[v]);
  std::size_t idx = start;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) idx = right_[*it][idx];
  return idx;
}

std::size_t MatrixGroup::mul(std::size_t i, std::size_t j) const { return applyWord(i, j); }

std::size_t MatrixGroup::inv(std::size_t i) const { return inv_[i]; }

void MatrixGroup::computeClasses() {
  const std::size_t N = elems_.size();
  classOf_.assign(N, SIZE_MAX);
  for (std::size_t i = 0; i < N; ++i) {
    if (classOf_[i] != SIZE_MAX) continue;
    std::size_t cls = classes_.size();
    std::vector<std::size_t> orbit{i};
    classOf_[i] = cls;
    for (std::size_t q = 0; q < orbit.size(); ++q) {
      for (std::size_t g : genIdx_) {
        std::size_t conj = mul(mul(g, orbit[q]), inv_[g]);
        if (classOf_[conj] == SIZE_MAX) {
          classOf_[conj] = cls;
          orbit.push_back(conj);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    classes_.push_back(std::move(orbit));
  }
}

std::vector<std::size_t> MatrixGroup::closureOf(std::vector<std::size_t> seeds) const {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<char> seen(elems_.size(), 0);
  std::vector<std::size_t> members{0};
  seen[0] = 1;
  for (std::size_t q = 0; q < members.size(); ++q) {
    for (std::size_t s : seeds) {
      std::size_t next = mul(members[q], s);
      if (!seen[next]) {
        seen[next] = 1;
        members.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

void MatrixGroup::computeCommutator() {
  std::vector<std::size_t> seeds;
  for (std::size_t a = 0; a < genIdx_.size(); ++a)
    for (std::size_t b = a + 1; b < genIdx_.size(); ++b) {
      std::size_t ga = genIdx_[a], gb = genIdx_[b];
      seeds.push_back(mul(mul(mul(ga, gb), inv_[ga]), inv_[gb]));
    }
  std::vector<std::size_t> members = closureOf(seeds);
  for (;;) {
    std::vector<char> inside(elems_.size(), 0);
    for (std::size_t e : members) inside[e] = 1;
    bool grew = false;
    for (std::size_t g : genIdx_) {
      for (std::size_t e : members) {
        std::size_t conj = mul(mul(g, e), inv_[g]);
        if (!inside[conj]) {
          seeds.push_back(conj);
          grew = true;
        }
      }
    }
    if (!grew) break;
    members = closureOf(seeds);
  }
  commutator_ = std::move(members);
}

void MatrixGroup::computeAbelianization() {
  const std::size_t k = genIdx_.size();
  SmithResult snf = smithNormalForm(relations_, static_cast<unsigned>(k));
  long quotient = 1;
  for (std::size_t j = 0; j < k; ++j) {
    long d = snf.diagonal[j];
    COXMIN_CHECK(d != 0, "abelianization of a finite group has a free factor");
    quotient *= d;
    if (d > 1) {
      ab_.factors.push_back(d);
      std::vector<long> col(k);
      for (std::size_t i = 0; i < k; ++i) col[i] = snf.rightTransform[i][j];
      abTransform_.push_back(std::move(col));
    }
  }
  COXMIN_CHECK(quotient == static_cast<long>(elems_.size() / commutator_.size()),
               "abelianization order disagrees with the commutator index");
}

std::vector<long> MatrixGroup::abCoords(std::size_t i) const {
  const std::vector<long>& w = wordSum_[i];
  std::vector<long> coords(ab_.factors.size());
  for (std::size_t j = 0; j < ab_.factors.size(); ++j) {
    long c = 0;
    for (std::size_t g = 0; g < w.size(); ++g) c += w[g] * abTransform_[j][g];
    long f = ab_.factors[j];
    c %= f;
    if (c < 0) c += f;
    coords[j] = c;
  }
  return coords;
}

CycNum MatrixGroup::characterValue(std::size_t j, std::size_t i) const {
  COXMIN_CHECK(j < ab_.factors.size(), "character index out of range");
  return CycNum::zeta(static_cast<unsigned>(ab_.factors[j]), abCoords(i)[j]);
}

long MatrixGroup::age(std::size_t i) const {
  std::size_t cls = classOf_[i];
  {
    std::lock_guard<std::mutex> lock(ageMutex_);
    if (classAge_[cls] >= 0) return classAge_[cls];
  }
  unsigned r = orders_[i];
  unsigned L = static_cast<unsigned>(std::lcm<unsigned long>(conductor_, r));
  CMat m = embedMat(elems_[i], L);
  long weighted = 0;
  unsigned total = 0;
  for (unsigned a = 0; a < r; ++a) {
    CMat shifted = m;
    CycNum lambda = CycNum::zeta(L, static_cast<long>(a) * (L / r));
    for (unsigned d = 0; d < n_; ++d) shifted(d, d) = shifted(d, d) - lambda;
    unsigned mult = n_ - rankOf(shifted);
    weighted += static_cast<long>(a) * mult;
    total += mult;
  }
  COXMIN_CHECK(total == n_, "finite-order element is not diagonalizable");
  COXMIN_CHECK(weighted % static_cast<long>(r) == 0,
               "age is not an integer for a determinant-one element");
  long value = weighted / static_cast<long>(r);
  std::lock_guard<std::mutex> lock(ageMutex_);
  classAge_[cls] = value;
  return value;
}

EigenData MatrixGroup::eigenData(std::size_t i) const {
  EigenData data;
  data.order = orders_[i];
  data.conductor = static_cast<unsigned>(std::lcm<unsigned long>(conductor_, data.order));
  CMat m = embedMat(elems_[i], data.conductor);
  data.forms = CMat(n_, n_);
  unsigned row = 0;
  for (unsigned a = 0; a < data.order; ++a) {
    CMat shifted = m;
    CycNum lambda = CycNum::zeta(data.conductor, static_cast<long>(a) * (data.conductor / data.order));
    for (unsigned d = 0; d < n_; ++d) shifted(d, d) = shifted(d, d) - lambda;
    for (const CVec& v : kernelColumns(shifted)) {
      COXMIN_CHECK(row < n_, "too many eigenvectors");
      data.exponents.push_back(a);
      for (unsigned c = 0; c < n_; ++c) data.forms(row, c) = v(c);
      ++row;
    }
  }
  COXMIN_CHECK(row == n_, "finite-order element is not diagonalizable");
  return data;
}

void MatrixGroup::computeJuniors() {
  struct RepInfo {
    std::size_t rep;
    unsigned order;
    std::string key;
  };
  std::vector<RepInfo> infos;
  for (const std::vector<std::size_t>& cls : classes_) {
    if (age(cls.front()) != 1) continue;
    RepInfo info;
    info.rep = cls.front();
    info.order = orders_[cls.front()];
    info.key = keys_[cls.front()];
    for (std::size_t e : cls)
      if (keys_[e] < info.key) {
        info.key = keys_[e];
        info.rep = e;
      }
    infos.push_back(std::move(info));
  }
  std::sort(infos.begin(), infos.end(), [](const RepInfo& a, const RepInfo& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.key < b.key;
  });
  for (const RepInfo& info : infos) juniors_.push_back(info.rep);
}

unsigned MatrixGroup::fixedSubspaceCodim(std::size_t i) const {
  CMat shifted = elems_[i];
  for (unsigned d = 0; d < n_; ++d) shifted(d, d) = shifted(d, d) - CycNum(1);
  return rankOf(shifted);
}

std::size_t MatrixGroup::subgroupClosureSize(const std::vector<std::size_t>& seeds) const {
  return closureOf(seeds).size();
}

}  // namespace coxmin
