#include "coxmin/valuation.hpp"

#include <algorithm>
#include <limits>

namespace coxmin {

Valuations::Valuations(const MatrixGroup& g, RingPtr ring) : ring_(std::move(ring)) {
  COXMIN_CHECK(ring_->nvars() == g.dimension(), "valuations: variable count mismatch");
  const auto& reps = g.juniorRepresentatives();
  data_.reserve(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    ValuationData d;
    d.junior = i;
    d.element = reps[i];
    d.order = g.elementOrder(reps[i]);
    d.eigen = g.eigenData(reps[i]);
    COXMIN_CHECK(ring_->conductor % d.eigen.conductor == 0,
                 "valuations: ring conductor does not contain the eigenbasis entries");
    d.substitution = inverseOf(d.eigen.forms).transpose();
    data_.push_back(std::move(d));
  }
}

std::vector<long> Valuations::orders() const {
  std::vector<long> r;
  r.reserve(data_.size());
  for (const auto& d : data_) r.push_back(static_cast<long>(d.order));
  return r;
}

const Poly& Valuations::rewrite(std::size_t i, const Poly& f) const {
  COXMIN_CHECK(i < data_.size(), "valuations: junior index out of range");
  const auto key = std::make_pair(i, f.str());
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Poly rewritten = applyMatrix(data_[i].substitution, f);
  COXMIN_CHECK(rewritten.isZero() == f.isZero(), "valuations: substitution must be invertible");
  return memo_.emplace(key, std::move(rewritten)).first->second;
}

Poly Valuations::toEigenCoords(std::size_t i, const Poly& f) const { return rewrite(i, f); }

long Valuations::nu(std::size_t i, const Poly& f) const {
  if (f.isZero()) throw ValidationError("valuation of the zero polynomial is undefined");
  const Poly& e = rewrite(i, f);
  const std::vector<long> a(data_[i].eigen.exponents.begin(), data_[i].eigen.exponents.end());
  long best = std::numeric_limits<long>::max();
  for (const auto& t : e.terms()) best = std::min(best, mono::wdeg(t.m, a));
  return best;
}

std::vector<long> Valuations::nuVector(const Poly& f) const {
  std::vector<long> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = nu(i, f);
  return out;
}

Poly Valuations::minPart(std::size_t i, const Poly& f) const {
  if (f.isZero()) throw ValidationError("min part of the zero polynomial is undefined");
  const Poly& e = rewrite(i, f);
  const std::vector<long> a(data_[i].eigen.exponents.begin(), data_[i].eigen.exponents.end());
  return weightedMinPart(e, a);
}

std::vector<std::vector<long>> Valuations::degreeMatrix(const std::vector<Poly>& polys) const {
  std::vector<std::vector<long>> table(data_.size(), std::vector<long>(polys.size()));
  for (std::size_t i = 0; i < data_.size(); ++i)
    for (std::size_t j = 0; j < polys.size(); ++j) table[i][j] = nu(i, polys[j]);
  return table;
}

long minWeightedDegree(const Poly& f, const std::vector<long>& w) {
  COXMIN_CHECK(!f.isZero(), "minWeightedDegree: zero polynomial");
  long best = std::numeric_limits<long>::max();
  for (const auto& t : f.terms()) best = std::min(best, mono::wdeg(t.m, w));
  return best;
}

Poly weightedMinPart(const Poly& f, const std::vector<long>& w) {
  const long best = minWeightedDegree(f, w);
  std::vector<Term> keep;
  for (const auto& t : f.terms())
    if (mono::wdeg(t.m, w) == best) keep.push_back(t);
  return Poly::fromTerms(f.ring(), std::move(keep));
}

}  // namespace coxmin
