#include "coxmin/cox_ring.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "coxmin/groebner.hpp"

namespace coxmin {

namespace {

std::string stepLabel(unsigned ip, unsigned i) {
  return "(" + std::to_string(ip) + "," + std::to_string(i) + ")";
}

}  // namespace

CoxAlgorithm::CoxAlgorithm(const MatrixGroup& g, const InvariantBasis& seed, CoxOptions opt)
    : group_(&g), ring_(seed.ring), vals_(g, seed.ring), opt_(std::move(opt)), S_(seed.generators) {
  if (S_.empty()) throw ValidationError("the starting invariant set is empty");
  const auto factors = group_->abelianization().factors;
  for (const GradedPoly& p : S_)
    COXMIN_CHECK(p.chi.residues.size() == factors.size(),
                 "invariant carries a character of the wrong shape");
  rebuild({});
}

void CoxAlgorithm::rebuild(const std::vector<Poly>& priorKernelBasis) {
  const std::size_t k = S_.size();
  xNames_.clear();
  xNames_.reserve(k);
  for (std::size_t j = 1; j <= k; ++j) xNames_.push_back("X" + std::to_string(j));
  std::vector<Poly> targets;
  targets.reserve(k);
  for (const GradedPoly& p : S_) targets.push_back(p.poly);
  kernel_ = ringMapKernel(targets, xNames_, opt_.cache, opt_.progress, priorKernelBasis);
  xRing_ = kernel_.ring;
  nuTable_ = vals_.degreeMatrix(targets);
}

std::vector<long> CoxAlgorithm::nuRow(unsigned i) const {
  COXMIN_CHECK(i >= 1 && i <= vals_.count(), "junior index out of range");
  return nuTable_[i - 1];
}

Poly CoxAlgorithm::alphaOf(const Poly& hX) const {
  std::vector<Poly> images;
  images.reserve(S_.size());
  for (const GradedPoly& p : S_) images.push_back(p.poly);
  return hX.substituted(ring_, images);
}

AbCharacter CoxAlgorithm::characterOfX(const Poly& hX) const {
  const auto factors = group_->abelianization().factors;
  AbCharacter chi;
  chi.residues.assign(factors.size(), 0);
  if (hX.isZero()) return chi;
  const Mono& e = hX.leadingMono();
  for (std::size_t j = 0; j < S_.size(); ++j) {
    if (!e[j]) continue;
    for (std::size_t l = 0; l < factors.size(); ++l)
      chi.residues[l] += static_cast<long>(e[j]) * S_[j].chi.residues[l];
  }
  for (std::size_t l = 0; l < factors.size(); ++l) {
    chi.residues[l] %= factors[l];
    if (chi.residues[l] < 0) chi.residues[l] += factors[l];
  }
  return chi;
}

Ideal CoxAlgorithm::minIdealI(unsigned i) const {
  const std::vector<long> w0 = nuRow(i);
  if (kernel_.isZero()) return Ideal{xRing_, {}};
  const std::string tName = freshVarName(xRing_, "t");
  RingPtr Rt = ringAppendVar(xRing_, tName);
  const unsigned tIdx = xRing_->nvars();
  std::vector<Poly> gens;
  gens.reserve(kernel_.basis.size());
  for (const Poly& p : kernel_.basis) gens.push_back(p.mappedTo(Rt));
  std::vector<long> w = w0;
  w.push_back(0);
  gens = homogenized(gens, w, tIdx, /*toMin=*/true);
  Ideal I = makeIdeal(Rt, gens, opt_.cache, opt_.progress);
  I = saturateByPoly(I, Poly::variable(Rt, tIdx), opt_.cache, opt_.progress);
  std::vector<Poly> down;
  down.reserve(I.basis.size());
  for (const Poly& p : I.basis) {
    Poly q = p.withVarSet(tIdx, CycNum(0));
    if (!q.isZero()) down.push_back(q.mappedTo(xRing_));
  }
  return makeIdeal(xRing_, down, opt_.cache, opt_.progress);
}

Ideal CoxAlgorithm::minIdealJ(unsigned i) const {
  COXMIN_CHECK(i >= 1 && i <= vals_.count(), "junior index out of range");
  std::vector<Poly> targets;
  targets.reserve(S_.size());
  for (const GradedPoly& p : S_) targets.push_back(vals_.minPart(i - 1, p.poly));
  Ideal J = ringMapKernel(targets, xNames_, opt_.cache, opt_.progress);
  const auto factors = group_->abelianization().factors;
  for (std::size_t l = 0; l < factors.size() && !J.isZero(); ++l) {
    const long r = factors[l];
    if (r <= 1) continue;
    std::vector<unsigned> a(S_.size());
    for (std::size_t j = 0; j < S_.size(); ++j) {
      long res = S_[j].chi.residues[l] % r;
      if (res < 0) res += r;
      a[j] = static_cast<unsigned>(res);
    }
    J = charHomogeneousPart(J, a, static_cast<unsigned>(r), opt_.cache, opt_.progress);
  }
  std::vector<Poly> basis;
  basis.reserve(J.basis.size());
  for (const Poly& p : J.basis) basis.push_back(p.mappedTo(xRing_));
  return idealFromReducedBasis(xRing_, std::move(basis));
}

RingPtr CoxAlgorithm::ringA(const std::vector<unsigned>& A) const {
  std::vector<std::string> names = xNames_;
  unsigned prev = 0;
  for (unsigned i : A) {
    COXMIN_CHECK(i > prev && i <= vals_.count(), "junior subset must be ascending and in range");
    prev = i;
    names.push_back("t" + std::to_string(i));
  }
  return Ring::grevlexRing(std::move(names), ring_->conductor);
}

Ideal CoxAlgorithm::idealA(const std::vector<unsigned>& A) const {
  RingPtr R = ringA(A);
  if (kernel_.isZero()) return Ideal{R, {}};
  const unsigned k = static_cast<unsigned>(S_.size());
  std::vector<Poly> gens;
  gens.reserve(kernel_.basis.size());
  for (const Poly& p : kernel_.basis) gens.push_back(p.mappedTo(R));
  Ideal I = makeIdeal(R, gens, opt_.cache, opt_.progress);
  for (std::size_t pos = 0; pos < A.size(); ++pos) {
    const unsigned tIdx = k + static_cast<unsigned>(pos);
    std::vector<long> w(R->nvars(), 0);
    for (unsigned j = 0; j < k; ++j) w[j] = nuTable_[A[pos] - 1][j];
    gens = homogenized(I.basis, w, tIdx, /*toMin=*/true);
    I = makeIdeal(R, gens, opt_.cache, opt_.progress);
    I = saturateByPoly(I, Poly::variable(R, tIdx), opt_.cache, opt_.progress);
  }
  return I;
}

std::pair<Ideal, Ideal> CoxAlgorithm::tildePair(unsigned ip, unsigned i) const {
  COXMIN_CHECK(ip >= 1 && ip < i && i <= vals_.count(), "step pair indices out of range");
  std::vector<unsigned> A;
  for (unsigned l = 1; l <= ip; ++l) A.push_back(l);
  A.push_back(i);
  Ideal IA = idealA(A);
  const RingPtr& R = IA.ring;
  const unsigned k = static_cast<unsigned>(S_.size());
  Poly tp = Poly::variable(R, k + ip - 1);
  Poly ti = Poly::variable(R, k + ip);
  Ideal tilde = intersectIdeals(IA, makeIdeal(R, {tp, ti}), opt_.cache, opt_.progress);
  Ideal inTp = intersectIdeals(IA, makeIdeal(R, {tp}), opt_.cache, opt_.progress);
  Ideal inTi = intersectIdeals(IA, makeIdeal(R, {ti}), opt_.cache, opt_.progress);
  std::vector<Poly> sum = inTp.basis;
  sum.insert(sum.end(), inTi.basis.begin(), inTi.basis.end());
  Ideal prime = makeIdeal(R, sum, opt_.cache, opt_.progress);
  return {std::move(tilde), std::move(prime)};
}

std::vector<Poly> CoxAlgorithm::gapGenerators(const Ideal& larger, const Ideal& smaller) const {
  std::vector<Poly> out;
  for (const Poly& h : larger.basis) {
    Poly r = normalForm(h, smaller.basis);
    if (r.isZero()) continue;
    r = r.monic();
    bool dup = false;
    for (const Poly& q : out)
      if (q == r) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.str() < b.str();
  });
  return out;
}

std::vector<GradedPoly> CoxAlgorithm::extendBy(const std::vector<Poly>& candidatesX) {
  std::vector<GradedPoly> added;
  for (const Poly& h : candidatesX) {
    Poly phi = alphaOf(h);
    if (phi.isZero() || phi.isConstant()) continue;  // the candidate was itself a relation
    phi = phi.monic();
    bool dup = false;
    for (const GradedPoly& g : S_)
      if (g.poly.monic() == phi) {
        dup = true;
        break;
      }
    for (const GradedPoly& g : added)
      if (!dup && g.poly == phi) dup = true;
    if (dup) continue;
    GradedPoly rec{phi, characterOfX(h)};
    try {
      acceptUserGenerators(*group_, std::vector<GradedPoly>{rec});
    } catch (const ValidationError& e) {
      throw InternalError(std::string("algorithm produced an invalid invariant: ") + e.what());
    }
    added.push_back(std::move(rec));
  }
  if (!added.empty()) {
    std::vector<Poly> prior = kernel_.basis;
    for (const GradedPoly& g : added) S_.push_back(g);
    rebuild(prior);
  }
  return added;
}

bool CoxAlgorithm::runStep0(unsigned i) {
  const std::string label = stepLabel(0, i);
  bool any = false;
  for (unsigned round = 1; round <= opt_.roundCap; ++round) {
    Ideal mI = minIdealI(i);
    Ideal mJ = minIdealJ(i);
    COXMIN_CHECK(idealContainsIdeal(mJ, mI),
                 "homogeneous relations of the minimal parts must contain the minimal parts "
                 "of the relations at junior " +
                     std::to_string(i));
    StepRecord rec{label, round, {}};
    std::vector<Poly> gaps = gapGenerators(mJ, mI);
    if (gaps.empty()) {
      history_.push_back(std::move(rec));
      note("step " + label + ": pass (round " + std::to_string(round) + ")");
      return any;
    }
    rec.added = extendBy(gaps);
    const std::size_t got = rec.added.size();
    history_.push_back(std::move(rec));
    if (got == 0)
      throw InternalError("step " + label + " found a gap but extracted no new invariant");
    any = true;
    note("step " + label + ": added " + std::to_string(got) + " invariant(s)");
  }
  throw CapError("step " + label + " did not stabilize within " + std::to_string(opt_.roundCap) +
                 " rounds; this indicates a defect, not a large example");
}

bool CoxAlgorithm::runStepPair(unsigned ip, unsigned i) {
  const std::string label = stepLabel(ip, i);
  bool any = false;
  for (unsigned round = 1; round <= opt_.roundCap; ++round) {
    auto [tilde, prime] = tildePair(ip, i);
    COXMIN_CHECK(idealContainsIdeal(tilde, prime),
                 "the single-variable cuts must lie inside the pair cut at step " + label);
    StepRecord rec{label, round, {}};
    std::vector<Poly> gaps = gapGenerators(tilde, prime);
    std::vector<Poly> candidates;
    if (!gaps.empty()) {
      const RingPtr& R = gaps.front().ring();
      const unsigned k = static_cast<unsigned>(S_.size());
      const std::vector<long> w = nuRow(i);
      for (Poly g : gaps) {
        for (unsigned v = k; v < R->nvars(); ++v) g = g.withVarSet(v, CycNum(1));
        if (g.isZero()) continue;
        candidates.push_back(weightedMinPart(g.mappedTo(xRing_), w));
      }
      std::sort(candidates.begin(), candidates.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.str() < b.str();
      });
    }
    if (candidates.empty()) {
      COXMIN_CHECK(gaps.empty(), "step " + label + " gap vanished after dehomogenizing");
      history_.push_back(std::move(rec));
      note("step " + label + ": pass (round " + std::to_string(round) + ")");
      return any;
    }
    rec.added = extendBy(candidates);
    const std::size_t got = rec.added.size();
    history_.push_back(std::move(rec));
    if (got == 0)
      throw InternalError("step " + label + " found a gap but extracted no new invariant");
    any = true;
    note("step " + label + ": added " + std::to_string(got) + " invariant(s)");
  }
  throw CapError("step " + label + " did not stabilize within " + std::to_string(opt_.roundCap) +
                 " rounds; this indicates a defect, not a large example");
}

CoxPresentation CoxAlgorithm::run() {
  history_.clear();
  history_.push_back(StepRecord{"(0)", 1, S_});
  const unsigned m = static_cast<unsigned>(vals_.count());
  for (unsigned i = 1; i <= m; ++i) {
    runStep0(i);
    for (unsigned ip = 1; ip < i; ++ip) runStepPair(ip, i);
  }
  return presentation();
}

std::pair<RingPtr, Ideal> CoxAlgorithm::relationIdeal() const {
  const unsigned m = static_cast<unsigned>(vals_.count());
  const unsigned k = static_cast<unsigned>(S_.size());
  std::vector<std::string> names = xNames_;
  for (unsigned i = 1; i <= m; ++i) names.push_back("Y" + std::to_string(i));
  RingPtr xy = Ring::grevlexRing(std::move(names), ring_->conductor);
  if (m == 0 || kernel_.isZero()) {
    std::vector<Poly> basis;
    basis.reserve(kernel_.basis.size());
    for (const Poly& p : kernel_.basis) basis.push_back(p.mappedTo(xy));
    return {xy, makeIdeal(xy, basis, opt_.cache, opt_.progress)};
  }

  std::vector<unsigned> all;
  for (unsigned i = 1; i <= m; ++i) all.push_back(i);
  Ideal IA = idealA(all);
  const std::vector<long> orders = vals_.orders();
  const auto factors = group_->abelianization().factors;

  std::vector<Poly> ygens;
  for (const Poly& p : IA.basis) {
    // Split into character components (sound for a character-graded ideal),
    // then contract each t_i exponent by r_i.
    std::map<std::vector<long>, std::vector<Term>> parts;
    for (const Term& term : p.terms()) {
      std::vector<long> chi(factors.size(), 0);
      for (unsigned j = 0; j < k; ++j) {
        if (!term.m[j]) continue;
        for (std::size_t l = 0; l < factors.size(); ++l)
          chi[l] = (chi[l] + static_cast<long>(term.m[j]) * S_[j].chi.residues[l]) % factors[l];
      }
      for (std::size_t l = 0; l < factors.size(); ++l)
        if (chi[l] < 0) chi[l] += factors[l];
      parts[chi].push_back(term);
    }
    for (auto& [chi, terms] : parts) {
      std::vector<Term> mapped;
      mapped.reserve(terms.size());
      for (const Term& term : terms) {
        Mono e(xy->nvars(), 0);
        for (unsigned j = 0; j < k; ++j) e[j] = term.m[j];
        for (unsigned i = 0; i < m; ++i) {
          const unsigned te = term.m[k + i];
          COXMIN_CHECK(te % static_cast<unsigned>(orders[i]) == 0,
                       "relation exponent of t" + std::to_string(i + 1) +
                           " is not a multiple of the junior order");
          e[k + i] = static_cast<std::uint16_t>(te / static_cast<unsigned>(orders[i]));
        }
        mapped.push_back(Term{std::move(e), term.c});
      }
      ygens.push_back(Poly::fromTerms(xy, std::move(mapped)));
    }
  }
  return {xy, makeIdeal(xy, ygens, opt_.cache, opt_.progress)};
}

CoxPresentation CoxAlgorithm::presentation() const {
  CoxPresentation P;
  P.ring = ring_;
  P.invariants = S_;
  P.nuTable = nuTable_;
  P.orders = vals_.orders();
  P.history = history_;
  P.xRing = xRing_;
  P.kernel = kernel_;
  auto [xy, rel] = relationIdeal();
  P.xyRing = std::move(xy);
  P.relations = std::move(rel);
  const std::size_t m = vals_.count();
  const auto factors = group_->abelianization().factors;
  for (std::size_t j = 0; j < S_.size(); ++j) {
    CoxGenerator g;
    g.poly = S_[j].poly;
    g.chi = S_[j].chi;
    g.exponents.reserve(m);
    for (std::size_t i = 0; i < m; ++i) g.exponents.push_back(nuTable_[i][j]);
    P.generators.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < m; ++i) {
    CoxGenerator b;
    b.poly = Poly::constant(ring_, CycNum(0));
    b.chi.residues.assign(factors.size(), 0);
    b.exponents.assign(m, 0);
    b.exponents[i] = -P.orders[i];
    b.boundary = true;
    P.generators.push_back(std::move(b));
  }
  return P;
}

std::optional<Poly> CoxAlgorithm::verifyStar(const Poly& f) const {
  COXMIN_CHECK(f.ring()->sameAs(*ring_), "verifyStar: polynomial over the wrong ring");
  if (f.isZero()) throw ValidationError("verifyStar: the zero polynomial has no certificate");
  const std::vector<long> ones(ring_->nvars(), 1);
  if (!f.isHomogeneous(ones))
    throw ValidationError("verifyStar: the polynomial must be homogeneous");
  // Validates invariance and detects the character; rejects bad input.
  const AbCharacter chiF =
      acceptUserGenerators(*group_, std::vector<Poly>{f}).generators.front().chi;
  const std::vector<long> nuF = vals_.nuVector(f);
  const long d = f.degree();
  const std::size_t k = S_.size();
  const std::size_t m = vals_.count();
  const auto factors = group_->abelianization().factors;

  std::vector<long> degs(k);
  for (std::size_t j = 0; j < k; ++j) {
    degs[j] = S_[j].poly.degree();
    COXMIN_CHECK(degs[j] >= 1, "verifyStar: constant generator");
  }

  // All exponent vectors with matching total degree, character, and
  // valuation bounds.
  std::vector<Mono> cands;
  Mono cur(k, 0);
  std::vector<long> chiAcc(factors.size(), 0);
  std::vector<long> nuAcc(m, 0);
  std::function<void(std::size_t, long)> dfs = [&](std::size_t j, long rem) {
    if (j == k) {
      if (rem != 0) return;
      for (std::size_t l = 0; l < factors.size(); ++l) {
        long want = chiF.residues[l] % factors[l];
        if (want < 0) want += factors[l];
        long got = chiAcc[l] % factors[l];
        if (got < 0) got += factors[l];
        if (want != got) return;
      }
      for (std::size_t i = 0; i < m; ++i)
        if (nuAcc[i] < nuF[i]) return;
      cands.push_back(cur);
      return;
    }
    const long emax = rem / degs[j];
    for (long e = 0; e <= emax; ++e) {
      if (e) {
        cur[j] = static_cast<std::uint16_t>(e);
        for (std::size_t l = 0; l < factors.size(); ++l) chiAcc[l] += S_[j].chi.residues[l];
        for (std::size_t i = 0; i < m; ++i) nuAcc[i] += nuTable_[i][j];
      }
      dfs(j + 1, rem - e * degs[j]);
    }
    const long used = emax;
    if (used > 0) {
      cur[j] = 0;
      for (std::size_t l = 0; l < factors.size(); ++l)
        chiAcc[l] -= used * S_[j].chi.residues[l];
      for (std::size_t i = 0; i < m; ++i) nuAcc[i] -= used * nuTable_[i][j];
    }
  };
  dfs(0, d);
  if (cands.empty()) return std::nullopt;

  // Exact Gaussian elimination with certificate tracking. Row invariant:
  // vec = sum_c expr[c] * alpha(M_c).
  struct Row {
    std::map<Mono, CycNum> vec;
    std::vector<CycNum> expr;
  };
  std::map<Mono, Row> rows;  // keyed by pivot (largest monomial of vec)
  auto reduce = [&rows](Row& r) {
    while (!r.vec.empty()) {
      const Mono pivot = r.vec.rbegin()->first;
      auto it = rows.find(pivot);
      if (it == rows.end()) return;
      const CycNum c = r.vec.rbegin()->second;
      for (const auto& [mn, cf] : it->second.vec) {
        auto slot = r.vec.find(mn);
        CycNum nv = (slot == r.vec.end() ? CycNum(0) : slot->second) - c * cf;
        if (nv.isZero()) {
          if (slot != r.vec.end()) r.vec.erase(slot);
        } else if (slot == r.vec.end()) {
          r.vec.emplace(mn, std::move(nv));
        } else {
          slot->second = std::move(nv);
        }
      }
      for (std::size_t l = 0; l < r.expr.size(); ++l)
        if (!it->second.expr[l].isZero()) r.expr[l] = r.expr[l] - c * it->second.expr[l];
    }
  };

  // Powers of the generators, grown on demand.
  std::vector<std::vector<Poly>> pows(k);
  for (std::size_t j = 0; j < k; ++j) pows[j].push_back(Poly::constant(ring_, CycNum(1)));
  auto powerOf = [&](std::size_t j, unsigned e) -> const Poly& {
    while (pows[j].size() <= e) pows[j].push_back(pows[j].back() * S_[j].poly);
    return pows[j][e];
  };

  for (std::size_t c = 0; c < cands.size(); ++c) {
    Poly img = Poly::constant(ring_, CycNum(1));
    for (std::size_t j = 0; j < k; ++j)
      if (cands[c][j]) img = img * powerOf(j, cands[c][j]);
    Row r;
    r.expr.assign(cands.size(), CycNum(0));
    r.expr[c] = CycNum(1);
    for (const Term& t : img.terms()) r.vec.emplace(t.m, t.c);
    reduce(r);
    if (r.vec.empty()) continue;
    const CycNum lead = r.vec.rbegin()->second;
    for (auto& [mn, cf] : r.vec) cf = cf / lead;
    for (auto& cf : r.expr) cf = cf / lead;
    const Mono pivot = r.vec.rbegin()->first;
    rows.emplace(pivot, std::move(r));
  }

  Row target;
  target.expr.assign(cands.size(), CycNum(0));
  for (const Term& t : f.terms()) target.vec.emplace(t.m, t.c);
  reduce(target);
  if (!target.vec.empty()) return std::nullopt;

  std::vector<Term> hterms;
  for (std::size_t c = 0; c < cands.size(); ++c)
    if (!target.expr[c].isZero()) hterms.push_back(Term{cands[c], CycNum(0) - target.expr[c]});
  return Poly::fromTerms(xRing_, std::move(hterms));
}

void CoxAlgorithm::note(const std::string& line) const {
  if (opt_.log) opt_.log(line);
}

}  // namespace coxmin
