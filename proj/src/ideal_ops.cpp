#include "coxmin/ideal_ops.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "coxmin/common.hpp"
#include "coxmin/expr.hpp"
#include "coxmin/modular.hpp"

namespace coxmin {

namespace {

// Column-style exact kernel: solutions v with M v = 0, over CycNum.
// M given row-major, rows x cols. Returns a basis of the kernel.
std::vector<std::vector<CycNum>> kernelBasis(std::vector<std::vector<CycNum>> m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivotCol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].isZero()) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    CycNum inv = m[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) m[r][k] = m[r][k] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].isZero()) continue;
      CycNum f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] = m[i][k] - f * m[r][k];
    }
    pivotCol.push_back(c);
    ++r;
  }
  std::vector<bool> isPivot(cols, false);
  for (std::size_t c : pivotCol) isPivot[c] = true;
  std::vector<std::vector<CycNum>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    std::vector<CycNum> v(cols, CycNum(0));
    v[free] = CycNum(1);
    for (std::size_t i = 0; i < pivotCol.size(); ++i) v[pivotCol[i]] = CycNum(-1) * m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

Ideal makeIdeal(const RingPtr& ring, const std::vector<Poly>& gens, Cache* cache,
                const GroebnerProgress& progress) {
  return Ideal{ring, groebnerBasis(ring, gens, cache, progress)};
}

Ideal idealFromReducedBasis(const RingPtr& ring, std::vector<Poly> basis) {
  for (const Poly& p : basis) {
    COXMIN_CHECK(!p.isZero() && p.ring()->sameAs(*ring), "idealFromReducedBasis: bad element");
    COXMIN_CHECK(p.leadingCoeff() == CycNum(1), "idealFromReducedBasis: not monic");
  }
  const MonomialOrder& ord = ring->order;
  std::sort(basis.begin(), basis.end(),
            [&](const Poly& x, const Poly& y) { return !ord.less(x.leadingMono(), y.leadingMono()); });
  return Ideal{ring, std::move(basis)};
}

bool idealEqual(const Ideal& a, const Ideal& b) {
  COXMIN_CHECK(a.ring->sameAs(*b.ring), "idealEqual: ring mismatch");
  return a.basis == b.basis;
}

bool idealContainsIdeal(const Ideal& outer, const Ideal& inner) {
  COXMIN_CHECK(outer.ring->sameAs(*inner.ring), "idealContainsIdeal: ring mismatch");
  for (const Poly& g : inner.basis)
    if (!outer.contains(g)) return false;
  return true;
}

bool isPureGrevlex(const RingPtr& ring) {
  for (const auto& blk : ring->order.blocks())
    if (blk.lex) return false;
  return true;
}

std::string freshVarName(const RingPtr& ring, const std::string& base) {
  COXMIN_CHECK(base != "zeta", "freshVarName: reserved name");
  if (ring->varIndex(base) < 0) return base;
  for (unsigned k = 1;; ++k) {
    std::string name = base + std::to_string(k);
    if (ring->varIndex(name) < 0) return name;
  }
}

RingPtr ringAppendVar(const RingPtr& base, const std::string& name) {
  COXMIN_CHECK(base->varIndex(name) < 0, "ringAppendVar: duplicate variable " + name);
  std::vector<std::string> vars = base->vars;
  vars.push_back(name);
  return Ring::grevlexRing(std::move(vars), base->conductor);
}

RingPtr ringDropVars(const RingPtr& base, const std::vector<unsigned>& drop) {
  std::vector<bool> gone(base->nvars(), false);
  for (unsigned v : drop) {
    COXMIN_CHECK(v < base->nvars(), "ringDropVars: bad index");
    gone[v] = true;
  }
  std::vector<std::string> vars;
  for (unsigned v = 0; v < base->nvars(); ++v)
    if (!gone[v]) vars.push_back(base->vars[v]);
  return Ring::grevlexRing(std::move(vars), base->conductor);
}

Ideal eliminateVars(const Ideal& I, const std::vector<unsigned>& vars, Cache* cache,
                    const GroebnerProgress& progress) {
  COXMIN_CHECK(isPureGrevlex(I.ring), "eliminateVars: ring must be grevlex");
  RingPtr down = ringDropVars(I.ring, vars);
  if (I.isZero() || vars.empty()) {
    if (vars.empty()) return I;
    return Ideal{down, {}};
  }
  std::vector<bool> head(I.ring->nvars(), false);
  for (unsigned v : vars) head[v] = true;
  std::vector<std::string> evars;
  for (unsigned v = 0; v < I.ring->nvars(); ++v)
    if (head[v]) evars.push_back(I.ring->vars[v]);
  for (const std::string& name : down->vars) evars.push_back(name);
  const auto n = static_cast<unsigned>(evars.size());
  RingPtr E = Ring::make(std::move(evars),
                         MonomialOrder::elimination(static_cast<unsigned>(vars.size()), n),
                         I.ring->conductor);

  std::vector<Poly> egens;
  egens.reserve(I.basis.size());
  for (const Poly& g : I.basis) egens.push_back(g.mappedTo(E));
  std::vector<Poly> gb = groebnerBasis(E, egens, cache, progress);

  // The head-variable-free part of a reduced basis under an elimination
  // order is the reduced basis of the elimination ideal.
  const unsigned headCount = static_cast<unsigned>(vars.size());
  std::vector<Poly> downBasis;
  for (const Poly& p : gb) {
    const Mono& lm = p.leadingMono();
    bool free = true;
    for (unsigned v = 0; v < headCount; ++v)
      if (lm[v]) {
        free = false;
        break;
      }
    if (free) downBasis.push_back(p.mappedTo(down));
  }
  return idealFromReducedBasis(down, std::move(downBasis));
}

Ideal intersectIdeals(const Ideal& a, const Ideal& b, Cache* cache,
                      const GroebnerProgress& progress) {
  COXMIN_CHECK(a.ring->sameAs(*b.ring), "intersectIdeals: ring mismatch");
  COXMIN_CHECK(isPureGrevlex(a.ring), "intersectIdeals: ring must be grevlex");
  if (a.isZero() || b.isZero()) return Ideal{a.ring, {}};

  const std::string uname = freshVarName(a.ring, "u");
  std::vector<std::string> vars;
  vars.push_back(uname);
  for (const std::string& v : a.ring->vars) vars.push_back(v);
  const auto n = static_cast<unsigned>(vars.size());
  RingPtr E = Ring::make(std::move(vars), MonomialOrder::elimination(1, n), a.ring->conductor);
  Poly u = Poly::variable(E, 0);
  Poly oneMinusU = Poly::constant(E, CycNum(1)) - u;

  std::vector<Poly> gens;
  gens.reserve(a.basis.size() + b.basis.size());
  for (const Poly& f : a.basis) gens.push_back(u * f.mappedTo(E));
  for (const Poly& g : b.basis) gens.push_back(oneMinusU * g.mappedTo(E));
  std::vector<Poly> gb = groebnerBasis(E, gens, cache, progress);

  std::vector<Poly> downBasis;
  for (const Poly& p : gb)
    if (!p.leadingMono()[0]) downBasis.push_back(p.mappedTo(a.ring));
  return idealFromReducedBasis(a.ring, std::move(downBasis));
}

Ideal quotientByPoly(const Ideal& I, const Poly& f, Cache* cache,
                     const GroebnerProgress& progress) {
  COXMIN_CHECK(!f.isZero(), "quotientByPoly: zero divisor polynomial");
  if (I.isZero()) return I;
  Ideal fI = Ideal{I.ring, {f.mappedTo(I.ring).monic()}};
  Ideal meet = intersectIdeals(I, fI, cache, progress);
  std::vector<Poly> gens;
  gens.reserve(meet.basis.size());
  for (const Poly& g : meet.basis) gens.push_back(g.exactDiv(fI.basis.front()));
  return makeIdeal(I.ring, gens, cache, progress);
}

Ideal saturateByPoly(const Ideal& I, const Poly& f, Cache* cache,
                     const GroebnerProgress& progress) {
  Ideal cur = I;
  for (;;) {
    Ideal next = quotientByPoly(cur, f, cache, progress);
    if (idealEqual(next, cur)) return cur;
    cur = std::move(next);
  }
}

unsigned jacobianRank(const std::vector<Poly>& targets) {
  COXMIN_CHECK(!targets.empty(), "jacobianRank: no targets");
  const RingPtr& src = targets.front().ring();
  const unsigned n = src->nvars();
  std::vector<std::vector<Poly>> m(targets.size(), std::vector<Poly>(n));
  for (std::size_t j = 0; j < targets.size(); ++j)
    for (unsigned v = 0; v < n; ++v) m[j][v] = derivative(targets[j], v);

  // Fraction-free Gaussian elimination; rank over the fraction field.
  unsigned rank = 0;
  for (unsigned c = 0; c < n && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c].isZero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[rank], m[p]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][c].isZero()) continue;
      for (unsigned k = c + 1; k < n; ++k)
        m[i][k] = (m[i][k] * m[rank][c] - m[rank][k] * m[i][c]).primitive();
      m[i][c] = Poly(src);
    }
    ++rank;
  }
  return rank;
}

namespace {

void enumMonomials(const std::vector<long>& degs, long remaining, std::size_t j, Mono& cur,
                   std::vector<Mono>& out) {
  if (j + 1 == degs.size()) {
    if (remaining % degs[j] == 0) {
      long e = remaining / degs[j];
      COXMIN_CHECK(e <= 0xFFFF, "monomial exponent overflow");
      cur[j] = static_cast<std::uint16_t>(e);
      out.push_back(cur);
      cur[j] = 0;
    }
    return;
  }
  for (long e = 0; e * degs[j] <= remaining; ++e) {
    cur[j] = static_cast<std::uint16_t>(e);
    enumMonomials(degs, remaining - e * degs[j], j + 1, cur, out);
  }
  cur[j] = 0;
}

// Smallest-degree nonzero element of the kernel of C[X] -> targets, given
// every target homogeneous; valid only when that kernel is principal, in
// which case the minimal-degree stratum is one-dimensional.
Poly principalKernelGenerator(const std::vector<Poly>& targets, const RingPtr& xring) {
  const RingPtr& src = targets.front().ring();
  const std::size_t k = targets.size();
  std::vector<long> degs(k);
  for (std::size_t j = 0; j < k; ++j) degs[j] = targets[j].degree();

  // Power tables grow on demand.
  std::vector<std::vector<Poly>> powers(k);
  for (std::size_t j = 0; j < k; ++j) powers[j].push_back(Poly::constant(src, CycNum(1)));
  auto powerOf = [&](std::size_t j, unsigned e) -> const Poly& {
    while (powers[j].size() <= e) powers[j].push_back(powers[j].back() * targets[j]);
    return powers[j][e];
  };

  long maxD = 0;
  for (long d : degs) maxD += d;
  maxD *= 64;  // generous ceiling; the generator degree is far below this
  for (long D = 1; D <= maxD; ++D) {
    std::vector<Mono> monos;
    Mono cur(k, 0);
    enumMonomials(degs, D, 0, cur, monos);
    if (monos.size() < 2) continue;

    std::map<Mono, std::size_t> colOf;
    std::vector<std::vector<CycNum>> rows;  // transposed later: row per x-monomial
    std::vector<Poly> values(monos.size());
    for (std::size_t a = 0; a < monos.size(); ++a) {
      Poly v = Poly::constant(src, CycNum(1));
      for (std::size_t j = 0; j < k; ++j)
        if (monos[a][j]) v = v * powerOf(j, monos[a][j]);
      values[a] = std::move(v);
      for (const auto& term : values[a].terms())
        if (!colOf.count(term.m)) colOf.emplace(term.m, colOf.size());
    }
    std::vector<std::vector<CycNum>> m(colOf.size(), std::vector<CycNum>(monos.size(), CycNum(0)));
    for (std::size_t a = 0; a < monos.size(); ++a)
      for (const auto& term : values[a].terms()) m[colOf[term.m]][a] = term.c;

    auto ker = kernelBasis(std::move(m), monos.size());
    if (ker.empty()) continue;
    COXMIN_CHECK(ker.size() == 1, "principal kernel stratum not one-dimensional");
    std::vector<Term> terms;
    for (std::size_t a = 0; a < monos.size(); ++a)
      if (!ker[0][a].isZero()) terms.push_back({monos[a], ker[0][a]});
    Poly gen = Poly::fromTerms(xring, std::move(terms));
    return gen.primitive().monic();
  }
  throw InternalError("principal kernel generator not found below degree ceiling");
}

}  // namespace

Ideal ringMapKernel(const std::vector<Poly>& targets, const std::vector<std::string>& names,
                    Cache* cache, const GroebnerProgress& progress,
                    const std::vector<Poly>& seeds) {
  COXMIN_CHECK(!targets.empty() && targets.size() == names.size(),
               "ringMapKernel: targets and names must match");
  const RingPtr& src = targets.front().ring();
  for (const Poly& t : targets)
    COXMIN_CHECK(t.ring()->sameAs(*src), "ringMapKernel: mixed target rings");
  for (const std::string& n : names)
    COXMIN_CHECK(src->varIndex(n) < 0, "ringMapKernel: name collides with source variable " + n);
  RingPtr xring = Ring::grevlexRing(names, src->conductor);

  bool allHom = true;
  std::vector<long> ones(src->nvars(), 1);
  for (const Poly& t : targets)
    if (t.isZero() || t.isConstant() || !t.isHomogeneous(ones)) {
      allHom = false;
      break;
    }
  if (allHom) {
    unsigned rank = jacobianRank(targets);
    if (rank == targets.size()) return Ideal{xring, {}};
    if (rank + 1 == targets.size())
      return idealFromReducedBasis(xring, {principalKernelGenerator(targets, xring)});
  }

  // General case: eliminate the source variables from the graph ideal.
  std::vector<std::string> evars = src->vars;
  for (const std::string& n : names) evars.push_back(n);
  const auto total = static_cast<unsigned>(evars.size());
  RingPtr E = Ring::make(std::move(evars), MonomialOrder::elimination(src->nvars(), total),
                         src->conductor);
  std::vector<Poly> gens;
  gens.reserve(targets.size() + seeds.size());
  for (std::size_t j = 0; j < targets.size(); ++j)
    gens.push_back(Poly::variable(E, src->nvars() + static_cast<unsigned>(j)) -
                   targets[j].mappedTo(E));
  for (const Poly& s : seeds)
    if (!s.isZero()) gens.push_back(s.mappedTo(E));

  // Large homogeneous eliminations: modular run with exact certification.
  constexpr unsigned kModularVarThreshold = 16;
  if (allHom && total >= kModularVarThreshold) {
    std::string key;
    if (cache && cache->enabled()) {
      key = idealKey(E, gens) + "|modkernel";
      if (auto payload = cache->get(key)) {
        std::vector<Poly> basis;
        std::istringstream in(*payload);
        std::string line;
        while (std::getline(in, line))
          if (!line.empty()) basis.push_back(parsePoly(line, xring));
        return idealFromReducedBasis(xring, std::move(basis));
      }
    }
    if (auto modBasis = modularKernelBasis(targets, xring, progress)) {
      if (cache && cache->enabled()) {
        std::string payload;
        for (const Poly& p : *modBasis) {
          payload += p.str();
          payload += '\n';
        }
        cache->put(key, payload);
      }
      return idealFromReducedBasis(xring, std::move(*modBasis));
    }
  }

  std::vector<Poly> gb = groebnerBasis(E, gens, cache, progress);

  std::vector<Poly> downBasis;
  for (const Poly& p : gb) {
    const Mono& lm = p.leadingMono();
    bool free = true;
    for (unsigned v = 0; v < src->nvars(); ++v)
      if (lm[v]) {
        free = false;
        break;
      }
    if (free) downBasis.push_back(p.mappedTo(xring));
  }
  return idealFromReducedBasis(xring, std::move(downBasis));
}

std::vector<Poly> homogenized(const std::vector<Poly>& gens, const std::vector<long>& w,
                              unsigned auxVar, bool toMin) {
  std::vector<Poly> out;
  out.reserve(gens.size());
  for (const Poly& g : gens) {
    if (g.isZero()) continue;
    COXMIN_CHECK(w.size() == g.ring()->nvars() && auxVar < w.size() && w[auxVar] == 0,
                 "homogenized: bad weights");
    auto range = g.wdegRange(w);
    std::vector<Term> terms;
    terms.reserve(g.terms().size());
    for (const auto& term : g.terms()) {
      long wd = mono::wdeg(term.m, w);
      long e = toMin ? wd - range->first : range->second - wd;
      Term t = term;
      long ne = static_cast<long>(t.m[auxVar]) + e;
      COXMIN_CHECK(ne >= 0 && ne <= 0xFFFF, "homogenized: exponent overflow");
      t.m[auxVar] = static_cast<std::uint16_t>(ne);
      terms.push_back(std::move(t));
    }
    out.push_back(Poly::fromTerms(g.ring(), std::move(terms)));
  }
  return out;
}

Ideal charHomogeneousPart(const Ideal& I, const std::vector<unsigned>& a, unsigned r,
                          Cache* cache, const GroebnerProgress& progress) {
  COXMIN_CHECK(r >= 1 && a.size() == I.ring->nvars(), "charHomogeneousPart: bad weights");
  if (I.isZero() || r == 1) return I;
  const std::string sname = freshVarName(I.ring, "s");
  RingPtr S = ringAppendVar(I.ring, sname);
  const unsigned sVar = S->nvars() - 1;

  std::vector<long> w(S->nvars(), 0);
  for (unsigned v = 0; v < I.ring->nvars(); ++v) w[v] = static_cast<long>(a[v] % r);
  std::vector<Poly> up;
  up.reserve(I.basis.size());
  for (const Poly& g : I.basis) up.push_back(g.mappedTo(S));
  up = homogenized(up, w, sVar, /*toMin=*/false);

  Poly s = Poly::variable(S, sVar);
  Ideal sat = saturateByPoly(makeIdeal(S, up, cache, progress), s, cache, progress);
  std::vector<Poly> plus = sat.basis;
  plus.push_back(s.pow(r) - Poly::constant(S, CycNum(1)));
  Ideal withUnit = makeIdeal(S, plus, cache, progress);
  Ideal down = eliminateVars(withUnit, {sVar}, cache, progress);

  std::vector<Poly> basis;
  basis.reserve(down.basis.size());
  for (const Poly& p : down.basis) basis.push_back(p.mappedTo(I.ring));
  return idealFromReducedBasis(I.ring, std::move(basis));
}

}  // namespace coxmin
