#include "coxmin/groebner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coxmin/common.hpp"
#include "coxmin/expr.hpp"

namespace coxmin {

namespace {

struct Entry {
  Poly p;  // primitive form, nonzero
  Mono lm;
  CycNum lcInv;
  long sugar;
};

// work - c * x^shift * g, both term lists sorted descending; result sorted.
std::vector<Term> subtractScaled(const std::vector<Term>& work, const std::vector<Term>& g,
                                 const Mono& shift, const CycNum& c, const MonomialOrder& ord) {
  std::vector<Mono> gm(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) gm[j] = mono::mul(g[j].m, shift);
  std::vector<Term> out;
  out.reserve(work.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < work.size() && j < g.size()) {
    int cmp = ord.compare(work[i].m, gm[j]);
    if (cmp > 0) {
      out.push_back(work[i++]);
    } else if (cmp < 0) {
      CycNum nc = g[j].c * c;
      if (!nc.isZero()) out.push_back({std::move(gm[j]), CycNum(-1) * nc});
      ++j;
    } else {
      CycNum nc = work[i].c - g[j].c * c;
      if (!nc.isZero()) out.push_back({work[i].m, std::move(nc)});
      ++i;
      ++j;
    }
  }
  for (; i < work.size(); ++i) out.push_back(work[i]);
  for (; j < g.size(); ++j) {
    CycNum nc = g[j].c * c;
    if (!nc.isZero()) out.push_back({std::move(gm[j]), CycNum(-1) * nc});
  }
  return out;
}

// Full (top and tail) division remainder; exact, no rescaling. Tracks sugar.
Poly reduceFull(const Poly& f, long& sugar, const std::vector<Entry>& basis,
                const MonomialOrder& ord) {
  std::vector<Term> rem;
  std::vector<Term> work = f.terms();
  while (!work.empty()) {
    const Entry* red = nullptr;
    for (const auto& e : basis) {
      if (mono::divides(e.lm, work.front().m)) {
        red = &e;
        break;
      }
    }
    if (!red) {
      rem.push_back(std::move(work.front()));
      work.erase(work.begin());
      continue;
    }
    Mono shift = mono::div(work.front().m, red->lm);
    CycNum c = work.front().c * red->lcInv;
    sugar = std::max(sugar, red->sugar + mono::deg(shift));
    work = subtractScaled(work, red->p.terms(), shift, c, ord);
  }
  return Poly::fromTerms(f.ring(), std::move(rem));
}

struct Pair {
  unsigned i, j;
  Mono l;  // lcm of the two leading monomials
  long sugar;
  long ldeg;
};

struct PairLess {
  const MonomialOrder* ord;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.ldeg != b.ldeg) return a.ldeg < b.ldeg;
    int cmp = ord->compare(a.l, b.l);
    if (cmp != 0) return cmp < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

std::vector<Poly> buchberger(const RingPtr& ring, std::vector<Poly> input,
                             const GroebnerProgress& progress) {
  const MonomialOrder& ord = ring->order;
  std::sort(input.begin(), input.end(),
            [&](const Poly& a, const Poly& b) { return ord.less(a.leadingMono(), b.leadingMono()); });

  std::vector<Entry> B;
  std::set<Pair, PairLess> pairs(PairLess{&ord});

  auto addElement = [&](Poly h, long sugar) {
    const unsigned t = static_cast<unsigned>(B.size());
    Mono lmT = h.leadingMono();

    // Chain criterion against surviving old pairs.
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (mono::divides(lmT, it->l) && mono::lcm(B[it->i].lm, lmT) != it->l &&
          mono::lcm(B[it->j].lm, lmT) != it->l) {
        it = pairs.erase(it);
      } else {
        ++it;
      }
    }

    struct Cand {
      unsigned i;
      Mono l;
      bool coprime;
    };
    std::vector<Cand> cands;
    cands.reserve(t);
    for (unsigned i = 0; i < t; ++i)
      cands.push_back({i, mono::lcm(B[i].lm, lmT), mono::coprime(B[i].lm, lmT)});

    // Drop candidates whose lcm is a proper multiple of another candidate's lcm.
    std::vector<bool> dead(cands.size(), false);
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (dead[a]) continue;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || cands[a].l == cands[b].l) continue;
        if (mono::divides(cands[b].l, cands[a].l)) {
          dead[a] = true;
          break;
        }
      }
    }

    // Within each class of equal lcms keep one pair, or none if any member
    // has coprime leading monomials.
    std::vector<std::size_t> live;
    for (std::size_t a = 0; a < cands.size(); ++a)
      if (!dead[a]) live.push_back(a);
    std::sort(live.begin(), live.end(), [&](std::size_t a, std::size_t b) {
      int cmp = ord.compare(cands[a].l, cands[b].l);
      if (cmp != 0) return cmp < 0;
      return cands[a].i < cands[b].i;
    });
    std::size_t a = 0;
    while (a < live.size()) {
      std::size_t b = a;
      bool anyCoprime = false;
      while (b < live.size() && cands[live[b]].l == cands[live[a]].l) {
        anyCoprime = anyCoprime || cands[live[b]].coprime;
        ++b;
      }
      if (!anyCoprime) {
        const Cand& c = cands[live[a]];
        long sug = std::max(B[c.i].sugar + mono::deg(mono::div(c.l, B[c.i].lm)),
                            sugar + mono::deg(mono::div(c.l, lmT)));
        pairs.insert({c.i, t, c.l, sug, mono::deg(c.l)});
      }
      a = b;
    }

    CycNum lcInv = h.leadingCoeff().inverse();
    B.push_back({std::move(h), std::move(lmT), std::move(lcInv), sugar});
  };

  for (Poly& g : input) {
    long sugar = g.degree();
    Poly r = reduceFull(g, sugar, B, ord);
    if (!r.isZero()) addElement(r.primitive(), sugar);
  }

  std::size_t processed = 0;
  while (!pairs.empty()) {
    Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());
    const Entry& f = B[pr.i];
    const Entry& g = B[pr.j];
    Mono sf = mono::div(pr.l, f.lm);
    Mono sg = mono::div(pr.l, g.lm);
    Poly s = f.p.mulTerm(sf, f.lcInv) - g.p.mulTerm(sg, g.lcInv);
    long sugar = std::max(f.sugar + mono::deg(sf), g.sugar + mono::deg(sg));
    Poly r = reduceFull(s, sugar, B, ord);
    if (!r.isZero()) addElement(r.primitive(), sugar);
    if (progress && (++processed & 0xFF) == 0) progress(pairs.size(), B.size(), pr.sugar);
  }

  // Minimal basis: ascending leading monomials, drop anything an earlier one divides.
  std::vector<const Entry*> order(B.size());
  for (std::size_t k = 0; k < B.size(); ++k) order[k] = &B[k];
  std::sort(order.begin(), order.end(),
            [&](const Entry* x, const Entry* y) { return ord.less(x->lm, y->lm); });
  std::vector<Poly> kept;
  std::vector<Mono> keptLm;
  for (const Entry* e : order) {
    bool covered = false;
    for (const Mono& m : keptLm)
      if (mono::divides(m, e->lm)) {
        covered = true;
        break;
      }
    if (!covered) {
      kept.push_back(e->p);
      keptLm.push_back(e->lm);
    }
  }

  // Tail-reduce each element against the others, then normalize.
  for (std::size_t k = 0; k < kept.size(); ++k) {
    std::vector<Entry> others;
    others.reserve(kept.size() - 1);
    for (std::size_t m = 0; m < kept.size(); ++m) {
      if (m == k) continue;
      others.push_back({kept[m], kept[m].leadingMono(), kept[m].leadingCoeff().inverse(), 0});
    }
    long sugar = 0;
    kept[k] = reduceFull(kept[k], sugar, others, ord).primitive();
  }

  std::vector<Poly> out;
  out.reserve(kept.size());
  for (Poly& p : kept) out.push_back(p.monic());
  std::sort(out.begin(), out.end(),
            [&](const Poly& x, const Poly& y) { return !ord.less(x.leadingMono(), y.leadingMono()); });
  return out;
}

}  // namespace

std::string idealKey(const RingPtr& ring, const std::vector<Poly>& gens) {
  std::vector<std::string> parts;
  parts.reserve(gens.size());
  for (const Poly& g : gens) {
    if (g.isZero()) continue;
    COXMIN_CHECK(g.ring()->sameAs(*ring), "generator ring mismatch in idealKey");
    parts.push_back(g.primitive().str());
  }
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string key = "gb1|" + ring->key() + "|";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) key += ';';
    key += parts[i];
  }
  return key;
}

std::vector<Poly> groebnerBasis(const RingPtr& ring, const std::vector<Poly>& gens,
                                Cache* cache, const GroebnerProgress& progress) {
  std::vector<Poly> input;
  for (const Poly& g : gens) {
    if (g.isZero()) continue;
    COXMIN_CHECK(g.ring()->sameAs(*ring), "generator ring mismatch in groebnerBasis");
    if (g.isConstant()) return {Poly::constant(ring, CycNum(1))};
    input.push_back(g.primitive());
  }
  if (input.empty()) return {};
  if (input.size() == 1) return {input.front().monic()};

  std::string key;
  if (cache && cache->enabled()) {
    key = idealKey(ring, input);
    if (auto payload = cache->get(key)) {
      std::vector<Poly> out;
      std::istringstream in(*payload);
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) out.push_back(parsePoly(line, ring));
      return out;
    }
  }

  std::vector<Poly> out = buchberger(ring, std::move(input), progress);

  if (cache && cache->enabled()) {
    std::string payload;
    for (const Poly& p : out) {
      payload += p.str();
      payload += '\n';
    }
    cache->put(key, payload);
  }
  return out;
}

Poly normalForm(const Poly& f, const std::vector<Poly>& basis) {
  if (f.isZero()) return f;
  std::vector<Entry> entries;
  entries.reserve(basis.size());
  for (const Poly& b : basis) {
    if (b.isZero()) continue;
    COXMIN_CHECK(b.ring()->sameAs(*f.ring()), "basis ring mismatch in normalForm");
    entries.push_back({b, b.leadingMono(), b.leadingCoeff().inverse(), 0});
  }
  long sugar = 0;
  return reduceFull(f, sugar, entries, f.ring()->order);
}

bool inIdeal(const Poly& f, const std::vector<Poly>& groebner) {
  return normalForm(f, groebner).isZero();
}

}  // namespace coxmin
