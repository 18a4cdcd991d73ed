#include "coxmin/modular.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "coxmin/common.hpp"
#include "coxmin/cyclotomic.hpp"

namespace coxmin {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Signals that the current prime corrupts the run: it divides a coefficient
// denominator, kills an input term, or makes a leading coefficient a zero
// divisor in F_p[z]/Phi. The caller discards the prime and picks another.
struct BadPrime {};

// ---------------------------------------------------------------- mod p ---

u64 addm(u64 a, u64 b, u64 p) {
  u64 s = a + b;  // p < 2^62, no overflow
  return s >= p ? s - p : s;
}

u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }  // p prime, a nonzero

// Deterministic Miller-Rabin for 64-bit inputs.
bool isPrime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powm(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulm(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

u64 prevPrime(u64 n) {
  if ((n & 1) == 0) --n;
  while (!isPrime(n)) n -= 2;
  return n;
}

// --------------------------------------------------------- F_p[z]/Phi_N ---

struct FpCtx {
  u64 p = 0;
  unsigned conductor = 1;
  unsigned deg = 1;
  std::vector<u64> phi;  // low coefficients of the monic Phi_N mod p
};

u64 toFp(const Rational& r, u64 p) {
  u64 den = mpz_fdiv_ui(r.denominator().get_mpz_t(), p);
  if (den == 0) throw BadPrime{};
  u64 num = mpz_fdiv_ui(r.numerator().get_mpz_t(), p);
  return mulm(num, invm(den, p), p);
}

FpCtx makeCtx(u64 p, unsigned conductor) {
  const Cyclotomy& cyc = Cyclotomy::get(conductor);
  FpCtx ctx;
  ctx.p = p;
  ctx.conductor = conductor;
  ctx.deg = cyc.degree;
  ctx.phi.resize(cyc.degree);
  for (unsigned i = 0; i < cyc.degree; ++i) ctx.phi[i] = toFp(cyc.phi[i], p);
  return ctx;
}

// Power-basis coordinates, fixed length ctx.deg; all-zero means zero.
using FpC = std::vector<u64>;

bool fpcZero(const FpC& a) {
  for (u64 c : a)
    if (c) return false;
  return true;
}

FpC fpcOne(const FpCtx& ctx) {
  FpC a(ctx.deg, 0);
  a[0] = 1;
  return a;
}

FpC fpcSub(const FpCtx& ctx, const FpC& a, const FpC& b) {
  FpC out(ctx.deg);
  for (unsigned i = 0; i < ctx.deg; ++i) out[i] = subm(a[i], b[i], ctx.p);
  return out;
}

FpC fpcNeg(const FpCtx& ctx, const FpC& a) {
  FpC out(ctx.deg);
  for (unsigned i = 0; i < ctx.deg; ++i) out[i] = a[i] ? ctx.p - a[i] : 0;
  return out;
}

FpC fpcMul(const FpCtx& ctx, const FpC& a, const FpC& b) {
  const unsigned d = ctx.deg;
  const u64 p = ctx.p;
  std::vector<u64> tmp(2 * d - 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < d; ++j)
      if (b[j]) tmp[i + j] = addm(tmp[i + j], mulm(a[i], b[j], p), p);
  }
  for (long i = static_cast<long>(2 * d) - 2; i >= static_cast<long>(d); --i) {
    u64 c = tmp[i];
    if (!c) continue;
    tmp[i] = 0;
    for (unsigned j = 0; j < d; ++j)
      if (ctx.phi[j]) tmp[i - d + j] = subm(tmp[i - d + j], mulm(c, ctx.phi[j], p), p);
  }
  tmp.resize(d);
  return tmp;
}

// Inverse via the extended Euclidean algorithm against Phi_N; nullopt when
// the element is a zero divisor (Phi_N need not stay irreducible mod p).
std::optional<FpC> fpcInv(const FpCtx& ctx, const FpC& a) {
  const u64 p = ctx.p;
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  std::vector<u64> r0 = ctx.phi;
  r0.push_back(1);
  std::vector<u64> r1 = a;
  trim(r1);
  if (r1.empty()) return std::nullopt;
  std::vector<u64> t0, t1{1};
  while (!r1.empty()) {
    u64 inv = invm(r1.back(), p);
    std::vector<u64> rem = r0;
    std::vector<u64> q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
    while (rem.size() >= r1.size()) {
      std::size_t sh = rem.size() - r1.size();
      u64 c = mulm(rem.back(), inv, p);
      q[sh] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[sh + j] = subm(rem[sh + j], mulm(c, r1[j], p), p);
      trim(rem);
    }
    std::vector<u64> t2 = t0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!q[i]) continue;
      if (t2.size() < i + t1.size()) t2.resize(i + t1.size(), 0);
      for (std::size_t j = 0; j < t1.size(); ++j) t2[i + j] = subm(t2[i + j], mulm(q[i], t1[j], p), p);
    }
    trim(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) return std::nullopt;
  u64 s = invm(r0[0], p);
  FpC out(ctx.deg, 0);
  COXMIN_CHECK(t0.size() <= ctx.deg, "Bezout cofactor exceeds the residue degree");
  for (std::size_t i = 0; i < t0.size(); ++i) out[i] = mulm(t0[i], s, p);
  return out;
}

FpC fpcFromCyc(const FpCtx& ctx, const CycNum& c) {
  COXMIN_CHECK(ctx.conductor % c.conductor() == 0, "coefficient conductor outside the ring");
  const CycNum e = c.embedded(ctx.conductor);
  FpC out(ctx.deg, 0);
  const auto& co = e.coeffs();
  for (std::size_t i = 0; i < co.size(); ++i) out[i] = toFp(co[i], ctx.p);
  return out;
}

// ------------------------------------------------- polynomials over F_p ---

struct TermP {
  Mono m;
  FpC c;
};

// Terms sorted strictly descending in the ambient monomial order.
using PolyP = std::vector<TermP>;

u64 maskOf(const Mono& m) {
  u64 b = 0;
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v]) b |= u64(1) << (v & 63);
  return b;
}

// Divisor mask must be a subset of the term mask (necessary condition).
bool maskCovers(u64 divisor, u64 term) { return (divisor & ~term) == 0; }

struct EntryP {
  PolyP p;  // monic
  Mono lm;
  long deg;
  u64 mask;
  long sugar;
};

// work[from..] - c * x^shift * g, both sorted descending; result sorted.
PolyP subtractScaledP(const PolyP& work, std::size_t from, const PolyP& g, const Mono& shift,
                      const FpC& c, const MonomialOrder& ord, const FpCtx& ctx) {
  std::vector<Mono> gm(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) gm[j] = mono::mul(g[j].m, shift);
  PolyP out;
  out.reserve(work.size() - from + g.size());
  std::size_t i = from, j = 0;
  while (i < work.size() && j < g.size()) {
    int cmp = ord.compare(work[i].m, gm[j]);
    if (cmp > 0) {
      out.push_back(work[i++]);
    } else if (cmp < 0) {
      FpC nc = fpcMul(ctx, g[j].c, c);
      if (!fpcZero(nc)) out.push_back({std::move(gm[j]), fpcNeg(ctx, nc)});
      ++j;
    } else {
      FpC nc = fpcSub(ctx, work[i].c, fpcMul(ctx, g[j].c, c));
      if (!fpcZero(nc)) out.push_back({work[i].m, std::move(nc)});
      ++i;
      ++j;
    }
  }
  for (; i < work.size(); ++i) out.push_back(work[i]);
  for (; j < g.size(); ++j) {
    FpC nc = fpcMul(ctx, g[j].c, c);
    if (!fpcZero(nc)) out.push_back({std::move(gm[j]), fpcNeg(ctx, nc)});
  }
  return out;
}

const EntryP* findReducer(const Mono& m, const std::vector<EntryP>& basis, std::size_t skip) {
  const long mdeg = mono::deg(m);
  const u64 mmask = maskOf(m);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i == skip) continue;
    const EntryP& e = basis[i];
    if (e.deg <= mdeg && maskCovers(e.mask, mmask) && mono::divides(e.lm, m)) return &e;
  }
  return nullptr;
}

// Top-reduction only: stop at the first irreducible leading term.
PolyP reduceTopP(PolyP f, long& sugar, const std::vector<EntryP>& basis, const MonomialOrder& ord,
                 const FpCtx& ctx) {
  while (!f.empty()) {
    const EntryP* red = findReducer(f.front().m, basis, static_cast<std::size_t>(-1));
    if (!red) return f;
    Mono shift = mono::div(f.front().m, red->lm);
    sugar = std::max(sugar, red->sugar + mono::deg(shift));
    f = subtractScaledP(f, 0, red->p, shift, f.front().c, ord, ctx);
  }
  return f;
}

// Full (top and tail) remainder, cursor-based so irreducible heads are O(1).
PolyP reduceFullP(PolyP f, long& sugar, const std::vector<EntryP>& basis, const MonomialOrder& ord,
                  const FpCtx& ctx, std::size_t skip = static_cast<std::size_t>(-1)) {
  PolyP rem;
  std::size_t head = 0;
  while (head < f.size()) {
    const EntryP* red = findReducer(f[head].m, basis, skip);
    if (!red) {
      rem.push_back(std::move(f[head]));
      ++head;
      continue;
    }
    Mono shift = mono::div(f[head].m, red->lm);
    sugar = std::max(sugar, red->sugar + mono::deg(shift));
    f = subtractScaledP(f, head, red->p, shift, f[head].c, ord, ctx);
    head = 0;
  }
  return rem;
}

void makeMonic(PolyP& f, const FpCtx& ctx) {
  auto inv = fpcInv(ctx, f.front().c);
  if (!inv) throw BadPrime{};
  f.front().c = fpcOne(ctx);
  for (std::size_t i = 1; i < f.size(); ++i) f[i].c = fpcMul(ctx, f[i].c, *inv);
}

long polyDegP(const PolyP& f) {
  long d = -1;
  for (const auto& t : f) d = std::max(d, mono::deg(t.m));
  return d;
}

struct PairP {
  unsigned i, j;
  Mono l;
  long sugar;
  long ldeg;
};

struct PairLessP {
  const MonomialOrder* ord;
  bool operator()(const PairP& a, const PairP& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.ldeg != b.ldeg) return a.ldeg < b.ldeg;
    int cmp = ord->compare(a.l, b.l);
    if (cmp != 0) return cmp < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

// Buchberger over F_p[z]/Phi with the sugar strategy and the chain/coprime
// pair filters; top-reduction inside the loop, interreduction at the end.
// Returns the reduced monic basis, descending leading monomials.
std::vector<PolyP> buchbergerP(const RingPtr& ring, std::vector<PolyP> input, const FpCtx& ctx,
                               const GroebnerProgress& progress) {
  const MonomialOrder& ord = ring->order;
  std::sort(input.begin(), input.end(),
            [&](const PolyP& a, const PolyP& b) { return ord.less(a.front().m, b.front().m); });

  std::vector<EntryP> B;
  std::set<PairP, PairLessP> pairs(PairLessP{&ord});
  bool unit = false;

  auto addElement = [&](PolyP h, long sugar) {
    const unsigned t = static_cast<unsigned>(B.size());
    Mono lmT = h.front().m;
    if (mono::deg(lmT) == 0) {
      unit = true;
      return;
    }

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

    long deg = mono::deg(lmT);
    u64 mask = maskOf(lmT);
    B.push_back({std::move(h), std::move(lmT), deg, mask, sugar});
  };

  for (PolyP& g : input) {
    long sugar = polyDegP(g);
    PolyP r = reduceFullP(std::move(g), sugar, B, ord, ctx);
    if (!r.empty()) {
      makeMonic(r, ctx);
      addElement(std::move(r), sugar);
    }
    if (unit) break;
  }

  std::size_t processed = 0;
  while (!unit && !pairs.empty()) {
    PairP pr = *pairs.begin();
    pairs.erase(pairs.begin());
    const EntryP& f = B[pr.i];
    const EntryP& g = B[pr.j];
    Mono sf = mono::div(pr.l, f.lm);
    Mono sg = mono::div(pr.l, g.lm);
    PolyP shifted;
    shifted.reserve(f.p.size());
    for (const auto& t : f.p) shifted.push_back({mono::mul(t.m, sf), t.c});
    PolyP s = subtractScaledP(shifted, 0, g.p, sg, fpcOne(ctx), ord, ctx);
    long sugar = std::max(f.sugar + mono::deg(sf), g.sugar + mono::deg(sg));
    PolyP r = reduceTopP(std::move(s), sugar, B, ord, ctx);
    if (!r.empty()) {
      makeMonic(r, ctx);
      addElement(std::move(r), sugar);
    }
    if (progress && (++processed & 0xFF) == 0) progress(pairs.size(), B.size(), pr.sugar);
  }

  if (unit) {
    PolyP one{{Mono(ring->nvars(), 0), fpcOne(ctx)}};
    return {std::move(one)};
  }

  // Minimal basis: drop every element whose leading monomial another divides.
  std::vector<std::size_t> order(B.size());
  for (std::size_t k = 0; k < B.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return ord.less(B[x].lm, B[y].lm); });
  std::vector<EntryP> kept;
  for (std::size_t k : order) {
    bool covered = false;
    for (const EntryP& e : kept)
      if (mono::divides(e.lm, B[k].lm)) {
        covered = true;
        break;
      }
    if (!covered) kept.push_back(std::move(B[k]));
  }

  // Tail-reduce each element against the others; heads are already minimal.
  for (std::size_t k = 0; k < kept.size(); ++k) {
    long sugar = 0;
    kept[k].p = reduceFullP(std::move(kept[k].p), sugar, kept, ord, ctx, k);
  }

  std::sort(kept.begin(), kept.end(),
            [&](const EntryP& x, const EntryP& y) { return !ord.less(x.lm, y.lm); });
  std::vector<PolyP> out;
  out.reserve(kept.size());
  for (EntryP& e : kept) out.push_back(std::move(e.p));
  return out;
}

// ------------------------------------------------ lifting and rebuilding ---

// Rational reconstruction: the unique num/den with |num|, den <= sqrt((m-1)/2)
// congruent to a mod m, if one exists; verified before returning.
std::optional<Rational> ratRec(mpz_class a, const mpz_class& m) {
  a %= m;
  if (a < 0) a += m;
  if (a == 0) return Rational(0);
  mpz_class bound = sqrt(mpz_class((m - 1) / 2));
  mpz_class r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class num = r1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return std::nullopt;
  if (gcd(num, den) != 1) return std::nullopt;
  if ((num - a * den) % m != 0) return std::nullopt;
  return Rational(num, den);
}

// Accumulated CRT residues aligned with a fixed support shape.
struct Accum {
  std::vector<std::vector<Mono>> shape;                    // [element][term]
  std::vector<std::vector<std::vector<mpz_class>>> res;    // [element][term][coord]
  mpz_class modulus = 1;
  int primes = 0;

  void reset(const std::vector<PolyP>& gb, u64 p) {
    shape.clear();
    res.clear();
    for (const PolyP& g : gb) {
      std::vector<Mono> monos;
      std::vector<std::vector<mpz_class>> coeffs;
      monos.reserve(g.size());
      coeffs.reserve(g.size());
      for (const TermP& t : g) {
        monos.push_back(t.m);
        std::vector<mpz_class> row;
        row.reserve(t.c.size());
        for (u64 c : t.c) row.emplace_back(static_cast<unsigned long>(c));
        coeffs.push_back(std::move(row));
      }
      shape.push_back(std::move(monos));
      res.push_back(std::move(coeffs));
    }
    modulus = static_cast<unsigned long>(p);
    primes = 1;
  }

  bool sameShape(const std::vector<PolyP>& gb) const {
    if (gb.size() != shape.size()) return false;
    for (std::size_t e = 0; e < gb.size(); ++e) {
      if (gb[e].size() != shape[e].size()) return false;
      for (std::size_t t = 0; t < gb[e].size(); ++t)
        if (gb[e][t].m != shape[e][t]) return false;
    }
    return true;
  }

  void fold(const std::vector<PolyP>& gb, u64 p) {
    const u64 minv = invm(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
    for (std::size_t e = 0; e < shape.size(); ++e)
      for (std::size_t t = 0; t < shape[e].size(); ++t)
        for (std::size_t k = 0; k < res[e][t].size(); ++k) {
          mpz_class& x = res[e][t][k];
          u64 cur = mpz_fdiv_ui(x.get_mpz_t(), p);
          u64 delta = mulm(subm(gb[e][t].c[k], cur, p), minv, p);
          if (delta) x += modulus * mpz_class(static_cast<unsigned long>(delta));
        }
    modulus *= static_cast<unsigned long>(p);
    ++primes;
  }

  std::optional<std::vector<Poly>> reconstruct(const RingPtr& E) const {
    std::vector<Poly> out;
    out.reserve(shape.size());
    for (std::size_t e = 0; e < shape.size(); ++e) {
      std::vector<Term> terms;
      terms.reserve(shape[e].size());
      for (std::size_t t = 0; t < shape[e].size(); ++t) {
        std::vector<Rational> coords(res[e][t].size());
        for (std::size_t k = 0; k < res[e][t].size(); ++k) {
          auto r = ratRec(res[e][t][k], modulus);
          if (!r) return std::nullopt;
          coords[k] = *r;
        }
        CycNum c = CycNum::fromCoeffs(E->conductor, std::move(coords));
        if (c.isZero()) return std::nullopt;  // contradicts the modular support
        terms.push_back({shape[e][t], std::move(c)});
      }
      out.push_back(Poly::fromTerms(E, std::move(terms)));
    }
    return out;
  }
};

// --------------------------------------------------- exact certification ---

// Substitution X_j -> targets[j] with a memoized product cache, used to
// verify graph-ideal membership of lifted elements exactly.
class SubEval {
 public:
  SubEval(RingPtr src, const std::vector<Poly>& targets) : src_(std::move(src)), targets_(targets) {}

  bool vanishes(const Poly& g, unsigned srcN) {
    Poly acc = Poly::constant(src_, CycNum(0));
    for (const Term& t : g.terms()) {
      Mono xa(t.m.begin(), t.m.begin() + srcN);
      Mono xb(t.m.begin() + srcN, t.m.end());
      acc += power(xb).mulTerm(xa, t.c);
    }
    return acc.isZero();
  }

 private:
  const Poly& power(const Mono& b) {
    auto it = cache_.find(b);
    if (it != cache_.end()) return it->second;
    std::size_t j = 0;
    while (j < b.size() && b[j] == 0) ++j;
    if (j == b.size())
      return cache_.emplace(b, Poly::constant(src_, CycNum(1))).first->second;
    Mono c = b;
    --c[j];
    Poly val = power(c) * targets_[j];
    return cache_.emplace(b, std::move(val)).first->second;
  }

  RingPtr src_;
  const std::vector<Poly>& targets_;
  std::map<Mono, Poly> cache_;
};

using ZPoly = std::vector<mpz_class>;  // coefficient list; empty means zero

ZPoly zMul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// a + t^shift * b
ZPoly zAddShifted(ZPoly a, const ZPoly& b, long shift) {
  if (!b.empty() && a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] += b[j];
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zOneMinus(long e) {
  ZPoly v(e + 1, 0);
  v[0] = 1;
  v[e] = -1;
  return v;
}

// Sorted minimal generating set of the monomial ideal.
std::vector<Mono> minimalized(std::vector<Mono> gens) {
  std::sort(gens.begin(), gens.end(), [](const Mono& a, const Mono& b) {
    long da = mono::deg(a), db = mono::deg(b);
    if (da != db) return da < db;
    return a < b;
  });
  std::vector<Mono> kept;
  for (const Mono& g : gens) {
    bool covered = false;
    for (const Mono& k : kept)
      if (mono::divides(k, g)) {
        covered = true;
        break;
      }
    if (!covered) kept.push_back(g);
  }
  return kept;
}

std::string hilbKey(const std::vector<Mono>& gens) {
  std::string key;
  key.reserve(gens.size() * (gens.empty() ? 0 : gens[0].size()) * 2);
  for (const Mono& g : gens)
    for (std::uint16_t e : g) {
      key.push_back(static_cast<char>(e & 0xFF));
      key.push_back(static_cast<char>(e >> 8));
    }
  return key;
}

// Bayer-Stillman style recursion; gens must be minimal and sorted.
ZPoly hilbRec(std::vector<Mono> gens, const std::vector<long>& w,
              std::map<std::string, ZPoly>& memo) {
  if (gens.empty()) return {mpz_class(1)};
  for (const Mono& g : gens)
    if (mono::deg(g) == 0) return {};
  std::string key = hilbKey(gens);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const std::size_t n = gens[0].size();
  std::vector<int> occMixed(n, 0);
  bool allPure = true;
  for (const Mono& g : gens) {
    int sup = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (g[v]) ++sup;
    if (sup > 1) {
      allPure = false;
      for (std::size_t v = 0; v < n; ++v)
        if (g[v]) ++occMixed[v];
    }
  }

  ZPoly out;
  if (allPure) {
    out = {mpz_class(1)};
    for (const Mono& g : gens) out = zMul(out, zOneMinus(mono::wdeg(g, w)));
    memo.emplace(std::move(key), out);
    return out;
  }

  // Variable-disjoint components factor the quotient.
  std::vector<std::size_t> root(n);
  for (std::size_t v = 0; v < n; ++v) root[v] = v;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (const Mono& g : gens) {
    std::size_t first = n;
    for (std::size_t v = 0; v < n; ++v)
      if (g[v]) {
        if (first == n)
          first = find(v);
        else
          root[find(v)] = first;
      }
  }
  std::map<std::size_t, std::vector<Mono>> comps;
  for (const Mono& g : gens) {
    std::size_t v = 0;
    while (!g[v]) ++v;
    comps[find(v)].push_back(g);
  }
  if (comps.size() > 1) {
    out = {mpz_class(1)};
    for (auto& [r, part] : comps) out = zMul(out, hilbRec(std::move(part), w, memo));
    memo.emplace(std::move(key), out);
    return out;
  }

  // Pivot on the most shared variable, at the median positive exponent.
  std::size_t v = 0;
  for (std::size_t u = 1; u < n; ++u)
    if (occMixed[u] > occMixed[v]) v = u;
  std::vector<std::uint16_t> exps;
  for (const Mono& g : gens)
    if (g[v]) exps.push_back(g[v]);
  std::sort(exps.begin(), exps.end());
  std::uint16_t e = exps[exps.size() / 2];

  auto split = [&](std::uint16_t cut) {
    std::vector<Mono> plus;
    Mono q(n, 0);
    q[v] = cut;
    plus.push_back(std::move(q));
    for (const Mono& g : gens)
      if (g[v] < cut) plus.push_back(g);
    return minimalized(std::move(plus));
  };
  std::vector<Mono> plus = split(e);
  if (plus.size() == gens.size() && std::is_permutation(plus.begin(), plus.end(), gens.begin())) {
    e = 1;  // the median pivot was itself a generator; fall back to a strict cut
    plus = split(e);
  }
  std::vector<Mono> colon;
  colon.reserve(gens.size());
  for (const Mono& g : gens) {
    Mono h = g;
    h[v] = static_cast<std::uint16_t>(h[v] > e ? h[v] - e : 0);
    colon.push_back(std::move(h));
  }
  out = zAddShifted(hilbRec(std::move(plus), w, memo),
                    hilbRec(minimalized(std::move(colon)), w, memo), long(e) * w[v]);
  memo.emplace(std::move(key), out);
  return out;
}

// Exact certificate for a lifted elimination basis. Returns the kernel part
// (mapped into xring) when the lift is proven to be the reduced basis of the
// graph ideal's elimination; nullopt otherwise.
std::optional<std::vector<Poly>> certifyKernel(const RingPtr& E, const RingPtr& xring,
                                               unsigned srcN, const std::vector<Poly>& targets,
                                               const std::vector<Mono>& graphLT,
                                               const std::vector<long>& w, const ZPoly& targetNum,
                                               const std::vector<Poly>& lifted) {
  const MonomialOrder& ord = E->order;
  const std::size_t n = lifted.size();
  if (n == 0) return std::nullopt;

  std::vector<Mono> lms;
  std::vector<long> degs;
  std::vector<u64> masks;
  lms.reserve(n);
  for (const Poly& f : lifted) {
    if (f.isZero() || !f.leadingCoeff().isOne()) return std::nullopt;
    lms.push_back(f.leadingMono());
    degs.push_back(mono::deg(lms.back()));
    masks.push_back(maskOf(lms.back()));
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (ord.compare(lms[i], lms[i + 1]) <= 0) return std::nullopt;

  // Reduced shape: no leading monomial divides any other monomial anywhere.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& terms = lifted[i].terms();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const Mono& m = terms[t].m;
      const long mdeg = mono::deg(m);
      const u64 mmask = maskOf(m);
      for (std::size_t j = 0; j < n; ++j) {
        if (t == 0 && j == i) continue;
        if (degs[j] <= mdeg && maskCovers(masks[j], mmask) && mono::divides(lms[j], m))
          return std::nullopt;
      }
    }
  }

  // The leading-term ideal must cut the Hilbert series of the source ring:
  // C[x,X]/(graph ideal) is graded-isomorphic to C[x], so over the common
  // denominator the numerator is exactly prod_j (1 - t^(deg targets_j)).
  if (hilbertNumerator(lms, w) != targetNum) return std::nullopt;

  // Membership: a leading monomial divisible by a graph generator's leading
  // monomial has a trivial witness inside the ideal; everything else must
  // vanish under the substitution, exactly.
  SubEval sub(targets.front().ring(), targets);
  for (std::size_t i = 0; i < n; ++i) {
    bool witnessed = false;
    for (const Mono& g : graphLT)
      if (mono::divides(g, lms[i])) {
        witnessed = true;
        break;
      }
    if (!witnessed && !sub.vanishes(lifted[i], srcN)) return std::nullopt;
  }

  std::vector<Poly> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool xOnly = true;
    for (unsigned v = 0; v < srcN && xOnly; ++v)
      if (lms[i][v]) xOnly = false;
    if (!xOnly) continue;
    for (const Term& t : lifted[i].terms())
      for (unsigned v = 0; v < srcN; ++v)
        if (t.m[v]) return std::nullopt;  // elimination order violated
    out.push_back(lifted[i].mappedTo(xring));
  }
  return out;
}

}  // namespace

std::vector<mpz_class> hilbertNumerator(const std::vector<Mono>& gens,
                                        const std::vector<long>& w) {
  for (long wi : w) COXMIN_CHECK(wi > 0, "hilbertNumerator: weights must be positive");
  for (const Mono& g : gens)
    COXMIN_CHECK(g.size() == w.size(), "hilbertNumerator: generator arity mismatch");
  std::map<std::string, ZPoly> memo;
  return hilbRec(minimalized(gens), w, memo);
}

std::optional<std::vector<Poly>> modularKernelBasis(const std::vector<Poly>& targets,
                                                    const RingPtr& xring,
                                                    const GroebnerProgress& progress) {
  if (targets.empty() || targets.size() != xring->nvars()) return std::nullopt;
  const RingPtr& src = targets.front().ring();
  if (xring->conductor != src->conductor) return std::nullopt;
  const std::vector<long> ones(src->nvars(), 1);
  for (const Poly& t : targets) {
    if (!t.ring()->sameAs(*src)) return std::nullopt;
    if (t.isZero() || t.isConstant() || !t.isHomogeneous(ones)) return std::nullopt;
  }

  const unsigned srcN = src->nvars();
  std::vector<std::string> evars = src->vars;
  for (const std::string& nm : xring->vars) evars.push_back(nm);
  const auto total = static_cast<unsigned>(evars.size());
  RingPtr E = Ring::make(std::move(evars), MonomialOrder::elimination(srcN, total),
                         src->conductor);

  std::vector<Poly> gens;
  std::vector<Mono> graphLT;
  std::vector<long> w(total, 1);
  ZPoly targetNum{mpz_class(1)};
  gens.reserve(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    gens.push_back(Poly::variable(E, srcN + static_cast<unsigned>(j)) - targets[j].mappedTo(E));
    graphLT.push_back(gens.back().leadingMono());
    const long dj = targets[j].degree();
    w[srcN + j] = dj;
    targetNum = zMul(targetNum, zOneMinus(dj));
  }

  u64 cursor = (u64(1) << 62) - 1;
  Accum acc;
  constexpr int kPrimeBudget = 24;
  for (int attempt = 0; attempt < kPrimeBudget; ++attempt) {
    const u64 p = prevPrime(cursor);
    cursor = p - 2;
    try {
      FpCtx ctx = makeCtx(p, src->conductor);
      std::vector<PolyP> in;
      in.reserve(gens.size());
      for (const Poly& g : gens) {
        PolyP f;
        f.reserve(g.size());
        for (const Term& t : g.terms()) {
          FpC c = fpcFromCyc(ctx, t.c);
          if (fpcZero(c)) throw BadPrime{};  // the input support must survive
          f.push_back({t.m, std::move(c)});
        }
        in.push_back(std::move(f));
      }
      std::vector<PolyP> gb = buchbergerP(E, std::move(in), ctx, progress);
      if (acc.primes == 0 || !acc.sameShape(gb))
        acc.reset(gb, p);
      else
        acc.fold(gb, p);
      auto lifted = acc.reconstruct(E);
      if (!lifted) continue;
      auto cert = certifyKernel(E, xring, srcN, targets, graphLT, w, targetNum, *lifted);
      if (cert) return cert;
    } catch (const BadPrime&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace coxmin
