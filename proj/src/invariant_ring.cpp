#include "coxmin/invariant_ring.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "coxmin/expr.hpp"

namespace coxmin {

namespace {

unsigned lcmU(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

// --- dense univariate series over CycNum -----------------------------------

using Series = std::vector<CycNum>;  // coefficient of q^k at index k

Series seriesMul(const Series& a, const Series& b, std::size_t keep) {
  Series r(std::min(keep, a.size() + b.size() - 1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].isZero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < r.size(); ++j) {
      if (b[j].isZero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

// det(I - q M) as a polynomial in q, by subset dynamic programming: minors of
// the first popcount(mask) rows against the column set `mask`.
Series charSeries(const CMat& m) {
  const unsigned n = static_cast<unsigned>(m.rows());
  COXMIN_CHECK(n <= 16, "molien: dimension too large for minor expansion");
  std::vector<Series> minor(std::size_t(1) << n);
  minor[0] = {CycNum(1)};
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    const unsigned row = static_cast<unsigned>(__builtin_popcount(mask)) - 1;
    Series acc(1);
    int sign = (row % 2 == 0) ? 1 : -1;  // expand along the last row
    for (unsigned col = 0; col < n; ++col) {
      if (!(mask & (std::uint32_t(1) << col))) continue;
      Series entry{row == col ? CycNum(1) : CycNum(0), -m(row, col)};
      Series part = seriesMul(entry, minor[mask ^ (std::uint32_t(1) << col)], n + 1);
      if (sign < 0)
        for (auto& c : part) c = -c;
      if (acc.size() < part.size()) acc.resize(part.size());
      for (std::size_t k = 0; k < part.size(); ++k) acc[k] += part[k];
      sign = -sign;
    }
    minor[mask] = std::move(acc);
  }
  return minor[(std::size_t(1) << n) - 1];
}

// 1/d mod q^(cap+1); requires d(0) = 1.
Series seriesInverse(const Series& d, unsigned cap) {
  COXMIN_CHECK(!d.empty() && d[0].isOne(), "molien: series with nonunit constant term");
  Series c(cap + 1);
  c[0] = CycNum(1);
  for (unsigned k = 1; k <= cap; ++k) {
    CycNum s;
    for (std::size_t j = 1; j < d.size() && j <= k; ++j) {
      if (d[j].isZero()) continue;
      s += d[j] * c[k - j];
    }
    c[k] = -s;
  }
  return c;
}

// --- monomial bookkeeping ---------------------------------------------------

// All exponent vectors of total degree d, descending in the ring's order.
std::vector<Mono> monomialsOfDegree(const RingPtr& ring, unsigned d) {
  std::vector<Mono> out;
  Mono cur(ring->nvars(), 0);
  const unsigned n = ring->nvars();
  auto rec = [&](auto&& self, unsigned var, unsigned left) -> void {
    if (var + 1 == n) {
      cur[var] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[var] = static_cast<std::uint16_t>(e);
      self(self, var + 1, left - e);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(),
            [&](const Mono& a, const Mono& b) { return ring->order.compare(a, b) > 0; });
  return out;
}

struct MonomialIndex {
  std::vector<Mono> monos;
  std::map<Mono, std::size_t> index;

  explicit MonomialIndex(const RingPtr& ring, unsigned d) : monos(monomialsOfDegree(ring, d)) {
    for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
  }

  std::vector<CycNum> coeffs(const Poly& f) const {
    std::vector<CycNum> v(monos.size());
    for (const auto& t : f.terms()) {
      auto it = index.find(t.m);
      COXMIN_CHECK(it != index.end(), "invariant search: inhomogeneous polynomial");
      v[it->second] = t.c;
    }
    return v;
  }

  Poly poly(const RingPtr& ring, const std::vector<CycNum>& v) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].isZero()) terms.push_back({monos[i], v[i]});
    return Poly::fromTerms(ring, std::move(terms));
  }
};

constexpr std::size_t kNoPivot = static_cast<std::size_t>(-1);

// Row-echelon span with monic rows keyed by pivot position; exact.
struct Echelon {
  std::map<std::size_t, std::vector<CycNum>> rows;

  std::size_t reduce(std::vector<CycNum>& v) const {
    for (const auto& [pivot, row] : rows) {
      if (v[pivot].isZero()) continue;
      const CycNum f = v[pivot];
      for (std::size_t i = pivot; i < v.size(); ++i)
        if (!row[i].isZero()) v[i] -= f * row[i];
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].isZero()) return i;
    return kNoPivot;
  }

  bool insert(std::vector<CycNum> v) {
    const std::size_t pivot = reduce(v);
    if (pivot == kNoPivot) return false;
    const CycNum inv = v[pivot].inverse();
    for (auto& c : v) c *= inv;
    rows.emplace(pivot, std::move(v));
    return true;
  }

  std::size_t dim() const { return rows.size(); }
};

// Coset representatives of Ab(G): one element index per coordinate tuple,
// first in element order, keyed by mixed-radix code.
std::vector<std::size_t> abelianRepresentatives(const MatrixGroup& g) {
  const auto& factors = g.abelianization().factors;
  const long total = g.abelianization().order();
  std::vector<std::size_t> reps(static_cast<std::size_t>(total), static_cast<std::size_t>(-1));
  std::size_t found = 0;
  for (std::size_t i = 0; i < g.order() && found < reps.size(); ++i) {
    const auto coords = g.abCoords(i);
    long code = 0;
    for (std::size_t j = 0; j < factors.size(); ++j) code = code * factors[j] + coords[j];
    if (reps[code] == static_cast<std::size_t>(-1)) {
      reps[code] = i;
      ++found;
    }
  }
  COXMIN_CHECK(found == reps.size(), "abelianization: missing coset representative");
  return reps;
}

std::vector<long> codeToCoords(long code, const std::vector<long>& factors) {
  std::vector<long> coords(factors.size(), 0);
  for (std::size_t j = factors.size(); j-- > 0;) {
    coords[j] = code % factors[j];
    code /= factors[j];
  }
  return coords;
}

// chi(a) for the character with the given residues at Ab-coordinates coords.
CycNum characterAt(const std::vector<long>& factors, const std::vector<long>& residues,
                   const std::vector<long>& coords) {
  CycNum v(1);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    long e = (residues[j] * coords[j]) % factors[j];
    if (e) v *= CycNum::zeta(static_cast<unsigned>(factors[j]), e);
  }
  return v;
}

// Isotypic pieces of an [G,G]-invariant polynomial under the Ab(G)-action,
// in ascending character order, zero pieces dropped.
std::vector<GradedPoly> characterComponents(const MatrixGroup& g,
                                            const std::vector<std::size_t>& abReps,
                                            const Poly& f) {
  const auto& factors = g.abelianization().factors;
  const long total = g.abelianization().order();
  std::vector<Poly> images;
  images.reserve(abReps.size());
  for (std::size_t rep : abReps) images.push_back(applyMatrix(g.element(rep), f));

  std::vector<GradedPoly> out;
  Poly sum(f.ring());
  const Rational scale(1, total);
  for (long chiCode = 0; chiCode < total; ++chiCode) {
    const auto residues = codeToCoords(chiCode, factors);
    Poly comp(f.ring());
    for (long a = 0; a < total; ++a) {
      const auto coords = codeToCoords(a, factors);
      CycNum w = characterAt(factors, residues, coords).inverse() * CycNum(scale);
      comp += images[a].scaled(w);
    }
    if (comp.isZero()) continue;
    sum += comp;
    out.push_back({std::move(comp), AbCharacter{residues}});
  }
  COXMIN_CHECK(sum == f, "character projection: components do not sum back");
  return out;
}

// Greedy generating set of the listed (closed) subgroup, by element index.
std::vector<std::size_t> smallGeneratingSet(const MatrixGroup& g,
                                            const std::vector<std::size_t>& subgroup) {
  std::vector<std::size_t> gens;
  std::size_t reach = 1;
  for (std::size_t h : subgroup) {
    if (h == g.identity() || reach == subgroup.size()) continue;
    std::vector<std::size_t> trial = gens;
    trial.push_back(h);
    const std::size_t grown = g.subgroupClosureSize(trial);
    if (grown > reach) {
      gens = std::move(trial);
      reach = grown;
    }
  }
  COXMIN_CHECK(reach == std::max<std::size_t>(subgroup.size(), 1),
               "smallGeneratingSet: closure does not reach the subgroup");
  return gens;
}

std::string ordinal(std::size_t i) { return "#" + std::to_string(i + 1); }

}  // namespace

bool AbCharacter::isTrivial() const {
  return std::all_of(residues.begin(), residues.end(), [](long r) { return r == 0; });
}

std::string AbCharacter::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(residues[i]);
  }
  return s + ")";
}

Poly applyMatrix(const CMat& m, const Poly& f) {
  const RingPtr& ring = f.ring();
  const unsigned n = ring->nvars();
  COXMIN_CHECK(m.rows() == n && m.cols() == n, "applyMatrix: shape mismatch");
  std::vector<Poly> images;
  images.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    Poly img(ring);
    for (unsigned j = 0; j < n; ++j) {
      const CycNum& c = m(j, i);
      if (c.isZero()) continue;
      img += Poly::variable(ring, j).scaled(c);
    }
    images.push_back(std::move(img));
  }
  return f.substituted(ring, images);
}

unsigned ambientConductor(const MatrixGroup& g, unsigned extra) {
  unsigned n = lcmU(g.conductor(), extra);
  for (std::size_t j : g.juniorRepresentatives()) n = lcmU(n, g.eigenData(j).conductor);
  return n;
}

RingPtr coordinateRing(const MatrixGroup& g, unsigned extra) {
  const unsigned n = g.dimension();
  std::vector<std::string> names;
  if (n <= 4) {
    const char* base[] = {"x", "y", "z", "w"};
    names.assign(base, base + n);
  } else {
    for (unsigned i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  }
  return Ring::grevlexRing(std::move(names), ambientConductor(g, extra));
}

std::vector<long> molienSeries(const MatrixGroup& g, unsigned cap,
                               const std::vector<std::size_t>& subgroup) {
  std::vector<std::size_t> elems = subgroup;
  if (elems.empty()) {
    elems.resize(g.order());
    std::iota(elems.begin(), elems.end(), std::size_t(0));
  }
  Series acc(cap + 1);
  for (std::size_t i : elems) {
    const Series inv = seriesInverse(charSeries(g.element(i)), cap);
    for (unsigned k = 0; k <= cap; ++k) acc[k] += inv[k];
  }
  const Rational scale(1, static_cast<long>(elems.size()));
  std::vector<long> out(cap + 1);
  for (unsigned k = 0; k <= cap; ++k) {
    CycNum c = CycNum(scale) * acc[k];
    COXMIN_CHECK(c.isRational(), "molien: non-rational coefficient");
    const Rational r = c.asRational();
    COXMIN_CHECK(r.isInteger() && r.sign() >= 0, "molien: coefficient not a nonnegative integer");
    out[k] = static_cast<long>(r.numerator().get_si());
  }
  COXMIN_CHECK(out[0] == 1, "molien: constant term must be one");
  return out;
}

InvariantBasis invariantGenerators(const MatrixGroup& g, const InvariantSearchOptions& opt) {
  const RingPtr ring = coordinateRing(g, opt.extraConductor);
  const auto& H = g.commutatorSubgroup();
  const unsigned noether = static_cast<unsigned>(H.size());
  const unsigned cap = opt.degreeCap ? opt.degreeCap : noether;
  const auto molien = molienSeries(g, noether, H);
  const auto abReps = abelianRepresentatives(g);

  struct Slice {
    std::vector<Poly> basis;
    Echelon ech;
  };
  std::vector<Slice> slice(noether + 1);
  slice[0].basis.push_back(Poly::constant(ring, CycNum(1)));
  slice[0].ech.insert({CycNum(1)});

  std::vector<GradedPoly> gens;
  std::vector<unsigned> genDegree;

  for (unsigned d = 1; d <= noether; ++d) {
    const MonomialIndex mi(ring, d);
    Slice& cur = slice[d];

    // Span of products of the generators found so far, degree d in total.
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const unsigned gd = genDegree[gi];
      if (gd > d) continue;
      if (gd == d) {
        if (cur.ech.insert(mi.coeffs(gens[gi].poly))) cur.basis.push_back(gens[gi].poly);
        continue;
      }
      for (const Poly& p : slice[d - gd].basis) {
        Poly prod = gens[gi].poly * p;
        if (cur.ech.insert(mi.coeffs(prod))) cur.basis.push_back(std::move(prod));
      }
    }

    const long target = molien[d];
    if (static_cast<long>(cur.ech.dim()) == target) continue;
    COXMIN_CHECK(static_cast<long>(cur.ech.dim()) < target,
                 "invariant search: subalgebra exceeds the invariant dimension");
    if (d > cap)
      throw CapError("invariant generators incomplete at the degree cap " + std::to_string(cap) +
                     ": a new generator is required in degree " + std::to_string(d) +
                     "; raise --degree-cap to at least " + std::to_string(d));

    // Reynolds images of the degree-d monomials span the invariant piece.
    const Rational avg(1, static_cast<long>(H.size()));
    for (const Mono& m : mi.monos) {
      if (static_cast<long>(cur.ech.dim()) == target) break;
      const Poly mono = Poly::fromTerms(ring, {{m, CycNum(1)}});
      Poly rey(ring);
      for (std::size_t h : H) rey += applyMatrix(g.element(h), mono);
      rey = rey.scaled(CycNum(avg));
      if (rey.isZero()) continue;
      auto v = mi.coeffs(rey);
      if (cur.ech.reduce(v) == kNoPivot) continue;
      const Poly rem = mi.poly(ring, v);
      for (auto& piece : characterComponents(g, abReps, rem)) {
        auto w = mi.coeffs(piece.poly);
        if (!cur.ech.insert(std::move(w))) continue;
        Poly gen = piece.poly.monic();
        cur.basis.push_back(gen);
        gens.push_back({std::move(gen), piece.chi});
        genDegree.push_back(d);
      }
    }
    COXMIN_CHECK(static_cast<long>(cur.ech.dim()) == target,
                 "invariant search: Reynolds images failed to span");
  }

  return {ring, std::move(gens)};
}

InvariantBasis acceptUserGenerators(const MatrixGroup& g, const std::vector<Poly>& polys) {
  if (polys.empty()) throw ValidationError("invariant list is empty");
  const RingPtr ring = polys.front().ring();
  if (ring->nvars() != g.dimension())
    throw ValidationError("invariant ring has " + std::to_string(ring->nvars()) +
                          " variables but the group acts on dimension " +
                          std::to_string(g.dimension()));
  if (ring->conductor % g.conductor() != 0)
    throw ValidationError("invariant ring conductor " + std::to_string(ring->conductor) +
                          " does not contain the group conductor " +
                          std::to_string(g.conductor()));
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (!polys[k].ring()->sameAs(*ring))
      throw ValidationError("invariant " + ordinal(k) + " lives in a different ring");
    if (polys[k].isZero()) throw ValidationError("invariant " + ordinal(k) + " is zero");
    if (polys[k].isConstant())
      throw ValidationError("invariant " + ordinal(k) + " is a constant");
  }

  const auto commGens = smallGeneratingSet(g, g.commutatorSubgroup());
  const auto& factors = g.abelianization().factors;
  std::vector<std::size_t> factorReps(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    bool found = false;
    for (std::size_t i = 0; i < g.order() && !found; ++i) {
      const auto coords = g.abCoords(i);
      bool unit = coords[j] == 1;
      for (std::size_t l = 0; l < factors.size() && unit; ++l)
        if (l != j && coords[l] != 0) unit = false;
      if (unit) {
        factorReps[j] = i;
        found = true;
      }
    }
    COXMIN_CHECK(found, "abelianization: no representative for a factor generator");
  }

  InvariantBasis out{ring, {}};
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const Poly& f = polys[k];
    for (std::size_t h : commGens) {
      if (applyMatrix(g.element(h), f) != f)
        throw ValidationError("invariant " + ordinal(k) +
                              " is not fixed by the commutator subgroup (moved by group element " +
                              std::to_string(h) + ")");
    }
    AbCharacter chi;
    chi.residues.resize(factors.size(), 0);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const Poly image = applyMatrix(g.element(factorReps[j]), f);
      const CycNum lambda = image.leadingCoeff() / f.leadingCoeff();
      if (image != f.scaled(lambda))
        throw ValidationError("invariant " + ordinal(k) +
                              " is not semi-invariant (group element " +
                              std::to_string(factorReps[j]) + " does not act by a scalar)");
      const auto e = lambda.rootOfUnityExponent(static_cast<unsigned>(factors[j]));
      if (!e)
        throw ValidationError("invariant " + ordinal(k) +
                              " scales by a factor that is no root of unity of order dividing " +
                              std::to_string(factors[j]));
      chi.residues[j] = static_cast<long>(*e);
    }
    out.generators.push_back({f, std::move(chi)});
  }
  return out;
}

InvariantBasis acceptUserGenerators(const MatrixGroup& g, const std::vector<GradedPoly>& polys) {
  std::vector<Poly> bare;
  bare.reserve(polys.size());
  for (const auto& gp : polys) bare.push_back(gp.poly);
  InvariantBasis checked = acceptUserGenerators(g, bare);

  const auto& factors = g.abelianization().factors;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const auto& claimed = polys[k].chi.residues;
    if (claimed.size() != factors.size())
      throw ValidationError("invariant " + ordinal(k) + " claims a character with " +
                            std::to_string(claimed.size()) + " components; Ab(G) has " +
                            std::to_string(factors.size()) + " invariant factors");
    const auto& actual = checked.generators[k].chi.residues;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const long want = ((claimed[j] % factors[j]) + factors[j]) % factors[j];
      if (want != actual[j]) {
        // Re-derive the witnessing element for the error message.
        std::size_t witness = g.identity();
        for (std::size_t i = 0; i < g.order(); ++i) {
          const auto coords = g.abCoords(i);
          if (coords[j] == 1) {
            witness = i;
            break;
          }
        }
        throw ValidationError("invariant " + ordinal(k) + " claims character residue " +
                              std::to_string(claimed[j]) + " on factor " + std::to_string(j + 1) +
                              " but group element " + std::to_string(witness) +
                              " acts with residue " + std::to_string(actual[j]));
      }
    }
  }
  return checked;
}

InvariantFile parseInvariantText(const std::string& text) {
  InvariantFile file;
  bool sawConductor = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "conductor") {
      long n = 0;
      if (!(ls >> n) || n < 1) throw ValidationError("invariant file: bad conductor line");
      if (sawConductor) throw ValidationError("invariant file: duplicate conductor line");
      file.conductor = static_cast<unsigned>(n);
      sawConductor = true;
      continue;
    }
    if (head == "vars") {
      if (!file.vars.empty()) throw ValidationError("invariant file: duplicate vars line");
      std::string v;
      while (ls >> v) file.vars.push_back(v);
      if (file.vars.empty()) throw ValidationError("invariant file: empty vars line");
      continue;
    }
    if (file.vars.empty())
      throw ValidationError("invariant file: polynomial before the vars line");
    std::string rest;
    std::getline(ls, rest);
    file.polys.push_back(head + rest);
  }
  if (!sawConductor) throw ValidationError("invariant file: missing conductor line");
  if (file.polys.empty()) throw ValidationError("invariant file: no polynomials");
  return file;
}

InvariantFile loadInvariantFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read invariant file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseInvariantText(buf.str());
}

std::string writeInvariantText(const InvariantBasis& basis) {
  std::ostringstream out;
  out << "conductor " << basis.ring->conductor << "\n";
  out << "vars";
  for (const auto& v : basis.ring->vars) out << " " << v;
  out << "\n";
  for (const auto& gp : basis.generators) out << gp.poly.str() << "\n";
  return out.str();
}

InvariantBasis loadInvariants(const MatrixGroup& g, const std::string& path) {
  const InvariantFile file = loadInvariantFile(path);
  if (file.vars.size() != g.dimension())
    throw ValidationError("invariant file: " + std::to_string(file.vars.size()) +
                          " variables for a representation of dimension " +
                          std::to_string(g.dimension()));
  // "zeta" in the file always means the primitive file.conductor-th root, so
  // parse there first, then embed into a ring large enough for the group.
  const RingPtr fileRing = Ring::grevlexRing(file.vars, file.conductor);
  const RingPtr ring =
      Ring::grevlexRing(file.vars, lcmU(ambientConductor(g), file.conductor));
  std::vector<Poly> polys;
  polys.reserve(file.polys.size());
  for (const auto& text : file.polys)
    polys.push_back(parsePoly(text, fileRing).mappedTo(ring));
  return acceptUserGenerators(g, polys);
}

}  // namespace coxmin
