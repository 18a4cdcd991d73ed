#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coxmin/common.hpp"
#include "coxmin/cox_ring.hpp"
#include "coxmin/expr.hpp"
#include "coxmin/group_file.hpp"
#include "coxmin/invariant_ring.hpp"
#include "coxmin/valuation.hpp"

using namespace coxmin;

namespace {

MatrixGroup fromCatalog(const std::string& tag) { return MatrixGroup(catalogGroup(tag)); }

std::string fixture(const std::string& name) {
  return std::string(COXMIN_FIXTURES_DIR) + "/" + name;
}

bool proportional(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return a.isZero() && b.isZero();
  return a.scaled(b.leadingCoeff()) == b.scaled(a.leadingCoeff());
}

// Invariants added across the history, seed record excluded.
std::size_t additionsIn(const std::vector<StepRecord>& history) {
  std::size_t n = 0;
  for (const StepRecord& r : history)
    if (r.label != "(0)") n += r.added.size();
  return n;
}

// X_j -> invariants[j], evaluated term by term.
Poly imageOf(const RingPtr& ambient, const std::vector<GradedPoly>& gens, const Poly& h) {
  Poly acc = Poly::constant(ambient, CycNum(0));
  for (const Term& t : h.terms()) {
    Poly prod = Poly::constant(ambient, t.c);
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (t.m[j]) prod = prod * gens[j].poly.pow(t.m[j]);
    acc += prod;
  }
  return acc;
}

// Exact vanishing of every relation under X_j -> phi_j prod_i s_i^(nu_i(phi_j))
// and Y_i -> s_i^(-r_i), cleared of denominators by a global s-shift per
// relation: multiply through by prod_i s_i^(r_i * max Y_i-exponent).
void checkRelationsVanish(const CoxPresentation& P) {
  const std::size_t k = P.invariants.size();
  const std::size_t m = P.orders.size();
  std::vector<std::string> names = P.ring->vars;
  for (std::size_t i = 0; i < m; ++i) names.push_back("s" + std::to_string(i + 1));
  RingPtr R = Ring::grevlexRing(names, P.ring->conductor);
  const unsigned base = P.ring->nvars();

  std::vector<Poly> psi;
  psi.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    Mono tm(R->nvars(), 0);
    for (std::size_t i = 0; i < m; ++i)
      tm[base + i] = static_cast<std::uint16_t>(P.nuTable[i][j]);
    psi.push_back(P.invariants[j].poly.mappedTo(R).mulTerm(tm, CycNum(1)));
  }

  for (const Poly& rel : P.relations.basis) {
    std::vector<long> shift(m, 0);
    for (const Term& t : rel.terms())
      for (std::size_t i = 0; i < m; ++i)
        shift[i] = std::max(shift[i], P.orders[i] * static_cast<long>(t.m[k + i]));
    Poly acc = Poly::constant(R, CycNum(0));
    for (const Term& t : rel.terms()) {
      Poly prod = Poly::constant(R, t.c);
      for (std::size_t j = 0; j < k; ++j)
        if (t.m[j]) prod = prod * psi[j].pow(t.m[j]);
      Mono sm(R->nvars(), 0);
      for (std::size_t i = 0; i < m; ++i)
        sm[base + i] =
            static_cast<std::uint16_t>(shift[i] - P.orders[i] * static_cast<long>(t.m[k + i]));
      acc += prod.mulTerm(sm, CycNum(1));
    }
    CAPTURE(rel.str());
    CHECK(acc.isZero());
  }
}

}  // namespace

TEST_CASE("cyclic groups: free Cox ring on x, y and the boundary") {
  for (unsigned m : {1u, 3u, 4u}) {
    CAPTURE(m);
    MatrixGroup g = fromCatalog("ADE A " + std::to_string(m));
    InvariantBasis seed = invariantGenerators(g);
    REQUIRE(seed.generators.size() == 2);
    CoxAlgorithm alg(g, seed);
    REQUIRE(alg.juniorCount() == m);
    CHECK(alg.kernel().isZero());

    const Poly x = Poly::variable(seed.ring, static_cast<unsigned>(seed.ring->varIndex("x")));
    const Poly y = Poly::variable(seed.ring, static_cast<unsigned>(seed.ring->varIndex("y")));
    const std::size_t jx = seed.generators[0].poly == x ? 0 : 1;
    REQUIRE(seed.generators[jx].poly == x);
    REQUIRE(seed.generators[1 - jx].poly == y);

    for (unsigned i = 1; i <= m; ++i) {
      CHECK(alg.minIdealI(i).isZero());
      CHECK(alg.minIdealJ(i).isZero());
    }

    CoxPresentation P = alg.run();
    CHECK(P.generators.size() == m + 2);
    CHECK(P.relations.isZero());
    CHECK(additionsIn(P.history) == 0);

    // nu_k(x) = k r_k / (m+1) and nu_k(y) = r_k - nu_k(x), compared as
    // multisets of rows since the junior ordering is an implementation choice.
    std::multiset<std::vector<long>> got, want;
    for (std::size_t i = 0; i < m; ++i)
      got.insert({P.orders[i], P.nuTable[i][jx], P.nuTable[i][1 - jx]});
    for (long kk = 1; kk <= static_cast<long>(m); ++kk) {
      const long r = static_cast<long>(m + 1) / std::gcd(kk, static_cast<long>(m + 1));
      want.insert({r, kk * r / static_cast<long>(m + 1), r - kk * r / static_cast<long>(m + 1)});
    }
    CHECK(got == want);

    for (std::size_t i = 0; i < m; ++i) {
      const CoxGenerator& b = P.generators[2 + i];
      CHECK(b.boundary);
      std::vector<long> e(m, 0);
      e[i] = -P.orders[i];
      CHECK(b.exponents == e);
    }
    checkRelationsVanish(P);
  }
}

TEST_CASE("trivial group: no juniors, presentation is the ambient ring") {
  MatrixGroup g(parseGroupText("conductor 1\ndimension 2\ngenerator\n1, 0\n0, 1\n", "trivial"));
  REQUIRE(g.order() == 1);
  InvariantBasis seed = invariantGenerators(g);
  REQUIRE(seed.generators.size() == 2);
  CoxAlgorithm alg(g, seed);
  CHECK(alg.juniorCount() == 0);
  CoxPresentation P = alg.run();
  CHECK(P.generators.size() == 2);
  CHECK(P.orders.empty());
  CHECK(P.relations.isZero());
  for (const CoxGenerator& c : P.generators) CHECK_FALSE(c.boundary);
}

TEST_CASE("binary dihedral groups: minimal parts, no additions, one relation") {
  for (unsigned m : {4u, 5u, 6u}) {
    CAPTURE(m);
    MatrixGroup g(loadGroupFile(fixture("D" + std::to_string(m) + ".grp")));
    InvariantBasis seed = loadInvariants(g, fixture("D" + std::to_string(m) + ".inv"));
    REQUIRE(seed.generators.size() == 3);
    CoxAlgorithm alg(g, seed);
    REQUIRE(alg.juniorCount() == m);
    const RingPtr& X = alg.xRing();
    const unsigned n2 = m - 2;
    const long twoN2 = 2 * static_cast<long>(n2);

    // Kernel: X1^2 - X2^2 - 4 (i X3)^(m-2).
    const CycNum c = CycNum(4) * CycNum::zeta(4).pow(n2);
    const Poly X1 = Poly::variable(X, 0);
    const Poly X2 = Poly::variable(X, 1);
    const Poly X3p = Poly::variable(X, 2, n2);
    const Poly kernelGen = X1 * X1 - X2 * X2 - X3p.scaled(c);
    REQUIRE(alg.kernel().basis.size() == 1);
    CHECK(proportional(alg.kernel().basis[0], kernelGen));

    // Classify each junior against the four minimal-part patterns; recover
    // the classical index k and check the full valuation row.
    std::vector<std::size_t> pos(m + 1, 0);  // classical k (1-based) -> junior position
    for (unsigned i = 1; i <= m; ++i) {
      CAPTURE(i);
      const Ideal mI = alg.minIdealI(i);
      const Ideal mJ = alg.minIdealJ(i);
      CHECK(idealContainsIdeal(mJ, mI));
      CHECK(idealEqual(mI, mJ));
      REQUIRE(mI.basis.size() == 1);
      const Poly& gen = mI.basis[0];

      const long r = alg.valuations().data(i - 1).order;
      const long nu1 = alg.nuTable()[i - 1][0];
      const long nu2 = alg.nuTable()[i - 1][1];
      const long nu3 = alg.nuTable()[i - 1][2];
      const CMat el = g.element(alg.valuations().data(i - 1).element);
      if (!el(0, 0).isZero()) {
        const long kk = 2 * nu1 / r;
        REQUIRE(kk >= 1);
        REQUIRE(kk <= static_cast<long>(n2));
        CHECK(r == twoN2 / std::gcd(kk, twoN2));
        CHECK(nu1 == kk * r / 2);
        CHECK(nu2 == kk * r / 2);
        CHECK(nu3 == r);
        if (kk < static_cast<long>(n2))
          CHECK(proportional(gen, X1 * X1 - X2 * X2));
        else
          CHECK(proportional(gen, kernelGen));
        CHECK(pos[kk] == 0);
        pos[kk] = i;
      } else {
        CHECK(r == 4);
        CHECK(nu3 == 2);
        if (proportional(gen, X1 * X1 - X3p.scaled(c))) {
          CHECK(nu1 == static_cast<long>(n2));
          CHECK(nu2 == static_cast<long>(m));
          CHECK(pos[m - 1] == 0);
          pos[m - 1] = i;
        } else {
          CHECK(proportional(gen, X2 * X2 + X3p.scaled(c)));
          CHECK(nu1 == static_cast<long>(m));
          CHECK(nu2 == static_cast<long>(n2));
          CHECK(pos[m] == 0);
          pos[m] = i;
        }
      }
    }
    for (unsigned kk = 1; kk <= m; ++kk) REQUIRE(pos[kk] != 0);

    CoxPresentation P = alg.run();
    CHECK(additionsIn(P.history) == 0);
    CHECK(P.generators.size() == 3 + m);

    // X1^2 Y_m - X2^2 Y_(m-1) - 4 (i X3)^(m-2) prod_(k<=m-3) Y_k^(m-2-k),
    // with classical indices mapped through the classification above.
    REQUIRE(P.relations.basis.size() == 1);
    const RingPtr& XY = P.xyRing;
    auto Y = [&](unsigned kk) { return 2 + pos[kk]; };  // variable index in XY
    Poly expect = Poly::variable(XY, 0, 2) * Poly::variable(XY, Y(m));
    expect -= Poly::variable(XY, 1, 2) * Poly::variable(XY, Y(m - 1));
    Poly tail = Poly::variable(XY, 2, n2).scaled(c);
    for (unsigned kk = 1; kk + 2 < m; ++kk)
      tail = tail * Poly::variable(XY, Y(kk), n2 - kk);
    expect -= tail;
    CHECK(proportional(P.relations.basis[0], expect));
    checkRelationsVanish(P);
  }
}

TEST_CASE("binary tetrahedral group: valuation table and the single relation") {
  MatrixGroup g(loadGroupFile(fixture("E6.grp")));
  InvariantBasis seed = loadInvariants(g, fixture("E6.inv"));
  REQUIRE(seed.generators.size() == 3);
  CoxAlgorithm alg(g, seed);
  REQUIRE(alg.juniorCount() == 6);

  CoxPresentation P = alg.run();
  CHECK(additionsIn(P.history) == 0);
  CHECK(P.generators.size() == 9);

  // Valuation rows (r_i, nu_i(phi1), nu_i(phi2), nu_i(phi3)) as a multiset;
  // each row is distinct, so the matching also pins every junior.
  std::map<std::vector<long>, std::size_t> rows;  // row -> junior position (1-based)
  for (std::size_t i = 0; i < 6; ++i) {
    std::vector<long> row{P.orders[i], P.nuTable[i][0], P.nuTable[i][1], P.nuTable[i][2]};
    CHECK(rows.emplace(row, i + 1).second);
  }
  const std::vector<std::vector<long>> expectRows = {
      {2, 4, 4, 6}, {3, 5, 4, 6}, {3, 4, 5, 6},
      {4, 4, 4, 8}, {6, 8, 4, 6}, {6, 4, 8, 6}};
  for (const auto& row : expectRows) {
    CAPTURE(row[0]);
    CHECK(rows.count(row) == 1);
  }
  REQUIRE(rows.size() == 6);

  // X1^3 Ya^2 Yb - X2^3 Yc^2 Yd - 12 sqrt(-3) X3^2 Ye with a = (6,8,4,6),
  // b = (3,5,4,6), c = (6,4,8,6), d = (3,4,5,6), e = (4,4,4,8).
  REQUIRE(P.relations.basis.size() == 1);
  const RingPtr& XY = P.xyRing;
  auto Y = [&](const std::vector<long>& row) {
    return Poly::variable(XY, 2 + static_cast<unsigned>(rows.at(row)));
  };
  const CycNum root3 = CycNum(1) + CycNum(2) * CycNum::zeta(3);  // sqrt(-3)
  Poly expect = Poly::variable(XY, 0, 3) * Y({6, 8, 4, 6}).pow(2) * Y({3, 5, 4, 6});
  expect -= Poly::variable(XY, 1, 3) * Y({6, 4, 8, 6}).pow(2) * Y({3, 4, 5, 6});
  expect -= Poly::variable(XY, 2, 2).scaled(CycNum(12) * root3) * Y({4, 4, 4, 8});
  CHECK(proportional(P.relations.basis[0], expect));
  checkRelationsVanish(P);

  // Once stable, re-running a step finds nothing new.
  CHECK_FALSE(alg.runStep0(1));
  CHECK_FALSE(alg.runStepPair(1, 2));
}

TEST_CASE("verification certificates on the binary dihedral group of order 12") {
  MatrixGroup g(loadGroupFile(fixture("D5.grp")));
  InvariantBasis seed = loadInvariants(g, fixture("D5.inv"));
  CoxAlgorithm alg(g, seed);

  const Poly p1 = seed.generators[0].poly;
  const Poly p2 = seed.generators[1].poly;
  const Poly p3 = seed.generators[2].poly;
  const std::vector<Poly> targets = {p1, p3, p1 * p3, p2 * p2, p1 * p2 * p3,
                                     p3 * p3 * p3, p1 * p1 - p2 * p2};
  for (const Poly& f : targets) {
    CAPTURE(f.str());
    auto h = alg.verifyStar(f);
    REQUIRE(h.has_value());
    CHECK(imageOf(seed.ring, alg.current(), *h) == f);
    const auto nuF = alg.valuations().nuVector(f);
    for (std::size_t i = 0; i < nuF.size(); ++i) {
      const auto range = h->wdegRange(alg.nuTable()[i]);
      REQUIRE(range.has_value());
      CHECK(range->first >= nuF[i]);
    }
  }

  // Rejected inputs: zero, inhomogeneous, and not a semi-invariant.
  CHECK_THROWS_AS(alg.verifyStar(Poly::constant(seed.ring, CycNum(0))), ValidationError);
  CHECK_THROWS_AS(alg.verifyStar(p1 + p3), ValidationError);
  CHECK_THROWS_AS(alg.verifyStar(Poly::variable(seed.ring, 0)), ValidationError);
}
