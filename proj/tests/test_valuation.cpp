#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coxmin/expr.hpp"
#include "coxmin/group_file.hpp"
#include "coxmin/invariant_ring.hpp"
#include "coxmin/valuation.hpp"

using namespace coxmin;

namespace {

MatrixGroup fromCatalog(const std::string& tag) { return MatrixGroup(catalogGroup(tag)); }

bool isDiagonal(const CMat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r != c && !m(r, c).isZero()) return false;
  return true;
}

// Back-substitution from eigen-coordinates of junior i to the original ones.
Poly fromEigenCoords(const Valuations& vals, std::size_t i, const Poly& f) {
  return applyMatrix(CMat(vals.data(i).eigen.forms.transpose()), f);
}

bool proportional(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return a.isZero() && b.isZero();
  return a.scaled(b.leadingCoeff()) == b.scaled(a.leadingCoeff());
}

Poly randomPoly(const RingPtr& ring, std::mt19937& rng, unsigned maxDegree) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> deg(0, maxDegree);
  std::vector<Term> terms;
  const unsigned n = ring->nvars();
  for (int tries = 0; tries < 6; ++tries) {
    Mono m(n, 0);
    unsigned left = deg(rng);
    for (unsigned v = 0; v + 1 < n; ++v) {
      std::uniform_int_distribution<unsigned> part(0, left);
      const unsigned e = part(rng);
      m[v] = static_cast<std::uint16_t>(e);
      left -= e;
    }
    m[n - 1] = static_cast<std::uint16_t>(left);
    const int c = coeff(rng);
    if (c != 0) terms.push_back({m, CycNum(c)});
  }
  return Poly::fromTerms(ring, std::move(terms));
}

}  // namespace

TEST_CASE("cyclic groups: diagonal valuations read off exponents") {
  for (unsigned m : {2u, 4u, 5u}) {
    CAPTURE(m);
    MatrixGroup g = fromCatalog("ADE A " + std::to_string(m));
    RingPtr ring = coordinateRing(g);
    Valuations vals(g, ring);
    REQUIRE(vals.count() == m);
    const Poly x = Poly::variable(ring, 0);
    const Poly y = Poly::variable(ring, 1);
    std::multiset<std::vector<long>> rows;
    for (std::size_t i = 0; i < vals.count(); ++i) {
      const long r = static_cast<long>(vals.data(i).order);
      CHECK(vals.nu(i, x) + vals.nu(i, y) == r);  // det = 1 pairs the exponents
      rows.insert({r, vals.nu(i, x), vals.nu(i, y)});
    }
    std::multiset<std::vector<long>> expect;
    const long N = m + 1;
    for (long k = 1; k <= static_cast<long>(m); ++k) {
      const long r = N / std::gcd(k, N);
      expect.insert({r, k * r / N, r - k * r / N});
    }
    CHECK(rows == expect);
  }
}

TEST_CASE("valuation of constants and error on zero") {
  MatrixGroup g = fromCatalog("ADE A 2");
  RingPtr ring = coordinateRing(g);
  Valuations vals(g, ring);
  const Poly c = Poly::constant(ring, CycNum(7));
  for (std::size_t i = 0; i < vals.count(); ++i) CHECK(vals.nu(i, c) == 0);
  CHECK_THROWS_AS(vals.nu(0, Poly(ring)), ValidationError);
  CHECK_THROWS_AS(vals.minPart(0, Poly(ring)), ValidationError);
}

TEST_CASE("binary tetrahedral valuation table") {
  MatrixGroup g = fromCatalog("ADE E 6");
  RingPtr ring = coordinateRing(g);
  Valuations vals(g, ring);
  REQUIRE(vals.count() == 6);

  const Poly sextic = parsePoly("x^5*y - x*y^5", ring);
  const Poly quarticPlus = parsePoly("x^4 + y^4 + 2*(1 + 2*zeta^8)*x^2*y^2", ring);
  const Poly quarticMinus = parsePoly("x^4 + y^4 - 2*(1 + 2*zeta^8)*x^2*y^2", ring);

  std::multiset<std::vector<long>> rows;
  for (std::size_t i = 0; i < vals.count(); ++i)
    rows.insert({static_cast<long>(vals.data(i).order), vals.nu(i, quarticPlus),
                 vals.nu(i, quarticMinus), vals.nu(i, sextic)});
  const std::multiset<std::vector<long>> expect{
      {2, 4, 4, 6}, {3, 5, 4, 6}, {3, 4, 5, 6},
      {4, 4, 4, 8}, {6, 8, 4, 6}, {6, 4, 8, 6},
  };
  CHECK(rows == expect);
}

TEST_CASE("order-32 group: first quadric valuations") {
  MatrixGroup g = fromCatalog("order32");
  RingPtr ring = coordinateRing(g);
  Valuations vals(g, ring);
  REQUIRE(vals.count() == 5);
  const Poly phi12 = parsePoly("-2*(x*w + y*z)", ring);
  std::multiset<long> values;
  for (std::size_t i = 0; i < vals.count(); ++i) values.insert(vals.nu(i, phi12));
  CHECK(values == std::multiset<long>{1, 1, 0, 0, 0});
}

TEST_CASE("binary dihedral min parts") {
  for (unsigned m : {4u, 5u, 6u}) {
    CAPTURE(m);
    MatrixGroup g = fromCatalog("ADE D " + std::to_string(m));
    RingPtr ring = coordinateRing(g);
    Valuations vals(g, ring);
    REQUIRE(vals.count() == m);

    // x^(m-2) + (iy)^(m-2) and x*y, the two generator shapes of the paper.
    const CycNum i4 = CycNum::zeta(4);
    Poly phi = Poly::variable(ring, 0, m - 2) +
               Poly::variable(ring, 1, m - 2).scaled(i4.pow(m - 2));
    const Poly xy = Poly::variable(ring, 0) * Poly::variable(ring, 1);

    unsigned purePower = 0;
    for (std::size_t i = 0; i < vals.count(); ++i) {
      const Poly mp = vals.minPart(i, phi);
      // Every monomial of the min part attains nu exactly.
      const std::vector<long> a(vals.data(i).eigen.exponents.begin(),
                                vals.data(i).eigen.exponents.end());
      for (const auto& t : mp.terms()) CHECK(mono::wdeg(t.m, a) == vals.nu(i, phi));

      if (isDiagonal(g.element(vals.data(i).element))) {
        // Diagonal juniors leave monomials alone: min(xy) = xy on the nose.
        CHECK(fromEigenCoords(vals, i, vals.minPart(i, xy)) == xy);
        continue;
      }
      // Of the two antidiagonal junior classes, exactly one extracts a pure
      // (m-2)-nd power of a single eigenform, i.e. c (x + tau y)^(m-2); the
      // concrete form depends on the class representative, the shape does not.
      if (mp.size() == 1 && *std::max_element(mp.leadingMono().begin(),
                                              mp.leadingMono().end()) == m - 2) {
        const Poly back = fromEigenCoords(vals, i, mp);
        Poly form(ring);
        for (unsigned v = 0; v < 2; ++v)
          if (mp.leadingMono()[v])
            for (unsigned j = 0; j < 2; ++j)
              form += Poly::variable(ring, j).scaled(vals.data(i).eigen.forms(v, j));
        CHECK(proportional(back, form.pow(m - 2)));
        ++purePower;
      }
    }
    CHECK(purePower == 1);
  }
}

TEST_CASE("valuation axioms on random pairs") {
  std::mt19937 rng(20260815);
  for (const std::string tag : {"ADE D 5", "ADE E 6"}) {
    CAPTURE(tag);
    MatrixGroup g = fromCatalog(tag);
    RingPtr ring = coordinateRing(g);
    Valuations vals(g, ring);
    for (int trial = 0; trial < 30; ++trial) {
      const Poly f = randomPoly(ring, rng, 4);
      const Poly h = randomPoly(ring, rng, 4);
      if (f.isZero() || h.isZero()) continue;
      for (std::size_t i = 0; i < vals.count(); ++i) {
        CHECK(vals.nu(i, f * h) == vals.nu(i, f) + vals.nu(i, h));
        const Poly sum = f + h;
        if (!sum.isZero())
          CHECK(vals.nu(i, sum) >= std::min(vals.nu(i, f), vals.nu(i, h)));
        CHECK(vals.nu(i, f.scaled(CycNum(5))) == vals.nu(i, f));
      }
    }
  }
}

TEST_CASE("valuations are independent of eigenbasis rescaling") {
  MatrixGroup g = fromCatalog("ADE E 6");
  RingPtr ring = coordinateRing(g);
  Valuations vals(g, ring);
  const Poly f = parsePoly("x^4 + y^4 + 2*(1 + 2*zeta^8)*x^2*y^2", ring);
  std::mt19937 rng(7);
  for (std::size_t i = 0; i < vals.count(); ++i) {
    CMat scaled = vals.data(i).eigen.forms;
    scaled.row(0) *= CycNum(3);
    scaled.row(1) *= CycNum::zeta(ring->conductor, 5);
    const Poly rewritten = applyMatrix(CMat(inverseOf(scaled).transpose()), f);
    const std::vector<long> a(vals.data(i).eigen.exponents.begin(),
                              vals.data(i).eigen.exponents.end());
    CHECK(minWeightedDegree(rewritten, a) == vals.nu(i, f));
  }
}

TEST_CASE("weighted min part splits a polynomial by weight") {
  MatrixGroup g = fromCatalog("ADE A 1");
  RingPtr ring = coordinateRing(g);
  const Poly f = parsePoly("x^3 + x*y + 2*y^2 + y^5", ring);
  const std::vector<long> w{2, 1};
  CHECK(minWeightedDegree(f, w) == 2);
  CHECK(weightedMinPart(f, w) == parsePoly("2*y^2", ring));
  const Poly rest = f - weightedMinPart(f, w);
  CHECK(minWeightedDegree(rest, w) > 2);
}
