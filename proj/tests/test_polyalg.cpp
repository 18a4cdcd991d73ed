#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "coxmin/expr.hpp"
#include "coxmin/ideal_ops.hpp"

using namespace coxmin;

namespace {

RingPtr xyRing(unsigned conductor = 1) { return Ring::grevlexRing({"x", "y"}, conductor); }

Poly P(const RingPtr& r, const std::string& text) { return parsePoly(text, r); }

Poly randomPoly(const RingPtr& ring, std::mt19937& rng, unsigned maxdeg, unsigned terms,
                bool cycCoeffs = false) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<unsigned> expo(0, maxdeg);
  std::vector<Term> ts;
  for (unsigned t = 0; t < terms; ++t) {
    Mono m(ring->nvars(), 0);
    unsigned budget = maxdeg;
    for (unsigned v = 0; v < ring->nvars(); ++v) {
      unsigned e = expo(rng) % (budget + 1);
      m[v] = static_cast<std::uint16_t>(e);
      budget -= e;
    }
    int c = coeff(rng);
    if (!c) c = 1;
    CycNum cv(static_cast<long>(c));
    if (cycCoeffs && (rng() & 3) == 0) cv = cv * CycNum::zeta(ring->conductor, 1 + rng() % 3);
    ts.push_back({std::move(m), std::move(cv)});
  }
  return Poly::fromTerms(ring, std::move(ts));
}

}  // namespace

TEST_CASE("monomial order basics") {
  auto grev = MonomialOrder::grevlex(3);
  Mono x{1, 0, 0}, y{0, 1, 0}, z{0, 0, 1}, xy{1, 1, 0}, zz{0, 0, 2};
  CHECK(grev.compare(x, y) > 0);
  CHECK(grev.compare(y, z) > 0);
  CHECK(grev.compare(zz, xy) < 0);  // same degree, z^2 has larger last exponent
  CHECK(grev.compare(xy, x) > 0);   // higher degree wins

  // Elimination property: any head-containing monomial beats any head-free one.
  auto elim = MonomialOrder::elimination(1, 3);
  Mono headLow{1, 0, 0}, tailHigh{0, 9, 9};
  CHECK(elim.compare(headLow, tailHigh) > 0);
}

TEST_CASE("polynomial arithmetic and text round-trip") {
  auto r = Ring::grevlexRing({"x", "y"}, 12);
  Poly f = P(r, "x^2 - 2*x*y + y^2");
  Poly g = P(r, "x - y");
  CHECK(f == g * g);
  CHECK((f - g * g).isZero());
  CHECK(P(r, "(x+y)^3") == P(r, "x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
  CHECK(P(r, "zeta^4 * x") == P(r, "(zeta^4)*x"));

  Poly withZeta = P(r, "(zeta^2 - 1)*x + 1/2*y");
  CHECK(parsePoly(withZeta.str(), r) == withZeta);
  CHECK(parsePoly(withZeta.str(), r).str() == withZeta.str());

  std::mt19937 rng(20240916);
  for (int trial = 0; trial < 60; ++trial) {
    Poly p = randomPoly(r, rng, 6, 5, true);
    CAPTURE(p.str());
    CHECK(parsePoly(p.str(), r) == p);
    CHECK(parsePoly(p.str(), r).str() == p.str());
  }
}

TEST_CASE("z is the root of unity unless shadowed by a ring variable") {
  auto rz = Ring::grevlexRing({"x", "y"}, 8);
  CHECK(P(rz, "z^2*x") == P(rz, "zeta^2*x"));
  auto rshadow = Ring::grevlexRing({"x", "y", "z", "w"}, 8);
  Poly zvar = P(rshadow, "z^2*x");
  CHECK(zvar.leadingMono()[2] == 2);  // z is the variable here
  CHECK(P(rshadow, "zeta^2*x") != zvar);
}

TEST_CASE("derivative") {
  auto r = xyRing();
  CHECK(derivative(P(r, "x^3*y + 2*y^2"), 0) == P(r, "3*x^2*y"));
  CHECK(derivative(P(r, "x^3*y + 2*y^2"), 1) == P(r, "x^3 + 4*y"));
  CHECK(derivative(P(r, "7"), 0).isZero());
}

TEST_CASE("groebner basis of a principal collapse") {
  auto r = Ring::grevlexRing({"x"}, 1);
  auto gb = groebnerBasis(r, {P(r, "x^2 - 1"), P(r, "x - 1")});
  REQUIRE(gb.size() == 1);
  CHECK(gb[0] == P(r, "x - 1"));
}

TEST_CASE("groebner basis canonical form is generator-order independent") {
  auto r = xyRing();
  std::vector<Poly> gens = {P(r, "x^2 + y"), P(r, "x*y + x"), P(r, "y^3 - 2*x")};
  auto gb1 = groebnerBasis(r, gens);
  std::reverse(gens.begin(), gens.end());
  auto gb2 = groebnerBasis(r, gens);
  CHECK(gb1 == gb2);
  for (const Poly& p : gb1) CHECK(p.leadingCoeff() == CycNum(1));
}

TEST_CASE("normal form properties") {
  auto r = xyRing();
  auto gb = groebnerBasis(r, {P(r, "x^2 - y"), P(r, "y^2 - x")});
  std::mt19937 rng(20240917);
  for (int trial = 0; trial < 40; ++trial) {
    Poly f = randomPoly(r, rng, 7, 6);
    Poly g = randomPoly(r, rng, 7, 6);
    Poly nf = normalForm(f, gb);
    CHECK(normalForm(nf, gb) == nf);                    // idempotent
    CHECK(inIdeal(f - nf, gb));                         // remainder differs by a member
    CHECK(normalForm(f + g, gb) == normalForm(normalForm(f, gb) + normalForm(g, gb), gb));
  }
}

TEST_CASE("ideal membership against a vanishing-point oracle") {
  // Ideals built to vanish on known rational points: membership implies
  // vanishing there, so any nonvanishing polynomial is certified outside.
  auto r = xyRing();
  std::mt19937 rng(20240918);
  std::uniform_int_distribution<long> pt(-3, 3);
  int negatives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    long ax = pt(rng), ay = pt(rng);
    // Two generators vanishing at (ax, ay).
    Poly lx = P(r, "x") - Poly::constant(r, CycNum(ax));
    Poly ly = P(r, "y") - Poly::constant(r, CycNum(ay));
    Poly f = lx * randomPoly(r, rng, 2, 3) + ly * randomPoly(r, rng, 2, 3);
    Poly g = lx * ly;
    auto gb = groebnerBasis(r, {f, g});

    // Positive cases: explicit combinations are members.
    Poly comb = f * randomPoly(r, rng, 3, 4) + g * randomPoly(r, rng, 3, 4);
    CHECK(inIdeal(comb, gb));

    // Negative cases: evaluate candidate at the common zero.
    Poly h = randomPoly(r, rng, 4, 5);
    Poly hval = h.withVarSet(0, CycNum(ax)).withVarSet(1, CycNum(ay));
    if (!hval.isZero()) {
      CHECK(!inIdeal(h, gb));
      ++negatives;
    }
  }
  CHECK(negatives > 50);  // the oracle actually exercised the negative branch
}

TEST_CASE("elimination: Veronese surface kernel") {
  auto src = xyRing();
  std::vector<Poly> targets = {P(src, "x^2"), P(src, "x*y"), P(src, "y^2")};
  Ideal ker = ringMapKernel(targets, {"X1", "X2", "X3"});
  REQUIRE(ker.basis.size() == 1);
  auto xr = ker.ring;
  CHECK(ker.basis[0] == P(xr, "X2^2 - X1*X3").monic());
}

TEST_CASE("ringMapKernel fast path agrees with elimination") {
  auto src = xyRing();
  // General path is forced by a non-homogeneous target.
  std::vector<Poly> inhom = {P(src, "x^2 + 1"), P(src, "x*y"), P(src, "y^2")};
  Ideal kerGeneral = ringMapKernel(inhom, {"X1", "X2", "X3"});
  // (X1-1)*X3 - X2^2 vanishes under the substitution.
  CHECK(kerGeneral.contains(P(kerGeneral.ring, "X1*X3 - X3 - X2^2")));

  // Homogeneous targets with a known relation; principal path fires.
  std::vector<Poly> hom = {P(src, "x^2"), P(src, "y^2"), P(src, "x^2 + 2*x*y + y^2")};
  Ideal fast = ringMapKernel(hom, {"X1", "X2", "X3"});
  REQUIRE(fast.basis.size() == 1);
  Poly expect = P(fast.ring, "(X3 - X1 - X2)^2 - 4*X1*X2").monic();
  CHECK(fast.basis[0] == expect);
  CHECK(jacobianRank(hom) == 2);

  // Independent targets: zero kernel.
  std::vector<Poly> indep = {P(src, "x^2"), P(src, "y^3")};
  CHECK(ringMapKernel(indep, {"X1", "X2"}).isZero());
  CHECK(jacobianRank(indep) == 2);
}

TEST_CASE("intersection, quotient, saturation") {
  auto r = xyRing();
  Ideal ix = makeIdeal(r, {P(r, "x")});
  Ideal iy = makeIdeal(r, {P(r, "y")});
  Ideal meet = intersectIdeals(ix, iy);
  REQUIRE(meet.basis.size() == 1);
  CHECK(meet.basis[0] == P(r, "x*y"));

  Ideal i2 = makeIdeal(r, {P(r, "x*y"), P(r, "y^2")});
  Ideal q = quotientByPoly(i2, P(r, "y"));
  CHECK(q.basis == groebnerBasis(r, {P(r, "x"), P(r, "y")}));

  Ideal i3 = makeIdeal(r, {P(r, "x^2*y^3")});
  Ideal sat = saturateByPoly(i3, P(r, "y"));
  REQUIRE(sat.basis.size() == 1);
  CHECK(sat.basis[0] == P(r, "x^2"));

  // Saturation by a variable leaves no common factor of that variable.
  Ideal mixed = makeIdeal(r, {P(r, "x^3*y - x^2*y^2"), P(r, "x^2*y^3")});
  Ideal satx = saturateByPoly(mixed, P(r, "x"));
  for (const Poly& p : satx.basis) {
    bool hasXFreeTerm = false;
    for (const auto& t : p.terms()) hasXFreeTerm = hasXFreeTerm || t.m[0] == 0;
    CHECK(hasXFreeTerm);
  }
}

TEST_CASE("homogenization weight bookkeeping") {
  auto r3 = Ring::grevlexRing({"x", "y", "t"}, 1);
  std::mt19937 rng(20240919);
  std::vector<long> w = {2, 3, 0};
  for (int trial = 0; trial < 30; ++trial) {
    Poly g = randomPoly(Ring::grevlexRing({"x", "y"}, 1), rng, 5, 4).mappedTo(r3);
    if (g.isZero()) continue;
    auto upMin = homogenized({g}, w, 2, /*toMin=*/true);
    auto upMax = homogenized({g}, w, 2, /*toMin=*/false);
    REQUIRE(upMin.size() == 1);
    REQUIRE(upMax.size() == 1);
    CHECK(upMin[0].isHomogeneous({2, 3, -1}));
    CHECK(upMax[0].isHomogeneous({2, 3, 1}));
    CHECK(upMin[0].withVarSet(2, CycNum(1)) == g);
    CHECK(upMax[0].withVarSet(2, CycNum(1)) == g);
  }
}

TEST_CASE("saturated homogenization has per-element minimal aux exponent zero") {
  auto r3 = Ring::grevlexRing({"x", "y", "t"}, 1);
  std::mt19937 rng(20240920);
  std::vector<long> w = {1, 2, 0};
  auto small = Ring::grevlexRing({"x", "y"}, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Poly> gens;
    for (int k = 0; k < 2; ++k) {
      Poly g = randomPoly(small, rng, 4, 3).mappedTo(r3);
      if (!g.isZero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    auto up = homogenized(gens, w, 2, true);
    Ideal sat = saturateByPoly(makeIdeal(r3, up), Poly::variable(r3, 2));
    for (const Poly& p : sat.basis) {
      unsigned minT = 0xFFFF;
      for (const auto& t : p.terms()) minT = std::min<unsigned>(minT, t.m[2]);
      CHECK(minT == 0);
    }
  }
}

TEST_CASE("character-homogeneous part") {
  auto r = xyRing();
  // Parity action x -> -x, y -> -y: already-homogeneous ideal is unchanged.
  Ideal even = makeIdeal(r, {P(r, "x^2 - y^2"), P(r, "x*y")});
  CHECK(idealEqual(charHomogeneousPart(even, {1, 1}, 2), even));

  // Mixed generator: the part is a proper subideal with homogeneous basis.
  Ideal mixed = makeIdeal(r, {P(r, "x + y^2")});
  Ideal part = charHomogeneousPart(mixed, {1, 1}, 2);
  CHECK(!idealEqual(part, mixed));
  CHECK(idealContainsIdeal(mixed, part));
  CHECK(part.contains(P(r, "(x + y^2)*(x - y^2)")));
  for (const Poly& p : part.basis) {
    long parity = -1;
    bool homogeneous = true;
    for (const auto& t : p.terms()) {
      long par = (t.m[0] + t.m[1]) % 2;
      if (parity < 0) parity = par;
      homogeneous = homogeneous && par == parity;
    }
    CHECK(homogeneous);
  }

  // Trivial character returns the ideal itself.
  CHECK(idealEqual(charHomogeneousPart(mixed, {0, 0}, 2), mixed));
}

TEST_CASE("groebner cache round-trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "coxmin-test-cache";
  fs::remove_all(dir);
  Cache cache(dir);
  auto r = xyRing(8);
  std::vector<Poly> gens = {P(r, "x^2 - zeta*y"), P(r, "x*y^2 - 2")};
  auto gb1 = groebnerBasis(r, gens, &cache);
  CHECK(cache.writes == 1);
  auto gb2 = groebnerBasis(r, gens, &cache);
  CHECK(cache.hits == 1);
  CHECK(gb1 == gb2);

  // Corrupt every entry; lookups degrade to recomputation.
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ofstream out(entry.path(), std::ios::trunc);
    out << "garbage";
  }
  auto gb3 = groebnerBasis(r, gens, &cache);
  CHECK(gb3 == gb1);
}

TEST_CASE("performance canary: quadratic Veronese of four variables") {
  auto src = Ring::grevlexRing({"x1", "x2", "x3", "x4"}, 1);
  std::vector<Poly> targets;
  std::vector<std::string> names;
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = i; j < 4; ++j) {
      targets.push_back(Poly::variable(src, i) * Poly::variable(src, j));
      names.push_back("X" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  auto start = std::chrono::steady_clock::now();
  Ideal ker = ringMapKernel(targets, names);
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream msg;
  msg << "veronese kernel: " << ker.basis.size() << " relations in " << secs << "s";
  MESSAGE(msg.str());
  CHECK(ker.basis.size() == 20);
  for (const Poly& p : ker.basis) CHECK(p.degree() == 2);
  CHECK(ker.contains(P(ker.ring, "X11*X22 - X12^2")));
  CHECK(secs < 120.0);
}
