#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coxmin/group_file.hpp"
#include "coxmin/matrix_group.hpp"

using namespace coxmin;

namespace {

MatrixGroup fromCatalog(const std::string& tag) { return MatrixGroup(catalogGroup(tag)); }

std::multiset<unsigned> juniorOrders(const MatrixGroup& g) {
  std::multiset<unsigned> out;
  for (std::size_t rep : g.juniorRepresentatives()) out.insert(g.elementOrder(rep));
  return out;
}

long bruteAge(const MatrixGroup& g, std::size_t i) {
  EigenData d = g.eigenData(i);
  long sum = 0;
  for (unsigned e : d.exponents) sum += e;
  REQUIRE(sum % d.order == 0);
  return sum / d.order;
}

GroupInput minusId(unsigned n) {
  std::string text = "conductor 2\ndimension " + std::to_string(n) + "\ngenerator\n";
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned c = 0; c < n; ++c) {
      text += (r == c ? "-1" : "0");
      text += (c + 1 < n ? ", " : "\n");
    }
  }
  return parseGroupText(text, "minusId");
}

}  // namespace

TEST_CASE("cyclic groups: closure, abelianization, juniors") {
  for (long m : {1L, 2L, 3L, 5L}) {
    MatrixGroup g = fromCatalog("ADE A " + std::to_string(m));
    CHECK(g.order() == static_cast<std::size_t>(m + 1));
    CHECK(g.conjugacyClasses().size() == g.order());  // abelian
    CHECK(g.commutatorSubgroup().size() == 1);
    REQUIRE(g.abelianization().factors.size() == 1);
    CHECK(g.abelianization().factors[0] == m + 1);
    CHECK(g.juniorRepresentatives().size() == static_cast<std::size_t>(m));
    CHECK(g.generatedByJuniors());
    CHECK(g.classGroupTorsionFree());
  }
}

TEST_CASE("generator eigendata of a diagonal cyclic generator") {
  MatrixGroup g = fromCatalog("ADE A 3");
  std::size_t gen = g.generatorIndices()[0];
  EigenData d = g.eigenData(gen);
  CHECK(d.order == 4);
  REQUIRE(d.exponents.size() == 2);
  CHECK(d.exponents[0] == 1);
  CHECK(d.exponents[1] == 3);
  // x is the exponent-1 form, y the exponent-3 form, each normalized.
  CHECK(d.forms(0, 0) == CycNum(1));
  CHECK(d.forms(0, 1) == CycNum(0));
  CHECK(d.forms(1, 0) == CycNum(0));
  CHECK(d.forms(1, 1) == CycNum(1));
}

TEST_CASE("rotation by a quarter turn has eigenforms x +- iy") {
  GroupInput in;
  in.conductor = 4;
  in.dimension = 2;
  CMat m(2, 2);
  m(0, 0) = CycNum(0);
  m(0, 1) = CycNum(1);
  m(1, 0) = CycNum(-1);
  m(1, 1) = CycNum(0);
  in.generators.push_back(m);
  MatrixGroup g(in);
  CHECK(g.order() == 4);
  EigenData d = g.eigenData(g.generatorIndices()[0]);
  CHECK(d.order == 4);
  REQUIRE(d.exponents == std::vector<unsigned>{1, 3});
  CycNum i = CycNum::zeta(4, 1);
  CHECK(d.forms(0, 0) == CycNum(1));
  CHECK(d.forms(0, 1) == i);
  CHECK(d.forms(1, 0) == CycNum(1));
  CHECK(d.forms(1, 1) == -i);
}

TEST_CASE("ages of scalar matrices") {
  MatrixGroup two = MatrixGroup(minusId(2));
  CHECK(two.order() == 2);
  CHECK(two.age(two.identity()) == 0);
  CHECK(two.age(1) == 1);
  CHECK(two.juniorRepresentatives().size() == 1);

  MatrixGroup four = MatrixGroup(minusId(4));
  CHECK(four.order() == 2);
  CHECK(four.age(1) == 2);
  CHECK(four.juniorRepresentatives().empty());
  CHECK_FALSE(four.generatedByJuniors());
  CHECK_FALSE(four.classGroupTorsionFree());
  REQUIRE(four.abelianization().factors.size() == 1);
  CHECK(four.abelianization().factors[0] == 2);
}

TEST_CASE("binary dihedral groups") {
  struct Row {
    long m;
    std::size_t order;
    std::vector<long> ab;
  };
  for (const Row& row : {Row{4, 8, {2, 2}}, Row{5, 12, {4}}, Row{6, 16, {2, 2}}}) {
    MatrixGroup g = fromCatalog("ADE D " + std::to_string(row.m));
    CAPTURE(row.m);
    CHECK(g.order() == row.order);
    CHECK(g.abelianization().factors == row.ab);
    CHECK(g.commutatorSubgroup().size() * g.abelianization().order() == g.order());
    CHECK(g.juniorRepresentatives().size() == static_cast<std::size_t>(row.m));
    CHECK(g.generatedByJuniors());
    CHECK(g.classGroupTorsionFree());
    CHECK(g.conjugacyClasses().size() == g.juniorRepresentatives().size() + 1);
  }
  CHECK(juniorOrders(fromCatalog("ADE D 5")) == std::multiset<unsigned>{6, 3, 2, 4, 4});
}

TEST_CASE("binary tetrahedral, octahedral, icosahedral groups") {
  MatrixGroup e6 = fromCatalog("ADE E 6");
  CHECK(e6.order() == 24);
  CHECK(e6.abelianization().factors == std::vector<long>{3});
  CHECK(e6.juniorRepresentatives().size() == 6);
  CHECK(juniorOrders(e6) == std::multiset<unsigned>{4, 6, 3, 2, 3, 6});
  CHECK(e6.generatedByJuniors());
  CHECK(e6.classGroupTorsionFree());

  MatrixGroup e7 = fromCatalog("ADE E 7");
  CHECK(e7.order() == 48);
  CHECK(e7.abelianization().factors == std::vector<long>{2});
  CHECK(e7.juniorRepresentatives().size() == 7);
  CHECK(juniorOrders(e7) == std::multiset<unsigned>{8, 4, 8, 2, 6, 3, 4});
  CHECK(e7.generatedByJuniors());

  MatrixGroup e8 = fromCatalog("ADE E 8");
  CHECK(e8.order() == 120);
  CHECK(e8.commutatorSubgroup().size() == 120);  // perfect
  CHECK(e8.abelianization().factors.empty());
  CHECK(e8.juniorRepresentatives().size() == 8);
  CHECK(juniorOrders(e8) == std::multiset<unsigned>{10, 5, 10, 5, 2, 6, 3, 4});
  CHECK(e8.generatedByJuniors());
  CHECK(e8.classGroupTorsionFree());
}

TEST_CASE("the order-32 group") {
  MatrixGroup g = fromCatalog("order32");
  CHECK(g.order() == 32);
  CHECK(g.commutatorSubgroup().size() == 2);
  CHECK(g.abelianization().factors == std::vector<long>{2, 2, 2, 2});
  REQUIRE(g.juniorRepresentatives().size() == 5);
  for (std::size_t rep : g.juniorRepresentatives()) CHECK(g.elementOrder(rep) == 2);
  CHECK(g.generatedByJuniors());
  CHECK(g.classGroupTorsionFree());
}

TEST_CASE("the reflection group no. 4 doubled onto C^4") {
  MatrixGroup g = fromCatalog("G4");
  CHECK(g.order() == 24);
  CHECK(g.abelianization().factors == std::vector<long>{3});
  const std::vector<std::size_t>& commutator = g.commutatorSubgroup();
  CHECK(commutator.size() == 8);
  // Quaternion signature: a unique involution, six elements of order four.
  std::multiset<unsigned> orders;
  for (std::size_t e : commutator) orders.insert(g.elementOrder(e));
  CHECK(orders == std::multiset<unsigned>{1, 2, 4, 4, 4, 4, 4, 4});
  REQUIRE(g.juniorRepresentatives().size() == 2);
  for (std::size_t rep : g.juniorRepresentatives()) CHECK(g.elementOrder(rep) == 3);
  CHECK(g.generatedByJuniors());
  CHECK(g.classGroupTorsionFree());
}

TEST_CASE("symplectic doubles G(K, alpha)") {
  struct Row {
    std::string tag;
    std::size_t order;
  };
  for (const Row& row : {Row{"type_G 1 1", 8}, Row{"type_G 2 1", 16}, Row{"type_G 6 5", 48},
                         Row{"type_K", 48}, Row{"type_P", 96}, Row{"type_Q", 96},
                         Row{"type_U", 240}, Row{"type_V", 240}}) {
    CAPTURE(row.tag);
    GroupInput in = catalogGroup(row.tag);
    CHECK(in.dimension == 4);
    REQUIRE(in.symplectic.has_value());
    MatrixGroup g(in);  // constructor validates symplectic preservation
    CHECK(g.order() == row.order);
    CHECK(g.commutatorSubgroup().size() * g.abelianization().order() == g.order());
  }
}

TEST_CASE("type_G constraint checking") {
  CHECK_THROWS_AS(catalogGroup("type_G 2 2"), ValidationError);   // even r
  CHECK_THROWS_AS(catalogGroup("type_G 1 3"), ValidationError);   // r > l
  CHECK_THROWS_AS(catalogGroup("type_G 3 3"), ValidationError);   // gcd condition
  CHECK_THROWS_AS(catalogGroup("type_G 0 1"), ValidationError);
  CHECK_NOTHROW(catalogGroup("type_G 6 5"));
}

TEST_CASE("word arithmetic matches matrix arithmetic") {
  MatrixGroup g = fromCatalog("ADE E 7");
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t i = pick(rng), j = pick(rng);
    CHECK(matEq(g.element(g.mul(i, j)), CMat(g.element(i) * g.element(j))));
    CHECK(matEq(g.element(g.mul(i, g.inv(i))), g.element(g.identity())));
  }
  for (std::size_t i = 0; i < g.order(); ++i) {
    unsigned r = g.elementOrder(i);
    std::size_t acc = g.identity();
    for (unsigned k = 0; k < r; ++k) acc = g.mul(acc, i);
    CHECK(acc == g.identity());
    CHECK(g.order() % r == 0);  // Lagrange
  }
}

TEST_CASE("eigen exponents sum to zero mod order and recover age") {
  for (const std::string& tag : {"ADE D 5", "ADE E 6", "order32", "G4"}) {
    CAPTURE(tag);
    MatrixGroup g = fromCatalog(tag);
    for (std::size_t i = 0; i < g.order(); ++i) {
      EigenData d = g.eigenData(i);
      REQUIRE(d.exponents.size() == g.dimension());
      long sum = 0;
      for (unsigned e : d.exponents) sum += e;
      CHECK(sum % d.order == 0);  // determinant one
      CHECK(bruteAge(g, i) == g.age(i));
      // Eigenform rows are normalized with leading coefficient one.
      for (unsigned r = 0; r < g.dimension(); ++r) {
        unsigned c = 0;
        while (c < g.dimension() && d.forms(r, c) == CycNum(0)) ++c;
        REQUIRE(c < g.dimension());
        CHECK(d.forms(r, c) == CycNum(1));
      }
    }
  }
}

TEST_CASE("age is constant on conjugacy classes") {
  for (const std::string& tag : {"ADE E 7", "order32"}) {
    MatrixGroup g = fromCatalog(tag);
    for (const std::vector<std::size_t>& cls : g.conjugacyClasses()) {
      long expected = bruteAge(g, cls.front());
      for (std::size_t e : cls) CHECK(bruteAge(g, e) == expected);
    }
  }
}

TEST_CASE("characters are multiplicative and trivial on commutators") {
  for (const std::string& tag : {"ADE D 4", "order32", "G4"}) {
    CAPTURE(tag);
    MatrixGroup g = fromCatalog(tag);
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    const AbelianGroup& ab = g.abelianization();
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t i = pick(rng), j = pick(rng);
      for (std::size_t ch = 0; ch < ab.factors.size(); ++ch)
        CHECK(g.characterValue(ch, g.mul(i, j)) ==
              g.characterValue(ch, i) * g.characterValue(ch, j));
    }
    for (std::size_t e : g.commutatorSubgroup())
      for (std::size_t ch = 0; ch < ab.factors.size(); ++ch)
        CHECK(g.characterValue(ch, e) == CycNum(1));
    // The coordinate map is onto: some element realizes each unit coordinate.
    for (std::size_t ch = 0; ch < ab.factors.size(); ++ch) {
      bool hit = false;
      for (std::size_t i = 0; i < g.order() && !hit; ++i)
        hit = g.abCoords(i)[ch] == 1;
      CHECK(hit);
    }
  }
}

TEST_CASE("junior data is stable under conjugating the generators") {
  std::mt19937 rng(23);
  for (const std::string& tag : {"ADE D 5", "order32"}) {
    CAPTURE(tag);
    GroupInput in = catalogGroup(tag);
    const unsigned n = in.dimension;
    CMat q(n, n);
    for (;;) {
      for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c)
          q(r, c) = CycNum(static_cast<long>(rng() % 5) - 2);
      if (detOf(q) != CycNum(0)) break;
    }
    CMat qi = inverseOf(q);
    GroupInput conj = in;
    conj.symplectic.reset();  // conjugation does not preserve the form
    for (CMat& g : conj.generators) g = q * g * qi;
    MatrixGroup a(in), b(conj);
    CHECK(a.order() == b.order());
    CHECK(a.juniorRepresentatives().size() == b.juniorRepresentatives().size());
    CHECK(a.generatedByJuniors() == b.generatedByJuniors());
    CHECK(a.classGroupTorsionFree() == b.classGroupTorsionFree());
    CHECK(juniorOrders(a) == juniorOrders(b));
  }
}

TEST_CASE("junior representatives do not depend on the generating set") {
  GroupInput one = catalogGroup("ADE A 5");
  GroupInput other = one;
  // Replace the generator by its fifth power: same cyclic group.
  other.generators[0] = CMat(one.generators[0] * one.generators[0] * one.generators[0] *
                             one.generators[0] * one.generators[0]);
  MatrixGroup a(one), b(other);
  REQUIRE(a.order() == b.order());
  std::set<std::string> keysA, keysB;
  for (std::size_t rep : a.juniorRepresentatives()) {
    EigenData d = a.eigenData(rep);
    keysA.insert(std::to_string(d.order) + ":" + std::to_string(d.exponents[0]));
  }
  for (std::size_t rep : b.juniorRepresentatives()) {
    EigenData d = b.eigenData(rep);
    keysB.insert(std::to_string(d.order) + ":" + std::to_string(d.exponents[0]));
  }
  CHECK(keysA == keysB);
}

TEST_CASE("validation rejects bad input") {
  GroupInput det;
  det.conductor = 1;
  det.dimension = 2;
  CMat swap(2, 2);
  swap(0, 0) = CycNum(0);
  swap(0, 1) = CycNum(1);
  swap(1, 0) = CycNum(1);
  swap(1, 1) = CycNum(0);
  det.generators.push_back(swap);
  CHECK_THROWS_WITH_AS(MatrixGroup{det}, doctest::Contains("determinant"), ValidationError);

  CHECK_THROWS_WITH_AS(MatrixGroup(catalogGroup("ADE A 30"), 10),
                       doctest::Contains("cap"), ValidationError);

  GroupInput badForm = catalogGroup("order32");
  CMat gram(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) gram(r, c) = CycNum(0);
  gram(0, 1) = CycNum(1);
  gram(1, 0) = CycNum(-1);
  gram(2, 3) = CycNum(1);
  gram(3, 2) = CycNum(-1);
  badForm.symplectic = gram;
  CHECK_THROWS_WITH_AS(MatrixGroup{badForm}, doctest::Contains("symplectic"),
                       ValidationError);
}

TEST_CASE("group file grammar") {
  GroupInput a3 = parseGroupText(
      "# cyclic of order four\n"
      "conductor 4\n"
      "dimension 2\n"
      "generator\n"
      "z, 0\n"
      "0, z^-1\n",
      "inline");
  GroupInput ref = catalogGroup("ADE A 3");
  REQUIRE(a3.generators.size() == 1);
  CHECK(a3.conductor == ref.conductor);
  CHECK(matEq(a3.generators[0], ref.generators[0]));

  GroupInput viaTag = parseGroupText("catalog ADE A 3\n", "inline");
  CHECK(viaTag.conductor == ref.conductor);
  CHECK(matEq(viaTag.generators[0], ref.generators[0]));

  CHECK_THROWS_WITH_AS(parseGroupText("dimension 2\ngenerator\n", "inline"),
                       doctest::Contains("conductor"), ValidationError);
  CHECK_THROWS_WITH_AS(parseGroupText("conductor 4\ndimension 2\ngenerator\nz\n", "inline"),
                       doctest::Contains("entries"), ValidationError);
  CHECK_THROWS_WITH_AS(parseGroupText("conductor 4\ndimension 2\ngenerator\nz, 0\n", "inline"),
                       doctest::Contains("ended inside"), ValidationError);
  CHECK_THROWS_WITH_AS(parseGroupText("conductor 4\nwidth 2\n", "inline"),
                       doctest::Contains("unknown directive"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parseGroupText("conductor 4\ncatalog order32\n", "inline"),
      doctest::Contains("cannot be combined"), ValidationError);
  CHECK_THROWS_WITH_AS(parseGroupText("catalog nonsense\n", "inline"),
                       doctest::Contains("unknown catalog tag"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parseGroupText("conductor 4\ndimension 2\ngenerator\nz, q\n0, z\n", "inline"),
      doctest::Contains("inline:4"), ValidationError);
}

TEST_CASE("subgroup closure sizes") {
  MatrixGroup g = fromCatalog("ADE E 7");
  CHECK(g.subgroupClosureSize({}) == 1);
  std::vector<std::size_t> all(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) all[i] = i;
  CHECK(g.subgroupClosureSize(all) == g.order());
  CHECK(g.subgroupClosureSize({g.generatorIndices()[0]}) ==
        g.elementOrder(g.generatorIndices()[0]));
}

TEST_CASE("fixture files reproduce the catalog") {
  const std::pair<const char*, const char*> rows[] = {
      {"A1.grp", "ADE A 1"},       {"A2.grp", "ADE A 2"},
      {"A3.grp", "ADE A 3"},       {"A4.grp", "ADE A 4"},
      {"A5.grp", "ADE A 5"},       {"D4.grp", "ADE D 4"},
      {"D5.grp", "ADE D 5"},       {"D6.grp", "ADE D 6"},
      {"E6.grp", "ADE E 6"},       {"E7.grp", "ADE E 7"},
      {"E8.grp", "ADE E 8"},       {"order32.grp", "order32"},
      {"G4.grp", "G4"},            {"type_G_1_1.grp", "type_G 1 1"},
      {"type_K.grp", "type_K"},    {"type_P.grp", "type_P"},
      {"type_Q.grp", "type_Q"},    {"type_U.grp", "type_U"},
      {"type_V.grp", "type_V"},
  };
  for (const auto& [file, tag] : rows) {
    CAPTURE(file);
    GroupInput got = loadGroupFile(std::string(COXMIN_FIXTURES_DIR) + "/" + file);
    GroupInput ref = catalogGroup(tag);
    CHECK(got.conductor == ref.conductor);
    CHECK(got.dimension == ref.dimension);
    REQUIRE(got.generators.size() == ref.generators.size());
    for (std::size_t i = 0; i < ref.generators.size(); ++i)
      CHECK(matEq(got.generators[i], ref.generators[i]));
    REQUIRE(got.symplectic.has_value() == ref.symplectic.has_value());
    if (ref.symplectic) CHECK(matEq(*got.symplectic, *ref.symplectic));
  }
  // a group with no junior elements at all
  MatrixGroup minus(loadGroupFile(std::string(COXMIN_FIXTURES_DIR) + "/minusId4.grp"));
  CHECK(minus.order() == 2);
  CHECK(minus.juniorRepresentatives().empty());
  CHECK_FALSE(minus.generatedByJuniors());
}
