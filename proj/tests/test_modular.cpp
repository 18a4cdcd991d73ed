#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "coxmin/expr.hpp"
#include "coxmin/group_file.hpp"
#include "coxmin/ideal_ops.hpp"
#include "coxmin/invariant_ring.hpp"
#include "coxmin/modular.hpp"

using namespace coxmin;

namespace {

std::string fixture(const std::string& name) {
  return std::string(COXMIN_FIXTURES_DIR) + "/" + name;
}

std::vector<std::string> xNames(std::size_t k) {
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t j = 1; j <= k; ++j) names.push_back("X" + std::to_string(j));
  return names;
}

std::vector<std::string> strs(const std::vector<Poly>& polys) {
  std::vector<std::string> out;
  out.reserve(polys.size());
  for (const Poly& p : polys) out.push_back(p.str());
  return out;
}

mpz_class seriesCoeff(const std::vector<mpz_class>& numerator, const std::vector<long>& w,
                      long d) {
  // Expand numerator / prod_v (1 - t^(w_v)) as a power series up to degree d.
  std::vector<mpz_class> s(d + 1, 0);
  for (std::size_t i = 0; i < numerator.size() && i <= static_cast<std::size_t>(d); ++i)
    s[i] = numerator[i];
  for (long wv : w)
    for (long i = wv; i <= d; ++i) s[i] += s[i - wv];
  return s[d];
}

}  // namespace

TEST_CASE("weighted Hilbert numerators of monomial ideals: closed forms") {
  std::vector<long> w2{1, 1};

  CHECK(hilbertNumerator({}, w2) == std::vector<mpz_class>{mpz_class(1)});
  CHECK(hilbertNumerator({Mono{0, 0}}, w2).empty());  // the unit ideal

  // Principal: 1 - t^(weighted degree).
  CHECK(hilbertNumerator({Mono{2, 0}}, w2) ==
        std::vector<mpz_class>{mpz_class(1), mpz_class(0), mpz_class(-1)});
  CHECK(hilbertNumerator({Mono{2, 1}}, std::vector<long>{2, 3}) ==
        std::vector<mpz_class>{mpz_class(1), 0, 0, 0, 0, 0, 0, mpz_class(-1)});

  // Complete intersection x^2, y^3: (1 - t^2)(1 - t^3).
  CHECK(hilbertNumerator({Mono{2, 0}, Mono{0, 3}}, w2) ==
        std::vector<mpz_class>{mpz_class(1), 0, mpz_class(-1), mpz_class(-1), 0, mpz_class(1)});

  // Non-complete-intersection x^2, xy: 1 - 2t^2 + t^3.
  CHECK(hilbertNumerator({Mono{2, 0}, Mono{1, 1}}, w2) ==
        std::vector<mpz_class>{mpz_class(1), 0, mpz_class(-2), mpz_class(1)});

  // Generators listed redundantly minimalize away.
  CHECK(hilbertNumerator({Mono{2, 0}, Mono{2, 1}, Mono{2, 0}}, w2) ==
        hilbertNumerator({Mono{2, 0}}, w2));
}

TEST_CASE("weighted Hilbert numerators match brute-force monomial counts") {
  std::mt19937 rng(20260815);
  std::uniform_int_distribution<int> wDist(1, 3);
  std::uniform_int_distribution<int> eDist(0, 4);
  std::uniform_int_distribution<int> nGens(1, 5);
  const long capD = 12;

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long> w{wDist(rng), wDist(rng), wDist(rng)};
    std::vector<Mono> gens;
    int g = nGens(rng);
    for (int i = 0; i < g; ++i) {
      Mono m{static_cast<std::uint16_t>(eDist(rng)), static_cast<std::uint16_t>(eDist(rng)),
             static_cast<std::uint16_t>(eDist(rng))};
      if (mono::deg(m) == 0) continue;  // keep the ideal proper
      gens.push_back(std::move(m));
    }
    std::vector<mpz_class> num = hilbertNumerator(gens, w);

    for (long d = 0; d <= capD; ++d) {
      long count = 0;
      for (long a = 0; a * w[0] <= d; ++a)
        for (long b = 0; a * w[0] + b * w[1] <= d; ++b)
          for (long c = 0; a * w[0] + b * w[1] + c * w[2] <= d; ++c) {
            if (a * w[0] + b * w[1] + c * w[2] != d) continue;
            Mono m{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                   static_cast<std::uint16_t>(c)};
            bool inIdeal = false;
            for (const Mono& gg : gens)
              if (mono::divides(gg, m)) {
                inIdeal = true;
                break;
              }
            if (!inIdeal) ++count;
          }
      CHECK(seriesCoeff(num, w, d) == count);
    }
  }
}

TEST_CASE("modular kernels agree with the exact routes on small maps") {
  SUBCASE("independent targets have a zero kernel") {
    RingPtr src = Ring::grevlexRing({"x", "y"}, 1);
    std::vector<Poly> targets{Poly::variable(src, 0), Poly::variable(src, 1)};
    RingPtr xring = Ring::grevlexRing(xNames(2), 1);
    auto basis = modularKernelBasis(targets, xring);
    REQUIRE(basis.has_value());
    CHECK(basis->empty());
  }

  SUBCASE("the quadric Veronese relation in two variables") {
    RingPtr src = Ring::grevlexRing({"x", "y"}, 1);
    std::vector<Poly> targets{parsePoly("x^2", src), parsePoly("y^2", src),
                              parsePoly("x*y", src)};
    RingPtr xring = Ring::grevlexRing(xNames(3), 1);
    auto basis = modularKernelBasis(targets, xring);
    REQUIRE(basis.has_value());
    REQUIRE(basis->size() == 1);
    CHECK(basis->front().str() == parsePoly("X1*X2 - X3^2", xring).str());

    Ideal exact = ringMapKernel(targets, xNames(3));
    CHECK(strs(*basis) == strs(exact.basis));
  }

  SUBCASE("a dependent triple over a nontrivial conductor") {
    RingPtr src = Ring::grevlexRing({"x", "y"}, 4);
    std::vector<Poly> targets{parsePoly("x^2", src), parsePoly("y^2", src),
                              parsePoly("x^2 + 2*zeta*x*y - y^2", src)};
    RingPtr xring = Ring::grevlexRing(xNames(3), 4);
    auto basis = modularKernelBasis(targets, xring);
    REQUIRE(basis.has_value());
    REQUIRE(basis->size() == 1);

    Ideal exact = ringMapKernel(targets, xNames(3));
    REQUIRE(exact.basis.size() == 1);
    CHECK(strs(*basis) == strs(exact.basis));
  }

  SUBCASE("inhomogeneous targets are declined") {
    RingPtr src = Ring::grevlexRing({"x", "y"}, 1);
    std::vector<Poly> targets{parsePoly("x^2 + x", src), parsePoly("y", src)};
    RingPtr xring = Ring::grevlexRing(xNames(2), 1);
    CHECK_FALSE(modularKernelBasis(targets, xring).has_value());
  }
}

TEST_CASE("modular kernel of the order-32 invariant map matches the exact elimination") {
  MatrixGroup g(loadGroupFile(fixture("order32.grp")));
  InvariantBasis inv = loadInvariants(g, fixture("order32.inv"));
  std::vector<Poly> targets;
  targets.reserve(inv.generators.size());
  for (const auto& gp : inv.generators) targets.push_back(gp.poly);

  const auto names = xNames(targets.size());
  RingPtr xring = Ring::grevlexRing(names, targets.front().ring()->conductor);
  auto basis = modularKernelBasis(targets, xring);
  REQUIRE(basis.has_value());

  Ideal exact = ringMapKernel(targets, names);  // below the modular threshold
  CHECK(strs(*basis) == strs(exact.basis));
}
