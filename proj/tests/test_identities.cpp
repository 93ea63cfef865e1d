#include "doctest.h"
#include "liebv/catalog.hpp"
#include "liebv/identities.hpp"
#include "liebv/scenarios.hpp"

using namespace liebv;

namespace {

IdentityOptions quick() {
  IdentityOptions o;
  o.deg_hi = 3;
  o.s_max = 3;
  o.random_pairs = 60;
  o.random_triples = 60;
  o.max_pair_length = 3;
  o.mutations = 10;
  return o;
}

}  // namespace

TEST_CASE("identity suite on the catalog") {
  for (const auto& e : catalog()) {
    Report r = identity_suite(e.bialgebra, quick());
    CHECK(r.checks.size() == 11);
    for (const auto& c : r.checks) {
      bool expect_fail = e.label == "frobenius(End k^2,2)" && c.name == "compatibility";
      CHECK_MESSAGE(c.passed != expect_fail, e.label << ": " << c.name << " " << c.detail);
      if (!c.passed) CHECK(!c.witness.empty());
    }
  }
}

TEST_CASE("shifted structures skip the BV identities") {
  Report r = identity_suite(frobenius_loop(FrobeniusAlgebra::matrix_algebra(1), 2), quick());
  const CheckResult* c = r.find("B^2 = 0");
  REQUIRE(c);
  CHECK(c->passed);
  CHECK(c->detail == "n/a: shift -1");
}

TEST_CASE("compatibility fails exactly when the cocycle condition fails") {
  Bialgebra b = standard_bialgebra({{0, 2}});
  CEAlgebra ce(b);
  CHECK(compatibility_defects(ce).empty());
  Bialgebra m = b;
  m.form.reset();
  m.rmatrix.reset();
  // e12 and e21 are indices 2 and 3; put an extra f^{a1} in [f^{e12}, f^{e21}]
  m.cobracket.add(2, 3, 0, 1);
  m.cobracket.add(3, 2, 0, -1);
  CEAlgebra cm(m);
  bool compat_fail = !compatibility_defects(cm).empty();
  bool cocycle_fail = !cocycle_defects(m.algebra, m.cobracket, m.shift).empty();
  CHECK(compat_fail == cocycle_fail);
}

TEST_CASE("mutation detection is deterministic") {
  Bialgebra b = standard_bialgebra(1, 1);
  CheckResult a = mutation_check(b, 20, 99), c = mutation_check(b, 20, 99);
  CHECK(a.passed);
  CHECK(a.detail == c.detail);
  CHECK(a.detail.find("agreement 20/20") != std::string::npos);
}

TEST_CASE("mutations of an abelian algebra are never detected but still agree") {
  Bialgebra b = trivial_bialgebra(nilradical_n({{0, 1}, {1, 2}}));
  CheckResult r = mutation_check(b, 20, 1);
  CHECK(r.passed);
}
