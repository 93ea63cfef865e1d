#include "doctest.h"
#include "liebv/errors.hpp"
#include "liebv/scenarios.hpp"
#include "oracle.hpp"

using namespace liebv;

namespace {

bool passes(const Report& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  return c && c->passed;
}

std::vector<std::size_t> h0_by_s(const GradedDims& dims, int s_max) {
  CEAlgebra ce(rcom(dims).bialgebra);
  std::vector<std::size_t> out;
  for (int s = 0; s <= s_max; ++s) out.push_back(block_cohomology(ce, {0, s, std::nullopt}).betti);
  return out;
}

}  // namespace

TEST_CASE("H0 of rcom for two pieces is a polynomial ring") {
  // all maps V0 -> V1 are differentials: a*b free variables
  for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    GradedDims dims{{0, a}, {1, b}};
    auto h = h0_by_s(dims, 4);
    for (int s = 0; s <= 4; ++s) CHECK(h[s] == static_cast<std::size_t>(oracle::binomial(a * b + s - 1, s)));
    auto cl = classical_h0(dims, 4);
    REQUIRE(cl);
    CHECK(*cl == h);
  }
}

TEST_CASE("H0 of rcom for a chain of three lines is k[x,y]/(xy)") {
  auto h = h0_by_s({{0, 1}, {1, 1}, {2, 1}}, 4);
  CHECK(h == std::vector<std::size_t>{1, 2, 2, 2, 2});
  auto cl = classical_h0({{0, 1}, {1, 1}, {2, 1}}, 4);
  REQUIRE(cl);
  CHECK(*cl == h);
}

TEST_CASE("H0 of rcom for a chain of four lines") {
  // x y = y z = 0 in k[x,y,z]: monomials x^a z^c or y^b, so 1 + (s+1) for s > 0
  auto h = h0_by_s({{0, 1}, {1, 1}, {2, 1}, {3, 1}}, 3);
  CHECK(h == std::vector<std::size_t>{1, 3, 4, 5});
  CHECK(classical_h0({{0, 1}, {1, 1}, {2, 1}, {3, 1}}, 3) == h);
}

TEST_CASE("no classical oracle for larger pieces in three degrees") {
  CHECK_FALSE(classical_h0({{0, 2}, {1, 1}, {2, 1}}, 2));
}

TEST_CASE("rcom scenarios run clean") {
  Report r = run_scenario(rcom({{0, 1}, {1, 1}, {2, 1}}));
  CHECK(r.ok());
  CHECK(passes(r, "classical H0"));
  CHECK(passes(r, "H^-1"));
}

TEST_CASE("Hochschild-Serre degeneration") {
  HochschildSerre a = hochschild_serre_check({{0, 1}, {1, 1}}, -2, 3, 4);
  CHECK(a.ok);
  HochschildSerre b = hochschild_serre_check({{0, 1}, {1, 1}, {2, 1}}, -2, 2, 3);
  CHECK(b.ok);
  CHECK(b.betti_q == b.betti_l);
}

TEST_CASE("theta factorization") {
  for (auto [n, th] : {std::pair{1, std::vector<int>{1}}, std::pair{2, std::vector<int>{1, 2}},
                       std::pair{2, std::vector<int>{2, 1}}}) {
    Factorization f = theta_factorization(n, th, -4, 3, 4);
    CHECK(f.ok);
    CHECK(!f.table.rows.empty());
  }
}

TEST_CASE("rpcom in one variable truncated at order 3") {
  Scenario s = rpcom(1, 3);
  Report r = run_scenario(s);
  CHECK(passes(r, "H0 = k[x]/(x^2)"));
  H0Presentation p = h0_presentation(s);
  CHECK(p.relations.size() == 1);
}

TEST_CASE("rpcom with dim W = 2 at order 2") {
  Scenario s = rpcom(2, 2);
  H0Presentation p = h0_presentation(s);
  CHECK(p.generators.size() == 4);
  CHECK(p.relations.size() == 4);
  CHECK(p.matches_kirillov_kostant);
  CHECK(std::abs(p.global_sign) == 1);
  CHECK(!p.brackets.rows.empty());
}

TEST_CASE("rpcom rejects a truncation order below 2") {
  CHECK_THROWS_AS(rpcom(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(rpcom(0, 2), std::invalid_argument);
}

TEST_CASE("Borel checks") {
  Report r = borel_checks(6);
  CHECK(passes(r, "Betti k[x] (x) Lambda[t]"));
  CHECK(passes(r, "bracket <[x],[x]> = 0"));
  CHECK(passes(r, "bracket <[t],[t]> = 0"));
  // the computed coefficient is 1/2
  const CheckResult* c = r.find("bracket <[t],[x]> = [x]");
  REQUIRE(c);
  CHECK(c->detail == "computed <[t],[x]> = 1/2 [x]");
}

TEST_CASE("catalog has eleven entries") {
  auto c = catalog();
  CHECK(c.size() == 11);
  CHECK(c.front().label == "trivial(b)");
  CHECK(c.back().label == "frobenius(End k^2,2)");
}

TEST_CASE("scenario reports are reproducible") {
  Scenario s = rcom_quotient_theta(2, {2, 1});
  Report a = run_scenario(s), b = run_scenario(s);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].detail == b.checks[i].detail);
  }
  REQUIRE(a.tables.size() == b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) CHECK(a.tables[i].rows == b.tables[i].rows);
}
