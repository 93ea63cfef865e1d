#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "liebv/catalog.hpp"
#include "liebv/errors.hpp"
#include "liebv/io.hpp"
#include "liebv/scenarios.hpp"

using namespace liebv;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURES) + "/" + name; }

const char* kTwo = R"({
  "name": "two",
  "shift_n": 0,
  "basis": [{"name": "h", "degree": 0}, {"name": "e", "degree": 0}],
  "brackets": [[1, 2, 2, "1"]],
  "cobrackets": [[2, 1, 2, "1/2"]]
})";

std::string with(const std::string& key, const json& value) {
  json j = json::parse(kTwo);
  j[key] = value;
  return j.dump();
}

}  // namespace

TEST_CASE("emit then parse is the identity on the catalog") {
  for (const auto& e : catalog()) {
    std::string text = emit_algebra(e.bialgebra);
    Bialgebra b = parse_algebra(text);
    CHECK_MESSAGE(same_structure(b, e.bialgebra), e.label);
    CHECK(b.algebra == e.bialgebra.algebra);
    CHECK(b.cobracket == e.bialgebra.cobracket);
    CHECK(b.form == e.bialgebra.form);
    CHECK(b.rmatrix == e.bialgebra.rmatrix);
    CHECK(emit_algebra(b) == text);
  }
}

TEST_CASE("a half-listed bracket is completed by antisymmetry") {
  Bialgebra b = parse_algebra(kTwo);
  CHECK(b.algebra.bracket(0, 1) == SparseVec{{1, 1}});
  CHECK(b.algebra.bracket(1, 0) == SparseVec{{1, -1}});
  // listing both halves consistently is accepted
  Bialgebra c = parse_algebra(with("brackets", json::array({{1, 2, 2, "1"}, {2, 1, 2, "-1"}})));
  CHECK(c.algebra == b.algebra);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_algebra("{"), ParseError);
  CHECK_THROWS_AS(parse_algebra("[]"), ParseError);
  CHECK_THROWS_AS(parse_algebra(R"({"name": "x"})"), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("brackets", json::array({{1, 3, 2, "1"}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("brackets", json::array({{0, 1, 2, "1"}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("brackets", json::array({{1, 2, 2, "1"}, {1, 2, 2, "1"}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("brackets", json::array({{1, 2, 2, "1"}, {2, 1, 2, "1"}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("brackets", json::array({{1, 2, 2, "one"}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("brackets", json::array({{1, 2, 2, 0.5}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("brackets", json::array({{1, 2, 2}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("cobrackets", json::array({{2, 1, 2, "1/2"}, {2, 1, 2, "1/2"}}))),
                  ParseError);
  CHECK_THROWS_AS(parse_algebra(with("shift_n", "0")), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("form", json::array({{1, 1, "1"}, {1, 1, "2"}}))), ParseError);
  CHECK_THROWS_AS(parse_algebra(with("rmatrix", json::array({{1, 9, "1"}}))), ParseError);
  // weights on only one basis element
  json j = json::parse(kTwo);
  j["basis"][0]["weight"] = {0};
  CHECK_THROWS_AS(parse_algebra(j.dump()), ParseError);
  CHECK_THROWS_AS(load_algebra(fixture("malformed.json")), ParseError);
  CHECK_THROWS_AS(load_algebra(fixture("missing.json")), ParseError);
}

TEST_CASE("integer coefficients are accepted") {
  Bialgebra b = parse_algebra(with("brackets", json::array({{1, 2, 2, 1}})));
  CHECK(b.algebra == parse_algebra(kTwo).algebra);
}

TEST_CASE("fixtures load and round trip") {
  for (const char* f : {"gl11_standard.json", "gl2_standard.json", "sl11_standard.json", "borel_sl11.json",
                        "rcom_111.json", "empty.json", "broken_jacobi.json"}) {
    Bialgebra b = load_algebra(fixture(f));
    CHECK_MESSAGE(same_structure(parse_algebra(emit_algebra(b)), b), f);
  }
  CHECK(same_structure(load_algebra(fixture("gl11_standard.json")), standard_bialgebra(1, 1)));
  CHECK(load_algebra(fixture("empty.json")).dim() == 0);
}

TEST_CASE("fingerprints are stable and sensitive") {
  Bialgebra a = standard_bialgebra(1, 1);
  std::string f = fingerprint(a);
  CHECK(f.size() == 64);
  CHECK(f == fingerprint(parse_algebra(emit_algebra(a))));
  Bialgebra b = a;
  b.cobracket.add(0, 1, 1, 1);
  CHECK(fingerprint(b) != f);
  b = a;
  b.name = "renamed";
  CHECK(fingerprint(b) != f);
}

TEST_CASE("report JSON has the documented fields") {
  Report r;
  r.add("first", true, "fine");
  r.add("second", false, "broken", {"a", "b"});
  Table t;
  t.name = "betti";
  t.truncation = "deg 0..1";
  t.columns = {"block", "betti"};
  t.rows = {{"deg=0,s=0", "1"}};
  r.tables.push_back(t);
  json j = json::parse(report_json(r, "abc"));
  CHECK(j["version"] == version_string());
  CHECK(j["fingerprint"] == "abc");
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][1]["passed"] == false);
  CHECK(j["checks"][1]["witness"] == json::array({"a", "b"}));
  CHECK(j["tables"][0]["truncation"] == "deg 0..1");
  CHECK(j["tables"][0]["rows"][0][1] == "1");
}

TEST_CASE("text reports align columns") {
  Report r;
  r.add("short", true);
  r.add("a longer name", false, "why", {"x"});
  Table t;
  t.name = "tbl";
  t.truncation = "none";
  t.columns = {"k", "value"};
  t.rows = {{"long key", "1"}, {"b", "22"}};
  r.tables.push_back(t);
  std::string s = report_text(r, "fp");
  CHECK(s.find("  PASS  short\n") != std::string::npos);
  CHECK(s.find("  FAIL  a longer name  why  witness: x\n") != std::string::npos);
  CHECK(s.find("tbl  [none]\n  k        value\n  long key 1\n  b        22\n") != std::string::npos);
  CHECK(s.find(" \n") == std::string::npos);
}
