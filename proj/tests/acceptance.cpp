// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <cstdio>
#include <iostream>

#include "liebv/catalog.hpp"
#include "liebv/cochain.hpp"
#include "liebv/identities.hpp"
#include "liebv/io.hpp"
#include "liebv/scenarios.hpp"

using namespace liebv;

namespace {

Truncation window(int lo, int hi, int s_max) {
  Truncation t;
  t.deg_lo = lo;
  t.deg_hi = hi;
  t.s_max = s_max;
  return t;
}

std::string join(const std::vector<std::string>& v, const char* sep = "; ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

SparseVec diagonal(const std::vector<Scalar>& d) {
  SparseVec v;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) v.emplace_back(i, d[i]);
  return v;
}

std::string vec_string(const SparseVec& v) {
  std::string out;
  for (const auto& [i, c] : v) out += (out.empty() ? "" : " ") + std::to_string(i) + ":" + to_string(c);
  return "{" + out + "}";
}

CheckResult c1_borel() {
  Report r = borel_checks(6);
  std::vector<std::string> bad, notes;
  for (const auto& c : r.checks) {
    if (!c.passed) bad.push_back(c.name);
    notes.push_back(c.detail);
  }
  return {"1 Borel of sl(1,1): Betti and bracket", bad.empty(), join(notes), bad};
}

CheckResult c2_delta_r() {
  struct Case {
    std::string label;
    GradedDims dims;
    std::vector<Scalar> expect;
  };
  std::vector<Case> cases = {{"gl(2)", {{0, 2}}, {Scalar(1, 2), Scalar(-1, 2)}},
                             {"gl(3)", {{0, 3}}, {1, 0, -1}},
                             {"gl(1,2)", {{0, 1}, {1, 2}}, {1, 1, 0}}};
  std::vector<std::string> bad, notes;
  for (const auto& c : cases) {
    SparseVec got = delta_r(end_graded(c.dims), standard_r_unsigned(c.dims));
    if (got != diagonal(c.expect)) bad.push_back(c.label);
    notes.push_back(c.label + " " + vec_string(got));
  }
  return {"2 delta r values", bad.empty(), join(notes), bad};
}

CheckResult c3_involutivity() {
  Bialgebra sl = standard_bialgebra({{0, 1}, {1, 1}}, Restriction::sl);
  CEAlgebra ce(sl);
  bool inv = involutivity_check(sl);
  std::string nonzero;
  for (const auto& key : blocks_in(ce, window(-4, 4, 4)))
    if (!delta_operator(ce, key).matrix.is_zero()) {
      nonzero = key.label();
      break;
    }
  bool gl2_inv = involutivity_check(standard_bialgebra({{0, 2}}));
  bool ok = inv && nonzero.empty() && !gl2_inv;
  std::string detail = std::string("sl(1,1) involutive ") + (inv ? "yes" : "no") + ", Delta " +
                       (nonzero.empty() ? "0 on deg -4..4, s <= 4" : "nonzero at " + nonzero) +
                       "; gl(2) involutive " + (gl2_inv ? "yes" : "no");
  return {"3 involutivity", ok, detail, nonzero.empty() ? std::vector<std::string>{} : std::vector{nonzero}};
}

CheckResult c4_double() {
  std::vector<std::string> bad;
  for (const auto& e : catalog()) {
    ManinTriple t = double_of_bialgebra(e.bialgebra);
    Report v = validate_manin(t);
    bool round = same_structure(manin_to_bialgebra(t), e.bialgebra);
    if (!round) bad.push_back(e.label + ": round trip");
    for (const auto& c : v.checks)
      if (!c.passed) bad.push_back(e.label + ": double " + c.name);
  }
  return {"4 Manin double round trip", bad.empty(), std::to_string(catalog().size()) + " bialgebras", bad};
}

CheckResult c5_identities() {
  std::vector<std::string> bad;
  for (const auto& e : catalog()) {
    Report r = identity_suite(e.bialgebra);
    for (const auto& c : r.checks)
      if (!c.passed) bad.push_back(e.label + ": " + c.name + " (" + c.detail + ")");
  }
  return {"5 identity suite", bad.empty(), "deg -2..4, s <= 4, 20 mutations", bad};
}

CheckResult c6_ker_delta() {
  std::vector<std::string> bad, notes;
  auto run = [&](const std::string& label, const Bialgebra& b) {
    CEAlgebra ce(b);
    KerDeltaResult k = ker_delta_complex(ce, window(-4, 3, 4));
    if (!k.quasi_isomorphic()) bad.push_back(label);
    notes.push_back(label + " " + std::to_string(k.blocks.size()) + " blocks");
  };
  run("q1(0:1,1:1,2:1)", standard_bialgebra({{0, 1}, {1, 1}, {2, 1}}, Restriction::q1));
  run("theta(2;1,2)", theta_bialgebra(2, {1, 2}));
  run("theta(2;2,1)", theta_bialgebra(2, {2, 1}));
  return {"6 Ker Delta quasi-isomorphism", bad.empty(), join(notes), bad};
}

CheckResult c7_hochschild_serre() {
  std::vector<std::string> bad, notes;
  auto run = [&](const std::string& label, const GradedDims& dims, int hi, const std::vector<std::size_t>& expect) {
    HochschildSerre h = hochschild_serre_check(dims, -1, hi, 4);
    std::vector<std::size_t> got;
    for (int d = 0; d < static_cast<int>(expect.size()); ++d) got.push_back(h.betti_q[d]);
    std::string seq;
    for (auto x : got) seq += (seq.empty() ? "" : ",") + std::to_string(x);
    notes.push_back(label + " " + seq + " (" + h.detail + ")");
    if (!h.ok || got != expect || h.betti_q[-1] != 0) bad.push_back(label);
  };
  run("(0:1,1:1)", {{0, 1}, {1, 1}}, 3, {1, 2, 1, 0});
  run("(0:1,1:1,2:1)", {{0, 1}, {1, 1}, {2, 1}}, 2, {1, 3, 3});
  return {"7 Hochschild-Serre degeneration", bad.empty(), join(notes), bad};
}

CheckResult c8_theta() {
  std::vector<std::string> bad, notes;
  for (auto [n, th] : {std::pair{1, std::vector<int>{1}}, std::pair{2, std::vector<int>{1, 2}},
                       std::pair{2, std::vector<int>{2, 1}}}) {
    Factorization f = theta_factorization(n, th, -4, 3, 4);
    std::string label = "n=" + std::to_string(n) + " theta=" + std::to_string(th[0]) +
                        (th.size() > 1 ? "," + std::to_string(th[1]) : "");
    notes.push_back(label + " " + std::to_string(f.table.rows.size()) + " nonzero blocks");
    if (!f.ok) bad.push_back(label);
  }
  return {"8 theta factorization", bad.empty(), join(notes), bad};
}

CheckResult c9_rpcom() {
  std::vector<std::string> bad, notes;
  {
    Report r = run_scenario(rpcom(1, 3));
    const CheckResult* c = r.find("H0 = k[x]/(x^2)");
    if (!c || !c->passed) bad.push_back("dim W = 1, N = 3");
    notes.push_back(c ? c->detail : "missing");
  }
  {
    Scenario s = rpcom(2, 2);
    CEAlgebra ce(s.bialgebra);
    H0Presentation p = h0_presentation(s);
    auto target = ce.block({0, 2, std::nullopt});
    Echelon got(target->size()), expect(target->size());
    for (const auto& r : p.relations) got.insert(target->coords(r));
    // sum_k x_ik x_kj
    for (std::uint32_t i = 0; i < 2; ++i)
      for (std::uint32_t j = 0; j < 2; ++j) {
        Cochain c;
        for (std::uint32_t k = 0; k < 2; ++k) c.add(ce.multiply(ce.gen(i * 2 + k), ce.gen(k * 2 + j)));
        expect.insert(target->coords(c));
      }
    bool same = got.rank() == expect.rank();
    for (const auto& row : expect.rows()) same = same && got.contains(row);
    if (p.relations.size() != 4 || !same) bad.push_back("dim W = 2 relations");
    if (!p.matches_kirillov_kostant) bad.push_back("dim W = 2 Kirillov-Kostant");
    notes.push_back(std::to_string(p.relations.size()) + " relations, span " + (same ? "matches" : "differs") +
                    ", global sign " + std::to_string(p.global_sign));
  }
  return {"9 RPCom H0", bad.empty(), join(notes), bad};
}

CheckResult c10_coboundary() {
  std::vector<std::string> bad;
  for (auto [label, dims] : {std::pair<std::string, GradedDims>{"gl(2)", {{0, 2}}},
                             std::pair<std::string, GradedDims>{"gl(1,1)", {{0, 1}, {1, 1}}},
                             std::pair<std::string, GradedDims>{"gl(1,2)", {{0, 1}, {1, 2}}}}) {
    Bialgebra b = standard_bialgebra(dims);
    SparseMatrix expect = coadjoint_matrix(b.algebra, delta_r(b.algebra, *b.rmatrix));
    if (!(delta_on_generators(b) == expect)) bad.push_back(label);
  }
  return {"10 coboundary consistency", bad.empty(), "gl(2), gl(1,1), gl(1,2)", bad};
}

Report run_all() {
  Report r;
  r.checks = {c1_borel(),  c2_delta_r(),         c3_involutivity(), c4_double(), c5_identities(),
              c6_ker_delta(), c7_hochschild_serre(), c8_theta(),      c9_rpcom(),  c10_coboundary()};
  return r;
}

}  // namespace

int main() {
  Report first = run_all();
  std::string a = report_json(first, "acceptance");
  std::string b = report_json(run_all(), "acceptance");
  first.add("11 determinism", a == b, "two full runs, " + std::to_string(a.size()) + " bytes of report JSON");

  bool ok = true;
  for (const auto& c : first.checks) {
    std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    for (const auto& w : c.witness) std::cout << "        " << w << "\n";
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}
