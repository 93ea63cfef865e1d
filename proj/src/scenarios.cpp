#include "liebv/scenarios.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "liebv/errors.hpp"
#include "liebv/identities.hpp"

namespace liebv {

namespace {

std::string dims_label(const GradedDims& dims) {
  std::string out;
  for (const auto& [deg, d] : dims) out += (out.empty() ? "" : ",") + std::to_string(deg) + ":" + std::to_string(d);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (int x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

Truncation window(int lo, int hi, int s_max) {
  Truncation t;
  t.deg_lo = lo;
  t.deg_hi = hi;
  t.s_max = s_max;
  return t;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void add_validation(Report& rep, const Bialgebra& b) {
  Report v = validate_structures(b);
  std::vector<std::string> failed;
  for (const auto& c : v.checks)
    if (!c.passed) failed.push_back(c.name);
  std::string detail = failed.empty() ? std::to_string(v.checks.size()) + " checks" : "failed:";
  for (const auto& f : failed) detail += " " + f;
  rep.add("validate", failed.empty(), detail, failed);
}

void add_compatibility(Report& rep, const CEAlgebra& ce) {
  auto bad = compatibility_defects(ce);
  std::vector<std::string> w;
  if (!bad.empty()) w = {ce.gen_name(bad.front().first), ce.gen_name(bad.front().second)};
  rep.add("compatibility", bad.empty(),
          bad.empty() ? "all generator pairs" : std::to_string(bad.size()) + " failing pairs", w);
}

void add_ker_delta(Report& rep, const CEAlgebra& ce, const Truncation& t) {
  try {
    KerDeltaResult k = ker_delta_complex(ce, t);
    std::string ev;
    for (const auto& p : k.eigen)
      ev += (ev.empty() ? "" : ", ") + to_string(p.eigenvalue) + " (x" + std::to_string(p.eigenspace.dim()) + ")";
    rep.add("ker Delta quasi-isomorphism", k.quasi_isomorphic(), "eigenvalues " + ev);
    Table tb = k.to_table();
    tb.truncation = t.describe();
    rep.tables.push_back(tb);
  } catch (const NotSemisimpleError& e) {
    rep.add("ker Delta quasi-isomorphism", false, std::string("not semisimple: ") + e.what());
  } catch (const UnsupportedShiftError& e) {
    rep.add("ker Delta quasi-isomorphism", true, std::string("n/a: ") + e.what());
  }
}

void add_cohomology(Report& rep, const CEAlgebra& ce, const Truncation& t, bool with_bracket) {
  CohomologyTable h = cohomology(ce, t);
  rep.tables.push_back(h.to_table(ce));
  rep.tables.push_back(h.totals_table());
  if (!with_bracket) return;
  auto entries = cohomology_bracket(ce, h);
  bool ok = std::all_of(entries.begin(), entries.end(), [](const BracketEntry& e) { return e.spot_check; });
  rep.add("cohomology bracket well defined", ok, std::to_string(entries.size()) + " class pairs");
  rep.tables.push_back(bracket_table(ce, h, entries));
}

}  // namespace

// ---------------------------------------------------------------- builders

Scenario rcom(const GradedDims& dims) {
  Scenario s;
  s.kind = ScenarioKind::rcom;
  s.dims = dims;
  s.label = "rcom(" + dims_label(dims) + ")";
  s.bialgebra = trivial_bialgebra(nilradical_n(dims), 0, "n(" + dims_label(dims) + ")");
  s.expected_checks = {{"validate", ""}, {"classical H0", "deg -1..0, s <= 4"}};
  return s;
}

Scenario rcom_quotient_l1(const GradedDims& dims) {
  Scenario s;
  s.kind = ScenarioKind::rcom_l1;
  s.dims = dims;
  s.label = "rcom_l1(" + dims_label(dims) + ")";
  s.bialgebra = standard_bialgebra(dims, Restriction::q1);
  s.expected_checks = {{"validate", ""},
                       {"compatibility", "generator pairs"},
                       {"cohomology", "deg -2..3, s <= 4"},
                       {"cohomology bracket well defined", "deg -2..3, s <= 4"},
                       {"ker Delta quasi-isomorphism", "deg -2..3, s <= 4"}};
  return s;
}

Scenario rcom_quotient_theta(int n, const std::vector<int>& theta) {
  Scenario s;
  s.kind = ScenarioKind::rcom_theta;
  s.n = n;
  s.theta = theta;
  s.label = "rcom_theta(" + std::to_string(n) + ";" + join_ints(theta) + ")";
  s.bialgebra = theta_bialgebra(n, theta);
  s.expected_checks = {{"validate", ""},
                       {"compatibility", "generator pairs"},
                       {"theta factorization", "deg -4..3, s <= 4"},
                       {"ker Delta quasi-isomorphism", "deg -4..3, s <= 4"}};
  return s;
}

Scenario rpcom(int dim_w, int order) {
  if (dim_w < 1) throw std::invalid_argument("dim W must be >= 1");
  if (order < 2) throw std::invalid_argument("truncation order must be >= 2");
  Scenario s;
  s.kind = ScenarioKind::rpcom;
  s.dim_w = dim_w;
  s.order = order;
  s.label = "rpcom(" + std::to_string(dim_w) + ";N=" + std::to_string(order) + ")";
  s.bialgebra = frobenius_loop(FrobeniusAlgebra::matrix_algebra(dim_w), order);
  s.expected_checks = {{"validate", ""},
                       {"H0 presentation", "s <= 3"},
                       {"Kirillov-Kostant", "degree-0 generators"}};
  return s;
}

// ---------------------------------------------------------------- oracles

std::optional<std::vector<std::size_t>> classical_h0(const GradedDims& dims, int s_max) {
  std::map<int, int> pieces;
  for (auto [deg, d] : dims) pieces[deg] += d;
  std::vector<std::size_t> out(s_max + 1, 0);
  out[0] = 1;
  bool all_lines = std::all_of(pieces.begin(), pieces.end(), [](const auto& p) { return p.second == 1; });
  if (pieces.size() <= 2 && !all_lines) {
    if (pieces.size() == 2 && std::next(pieces.begin())->first == pieces.begin()->first + 1) {
      std::size_t v = static_cast<std::size_t>(pieces.begin()->second) * std::next(pieces.begin())->second;
      for (int s = 1; s <= s_max; ++s) out[s] = binomial(v + s - 1, s);
    }
    return out;
  }
  if (!all_lines) return std::nullopt;
  // variables x_a for consecutive degrees; x_a x_{a+1} = 0 when both exist
  std::vector<int> degs;
  for (const auto& p : pieces) degs.push_back(p.first);
  std::vector<bool> adjacent_to_prev;
  for (std::size_t a = 0; a + 1 < degs.size(); ++a)
    if (degs[a + 1] == degs[a] + 1) adjacent_to_prev.push_back(a > 0 && degs[a] == degs[a - 1] + 1);
  // dp[s][used_prev]
  std::vector<std::array<std::size_t, 2>> dp(s_max + 1, {0, 0});
  dp[0][0] = 1;
  for (bool adj : adjacent_to_prev) {
    std::vector<std::array<std::size_t, 2>> nx(s_max + 1, {0, 0});
    for (int s = 0; s <= s_max; ++s)
      for (int u = 0; u < 2; ++u) {
        std::size_t c = dp[s][u];
        if (!c) continue;
        nx[s][0] += c;
        if (adj && u) continue;
        for (int p = 1; s + p <= s_max; ++p) nx[s + p][1] += c;
      }
    dp = nx;
  }
  for (int s = 0; s <= s_max; ++s) out[s] = dp[s][0] + dp[s][1];
  return out;
}

// ---------------------------------------------------------------- PCom

H0Presentation h0_presentation(const Scenario& s) {
  if (s.kind != ScenarioKind::rpcom) throw std::invalid_argument("h0_presentation needs an rpcom scenario");
  if (s.order < 2) throw TruncationError("relations need truncation order >= 2");
  H0Presentation out;
  CEAlgebra ce(s.bialgebra);
  const std::size_t w = static_cast<std::size_t>(s.dim_w);
  const std::size_t da = w * w;
  // degree-0 generators are the duals of E_ij t, indices 0..da-1
  auto gname = [&](std::size_t c) {
    return w == 1 ? std::string("x") : "x" + std::to_string(c / w + 1) + std::to_string(c % w + 1);
  };
  for (std::size_t c = 0; c < da; ++c) out.generators.push_back(gname(c));
  // relations
  BlockKey from{-1, 2, std::nullopt};
  auto blk = ce.block(from);
  auto target = ce.block({0, 2, std::nullopt});
  Echelon ech(target->size());
  for (const auto& m : blk->basis) {
    Cochain r = ce.d(Cochain::monomial(m));
    if (ech.insert(target->coords(r))) out.relations.push_back(r);
  }
  // bracket table against {x_ij, x_kl} = delta_jk x_il - delta_li x_kj
  out.brackets.name = "h0_brackets";
  out.brackets.truncation = "N = " + std::to_string(s.order);
  out.brackets.columns = {"left", "right", "bracket", "kirillov_kostant"};
  bool consistent = true;
  auto kk = [&](std::size_t a, std::size_t b) {
    std::size_t i = a / w, j = a % w, k = b / w, l = b % w;
    Cochain c;
    if (j == k) c.add(Monomial{static_cast<std::uint32_t>(i * w + l)}, 1);
    if (l == i) c.add(Monomial{static_cast<std::uint32_t>(k * w + j)}, -1);
    return c;
  };
  auto rename = [&](const Cochain& c) {
    if (c.is_zero()) return std::string("0");
    std::string out_s;
    for (const auto& [m, x] : c.terms) {
      std::string term = (x == 1 ? "" : x == -1 ? "-" : to_string(x) + " ") + gname(m.at(0));
      out_s += out_s.empty() ? term : (term[0] == '-' ? " - " + term.substr(1) : " + " + term);
    }
    return out_s;
  };
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < da; ++b) {
      Cochain br = ce.bracket(ce.gen(a), ce.gen(b));
      Cochain ref = kk(a, b);
      if (!br.is_zero() || !ref.is_zero()) {
        int sg = 0;
        if (br == ref) sg = 1;
        else if (br == ref.scaled(-1)) sg = -1;
        if (sg == 0 || (out.global_sign != 0 && sg != out.global_sign)) consistent = false;
        if (out.global_sign == 0) out.global_sign = sg;
      }
      out.brackets.rows.push_back({out.generators[a], out.generators[b], rename(br), rename(ref)});
    }
  out.matches_kirillov_kostant = consistent;
  return out;
}

// ---------------------------------------------------------------- HS / factorization

HochschildSerre hochschild_serre_check(const GradedDims& dims, int deg_lo, int deg_hi, int s_max) {
  HochschildSerre out;
  CEAlgebra q(trivial_bialgebra(parabolic_q(dims), 0, "q"));
  CEAlgebra l(trivial_bialgebra(levi_l(dims), 0, "l"));
  Truncation t = window(deg_lo, deg_hi, s_max);
  CohomologyTable hq = cohomology(q, t), hl = cohomology(l, t);
  out.betti_q = hq.betti_by_degree();
  out.betti_l = hl.betti_by_degree();
  out.ok = true;
  for (const auto& bq : hq.blocks) {
    const BlockCohomology* bl = hl.find(bq.key);
    std::size_t lb = bl ? bl->betti : 0;
    if (bq.betti != lb) {
      out.ok = false;
      out.detail = "block " + bq.key.label() + ": q " + std::to_string(bq.betti) + ", l " + std::to_string(lb);
      return out;
    }
  }
  for (int deg = deg_lo; deg <= deg_hi; ++deg)
    for (int s = std::max(0, -deg); s <= s_max; ++s)
      for (const auto& [w, b] : betti_by_weight(q, deg, s))
        if (b != 0 && std::any_of(w.begin(), w.end(), [](int x) { return x != 0; })) {
          out.ok = false;
          out.detail = "nonzero weight class at deg " + std::to_string(deg);
          return out;
        }
  out.detail = "blockwise equal";
  return out;
}

Factorization theta_factorization(int n, const std::vector<int>& theta, int deg_lo, int deg_hi,
                                  int s_max) {
  Factorization out;
  CEAlgebra g(theta_bialgebra(n, theta));
  GradedDims dims;
  for (int k = 0; k < 2 * n; ++k) dims.emplace_back(k, 1);
  CEAlgebra np(trivial_bialgebra(nilradical_n(dims), 0, "n+"));
  auto invariant = [&](const Weight& mu) {
    for (int i = 1; i <= n; ++i)
      if (mu[2 * i - 2] + mu[2 * theta[i - 1] - 1] != 0) return false;
    return true;
  };
  out.table.name = "theta_factorization";
  out.table.truncation = window(deg_lo, deg_hi, s_max).describe();
  out.table.columns = {"block", "betti", "predicted"};
  out.ok = true;
  std::map<std::pair<int, int>, std::size_t> inv;
  auto inv_betti = [&](int deg, int s) {
    auto key = std::make_pair(deg, s);
    auto it = inv.find(key);
    if (it != inv.end()) return it->second;
    std::size_t total = 0;
    if (deg + s >= 0)
      for (const auto& [mu, b] : betti_by_weight(np, deg, s))
        if (invariant(mu)) total += b;
    return inv[key] = total;
  };
  for (const auto& key : blocks_in(g, window(deg_lo, deg_hi, s_max))) {
    std::size_t lhs = block_cohomology(g, key).betti;
    std::size_t rhs = 0;
    for (int k = 0; k <= n; ++k) rhs += binomial(n, k) * inv_betti(key.degree - k, *key.s);
    if (lhs != rhs) out.ok = false;
    if (lhs || rhs)
      out.table.rows.push_back({key.label(), std::to_string(lhs), std::to_string(rhs)});
  }
  return out;
}

Report borel_checks(int s_max) {
  Report rep;
  CEAlgebra ce(standard_bialgebra({{0, 1}, {1, 1}}, Restriction::q1));
  // generators: t = x[h1] (degree 1), x = x[e12] (degree 0, s = 1)
  Truncation t = window(0, 1, s_max);
  CohomologyTable h = cohomology(ce, t);
  bool blocks_ok = true;
  std::map<int, std::size_t> by_total;
  for (const auto& b : h.blocks) {
    if (b.betti != 1) blocks_ok = false;
    // total degree of t^a x^b is a + 2b = length + s
    by_total[b.key.degree + 2 * *b.key.s] += b.betti;
  }
  std::string seq;
  bool totals_ok = true;
  for (int k = 0; k <= 6; ++k) {
    std::size_t v = by_total.count(k) ? by_total[k] : 0;
    seq += (k ? "," : "") + std::to_string(v);
    if (v != 1) totals_ok = false;
  }
  rep.add("Betti k[x] (x) Lambda[t]", blocks_ok && totals_ok, "by total degree 0..6: " + seq);
  rep.tables.push_back(h.to_table(ce));

  const BlockCohomology* ht = h.find({1, 0, std::nullopt});
  const BlockCohomology* hx = h.find({0, 1, std::nullopt});
  auto tc = ce.block(ht->key)->cochain(ht->reps.at(0));
  auto xc = ce.block(hx->key)->cochain(hx->reps.at(0));
  auto coef = [&](const Cochain& u, const Cochain& v, const BlockKey& target) {
    BlockCohomology tg = block_cohomology(ce, target);
    SparseVec c = class_of(ce, tg, ce.bracket(u, v));
    return c.empty() ? Scalar(0) : c.front().second;
  };
  Scalar tx = coef(tc, xc, {0, 1, std::nullopt});
  Scalar xx = coef(xc, xc, {-1, 2, std::nullopt});
  Scalar tt = coef(tc, tc, {1, 0, std::nullopt});
  rep.add("bracket <[t],[x]> = [x]", tx == 1, "computed <[t],[x]> = " + to_string(tx) + " [x]");
  rep.add("bracket <[x],[x]> = 0", xx == 0, "computed " + to_string(xx));
  rep.add("bracket <[t],[t]> = 0", tt == 0, "computed " + to_string(tt));
  return rep;
}

// ---------------------------------------------------------------- catalog

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  GradedLie b = end_part({{0, 2}}, EndPart::q);
  Bialgebra triv = trivial_bialgebra(b, 0, "trivial(b)");
  out.push_back({"trivial(b)", triv});
  Bialgebra du = dual_bialgebra(triv);
  du.name = "dual(b)";
  out.push_back({"dual(b)", du});
  out.push_back({"gl(1|1) standard", standard_bialgebra(1, 1)});
  out.push_back({"q1(0:1,1:1)", standard_bialgebra({{0, 1}, {1, 1}}, Restriction::q1)});
  out.push_back({"q1(0:1,1:1,2:1)", standard_bialgebra({{0, 1}, {1, 1}, {2, 1}}, Restriction::q1)});
  out.push_back({"theta(1;1)", theta_bialgebra(1, {1})});
  out.push_back({"theta(2;1,2)", theta_bialgebra(2, {1, 2})});
  out.push_back({"theta(2;2,1)", theta_bialgebra(2, {2, 1})});
  FrobeniusAlgebra k = FrobeniusAlgebra::matrix_algebra(1), e = FrobeniusAlgebra::matrix_algebra(2);
  out.push_back({"frobenius(k,2)", frobenius_loop(k, 2)});
  out.push_back({"frobenius(k,3)", frobenius_loop(k, 3)});
  out.push_back({"frobenius(End k^2,2)", frobenius_loop(e, 2)});
  for (auto& c : out) c.bialgebra.name = c.label;
  return out;
}

// ---------------------------------------------------------------- runner

Report run_scenario(const Scenario& s) {
  Report rep;
  add_validation(rep, s.bialgebra);
  CEAlgebra ce(s.bialgebra);
  switch (s.kind) {
    case ScenarioKind::rcom: {
      const int s_max = 4;
      Truncation t = window(-1, 0, s_max);
      CohomologyTable h = cohomology(ce, t);
      rep.tables.push_back(h.to_table(ce));
      rep.tables.push_back(h.totals_table());
      std::vector<std::size_t> h0(s_max + 1, 0);
      for (const auto& b : h.blocks)
        if (b.key.degree == 0 && *b.key.s >= 0 && *b.key.s <= s_max) h0[*b.key.s] += b.betti;
      std::string got;
      for (auto v : h0) got += (got.empty() ? "" : ",") + std::to_string(v);
      auto oracle = classical_h0(s.dims, s_max);
      if (oracle) {
        std::string want;
        for (auto v : *oracle) want += (want.empty() ? "" : ",") + std::to_string(v);
        rep.add("classical H0", h0 == *oracle, "H0 by s: " + got + " (expected " + want + ")");
      } else {
        rep.add("classical H0", true, "H0 by s: " + got + " (no oracle for these dims)");
      }
      auto hm1 = h.betti_by_degree()[-1];
      bool chain3 = s.dims == GradedDims{{0, 1}, {1, 1}, {2, 1}};
      rep.add("H^-1", chain3 ? hm1 == 0 : true,
              "H^-1 = " + std::to_string(hm1) + (chain3 ? "" : " (reported, not asserted)"));
      break;
    }
    case ScenarioKind::rcom_l1: {
      add_compatibility(rep, ce);
      Truncation t = window(-2, 3, 4);
      add_cohomology(rep, ce, t, true);
      rep.add("involutive", true, involutivity_check(s.bialgebra) ? "yes" : "no");
      add_ker_delta(rep, ce, t);
      if (s.dims == GradedDims{{0, 1}, {1, 1}}) rep.merge(borel_checks(6), "borel: ");
      break;
    }
    case ScenarioKind::rcom_theta: {
      add_compatibility(rep, ce);
      Factorization f = theta_factorization(s.n, s.theta, -4, 3, 4);
      rep.add("theta factorization", f.ok, std::to_string(f.table.rows.size()) + " nonzero blocks");
      rep.tables.push_back(f.table);
      add_ker_delta(rep, ce, window(-4, 3, 4));
      break;
    }
    case ScenarioKind::rpcom: {
      Truncation t = window(-1, 0, 3);
      CohomologyTable h = cohomology(ce, t);
      rep.tables.push_back(h.to_table(ce));
      std::size_t h0 = h.betti_by_degree()[0];
      H0Presentation p = h0_presentation(s);
      std::size_t want_rel = static_cast<std::size_t>(s.dim_w * s.dim_w);
      std::size_t nvars = want_rel;
      std::size_t want_s2 = binomial(nvars + 1, 2) - want_rel;
      std::size_t got_s2 = 0;
      if (auto b = h.find({0, 2, std::nullopt})) got_s2 = b->betti;
      rep.add("H0 relations", p.relations.size() == want_rel,
              std::to_string(p.relations.size()) + " quadratic relations (expected " +
                  std::to_string(want_rel) + ")");
      rep.add("H0 in s = 2", got_s2 == want_s2,
              std::to_string(got_s2) + " (expected " + std::to_string(want_s2) + ")");
      if (s.dim_w == 1) rep.add("H0 = k[x]/(x^2)", h0 == 2, "dim H0 = " + std::to_string(h0) + " for s <= 3");
      rep.add("Kirillov-Kostant", p.matches_kirillov_kostant,
              "global sign " + std::to_string(p.global_sign));
      rep.tables.push_back(p.brackets);
      break;
    }
  }
  return rep;
}

}  // namespace liebv
