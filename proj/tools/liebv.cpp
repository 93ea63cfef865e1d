#include <cstdio>
#include <iostream>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liebv/catalog.hpp"
#include "liebv/cochain.hpp"
#include "liebv/errors.hpp"
#include "liebv/glie.hpp"
#include "liebv/io.hpp"
#include "liebv/scenarios.hpp"

using namespace liebv;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw UsageError("bad integer '" + tok + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("bad integer '" + tok + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = parse_ints(text).at(0);
    return {v, v};
  }
  int lo = parse_ints(text.substr(0, dots)).at(0);
  int hi = parse_ints(text.substr(dots + 2)).at(0);
  if (lo > hi) throw UsageError("empty degree range " + text);
  return {lo, hi};
}

// "1,1,1" is one line in each of degrees 0, 1, 2; "0:1,2:3" lists degree:dim pairs.
GradedDims parse_dims(const std::string& text) {
  GradedDims dims;
  if (text.find(':') == std::string::npos) {
    auto v = parse_ints(text);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] < 0) throw UsageError("dimensions must be nonnegative");
      if (v[k] > 0) dims.emplace_back(static_cast<int>(k), v[k]);
    }
    return dims;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto c = tok.find(':');
    if (c == std::string::npos) throw UsageError("expected degree:dim, got '" + tok + "'");
    int deg = parse_ints(tok.substr(0, c)).at(0), dim = parse_ints(tok.substr(c + 1)).at(0);
    if (dim < 0) throw UsageError("dimensions must be nonnegative");
    if (dim > 0) dims.emplace_back(deg, dim);
  }
  return dims;
}

void emit(const Report& rep, const std::string& fp, bool json) {
  std::cout << (json ? report_json(rep, fp) : report_text(rep, fp));
}

Table summary_table(const std::vector<std::pair<std::string, std::string>>& rows,
                    const std::string& truncation) {
  Table t;
  t.name = "summary";
  t.truncation = truncation;
  t.columns = {"item", "value"};
  for (const auto& [k, v] : rows) t.rows.push_back({k, v});
  return t;
}

int cmd_verify(const std::string& file, bool json) {
  Bialgebra b = load_algebra(file);
  Report rep = validate_structures(b);
  bool inv = false;
  if (rep.ok()) inv = involutivity_check(b);
  rep.tables.push_back(summary_table({{"name", b.name},
                                      {"dim", std::to_string(b.dim())},
                                      {"shift", std::to_string(b.shift)},
                                      {"involutive", rep.ok() ? (inv ? "yes" : "no") : "n/a"}},
                                     "structure constants"));
  emit(rep, fingerprint(b), json);
  return rep.ok() ? 0 : 1;
}

Truncation make_truncation(const std::string& deg, std::optional<int> s_max,
                           const std::vector<std::string>& weights) {
  Truncation t;
  std::tie(t.deg_lo, t.deg_hi) = parse_range(deg);
  for (const auto& w : weights) t.weights.push_back(parse_ints(w));
  if (s_max) {
    if (*s_max < 0) throw UsageError("--s-max must be nonnegative");
    t.s_max = s_max;
  } else if (t.weights.empty()) {
    t.s_max = 4;
  }
  return t;
}

int cmd_cohomology(const std::string& file, const Truncation& t, bool json) {
  Bialgebra b = load_algebra(file);
  CEAlgebra ce(b);
  if (!t.weights.empty() && !b.algebra.has_weights())
    throw UsageError("--weights needs an algebra with weights on every basis element");
  CohomologyTable h = cohomology(ce, t);
  Report rep;
  rep.tables.push_back(h.to_table(ce));
  rep.tables.push_back(h.totals_table());
  if (t.s_max) {
    // deg + 2s, counted only over blocks inside the window
    std::map<int, std::size_t> total;
    for (int d = t.deg_lo; d <= t.deg_hi; ++d) total[d] = 0;
    for (const auto& blk : h.blocks) {
      int td = blk.key.degree + 2 * *blk.key.s;
      if (td >= t.deg_lo && td <= t.deg_hi) total[td] += blk.betti;
    }
    Table tt;
    tt.name = "betti_by_total_degree";
    tt.truncation = t.describe() + ", total = deg + 2s";
    tt.columns = {"total", "betti"};
    for (const auto& [d, c] : total) tt.rows.push_back({std::to_string(d), std::to_string(c)});
    rep.tables.push_back(tt);
  }
  emit(rep, fingerprint(b), json);
  return 0;
}

std::string matrix_row(const SparseMatrix& m, std::size_t r) {
  std::string s;
  for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + to_string(m.at(r, c));
  return s;
}

int cmd_bv_report(const std::string& file, const Truncation& t, bool json) {
  Bialgebra b = load_algebra(file);
  Report rep = validate_structures(b);
  std::string fp = fingerprint(b);
  if (!rep.ok()) {
    emit(rep, fp, json);
    return 1;
  }
  CEAlgebra ce(b);
  const bool inv = involutivity_check(b);
  std::vector<std::pair<std::string, std::string>> summary = {{"involutive", inv ? "yes" : "no"}};
  auto keys = blocks_in(ce, t);

  if (b.cobracket.is_zero()) {
    // B = 0, so Delta = 0 and Ker Delta is everything
    rep.add("B = 0", true, "trivial cobracket");
    summary.push_back({"B", "0"});
    summary.push_back({"Delta", "0"});
    summary.push_back({"differential BV", "exact"});
    rep.tables.push_back(summary_table(summary, t.describe()));
    CohomologyTable h = cohomology(ce, t);
    rep.tables.push_back(h.totals_table());
    emit(rep, fp, json);
    return 0;
  }
  if (b.shift != 0) {
    rep.add("B^2 = 0", true, "n/a: shift " + std::to_string(b.shift));
    summary.push_back({"status", "no BV operator for shift " + std::to_string(b.shift)});
    rep.tables.push_back(summary_table(summary, t.describe()));
    emit(rep, fp, json);
    return rep.ok() ? 0 : 1;
  }

  std::string bad_b2, bad_comm;
  bool delta_zero = true;
  for (const auto& k : keys) {
    BlockKey below = k;
    below.degree -= 1;
    BlockKey above = k;
    above.degree += 1;
    SparseMatrix bk = bv_operator(ce, k).matrix;
    if (bad_b2.empty() && !(bv_operator(ce, below).matrix * bk).is_zero()) bad_b2 = k.label();
    SparseMatrix dk = delta_operator(ce, k).matrix;
    if (!dk.is_zero()) delta_zero = false;
    if (bad_comm.empty() && !(delta_operator(ce, above).matrix * ce.d_matrix(k) == ce.d_matrix(k) * dk))
      bad_comm = k.label();
  }
  auto wit = [](const std::string& s) {
    return s.empty() ? std::vector<std::string>{} : std::vector<std::string>{s};
  };
  rep.add("B^2 = 0", bad_b2.empty(), std::to_string(keys.size()) + " blocks", wit(bad_b2));
  rep.add("Delta commutes with d", bad_comm.empty(), std::to_string(keys.size()) + " blocks", wit(bad_comm));
  summary.push_back({"Delta", delta_zero ? "0" : "nonzero"});
  summary.push_back({"differential BV", delta_zero ? "exact" : "not exact"});

  SparseMatrix dg = delta_on_generators(ce);
  Table gm;
  gm.name = "delta_on_generators";
  gm.truncation = "generators";
  gm.columns = {"generator", "Delta", "column"};
  for (std::size_t i = 0; i < ce.ngen(); ++i) {
    Cochain c = ce.delta(ce.gen(i));
    gm.rows.push_back({ce.gen_name(i), ce.to_string(c), matrix_row(dg.transpose(), i)});
  }
  rep.tables.push_back(gm);

  try {
    KerDeltaResult kd = ker_delta_complex(ce, t);
    Table ev;
    ev.name = "eigenvalues";
    ev.truncation = "generators";
    ev.columns = {"eigenvalue", "multiplicity"};
    for (const auto& e : kd.eigen) ev.rows.push_back({to_string(e.eigenvalue), std::to_string(e.eigenspace.dim())});
    rep.tables.push_back(ev);
    summary.push_back({"status", "semisimple"});
    std::string bad;
    for (const auto& blk : kd.blocks)
      if (blk.betti_full != blk.betti_kernel && bad.empty()) bad = blk.key.label();
    rep.add("Ker Delta Betti = full Betti", bad.empty(), t.describe(), wit(bad));
    Table kt = kd.to_table();
    kt.truncation = t.describe();
    rep.tables.push_back(kt);
  } catch (const NotSemisimpleError& e) {
    summary.push_back({"status", "not semisimple"});
    summary.push_back({"detail", e.what()});
  }
  rep.tables.insert(rep.tables.begin(), summary_table(summary, t.describe()));
  emit(rep, fp, json);
  return rep.ok() ? 0 : 1;
}

Scenario build_scenario(const std::string& kind, const std::string& dims, int n, const std::string& theta,
                        int dim_w, int order) {
  if (kind == "rcom" || kind == "rcom-l1") {
    if (dims.empty()) throw UsageError(kind + " needs --dims");
    GradedDims g = parse_dims(dims);
    if (g.empty()) throw UsageError("--dims has no nonzero piece");
    return kind == "rcom" ? rcom(g) : rcom_quotient_l1(g);
  }
  if (kind == "rcom-theta") {
    if (n < 1 || theta.empty()) throw UsageError("rcom-theta needs --n and --theta");
    return rcom_quotient_theta(n, parse_ints(theta));
  }
  if (kind == "rpcom") {
    if (dim_w < 1 || order < 1) throw UsageError("rpcom needs --dim and --trunc");
    return rpcom(dim_w, order);
  }
  throw UsageError("unknown scenario kind '" + kind + "'");
}

// CLI11 reads "-1..0" as a flag; glue such values onto their option.
std::vector<std::string> glue_negative_values(int argc, char** argv) {
  static const std::regex value(R"(-\d[\d.,:]*)");
  std::vector<std::string> out;
  for (int k = 1; k < argc; ++k) {
    std::string a = argv[k];
    if ((a == "--deg" || a == "--weights") && k + 1 < argc && std::regex_match(argv[k + 1], value)) {
      out.push_back(a + "=" + argv[++k]);
      // further weights after the first
      while (a == "--weights" && k + 1 < argc && std::regex_match(argv[k + 1], value))
        out.push_back(a + "=" + argv[++k]);
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liebv: shifted Lie bialgebras, BV operators and Chevalley-Eilenberg cohomology"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  bool json = false;
  std::string file, deg, dims, theta, kind;
  std::optional<int> s_max;
  std::vector<std::string> weights;
  int n = 0, dim_w = 0, order = 0;
  bool do_emit = false, do_run = false;

  auto* verify = app.add_subcommand("verify", "validate bracket, form, r-matrix and cobracket");
  verify->add_option("file", file, "algebra JSON")->required();
  verify->add_flag("--json", json, "print the report as JSON");

  auto* coh = app.add_subcommand("cohomology", "Betti numbers and representatives by block");
  coh->add_option("file", file, "algebra JSON")->required();
  coh->add_option("--deg", deg, "degree range a..b")->required();
  auto* smax_opt = coh->add_option("--s-max", s_max, "largest s = length - degree");
  coh->add_option("--weights", weights, "weight blocks, comma separated")->excludes(smax_opt);
  coh->add_flag("--json", json, "print the report as JSON");

  auto* bvr = app.add_subcommand("bv-report", "BV operator, Delta and Ker Delta");
  bvr->add_option("file", file, "algebra JSON")->required();
  bvr->add_option("--deg", deg, "degree range a..b")->required();
  bvr->add_option("--s-max", s_max, "largest s = length - degree");
  bvr->add_flag("--json", json, "print the report as JSON");

  auto* scen = app.add_subcommand("scenario", "build or run a scenario");
  scen->add_option("kind", kind, "rcom | rcom-l1 | rcom-theta | rpcom")->required();
  scen->add_option("--dims", dims, "dimensions by degree, e.g. 1,1,1 or 0:1,1:1");
  scen->add_option("--n", n, "theta size");
  scen->add_option("--theta", theta, "permutation in one-line notation");
  scen->add_option("--dim", dim_w, "dimension of W");
  scen->add_option("--trunc", order, "truncation order");
  auto* e = scen->add_flag("--emit", do_emit, "print the algebra JSON");
  auto* r = scen->add_flag("--run", do_run, "run the scenario checks");
  e->excludes(r);
  scen->add_flag("--json", json, "print the report as JSON");

  std::vector<std::string> args = glue_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(file, json);
    if (*coh) return cmd_cohomology(file, make_truncation(deg, s_max, weights), json);
    if (*bvr) return cmd_bv_report(file, make_truncation(deg, s_max, {}), json);
    if (*scen) {
      if (!do_emit && !do_run) throw UsageError("scenario needs --emit or --run");
      Scenario s = build_scenario(kind, dims, n, theta, dim_w, order);
      if (do_emit) {
        std::cout << emit_algebra(s.bialgebra);
        return 0;
      }
      Report rep = run_scenario(s);
      emit(rep, fingerprint(s.bialgebra), json);
      return rep.ok() ? 0 : 1;
    }
  } catch (const UsageError& ex) {
    std::cerr << "usage error: " << ex.what() << "\n";
    return 2;
  } catch (const ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "invalid parameters: " << ex.what() << "\n";
    return 2;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
