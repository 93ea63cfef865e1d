#include "liebv/identities.hpp"

#include <random>
#include <set>
#include <tuple>

#include "liebv/errors.hpp"

namespace liebv {

namespace {

std::string pair_name(const CEAlgebra& ce, const Cochain& u, const Cochain& v) {
  return ce.to_string(u) + " , " + ce.to_string(v);
}

int deg_of(const CEAlgebra& ce, const Monomial& m) { return ce.degree(m); }

struct Sampler {
  std::mt19937 rng;
  explicit Sampler(std::uint32_t seed) : rng(seed) {}
  std::size_t pick(std::size_t n) { return rng() % n; }
};

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> compatibility_defects(const CEAlgebra& ce) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const int n = ce.shift();
  for (std::size_t i = 0; i < ce.ngen(); ++i)
    for (std::size_t j = 0; j < ce.ngen(); ++j) {
      Cochain u = ce.gen(i), v = ce.gen(j);
      Cochain lhs = ce.d(ce.bracket(u, v));
      Cochain rhs = ce.bracket(ce.d(u), v);
      rhs.add(ce.bracket(u, ce.d(v)), sign_of(ce.gen_degree(i) - n - 1));
      if (lhs != rhs) out.emplace_back(i, j);
    }
  return out;
}

CheckResult mutation_check(const Bialgebra& b, int count, std::uint32_t seed) {
  CheckResult res;
  res.name = "mutation detection";
  const GradedLie& g = b.algebra;
  const std::size_t dim = b.dim();
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      int fi = b.dual_degree(i), fj = b.dual_degree(j);
      if (i == j && !parity(fi)) continue;  // forced to vanish by antisymmetry
      for (std::size_t k = 0; k < dim; ++k)
        if (fi + fj == b.dual_degree(k)) slots.emplace_back(i, j, k);
    }
  if (slots.empty()) {
    res.detail = "no degree-admissible entries";
    return res;
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> present;
  for (const auto& e : b.cobracket.entries())
    if (e.i <= e.j) present.emplace_back(e.i, e.j, e.k);
  bool abelian = g.structure().is_zero();
  Sampler rs(seed);
  int agree = 0, detected = 0;
  for (int t = 0; t < count; ++t) {
    std::size_t i, j, k;
    Scalar delta;
    if (!present.empty() && rs.pick(2) == 0) {
      std::tie(i, j, k) = present[rs.pick(present.size())];
      delta = -2 * coeff(b.cobracket.at(i, j), k);
    } else {
      std::tie(i, j, k) = slots[rs.pick(slots.size())];
      delta = 1;
    }
    Bialgebra m = b;
    m.name = b.name + " mutated";
    m.form.reset();
    m.rmatrix.reset();
    m.cobracket.add(i, j, k, delta);
    if (i != j)
      m.cobracket.add(j, i, k, -sign_of(parity(b.dual_degree(i)) * parity(b.dual_degree(j))) * delta);
    CEAlgebra ce(m);
    bool compat_fail = !compatibility_defects(ce).empty();
    bool cocycle_fail = !cocycle_defects(g, m.cobracket, m.shift).empty();
    if (compat_fail == cocycle_fail) ++agree;
    else if (res.witness.empty())
      res.witness = {g.element(i).name, g.element(j).name, g.element(k).name};
    if (compat_fail) ++detected;
  }
  res.passed = agree == count && (abelian || detected > 0);
  res.detail = "agreement " + std::to_string(agree) + "/" + std::to_string(count) + ", detected " +
               std::to_string(detected) + "/" + std::to_string(count) + (abelian ? ", abelian" : "");
  return res;
}

Report identity_suite(const Bialgebra& b, const IdentityOptions& opt) {
  Report rep;
  CEAlgebra ce(b);
  const int n = b.shift;
  const int nb = ce.bracket_shift();
  const bool has_bv = n == 0;
  const std::string na = "n/a: shift " + std::to_string(n);
  Truncation t;
  t.deg_lo = opt.deg_lo;
  t.deg_hi = opt.deg_hi;
  t.s_max = opt.s_max;
  std::vector<BlockKey> keys = blocks_in(ce, t);

  auto shifted = [](BlockKey k, int dd) {
    k.degree += dd;
    return k;
  };

  // d^2 = 0
  {
    std::string bad;
    for (const auto& k : keys)
      if (!(ce.d_matrix(shifted(k, 1)) * ce.d_matrix(k)).is_zero()) {
        bad = k.label();
        break;
      }
    rep.add("d^2 = 0", bad.empty(), std::to_string(keys.size()) + " blocks",
            bad.empty() ? std::vector<std::string>{} : std::vector<std::string>{bad});
  }

  // B^2 = 0 and Delta on blocks
  std::map<BlockKey, SparseMatrix> bmat, dlt;
  auto bm = [&](const BlockKey& k) -> const SparseMatrix& {
    auto it = bmat.find(k);
    if (it == bmat.end()) it = bmat.emplace(k, bv_operator(ce, k).matrix).first;
    return it->second;
  };
  auto dm = [&](const BlockKey& k) -> const SparseMatrix& {
    auto it = dlt.find(k);
    if (it == dlt.end()) it = dlt.emplace(k, delta_operator(ce, k).matrix).first;
    return it->second;
  };
  if (has_bv) {
    std::string bad;
    for (const auto& k : keys)
      if (!(bm(shifted(k, -1)) * bm(k)).is_zero()) {
        bad = k.label();
        break;
      }
    rep.add("B^2 = 0", bad.empty(), std::to_string(keys.size()) + " blocks",
            bad.empty() ? std::vector<std::string>{} : std::vector<std::string>{bad});
  } else {
    rep.add("B^2 = 0", true, na);
  }

  // monomial pool from the window
  std::vector<Monomial> pool;
  for (const auto& k : keys)
    for (const auto& m : ce.block(k)->basis) pool.push_back(m);
  Sampler rs(opt.seed);
  auto rand_mono = [&]() { return Cochain::monomial(pool[rs.pick(pool.size())]); };

  // d derivation and Delta derivation on random pairs
  {
    std::vector<std::string> wd, wD;
    int tested = 0;
    for (int r = 0; r < opt.random_pairs && !pool.empty(); ++r) {
      Cochain u = rand_mono(), v = rand_mono();
      int du = *ce.degree(u);
      Cochain uv = ce.multiply(u, v);
      Cochain rhs = ce.multiply(ce.d(u), v);
      rhs.add(ce.multiply(u, ce.d(v)), sign_of(du));
      if (ce.d(uv) != rhs && wd.empty()) wd = {pair_name(ce, u, v)};
      if (has_bv) {
        Cochain r2 = ce.multiply(ce.delta(u), v);
        r2.add(ce.multiply(u, ce.delta(v)));
        if (ce.delta(uv) != r2 && wD.empty()) wD = {pair_name(ce, u, v)};
      }
      ++tested;
    }
    rep.add("d is a derivation", wd.empty(), std::to_string(tested) + " random pairs", wd);
    if (has_bv)
      rep.add("Delta is a derivation", wD.empty(), std::to_string(tested) + " random pairs", wD);
    else
      rep.add("Delta is a derivation", true, na);
  }

  // bracket generated by B on all short pairs
  std::vector<Monomial> shorts;
  for (const auto& m : pool)
    if (!m.empty() && static_cast<int>(m.size()) < opt.max_pair_length) shorts.push_back(m);
  {
    std::set<Monomial> uniq(shorts.begin(), shorts.end());
    shorts.assign(uniq.begin(), uniq.end());
  }
  if (has_bv) {
    std::vector<std::string> w;
    std::size_t tested = 0;
    for (const auto& a : shorts)
      for (const auto& c : shorts) {
        if (static_cast<int>(a.size() + c.size()) > opt.max_pair_length) continue;
        Cochain u = Cochain::monomial(a), v = Cochain::monomial(c);
        int du = deg_of(ce, a);
        Cochain ext = ce.bv(ce.multiply(u, v));
        ext.add(ce.multiply(ce.bv(u), v), -1);
        ext.add(ce.multiply(u, ce.bv(v)), -sign_of(du));
        ext = ext.scaled(sign_of(du));
        if (ext != ce.bracket(u, v) && w.empty()) w = {pair_name(ce, u, v)};
        ++tested;
      }
    rep.add("B generates the bracket", w.empty(), std::to_string(tested) + " pairs", w);
  } else {
    rep.add("B generates the bracket", true, na);
  }

  // shifted antisymmetry and Jacobi
  {
    std::vector<Monomial> tiny;
    for (const auto& m : shorts)
      if (m.size() <= 2) tiny.push_back(m);
    std::vector<std::string> w;
    for (const auto& a : tiny)
      for (const auto& c : tiny) {
        Cochain u = Cochain::monomial(a), v = Cochain::monomial(c);
        int s = sign_of((deg_of(ce, a) - nb) * (deg_of(ce, c) - nb));
        if (ce.bracket(u, v) != ce.bracket(v, u).scaled(-s) && w.empty()) w = {pair_name(ce, u, v)};
      }
    rep.add("bracket antisymmetry", w.empty(), std::to_string(tiny.size() * tiny.size()) + " pairs", w);
    w.clear();
    int tested = 0;
    for (int r = 0; r < opt.random_triples && !tiny.empty(); ++r) {
      const Monomial& a = tiny[rs.pick(tiny.size())];
      const Monomial& c = tiny[rs.pick(tiny.size())];
      const Monomial& e = tiny[rs.pick(tiny.size())];
      Cochain u = Cochain::monomial(a), v = Cochain::monomial(c), x = Cochain::monomial(e);
      Cochain lhs = ce.bracket(u, ce.bracket(v, x));
      Cochain rhs = ce.bracket(ce.bracket(u, v), x);
      rhs.add(ce.bracket(v, ce.bracket(u, x)), sign_of((deg_of(ce, a) - nb) * (deg_of(ce, c) - nb)));
      if (lhs != rhs && w.empty()) w = {ce.to_string(u), ce.to_string(v), ce.to_string(x)};
      ++tested;
    }
    rep.add("bracket Jacobi", w.empty(), std::to_string(tested) + " random triples", w);
  }

  // Delta commutes with d and B
  if (has_bv) {
    std::string bad_d, bad_b;
    for (const auto& k : keys) {
      if (bad_d.empty() && !(dm(shifted(k, 1)) * ce.d_matrix(k) == ce.d_matrix(k) * dm(k)))
        bad_d = k.label();
      if (bad_b.empty() && !(dm(shifted(k, -1)) * bm(k) == bm(k) * dm(k))) bad_b = k.label();
    }
    rep.add("Delta commutes with d", bad_d.empty(), std::to_string(keys.size()) + " blocks",
            bad_d.empty() ? std::vector<std::string>{} : std::vector<std::string>{bad_d});
    rep.add("Delta commutes with B", bad_b.empty(), std::to_string(keys.size()) + " blocks",
            bad_b.empty() ? std::vector<std::string>{} : std::vector<std::string>{bad_b});
  } else {
    rep.add("Delta commutes with d", true, na);
    rep.add("Delta commutes with B", true, na);
  }

  // compatibility of d with the bracket
  {
    auto bad = compatibility_defects(ce);
    std::vector<std::string> w;
    if (!bad.empty()) w = {ce.gen_name(bad.front().first), ce.gen_name(bad.front().second)};
    rep.add("compatibility", bad.empty(),
            bad.empty() ? "all generator pairs"
                        : std::to_string(bad.size()) + " failing generator pairs",
            w);
  }

  rep.checks.push_back(mutation_check(b, opt.mutations, opt.seed + 1));
  return rep;
}

}  // namespace liebv
