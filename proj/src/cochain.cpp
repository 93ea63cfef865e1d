#include "liebv/cochain.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "liebv/errors.hpp"

namespace liebv {

// ---------------------------------------------------------------- Cochain

Cochain Cochain::constant(const Scalar& c) { return monomial({}, c); }

Cochain Cochain::monomial(Monomial m, const Scalar& c) {
  Cochain out;
  if (c != 0) out.terms.emplace(std::move(m), c);
  return out;
}

void Cochain::add(const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

void Cochain::add(const Cochain& other, const Scalar& c) {
  for (const auto& [m, v] : other.terms) add(m, c * v);
}

Cochain Cochain::scaled(const Scalar& c) const {
  Cochain out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms) out.terms.emplace(m, c * v);
  return out;
}

// ---------------------------------------------------------------- blocks

std::string BlockKey::label() const {
  std::string out = "deg=" + std::to_string(degree);
  if (s) out += ",s=" + std::to_string(*s);
  if (weight) {
    out += ",w=(";
    for (std::size_t k = 0; k < weight->size(); ++k)
      out += (k ? "," : "") + std::to_string((*weight)[k]);
    out += ")";
  }
  return out;
}

SparseVec Block::coords(const Cochain& c) const {
  SparseVec v;
  v.reserve(c.terms.size());
  for (const auto& [m, x] : c.terms) {
    auto it = index.find(m);
    if (it == index.end())
      throw TruncationError("term outside block " + key.label());
    v.emplace_back(it->second, x);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Cochain Block::cochain(const SparseVec& v) const {
  Cochain c;
  for (const auto& [i, x] : v) c.add(basis.at(i), x);
  return c;
}

// ---------------------------------------------------------------- CEAlgebra

CEAlgebra::CEAlgebra(Bialgebra b) : b_(std::move(b)) {
  const GradedLie& g = b_.algebra;
  const std::size_t n = g.dim();
  dgen_.resize(n);
  const Scalar half(1, 2);
  for (const auto& e : g.structure().entries()) {
    int sg = sign_of(g.par(e.i) * g.par(e.j) + g.par(e.i));
    auto prod = multiply(Monomial{static_cast<std::uint32_t>(e.i)},
                         Monomial{static_cast<std::uint32_t>(e.j)});
    if (!prod) continue;
    dgen_[e.k].add(prod->second, half * sg * prod->first * e.value);
  }
}

std::optional<Weight> CEAlgebra::gen_weight(std::size_t i) const {
  const auto& w = b_.algebra.element(i).weight;
  if (!w) return std::nullopt;
  Weight out(*w);
  for (auto& x : out) x = -x;
  return out;
}

std::string CEAlgebra::gen_name(std::size_t i) const {
  return "x[" + b_.algebra.element(i).name + "]";
}

int CEAlgebra::degree(const Monomial& m) const {
  int d = 0;
  for (auto i : m) d += gen_degree(i);
  return d;
}

std::optional<Weight> CEAlgebra::weight(const Monomial& m) const {
  if (!b_.algebra.has_weights()) return std::nullopt;
  std::size_t len = b_.algebra.dim() ? b_.algebra.element(0).weight->size() : 0;
  Weight w(len, 0);
  for (auto i : m) {
    const auto& gw = *b_.algebra.element(i).weight;
    for (std::size_t k = 0; k < len; ++k) w[k] -= gw[k];
  }
  return w;
}

std::string CEAlgebra::name(const Monomial& m) const {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t a = 0; a < m.size();) {
    std::size_t b = a;
    while (b < m.size() && m[b] == m[a]) ++b;
    if (!out.empty()) out += "*";
    out += gen_name(m[a]);
    if (b - a > 1) out += "^" + std::to_string(b - a);
    a = b;
  }
  return out;
}

std::string CEAlgebra::to_string(const Cochain& c) const {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [m, x] : c.terms) {
    std::string coef = liebv::to_string(x);
    if (out.empty()) {
      if (x == -1 && !m.empty()) out += "-";
      else if (x != 1 || m.empty()) out += coef + (m.empty() ? "" : " ");
    } else {
      out += x < 0 ? " - " : " + ";
      Scalar a = abs(x);
      if (a != 1 || m.empty()) out += liebv::to_string(a) + (m.empty() ? "" : " ");
    }
    if (!m.empty()) out += name(m);
  }
  return out;
}

std::optional<int> CEAlgebra::degree(const Cochain& c) const {
  std::optional<int> d;
  for (const auto& [m, x] : c.terms) {
    int k = degree(m);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

std::optional<std::pair<int, Monomial>> CEAlgebra::multiply(const Monomial& a,
                                                            const Monomial& b) const {
  int odd_swaps = 0;
  // each factor of b moves left past the strictly larger factors of a
  for (auto y : b) {
    if (!gen_parity(y)) continue;
    auto first = std::upper_bound(a.begin(), a.end(), y);
    for (auto it = first; it != a.end(); ++it) odd_swaps += gen_parity(*it);
  }
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  for (std::size_t k = 0; k + 1 < m.size(); ++k)
    if (m[k] == m[k + 1] && gen_parity(m[k])) return std::nullopt;
  return std::make_pair(sign_of(odd_swaps), std::move(m));
}

Cochain CEAlgebra::multiply(const Cochain& a, const Cochain& b) const {
  Cochain out;
  for (const auto& [u, x] : a.terms)
    for (const auto& [v, y] : b.terms) {
      auto p = multiply(u, v);
      if (p) out.add(p->second, p->first * x * y);
    }
  return out;
}

namespace {

// pre * c * post with pre, post read off m around position a
Cochain splice(const CEAlgebra& ce, const Monomial& m, std::size_t a, const Cochain& c) {
  Monomial pre(m.begin(), m.begin() + a), post(m.begin() + a + 1, m.end());
  Cochain out;
  for (const auto& [mid, x] : c.terms) {
    auto p1 = ce.multiply(pre, mid);
    if (!p1) continue;
    auto p2 = ce.multiply(p1->second, post);
    if (!p2) continue;
    out.add(p2->second, p1->first * p2->first * x);
  }
  return out;
}

}  // namespace

Cochain CEAlgebra::d(const Cochain& c) const {
  Cochain out;
  for (const auto& [m, x] : c.terms) {
    int pre_deg = 0;
    for (std::size_t a = 0; a < m.size(); ++a) {
      if (!dgen_[m[a]].is_zero()) out.add(splice(*this, m, a, dgen_[m[a]]), x * sign_of(pre_deg));
      pre_deg += gen_degree(m[a]);
    }
  }
  return out;
}

Cochain extend_bracket(const CEAlgebra& ce, int nshift,
                       const std::function<Cochain(std::size_t, std::size_t)>& on_generators,
                       const Cochain& u, const Cochain& v) {
  // <x_g, v> for a single generator g
  auto with_generator = [&](std::uint32_t g, const Monomial& m) {
    Cochain out;
    int pre_deg = 0;
    for (std::size_t b = 0; b < m.size(); ++b) {
      Cochain inner = on_generators(g, m[b]);
      if (!inner.is_zero())
        out.add(splice(ce, m, b, inner), sign_of((ce.gen_degree(g) - nshift) * pre_deg));
      pre_deg += ce.gen_degree(m[b]);
    }
    return out;
  };
  auto mono = [&](const Monomial& a, const Monomial& b) {
    if (a.empty() || b.empty()) return Cochain{};
    if (a.size() == 1) return with_generator(a[0], b);
    // antisymmetry, then Leibniz over the factors of a
    int da = ce.degree(a) - nshift, db = ce.degree(b) - nshift;
    Cochain out;
    int pre_deg = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      int gk = ce.gen_degree(a[k]) - nshift;
      Cochain inner = with_generator(a[k], b).scaled(-sign_of(db * gk));
      if (!inner.is_zero()) out.add(splice(ce, a, k, inner), sign_of(db * pre_deg));
      pre_deg += ce.gen_degree(a[k]);
    }
    return out.scaled(-sign_of(da * db));
  };
  Cochain out;
  for (const auto& [a, x] : u.terms)
    for (const auto& [b, y] : v.terms) out.add(mono(a, b), x * y);
  return out;
}

Cochain CEAlgebra::bracket(const Cochain& u, const Cochain& v) const {
  auto on_gen = [this](std::size_t i, std::size_t j) {
    Cochain c;
    for (const auto& [k, x] : b_.cobracket.at(i, j)) c.add(Monomial{static_cast<std::uint32_t>(k)}, x);
    return c;
  };
  return extend_bracket(*this, bracket_shift(), on_gen, u, v);
}

Cochain CEAlgebra::bv(const Cochain& c) const {
  if (b_.shift != 0)
    throw UnsupportedShiftError("BV operator is defined for shift 0 only (shift " +
                                std::to_string(b_.shift) + ")");
  Cochain out;
  for (const auto& [m, x] : c.terms) {
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        const auto& gam = b_.cobracket.at(m[a], m[b]);
        if (gam.empty()) continue;
        int swaps = 0;
        for (std::size_t k = 0; k < a; ++k) swaps += gen_parity(m[a]) * gen_parity(m[k]);
        for (std::size_t k = 0; k < b; ++k)
          if (k != a) swaps += gen_parity(m[b]) * gen_parity(m[k]);
        Monomial rest;
        for (std::size_t k = 0; k < m.size(); ++k)
          if (k != a && k != b) rest.push_back(m[k]);
        Scalar sc = x * sign_of(swaps) * sign_of(gen_degree(m[a]));
        for (const auto& [k, y] : gam) {
          auto p = multiply(Monomial{static_cast<std::uint32_t>(k)}, rest);
          if (p) out.add(p->second, sc * y * p->first);
        }
      }
  }
  return out;
}

Cochain CEAlgebra::delta(const Cochain& c) const {
  Cochain out = bv(d(c));
  out.add(d(bv(c)));
  return out;
}

bool CEAlgebra::has_negative_generator() const {
  for (std::size_t i = 0; i < ngen(); ++i)
    if (b_.algebra.degree(i) < 0) return true;
  return false;
}

const std::vector<int>& CEAlgebra::cone_functional() const {
  if (cone_) return *cone_;
  std::vector<Weight> ws;
  std::size_t len = 0;
  for (std::size_t i = 0; i < ngen(); ++i) {
    Weight w = *gen_weight(i);
    len = w.size();
    if (std::any_of(w.begin(), w.end(), [](int x) { return x != 0; })) ws.push_back(w);
  }
  std::vector<int> lambda(len, 0);
  auto dotw = [&](const Weight& w) {
    long s = 0;
    for (std::size_t k = 0; k < len; ++k) s += static_cast<long>(lambda[k]) * w[k];
    return s;
  };
  for (int iter = 0; iter < 10000; ++iter) {
    bool changed = false;
    for (const auto& w : ws)
      if (dotw(w) <= 0) {
        for (std::size_t k = 0; k < len; ++k) lambda[k] += w[k];
        changed = true;
      }
    if (!changed) {
      cone_ = lambda;
      return *cone_;
    }
  }
  throw NonPointedConeError("generator weights do not lie in a pointed cone");
}

std::vector<Monomial> CEAlgebra::enumerate(const BlockKey& key) const {
  const std::size_t n = ngen();
  std::vector<Monomial> out;
  Monomial cur;
  if (key.s) {
    int len = key.degree + *key.s;
    if (len < 0) return out;
    std::vector<int> lo(n + 1, 0), hi(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      lo[i] = i + 1 < n ? std::min(lo[i + 1], gen_degree(i)) : gen_degree(i);
      hi[i] = i + 1 < n ? std::max(hi[i + 1], gen_degree(i)) : gen_degree(i);
    }
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t start, int left, int deg) {
      if (left == 0) {
        if (deg == 0 && (!key.weight || weight(cur) == key.weight)) out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        if (deg < lo[i] * left || deg > hi[i] * left) continue;
        if (gen_parity(i) && !cur.empty() && cur.back() == i) continue;
        cur.push_back(static_cast<std::uint32_t>(i));
        rec(i, left - 1, deg - gen_degree(i));
        cur.pop_back();
      }
    };
    rec(0, len, key.degree);
    return out;
  }
  if (!key.weight) throw std::invalid_argument("block selector needs s or a weight");
  if (!b_.algebra.has_weights()) throw InfeasibleBlockError("algebra carries no weights");
  const auto& lambda = cone_functional();
  std::vector<long> cost(n);
  for (std::size_t i = 0; i < n; ++i) {
    Weight w = *gen_weight(i);
    if (w.size() != key.weight->size()) throw InfeasibleBlockError("weight length mismatch");
    long c = 0;
    for (std::size_t k = 0; k < w.size(); ++k) c += static_cast<long>(lambda[k]) * w[k];
    cost[i] = c;
    if (c == 0 && !gen_parity(i))
      throw InfeasibleBlockError("even generator " + gen_name(i) + " has weight zero");
  }
  long budget = 0;
  for (std::size_t k = 0; k < key.weight->size(); ++k)
    budget += static_cast<long>(lambda[k]) * (*key.weight)[k];
  if (budget < 0) return out;
  std::function<void(std::size_t, long)> rec = [&](std::size_t start, long left) {
    if (left == 0 && degree(cur) == key.degree && weight(cur) == key.weight) out.push_back(cur);
    for (std::size_t i = start; i < n; ++i) {
      if (cost[i] > left) continue;
      if (gen_parity(i) && !cur.empty() && cur.back() == i) continue;
      cur.push_back(static_cast<std::uint32_t>(i));
      rec(i, left - cost[i]);
      cur.pop_back();
    }
  };
  rec(0, budget);
  return out;
}

std::shared_ptr<const Block> CEAlgebra::block(const BlockKey& key) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return it->second;
  }
  auto b = std::make_shared<Block>();
  b->key = key;
  b->basis = enumerate(key);
  for (std::size_t i = 0; i < b->basis.size(); ++i) b->index.emplace(b->basis[i], i);
  std::lock_guard<std::mutex> lock(mu_);
  return blocks_.emplace(key, std::move(b)).first->second;
}

SparseMatrix CEAlgebra::op_matrix(const Block& from, const Block& to,
                                  const std::function<Cochain(const Cochain&)>& op) const {
  std::vector<SparseVec> cols;
  cols.reserve(from.size());
  for (const auto& m : from.basis) cols.push_back(to.coords(op(Cochain::monomial(m))));
  return SparseMatrix::from_columns(to.size(), std::move(cols));
}

const SparseMatrix& CEAlgebra::d_matrix(const BlockKey& key) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = dmats_.find(key);
    if (it != dmats_.end()) return *it->second;
  }
  BlockKey next = key;
  next.degree += 1;
  auto m = std::make_shared<SparseMatrix>(
      op_matrix(*block(key), *block(next), [this](const Cochain& c) { return d(c); }));
  std::lock_guard<std::mutex> lock(mu_);
  return *dmats_.emplace(key, std::move(m)).first->second;
}

// ---------------------------------------------------------------- operators

std::shared_ptr<const Block> enumerate_block(const CEAlgebra& ce, const BlockKey& key) {
  return ce.block(key);
}

BlockOperator ce_differential(const CEAlgebra& ce, const BlockKey& key) {
  BlockKey to = key;
  to.degree += 1;
  return {key, to, ce.d_matrix(key)};
}

BlockOperator bv_operator(const CEAlgebra& ce, const BlockKey& key) {
  BlockKey to = key;
  to.degree -= 1;
  return {key, to,
          ce.op_matrix(*ce.block(key), *ce.block(to), [&](const Cochain& c) { return ce.bv(c); })};
}

BlockOperator delta_operator(const CEAlgebra& ce, const BlockKey& key) {
  return {key, key,
          ce.op_matrix(*ce.block(key), *ce.block(key), [&](const Cochain& c) { return ce.delta(c); })};
}

Cochain poisson_bracket(const CEAlgebra& ce, const Cochain& u, const Cochain& v) {
  return ce.bracket(u, v);
}

SparseMatrix delta_on_generators(const CEAlgebra& ce) {
  const std::size_t n = ce.ngen();
  std::vector<SparseVec> cols;
  for (std::size_t i = 0; i < n; ++i) {
    Cochain c = ce.delta(ce.gen(i));
    SparseVec v;
    for (const auto& [m, x] : c.terms) {
      if (m.size() != 1) throw std::logic_error("Delta of a generator is not linear");
      v.emplace_back(m[0], x);
    }
    cols.push_back(v);
  }
  return SparseMatrix::from_columns(n, std::move(cols));
}

SparseMatrix delta_on_generators(const Bialgebra& b) {
  CEAlgebra ce(b);
  return delta_on_generators(ce);
}

// ---------------------------------------------------------------- modules

Module trivial_module() {
  Module m;
  m.names = {"1"};
  m.degrees = {0};
  return m;
}

Module adjoint_module(const GradedLie& g) {
  Module m;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m.names.push_back(g.element(i).name);
    m.degrees.push_back(g.degree(i));
  }
  m.action.assign(n, std::vector<SparseVec>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < n; ++a) m.action[x][a] = g.bracket(x, a);
  return m;
}

Module adjoint_squared_module(const GradedLie& g, int shift) {
  Module m;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m.names.push_back(g.element(i).name + "(x)" + g.element(j).name);
      m.degrees.push_back(g.degree(i) + g.degree(j) + shift);
    }
  m.action.assign(n, std::vector<SparseVec>(n * n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        VecAccumulator acc;
        for (const auto& [k, c] : g.bracket(x, i)) acc.add(k * n + j, c);
        for (const auto& [k, c] : g.bracket(x, j)) acc.add(i * n + k, c * sign_of(g.par(x) * g.par(i)));
        m.action[x][i * n + j] = acc.finish();
      }
  return m;
}

void check_module(const GradedLie& g, const Module& m) {
  const std::size_t n = g.dim();
  if (m.action.empty()) return;  // zero action
  if (m.action.size() != n) throw NotAModuleError("action has the wrong number of operators");
  auto act = [&](std::size_t x, const SparseVec& v) {
    VecAccumulator acc;
    for (const auto& [a, c] : v) acc.add(m.action[x].at(a), c);
    return acc.finish();
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < m.dim(); ++a) {
        SparseVec ea = unit_vector(a);
        VecAccumulator lhs;
        for (const auto& [k, c] : g.bracket(i, j)) lhs.add(act(k, ea), c);
        SparseVec rhs = axpy(act(i, act(j, ea)), -sign_of(g.par(i) * g.par(j)), act(j, act(i, ea)));
        if (lhs.finish() != rhs)
          throw NotAModuleError("action fails on (" + g.element(i).name + ", " + g.element(j).name +
                                ") at " + m.names[a]);
      }
}

ModuleCochain module_differential(const CEAlgebra& ce, const Module& mod, const ModuleCochain& c) {
  std::map<std::pair<Monomial, std::size_t>, Scalar> acc;
  auto add = [&](const Monomial& m, std::size_t a, const Scalar& x) {
    if (x == 0) return;
    auto key = std::make_pair(m, a);
    auto [it, ins] = acc.emplace(key, x);
    if (!ins) {
      it->second += x;
      if (it->second == 0) acc.erase(it);
    }
  };
  for (const auto& [ma, x] : c) {
    const auto& [m, a] = ma;
    for (const auto& [mm, y] : ce.d(Cochain::monomial(m)).terms) add(mm, a, x * y);
    if (mod.action.empty()) continue;
    int sg = -sign_of(ce.degree(m));
    for (std::size_t i = 0; i < ce.ngen(); ++i) {
      const auto& ea = mod.action[i][a];
      if (ea.empty()) continue;
      auto p = ce.multiply(m, Monomial{static_cast<std::uint32_t>(i)});
      if (!p) continue;
      for (const auto& [b, y] : ea) add(p->second, b, x * y * sg * p->first);
    }
  }
  return acc;
}

namespace {

std::vector<Monomial> monomials_of_length(const CEAlgebra& ce, int length) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < ce.ngen(); ++i) {
      if (ce.gen_parity(i) && !cur.empty() && cur.back() == i) continue;
      cur.push_back(static_cast<std::uint32_t>(i));
      rec(i, left - 1);
      cur.pop_back();
    }
  };
  if (length >= 0) rec(0, length);
  return out;
}

}  // namespace

BlockOperator ce_differential_module(const CEAlgebra& ce, const Module& mod, int length, int degree) {
  check_module(ce.bialgebra().algebra, mod);
  auto basis_of = [&](int len, int deg) {
    std::vector<std::pair<Monomial, std::size_t>> out;
    for (const auto& m : monomials_of_length(ce, len))
      for (std::size_t a = 0; a < mod.dim(); ++a)
        if (ce.degree(m) + mod.degrees[a] == deg) out.emplace_back(m, a);
    return out;
  };
  auto from = basis_of(length, degree), to = basis_of(length + 1, degree + 1);
  std::map<std::pair<Monomial, std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < to.size(); ++k) index.emplace(to[k], k);
  std::vector<SparseVec> cols;
  for (const auto& e : from) {
    ModuleCochain out = module_differential(ce, mod, {{e, Scalar(1)}});
    VecAccumulator acc;
    for (const auto& [key, x] : out) acc.add(index.at(key), x);
    cols.push_back(acc.finish());
  }
  BlockKey a, b;
  a.degree = degree;
  a.s = length - degree;
  b.degree = degree + 1;
  b.s = length - degree;
  return {a, b, SparseMatrix::from_columns(to.size(), std::move(cols))};
}

ModuleCochain cobracket_cochain(const Bialgebra& b) {
  ModuleCochain out;
  auto phi = phi_tensors(b.algebra, b.cobracket, b.shift);
  for (std::size_t k = 0; k < phi.size(); ++k)
    for (const auto& [ij, x] : phi[k]) out[{Monomial{static_cast<std::uint32_t>(k)}, ij}] = x;
  return out;
}

// ---------------------------------------------------------------- cohomology

std::string Truncation::describe() const {
  std::string out = "deg " + std::to_string(deg_lo) + ".." + std::to_string(deg_hi);
  if (s_max) out += ", s <= " + std::to_string(*s_max);
  if (!weights.empty()) {
    out += ", weights";
    for (const auto& w : weights) {
      out += " (";
      for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "," : "") + std::to_string(w[k]);
      out += ")";
    }
  }
  return out;
}

BlockCohomology block_cohomology(const CEAlgebra& ce, const BlockKey& key) {
  BlockCohomology h;
  h.key = key;
  auto blk = ce.block(key);
  h.dim = blk->size();
  if (h.dim == 0) return h;
  BlockKey prev = key;
  prev.degree -= 1;
  const SparseMatrix& din = ce.d_matrix(prev);
  const SparseMatrix& dout = ce.d_matrix(key);
  RankKernel rk = rank_kernel(dout);
  SubspaceBasis bd = column_space(din);
  Quotient q = quotient_basis(rk.kernel, bd);
  h.rank_in = bd.dim();
  h.rank_out = rk.rank;
  h.betti = q.dim;
  h.boundaries = bd.vectors;
  h.reps = q.reps;
  return h;
}

std::vector<BlockKey> blocks_in(const CEAlgebra& ce, const Truncation& t) {
  std::vector<BlockKey> keys;
  bool neg = ce.has_negative_generator();
  for (int deg = t.deg_lo; deg <= t.deg_hi; ++deg) {
    if (t.s_max) {
      int lo = neg ? -deg : std::max(0, -deg);
      for (int s = lo; s <= *t.s_max; ++s) {
        if (t.weights.empty()) {
          keys.push_back({deg, s, std::nullopt});
        } else {
          for (const auto& w : t.weights) keys.push_back({deg, s, w});
        }
      }
    } else {
      if (t.weights.empty()) throw std::invalid_argument("truncation needs s_max or weights");
      for (const auto& w : t.weights) keys.push_back({deg, std::nullopt, w});
    }
  }
  return keys;
}

std::map<int, std::size_t> CohomologyTable::betti_by_degree() const {
  std::map<int, std::size_t> out;
  for (int d = truncation.deg_lo; d <= truncation.deg_hi; ++d) out[d] = 0;
  for (const auto& b : blocks) out[b.key.degree] += b.betti;
  return out;
}

const BlockCohomology* CohomologyTable::find(const BlockKey& key) const {
  for (const auto& b : blocks)
    if (b.key == key) return &b;
  return nullptr;
}

Table CohomologyTable::to_table(const CEAlgebra& ce) const {
  Table t;
  t.name = "betti";
  t.truncation = truncation.describe();
  t.columns = {"block", "dim", "rank_in", "rank_out", "betti", "representatives"};
  for (const auto& b : blocks) {
    if (b.dim == 0) continue;
    std::string reps;
    auto blk = ce.block(b.key);
    for (const auto& r : b.reps) reps += (reps.empty() ? "" : "; ") + ce.to_string(blk->cochain(r));
    t.rows.push_back({b.key.label(), std::to_string(b.dim), std::to_string(b.rank_in),
                      std::to_string(b.rank_out), std::to_string(b.betti), reps});
  }
  return t;
}

Table CohomologyTable::totals_table() const {
  Table t;
  t.name = "betti_by_degree";
  t.truncation = truncation.describe();
  t.columns = {"degree", "betti"};
  for (const auto& [d, n] : betti_by_degree()) t.rows.push_back({std::to_string(d), std::to_string(n)});
  return t;
}

CohomologyTable cohomology(const CEAlgebra& ce, const Truncation& t) {
  CohomologyTable out;
  out.truncation = t;
  for (const auto& key : blocks_in(ce, t)) out.blocks.push_back(block_cohomology(ce, key));
  return out;
}

SparseVec class_of(const CEAlgebra& ce, const BlockCohomology& h, const Cochain& z) {
  if (z.is_zero()) return {};
  auto blk = ce.block(h.key);
  SparseVec v = blk->coords(z);
  std::vector<SparseVec> span = h.boundaries;
  span.insert(span.end(), h.reps.begin(), h.reps.end());
  auto sol = SpanSolver(blk->size(), span).solve(v);
  if (!sol) throw NotACocycleError("cochain is not closed in block " + h.key.label());
  SparseVec out;
  for (const auto& [k, x] : *sol)
    if (k >= h.boundaries.size()) out.emplace_back(k - h.boundaries.size(), x);
  return out;
}

std::vector<BracketEntry> cohomology_bracket(const CEAlgebra& ce, const CohomologyTable& h) {
  std::vector<BracketEntry> out;
  std::map<BlockKey, BlockCohomology> targets;
  auto target_of = [&](const BlockKey& a, const BlockKey& b) {
    BlockKey t;
    t.degree = a.degree + b.degree - ce.bracket_shift();
    if (a.s && b.s) t.s = *a.s + *b.s + ce.shift();
    if (a.weight && b.weight) {
      Weight w(*a.weight);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += (*b.weight)[k];
      t.weight = w;
    }
    auto it = targets.find(t);
    if (it == targets.end()) it = targets.emplace(t, block_cohomology(ce, t)).first;
    return &it->second;
  };
  for (const auto& ba : h.blocks) {
    if (ba.betti == 0) continue;
    auto blka = ce.block(ba.key);
    for (std::size_t i = 0; i < ba.reps.size(); ++i) {
      Cochain u = blka->cochain(ba.reps[i]);
      if (!ce.d(u).is_zero()) throw NotACocycleError("representative is not closed");
      for (const auto& bb : h.blocks) {
        if (bb.betti == 0) continue;
        auto blkb = ce.block(bb.key);
        for (std::size_t j = 0; j < bb.reps.size(); ++j) {
          Cochain v = blkb->cochain(bb.reps[j]);
          const BlockCohomology* tgt = target_of(ba.key, bb.key);
          BracketEntry e;
          e.left_block = ba.key;
          e.right_block = bb.key;
          e.target = tgt->key;
          e.left = i;
          e.right = j;
          e.classes = class_of(ce, *tgt, ce.bracket(u, v));
          // bracket with a coboundary must vanish in cohomology
          BlockKey pk = bb.key;
          pk.degree -= 1;
          auto pblk = ce.block(pk);
          if (pblk->size() > 0) {
            Cochain dc = ce.d(Cochain::monomial(pblk->basis.front()));
            try {
              e.spot_check = class_of(ce, *tgt, ce.bracket(u, dc)).empty();
            } catch (const NotACocycleError&) {
              e.spot_check = false;
            }
          }
          out.push_back(std::move(e));
        }
      }
    }
  }
  return out;
}

Table bracket_table(const CEAlgebra& ce, const CohomologyTable& h,
                    const std::vector<BracketEntry>& entries) {
  Table t;
  t.name = "cohomology_bracket";
  t.truncation = h.truncation.describe();
  t.columns = {"left", "right", "bracket", "well_defined"};
  std::map<BlockKey, BlockCohomology> cache;
  auto rep_name = [&](const BlockKey& key, std::size_t k) {
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, block_cohomology(ce, key)).first;
    return "[" + ce.to_string(ce.block(key)->cochain(it->second.reps.at(k))) + "]";
  };
  for (const auto& e : entries) {
    std::string val;
    for (const auto& [k, x] : e.classes) {
      std::string r = rep_name(e.target, k);
      if (val.empty()) val = (x == 1 ? "" : x == -1 ? "-" : to_string(x) + " ") + r;
      else val += (x < 0 ? " - " : " + ") + (abs(x) == 1 ? "" : to_string(Scalar(abs(x))) + " ") + r;
    }
    if (val.empty()) val = "0";
    t.rows.push_back({rep_name(e.left_block, e.left), rep_name(e.right_block, e.right), val,
                      e.spot_check ? "yes" : "no"});
  }
  return t;
}

bool KerDeltaResult::quasi_isomorphic() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const KerDeltaBlock& b) { return b.betti_full == b.betti_kernel; });
}

Table KerDeltaResult::to_table() const {
  Table t;
  t.name = "ker_delta";
  t.columns = {"block", "dim", "ker_dim", "betti", "betti_ker"};
  for (const auto& b : blocks) {
    if (b.dim == 0) continue;
    t.rows.push_back({b.key.label(), std::to_string(b.dim), std::to_string(b.kernel_dim),
                      std::to_string(b.betti_full), std::to_string(b.betti_kernel)});
  }
  return t;
}

KerDeltaResult ker_delta_complex(const CEAlgebra& ce, const Truncation& t) {
  KerDeltaResult out;
  out.eigen = eigen_split(delta_on_generators(ce));
  std::map<BlockKey, SubspaceBasis> kernels;
  auto kernel_of = [&](const BlockKey& key) -> const SubspaceBasis& {
    auto it = kernels.find(key);
    if (it == kernels.end()) it = kernels.emplace(key, rank_kernel(delta_operator(ce, key).matrix).kernel).first;
    return it->second;
  };
  auto image_rank = [&](const BlockKey& key) {
    const SubspaceBasis& k = kernel_of(key);
    if (k.dim() == 0) return std::size_t{0};
    SparseMatrix kmat = SparseMatrix::from_columns(k.ambient, k.vectors);
    return rank_of(ce.d_matrix(key) * kmat);
  };
  for (const auto& key : blocks_in(ce, t)) {
    KerDeltaBlock kb;
    kb.key = key;
    BlockCohomology h = block_cohomology(ce, key);
    kb.dim = h.dim;
    kb.betti_full = h.betti;
    if (h.dim > 0) {
      kb.kernel_dim = kernel_of(key).dim();
      BlockKey prev = key;
      prev.degree -= 1;
      kb.betti_kernel = kb.kernel_dim - image_rank(key) - image_rank(prev);
    }
    out.blocks.push_back(kb);
  }
  return out;
}

std::map<Weight, std::size_t> betti_by_weight(const CEAlgebra& ce, int degree, int s) {
  std::map<Weight, std::size_t> out;
  std::set<Weight> seen;
  for (const auto& m : ce.block({degree, s, std::nullopt})->basis) seen.insert(*ce.weight(m));
  for (const auto& w : seen) out[w] = block_cohomology(ce, {degree, s, w}).betti;
  return out;
}

// ---------------------------------------------------------------- Bg bracket

Cochain linear_cochain(const BilinearForm& form, const SparseVec& a) {
  Cochain out;
  for (std::size_t j = 0; j < form.dim; ++j) {
    Scalar v = form.eval(a, unit_vector(j));
    if (v != 0) out.add(Monomial{static_cast<std::uint32_t>(j)}, v);
  }
  return out;
}

Cochain bg_poisson_bracket(const GradedLie& g, const BilinearForm& form, const Cochain& u,
                           const Cochain& v) {
  const std::size_t n = g.dim();
  SparseMatrix gram = form.gram();
  std::vector<SparseVec> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(gram.column(j));
  SpanSolver solver(n, cols);
  if (solver.rank() != n) throw DegenerateFormError("form is degenerate");
  // inv(k, j) with gram * inv = 1
  std::vector<SparseVec> inv;
  for (std::size_t j = 0; j < n; ++j) inv.push_back(*solver.solve(unit_vector(j)));
  auto h = [&](std::size_t i, std::size_t k) { return coeff(inv[k], i); };
  CEAlgebra ce(trivial_bialgebra(g, form.shift));
  auto on_gen = [&](std::size_t i, std::size_t j) {
    Scalar s = 0;
    for (const auto& [kl, val] : form.entries) {
      auto [k, l] = kl;
      Scalar a = h(i, k), b = h(j, l);
      if (a != 0 && b != 0) s += a * b * sign_of(g.degree(k)) * val;
    }
    return Cochain::constant(s);
  };
  return extend_bracket(ce, form.shift + 2, on_gen, u, v);
}

}  // namespace liebv
