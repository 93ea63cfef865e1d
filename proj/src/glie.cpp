#include "liebv/glie.hpp"

#include <algorithm>
#include <stdexcept>

#include "liebv/errors.hpp"

namespace liebv {

// ---------------------------------------------------------------- report

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::add(std::string name, bool passed, std::string detail,
                 std::vector<std::string> witness) {
  checks.push_back({std::move(name), passed, std::move(detail), std::move(witness)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (auto t : other.tables) {
    t.name = prefix + t.name;
    tables.push_back(std::move(t));
  }
}

// ---------------------------------------------------------------- tensors

void StructureTensor::add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
  auto& slot = table_.at(i * dim_ + j);
  slot = axpy(slot, c, unit_vector(k));
}

std::vector<StructureTensor::Entry> StructureTensor::entries() const {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : at(i, j)) out.push_back({i, j, k, c});
  return out;
}

bool StructureTensor::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const SparseVec& v) { return v.empty(); });
}

GradedLie::GradedLie(std::vector<BasisElement> basis, StructureTensor bracket)
    : basis_(std::move(basis)), bracket_(std::move(bracket)) {
  if (bracket_.dim() != basis_.size()) {
    if (bracket_.dim() == 0 && bracket_.entries().empty())
      bracket_ = StructureTensor(basis_.size());
    else
      throw std::invalid_argument("bracket tensor dimension does not match basis");
  }
  std::size_t with = 0;
  for (const auto& b : basis_)
    if (b.weight) ++with;
  if (with != 0 && with != basis_.size())
    throw std::invalid_argument("weights must be given for all basis elements or none");
  if (with != 0)
    for (const auto& b : basis_)
      if (b.weight->size() != basis_.front().weight->size())
        throw std::invalid_argument("weight vectors of different lengths");
  for (const auto& e : bracket_.entries())
    if (e.k >= basis_.size()) throw std::out_of_range("bracket index out of range");
}

bool GradedLie::has_weights() const { return !basis_.empty() && basis_.front().weight.has_value(); }

SparseVec GradedLie::bracket(const SparseVec& a, const SparseVec& b) const {
  VecAccumulator acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) acc.add(bracket(i, j), x * y);
  return acc.finish();
}

std::optional<std::size_t> GradedLie::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return i;
  return std::nullopt;
}

Scalar BilinearForm::at(std::size_t i, std::size_t j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? Scalar(0) : it->second;
}

Scalar BilinearForm::eval(const SparseVec& a, const SparseVec& b) const {
  Scalar s = 0;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto it = entries.find({i, j});
      if (it != entries.end()) s += x * y * it->second;
    }
  return s;
}

SparseMatrix BilinearForm::gram() const {
  std::vector<SparseMatrix::Entry> e;
  for (const auto& [ij, v] : entries)
    if (v != 0) e.push_back({ij.first, ij.second, v});
  return SparseMatrix::from_entries(dim, dim, e);
}

RMatrix RMatrix::from_wedges(const GradedLie& g,
                             const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& w) {
  std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
  for (const auto& [i, j, c] : w) {
    acc[{i, j}] += c;
    acc[{j, i}] -= sign_of(g.par(i) * g.par(j)) * c;
  }
  RMatrix r;
  for (const auto& [k, v] : acc)
    if (v != 0) r.tensor.emplace(k, v);
  return r;
}

namespace {

std::vector<std::string> names_of(const GradedLie& g, std::initializer_list<std::size_t> idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(g.element(i).name);
  return out;
}

Weight add_weights(const Weight& a, const Weight& b) {
  Weight w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = a[i] + b[i];
  return w;
}

Tensor2 from_rmatrix(const RMatrix& r, std::size_t n) {
  VecAccumulator acc;
  for (const auto& [ij, c] : r.tensor) acc.add(ij.first * n + ij.second, c);
  return acc.finish();
}

}  // namespace

// ---------------------------------------------------------------- validation

Report validate_lie(const GradedLie& g) {
  Report rep;
  const std::size_t n = g.dim();
  {
    CheckResult c{"degree homogeneity", true, {}, {}};
    for (const auto& e : g.structure().entries())
      if (g.degree(e.k) != g.degree(e.i) + g.degree(e.j)) {
        c = {c.name, false, "bracket lands in the wrong degree", names_of(g, {e.i, e.j, e.k})};
        break;
      }
    rep.checks.push_back(c);
  }
  if (g.has_weights()) {
    CheckResult c{"weight homogeneity", true, {}, {}};
    for (const auto& e : g.structure().entries())
      if (*g.element(e.k).weight != add_weights(*g.element(e.i).weight, *g.element(e.j).weight)) {
        c = {c.name, false, "bracket lands in the wrong weight", names_of(g, {e.i, e.j, e.k})};
        break;
      }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"graded antisymmetry", true, {}, {}};
    for (std::size_t i = 0; i < n && c.passed; ++i)
      for (std::size_t j = i; j < n; ++j) {
        SparseVec s = axpy(g.bracket(i, j), sign_of(g.par(i) * g.par(j)), g.bracket(j, i));
        if (!s.empty()) {
          c = {c.name, false, "[a,b] + (-1)^{ab}[b,a] != 0", names_of(g, {i, j})};
          break;
        }
      }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"Jacobi", true, {}, {}};
    for (std::size_t i = 0; i < n && c.passed; ++i)
      for (std::size_t j = 0; j < n && c.passed; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          SparseVec lhs = g.bracket(unit_vector(i), g.bracket(j, k));
          SparseVec r1 = g.bracket(g.bracket(i, j), unit_vector(k));
          SparseVec r2 = g.bracket(unit_vector(j), g.bracket(i, k));
          SparseVec diff = axpy(axpy(lhs, -1, r1), -sign_of(g.par(i) * g.par(j)), r2);
          if (!diff.empty()) {
            c = {c.name, false, "[a,[b,c]] != [[a,b],c] + (-1)^{ab}[b,[a,c]]",
                 names_of(g, {i, j, k})};
            break;
          }
        }
    rep.checks.push_back(c);
  }
  return rep;
}

Report validate_form(const GradedLie& g, const BilinearForm& form) {
  Report rep;
  const std::size_t n = g.dim();
  if (form.dim != n) {
    rep.add("form dimension", false, "form dimension differs from algebra");
    return rep;
  }
  {
    CheckResult c{"form symmetry", true, {}, {}};
    for (std::size_t i = 0; i < n && c.passed; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (form.at(i, j) != sign_of(g.par(i) * g.par(j)) * form.at(j, i)) {
          c = {c.name, false, "(a,b) != (-1)^{ab}(b,a)", names_of(g, {i, j})};
          break;
        }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"form degree", true, {}, {}};
    for (const auto& [ij, v] : form.entries)
      if (v != 0 && g.degree(ij.first) + g.degree(ij.second) + form.shift != 0) {
        c = {c.name, false, "form pairs degrees not summing to -shift",
             names_of(g, {ij.first, ij.second})};
        break;
      }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"form invariance", true, {}, {}};
    for (std::size_t i = 0; i < n && c.passed; ++i)
      for (std::size_t j = 0; j < n && c.passed; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Scalar lhs = form.eval(g.bracket(i, j), unit_vector(k));
          Scalar rhs = form.eval(unit_vector(i), g.bracket(j, k));
          if (lhs != rhs) {
            c = {c.name, false, "([a,b],c) != (a,[b,c])", names_of(g, {i, j, k})};
            break;
          }
        }
    rep.checks.push_back(c);
  }
  return rep;
}

GradedLie dual_lie(const Bialgebra& b) {
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    const auto& e = b.algebra.element(i);
    std::optional<Weight> w;
    if (e.weight) {
      w = *e.weight;
      for (auto& x : *w) x = -x;
    }
    basis.push_back({"f^" + e.name, b.dual_degree(i), w});
  }
  return GradedLie(std::move(basis), b.cobracket);
}

std::vector<Tensor2> phi_tensors(const GradedLie& g, const StructureTensor& gamma, int shift) {
  const std::size_t n = g.dim();
  std::vector<VecAccumulator> acc(n);
  for (const auto& e : gamma.entries()) {
    int s = sign_of(g.par(e.i) * g.par(e.j) + parity(shift) * g.par(e.i));
    acc[e.k].add(e.i * n + e.j, s * e.value);
  }
  std::vector<Tensor2> out;
  for (auto& a : acc) out.push_back(a.finish());
  return out;
}

StructureTensor gamma_from_phi(const GradedLie& g, const std::vector<Tensor2>& phi, int shift) {
  const std::size_t n = g.dim();
  StructureTensor gamma(n);
  std::vector<VecAccumulator> acc(n * n);
  for (std::size_t k = 0; k < phi.size(); ++k)
    for (const auto& [ij, c] : phi[k]) {
      std::size_t i = ij / n, j = ij % n;
      int s = sign_of(g.par(i) * g.par(j) + parity(shift) * g.par(i));
      acc[ij].add(k, s * c);
    }
  for (std::size_t ij = 0; ij < n * n; ++ij) gamma.set(ij / n, ij % n, acc[ij].finish());
  return gamma;
}

Tensor2 ad_tensor(const GradedLie& g, std::size_t x, const Tensor2& t) {
  const std::size_t n = g.dim();
  VecAccumulator acc;
  for (const auto& [ab, c] : t) {
    std::size_t a = ab / n, b = ab % n;
    for (const auto& [m, v] : g.bracket(x, a)) acc.add(m * n + b, c * v);
    int s = sign_of(g.par(x) * g.par(a));
    for (const auto& [m, v] : g.bracket(x, b)) acc.add(a * n + m, s * c * v);
  }
  return acc.finish();
}

std::vector<std::pair<std::size_t, std::size_t>> cocycle_defects(const GradedLie& g,
                                                                  const StructureTensor& gamma,
                                                                  int shift) {
  const std::size_t n = g.dim();
  auto phi = phi_tensors(g, gamma, shift);
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      VecAccumulator acc;
      for (const auto& [m, c] : g.bracket(i, j)) acc.add(phi[m], c);
      acc.add(ad_tensor(g, i, phi[j]), -1);
      acc.add(ad_tensor(g, j, phi[i]), sign_of(g.par(i) * g.par(j)));
      if (!acc.empty()) bad.emplace_back(i, j);
    }
  return bad;
}

std::vector<std::pair<std::size_t, std::size_t>> cocycle_index_defects(
    const GradedLie& g, const StructureTensor& gamma, int shift) {
  const std::size_t n = g.dim();
  const int sn = parity(shift);
  auto p = [&](std::size_t i) { return g.par(i); };
  struct Term {
    std::size_t a, b;
    Scalar v;
  };
  // by_target[m] lists gamma^{ab}_m
  std::vector<std::vector<Term>> by_target(n);
  for (const auto& e : gamma.entries()) by_target[e.k].push_back({e.i, e.j, e.value});

  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::map<std::pair<std::size_t, std::size_t>, Scalar> diff;  // (k, q) -> lhs - rhs
      for (const auto& [m, c] : g.bracket(i, j))
        for (const auto& t : by_target[m])  // gamma^{kq}_m c_ij^m
          diff[{t.a, t.b}] += sign_of(p(t.a) * p(t.b) + sn * p(t.a)) * t.v * c;
      for (const auto& t : by_target[j]) {
        // gamma^{mq}_j c_im^k, with (m, q) = (t.a, t.b)
        for (const auto& [k, c] : g.bracket(i, t.a))
          diff[{k, t.b}] -= sign_of(p(t.a) * p(t.b) + sn * p(t.a)) * t.v * c;
        // gamma^{km}_j c_im^q, with (k, m) = (t.a, t.b)
        for (const auto& [q, c] : g.bracket(i, t.b))
          diff[{t.a, q}] -= sign_of(p(t.a) * p(t.b) + sn * p(t.a) + p(i) * p(t.a)) * t.v * c;
      }
      for (const auto& t : by_target[i]) {
        for (const auto& [k, c] : g.bracket(j, t.a))
          diff[{k, t.b}] -= sign_of(1 + p(i) * p(j) + p(t.a) * p(t.b) + sn * p(t.a)) * t.v * c;
        for (const auto& [q, c] : g.bracket(j, t.b))
          diff[{t.a, q}] -= sign_of(1 + p(i) * p(j) + p(t.a) * p(t.b) + sn * p(t.a) +
                                    p(j) * p(t.a)) *
                            t.v * c;
      }
      for (const auto& [kq, v] : diff)
        if (v != 0) {
          bad.emplace_back(i, j);
          break;
        }
    }
  return bad;
}

Report validate_structures(const Bialgebra& b) {
  Report rep = validate_lie(b.algebra);
  if (b.cobracket.dim() != b.dim()) {
    rep.add("cobracket dimension", false, "cobracket tensor dimension differs from algebra");
    return rep;
  }
  GradedLie dual = dual_lie(b);
  Report co = validate_lie(dual);
  for (auto c : co.checks) {
    if (c.name == "degree homogeneity") c.name = "cobracket degree rule";
    else if (c.name == "weight homogeneity") c.name = "cobracket weight rule";
    else if (c.name == "graded antisymmetry") c.name = "co-antisymmetry";
    else if (c.name == "Jacobi") c.name = "co-Jacobi";
    rep.checks.push_back(std::move(c));
  }
  {
    auto bad = cocycle_defects(b.algebra, b.cobracket, b.shift);
    CheckResult c{"cocycle", bad.empty(), {}, {}};
    if (!bad.empty()) {
      c.detail = "phi([x,y]) != ad_x phi(y) - (-1)^{xy} ad_y phi(x) on " +
                 std::to_string(bad.size()) + " basis pairs";
      c.witness = names_of(b.algebra, {bad.front().first, bad.front().second});
    }
    rep.checks.push_back(c);
  }
  if (b.form) rep.merge(validate_form(b.algebra, *b.form));
  if (b.rmatrix) {
    const std::size_t n = b.dim();
    CheckResult c{"r antisymmetry", true, {}, {}};
    for (const auto& [ij, v] : b.rmatrix->tensor) {
      auto [i, j] = ij;
      auto it = b.rmatrix->tensor.find({j, i});
      Scalar w = it == b.rmatrix->tensor.end() ? Scalar(0) : it->second;
      if (v != -sign_of(b.algebra.par(i) * b.algebra.par(j)) * w) {
        c = {c.name, false, "r^{ij} != -(-1)^{ij} r^{ji}", names_of(b.algebra, {i, j})};
        break;
      }
    }
    rep.checks.push_back(c);
    if (b.shift == 0) {
      Tensor2 r = from_rmatrix(*b.rmatrix, n);
      std::vector<Tensor2> phi;
      for (std::size_t k = 0; k < n; ++k) phi.push_back(ad_tensor(b.algebra, k, r));
      StructureTensor g = gamma_from_phi(b.algebra, phi, 0);
      rep.add("r generates cobracket", g == b.cobracket,
              g == b.cobracket ? "" : "ad(r) differs from the stored cobracket");
    }
  }
  return rep;
}

Report validate_manin(const ManinTriple& t) {
  Report rep = validate_lie(t.total);
  rep.merge(validate_form(t.total, t.form));
  const std::size_t n = t.total.dim();
  std::vector<int> side(n, -1);
  bool partition = t.plus.size() + t.minus.size() == n;
  for (auto i : t.plus)
    if (i >= n || side[i] != -1) partition = false;
    else side[i] = 0;
  for (auto i : t.minus)
    if (i >= n || side[i] != -1) partition = false;
    else side[i] = 1;
  rep.add("partition", partition, partition ? "" : "plus/minus do not partition the basis");
  if (!partition) return rep;
  for (int s : {0, 1}) {
    const auto& idx = s == 0 ? t.plus : t.minus;
    std::string label = s == 0 ? "plus" : "minus";
    CheckResult closed{label + " closed", true, {}, {}};
    CheckResult iso{label + " isotropic", true, {}, {}};
    for (auto i : idx)
      for (auto j : idx) {
        if (closed.passed)
          for (const auto& [k, c] : t.total.bracket(i, j))
            if (side[k] != s) {
              closed = {closed.name, false, "bracket leaves the subspace",
                        names_of(t.total, {i, j})};
              break;
            }
        if (iso.passed && t.form.at(i, j) != 0)
          iso = {iso.name, false, "form does not vanish", names_of(t.total, {i, j})};
      }
    rep.checks.push_back(closed);
    rep.checks.push_back(iso);
  }
  {
    std::vector<SparseVec> rows;
    for (auto b : t.minus) {
      SparseVec r;
      for (std::size_t a = 0; a < t.plus.size(); ++a) {
        Scalar v = t.form.at(b, t.plus[a]);
        if (v != 0) r.emplace_back(a, v);
      }
      rows.push_back(r);
    }
    bool perfect = t.plus.size() == t.minus.size() &&
                   SpanSolver(t.plus.size(), rows).rank() == t.plus.size();
    rep.add("perfect pairing", perfect, perfect ? "" : "pairing between sides is degenerate");
  }
  return rep;
}

// ---------------------------------------------------------------- constructions

GradedLie subalgebra(const GradedLie& g, const std::vector<SparseVec>& vectors,
                     const std::vector<std::string>& names) {
  if (names.size() != vectors.size()) throw std::invalid_argument("names/vectors size mismatch");
  SpanSolver solver(g.dim(), vectors);
  if (solver.rank() != vectors.size()) throw std::invalid_argument("vectors are dependent");
  bool weighted = g.has_weights();
  std::vector<BasisElement> basis;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    if (vectors[a].empty()) throw std::invalid_argument("zero vector");
    int deg = g.degree(vectors[a].front().first);
    std::optional<Weight> w;
    if (weighted) w = g.element(vectors[a].front().first).weight;
    for (const auto& [i, c] : vectors[a]) {
      if (g.degree(i) != deg) throw std::invalid_argument("inhomogeneous vector " + names[a]);
      if (weighted && g.element(i).weight != w) weighted = false;
    }
    basis.push_back({names[a], deg, w});
  }
  if (!weighted)
    for (auto& b : basis) b.weight.reset();
  StructureTensor t(vectors.size());
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = 0; b < vectors.size(); ++b) {
      SparseVec br = g.bracket(vectors[a], vectors[b]);
      auto coords = solver.solve(br);
      if (!coords)
        throw NotClosedError("[" + names[a] + ", " + names[b] + "] leaves the subspace");
      t.set(a, b, *coords);
    }
  return GradedLie(std::move(basis), std::move(t));
}

BilinearForm pullback_form(const BilinearForm& form, const std::vector<SparseVec>& vectors) {
  BilinearForm out;
  out.dim = vectors.size();
  out.shift = form.shift;
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = 0; b < vectors.size(); ++b) {
      Scalar v = form.eval(vectors[a], vectors[b]);
      if (v != 0) out.entries[{a, b}] = v;
    }
  return out;
}

Bialgebra restrict_bialgebra(const Bialgebra& b, const std::vector<SparseVec>& vectors,
                             const std::vector<std::string>& names) {
  const std::size_t n = b.dim();
  GradedLie h = subalgebra(b.algebra, vectors, names);
  SpanSolver solver(n, vectors);
  auto phi = phi_tensors(b.algebra, b.cobracket, b.shift);
  std::vector<Tensor2> phi_h;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    VecAccumulator t;
    for (const auto& [k, c] : vectors[a]) t.add(phi[k], c);
    // columns: for fixed right index j, the left factors must lie in the span
    std::map<std::size_t, VecAccumulator> by_right;
    for (const auto& [ij, c] : t.finish()) by_right[ij % n].add(ij / n, c);
    std::map<std::size_t, VecAccumulator> left;  // left new index -> vector over right
    for (auto& [j, acc] : by_right) {
      auto coords = solver.solve(acc.finish());
      if (!coords) throw NotClosedError("cobracket of " + names[a] + " leaves the subspace");
      for (const auto& [bb, c] : *coords) left[bb].add(j, c);
    }
    VecAccumulator out;
    for (auto& [bb, acc] : left) {
      auto coords = solver.solve(acc.finish());
      if (!coords) throw NotClosedError("cobracket of " + names[a] + " leaves the subspace");
      for (const auto& [cc, c] : *coords) out.add(bb * vectors.size() + cc, c);
    }
    phi_h.push_back(out.finish());
  }
  Bialgebra r;
  r.name = b.name;
  r.algebra = h;
  r.shift = b.shift;
  r.cobracket = gamma_from_phi(h, phi_h, b.shift);
  return r;
}

Bialgebra manin_to_bialgebra(const ManinTriple& t, Side side) {
  const auto& own = side == Side::plus ? t.plus : t.minus;
  const auto& other = side == Side::plus ? t.minus : t.plus;
  if (own.size() != other.size()) throw PairingDegenerateError("sides of different dimension");
  const std::size_t n = own.size();
  std::vector<int> where(t.total.dim(), -1);
  for (auto i : own) where[i] = 0;
  for (auto i : other) where[i] = 1;
  for (const auto& idx : {own, other})
    for (auto i : idx)
      for (auto j : idx)
        for (const auto& [k, c] : t.total.bracket(i, j))
          if (where[k] != where[i])
            throw NotClosedError("[" + t.total.element(i).name + ", " + t.total.element(j).name +
                                 "] leaves its side");
  // pairing rows: (other_b, own_a)
  std::vector<SparseVec> rows;
  for (auto bidx : other) {
    SparseVec r;
    for (std::size_t a = 0; a < n; ++a) {
      Scalar v = t.form.at(bidx, own[a]);
      if (v != 0) r.emplace_back(a, v);
    }
    rows.push_back(r);
  }
  SpanSolver solver(n, rows);
  if (solver.rank() != n) throw PairingDegenerateError("pairing between sides is degenerate");
  // dual elements F^i in the other side with (F^i, own_j) = delta
  std::vector<SparseVec> dual;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = *solver.solve(unit_vector(i));
    SparseVec v;
    for (const auto& [bb, c] : x) v.emplace_back(other[bb], c);
    std::sort(v.begin(), v.end());
    dual.push_back(v);
  }
  std::vector<SparseVec> own_vecs;
  std::vector<std::string> names;
  for (auto i : own) {
    own_vecs.push_back(unit_vector(i));
    names.push_back(t.total.element(i).name);
  }
  Bialgebra b;
  b.name = "manin";
  b.algebra = subalgebra(t.total, own_vecs, names);
  b.shift = t.form.shift;
  b.cobracket = StructureTensor(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec br = t.total.bracket(dual[i], dual[j]);
      if (br.empty()) continue;
      VecAccumulator acc;
      for (std::size_t k = 0; k < n; ++k) acc.add(k, t.form.eval(br, unit_vector(own[k])));
      b.cobracket.set(i, j, acc.finish());
    }
  return b;
}

ManinTriple double_of_bialgebra(const Bialgebra& b) {
  const std::size_t n = b.dim();
  const GradedLie& g = b.algebra;
  const int sn = b.shift;
  std::vector<BasisElement> basis = g.basis();
  GradedLie dl = dual_lie(b);
  for (const auto& e : dl.basis()) basis.push_back(e);
  auto fdeg = [&](std::size_t i) { return b.dual_degree(i); };
  StructureTensor t(2 * n);
  for (const auto& e : g.structure().entries()) t.add(e.i, e.j, e.k, e.value);
  for (const auto& e : b.cobracket.entries()) t.add(n + e.i, n + e.j, n + e.k, e.value);
  // [e_j, f^i] = (-1)^{e_i(n+1)} gamma^{ik}_j e_k - (-1)^{e_j(f^i)} c_{jk}^i f^k
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      VecAccumulator acc;
      for (std::size_t k = 0; k < n; ++k) {
        Scalar gk = coeff(b.cobracket.at(i, k), j);
        if (gk != 0) acc.add(k, sign_of(g.par(i) * (sn + 1)) * gk);
        Scalar ck = coeff(g.bracket(j, k), i);
        if (ck != 0) acc.add(n + k, -sign_of(g.par(j) * parity(fdeg(i))) * ck);
      }
      SparseVec x = acc.finish();
      t.set(j, n + i, x);
      t.set(n + i, j, scaled(x, -sign_of(parity(fdeg(i)) * g.par(j))));
    }
  ManinTriple m;
  m.total = GradedLie(std::move(basis), std::move(t));
  m.form.dim = 2 * n;
  m.form.shift = sn;
  for (std::size_t i = 0; i < n; ++i) {
    m.form.entries[{n + i, i}] = 1;
    m.form.entries[{i, n + i}] = sign_of(g.par(i) * parity(fdeg(i)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    m.plus.push_back(i);
    m.minus.push_back(n + i);
  }
  return m;
}

Bialgebra dual_bialgebra(const Bialgebra& b) {
  Bialgebra d = manin_to_bialgebra(double_of_bialgebra(b), Side::minus);
  d.name = "dual of " + b.name;
  return d;
}

Bialgebra trivial_bialgebra(const GradedLie& g, int shift, std::string name) {
  Bialgebra b;
  b.name = std::move(name);
  b.algebra = g;
  b.shift = shift;
  b.cobracket = StructureTensor(g.dim());
  return b;
}

bool same_structure(const Bialgebra& a, const Bialgebra& b) {
  if (a.dim() != b.dim() || a.shift != b.shift) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.algebra.degree(i) != b.algebra.degree(i)) return false;
  return a.algebra.structure() == b.algebra.structure() && a.cobracket == b.cobracket;
}

Bialgebra coboundary_cobracket(const GradedLie& g, const RMatrix& r) {
  const std::size_t n = g.dim();
  for (const auto& [ij, v] : r.tensor) {
    auto it = r.tensor.find({ij.second, ij.first});
    Scalar w = it == r.tensor.end() ? Scalar(0) : it->second;
    if (v != -sign_of(g.par(ij.first) * g.par(ij.second)) * w)
      throw std::invalid_argument("r is not graded antisymmetric");
  }
  Tensor2 rt = from_rmatrix(r, n);
  std::vector<Tensor2> phi;
  for (std::size_t k = 0; k < n; ++k) phi.push_back(ad_tensor(g, k, rt));
  Bialgebra b = trivial_bialgebra(g, 0, "coboundary");
  b.cobracket = gamma_from_phi(g, phi, 0);
  b.rmatrix = r;
  Report co = validate_lie(dual_lie(b));
  if (!co.ok()) throw CoJacobiError("ad(r) does not satisfy co-Jacobi");
  return b;
}

SparseVec delta_r(const GradedLie& g, const RMatrix& r) {
  VecAccumulator acc;
  for (const auto& [ij, c] : r.tensor) acc.add(g.bracket(ij.first, ij.second), c / 2);
  return acc.finish();
}

bool involutivity_check(const Bialgebra& b) {
  const std::size_t n = b.dim();
  auto phi = phi_tensors(b.algebra, b.cobracket, b.shift);
  for (std::size_t k = 0; k < n; ++k) {
    VecAccumulator acc;
    for (const auto& [ij, c] : phi[k]) acc.add(b.algebra.bracket(ij / n, ij % n), c);
    if (!acc.empty()) return false;
  }
  return true;
}

SparseMatrix coadjoint_matrix(const GradedLie& g, const SparseVec& y) {
  const std::size_t n = g.dim();
  std::vector<SparseMatrix::Entry> e;
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [i, c] : g.bracket(y, unit_vector(k))) e.push_back({k, i, c});
  return SparseMatrix::from_entries(n, n, e);
}

bool is_central(const GradedLie& g, const SparseVec& y) {
  for (std::size_t k = 0; k < g.dim(); ++k)
    if (!g.bracket(y, unit_vector(k)).empty()) return false;
  return true;
}

}  // namespace liebv
