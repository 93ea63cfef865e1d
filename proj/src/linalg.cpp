#include "liebv/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "liebv/errors.hpp"

namespace liebv {

Scalar coeff(const SparseVec& v, std::size_t i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return 0;
}

SparseVec unit_vector(std::size_t i, const Scalar& c) {
  if (c == 0) return {};
  return {{i, c}};
}

SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
  if (c == 0) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Scalar s = a[i].second + c * b[j].second;
      if (s != 0) out.emplace_back(a[i].first, s);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& v, const Scalar& c) {
  if (c == 0) return {};
  SparseVec out = v;
  for (auto& e : out) e.second *= c;
  return out;
}

Scalar dot(const SparseVec& a, const SparseVec& b) {
  Scalar s = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else s += a[i++].second * b[j++].second;
  }
  return s;
}

void VecAccumulator::add(std::size_t i, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(i, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void VecAccumulator::add(const SparseVec& v, const Scalar& c) {
  if (c == 0) return;
  for (const auto& [i, x] : v) add(i, c * x);
}

SparseVec VecAccumulator::finish() const { return SparseVec(terms_.begin(), terms_.end()); }

bool VecAccumulator::empty() const { return terms_.empty(); }

// ---------------------------------------------------------------- matrices

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::from_entries(std::size_t rows, std::size_t cols,
                                        const std::vector<Entry>& entries) {
  SparseMatrix m(rows, cols);
  std::vector<std::map<std::size_t, Scalar>> acc(cols);
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw std::out_of_range("matrix entry out of range");
    if (!acc[e.col].emplace(e.row, e.value).second)
      throw std::invalid_argument("duplicate matrix entry");
  }
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [r, v] : acc[c])
      if (v != 0) m.cols_[c].emplace_back(r, v);
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVec> cols) {
  SparseMatrix m(rows, 0);
  m.cols_ = std::move(cols);
  for (const auto& c : m.cols_)
    if (!c.empty() && c.back().first >= rows) throw std::out_of_range("column entry out of range");
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i] = unit_vector(i);
  return m;
}

void SparseMatrix::set_column(std::size_t c, SparseVec v) { cols_.at(c) = std::move(v); }

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const { return coeff(cols_.at(c), r); }

std::vector<SparseMatrix::Entry> SparseMatrix::entries() const {
  std::vector<Entry> out;
  for (std::size_t c = 0; c < cols_.size(); ++c)
    for (const auto& [r, v] : cols_[c]) out.push_back({r, c, v});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  return out;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool SparseMatrix::is_zero() const { return nnz() == 0; }

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  VecAccumulator acc;
  for (const auto& [i, x] : v) acc.add(cols_.at(i), x);
  return acc.finish();
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<SparseVec> t(rows_);
  for (std::size_t c = 0; c < cols_.size(); ++c)
    for (const auto& [r, v] : cols_[c]) t[r].emplace_back(c, v);
  return from_columns(cols_.size(), std::move(t));
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix out(rows_, rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c) out.cols_[c] = apply(rhs.cols_[c]);
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  if (rows() != rhs.rows() || cols() != rhs.cols())
    throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix out(rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) out.cols_[c] = axpy(cols_[c], 1, rhs.cols_[c]);
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const {
  return *this + rhs.scaled(-1);
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
  SparseMatrix out(rows_, cols());
  for (std::size_t i = 0; i < cols(); ++i) out.cols_[i] = liebv::scaled(cols_[i], c);
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_;
}

// ---------------------------------------------------------------- echelon

SparseVec Echelon::reduce(const SparseVec& v) const {
  if (rows_.empty()) return v;
  VecAccumulator acc;
  acc.add(v);
  for (const auto& [i, c] : v) {
    auto it = rows_.find(i);
    if (it != rows_.end()) acc.add(it->second, -c);
  }
  return acc.finish();
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  std::size_t p = r.front().first;
  Scalar lead = r.front().second;
  if (lead != 1) r = scaled(r, 1 / lead);
  for (auto& [q, row] : rows_) {
    Scalar c = coeff(row, p);
    if (c != 0) row = axpy(row, -c, r);
  }
  rows_.emplace(p, std::move(r));
  return true;
}

std::vector<SparseVec> Echelon::rows() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [p, r] : rows_) out.push_back(r);
  return out;
}

std::vector<std::size_t> Echelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, r] : rows_) out.push_back(p);
  return out;
}

SubspaceBasis SubspaceBasis::span(std::size_t ambient, const std::vector<SparseVec>& spanning) {
  Echelon e(ambient);
  for (const auto& v : spanning) {
    if (!v.empty() && v.back().first >= ambient) throw std::out_of_range("vector outside ambient");
    e.insert(v);
  }
  return {ambient, e.rows()};
}

bool SubspaceBasis::contains(const SparseVec& v) const {
  // vectors are already reduced, so a single pass suffices
  VecAccumulator acc;
  acc.add(v);
  for (const auto& b : vectors) {
    std::size_t p = b.front().first;
    Scalar c = coeff(v, p);
    if (c != 0) acc.add(b, -c);
  }
  return acc.empty();
}

RankKernel rank_kernel(const SparseMatrix& m) {
  Echelon rows(m.cols());
  SparseMatrix t = m.transpose();
  for (std::size_t r = 0; r < t.cols(); ++r) rows.insert(t.column(r));
  std::vector<SparseVec> reduced = rows.rows();
  std::vector<std::size_t> piv = rows.pivots();
  std::set<std::size_t> pivset(piv.begin(), piv.end());
  std::vector<SparseVec> kernel;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (pivset.count(f)) continue;
    VecAccumulator v;
    v.add(f, 1);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      Scalar c = coeff(reduced[k], f);
      if (c != 0) v.add(piv[k], -c);
    }
    kernel.push_back(v.finish());
  }
  return {rows.rank(), SubspaceBasis::span(m.cols(), kernel)};
}

std::size_t rank_of(const SparseMatrix& m) {
  Echelon e(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) e.insert(m.column(c));
  return e.rank();
}

SubspaceBasis column_space(const SparseMatrix& m) {
  std::vector<SparseVec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return SubspaceBasis::span(m.rows(), cols);
}

Quotient quotient_basis(const SubspaceBasis& z, const SubspaceBasis& bd) {
  if (z.ambient != bd.ambient) throw ContainmentError("ambient dimensions differ");
  for (const auto& b : bd.vectors)
    if (!z.contains(b)) throw ContainmentError("boundary vector outside the cycle space");
  Echelon e(z.ambient);
  for (const auto& b : bd.vectors) e.insert(b);
  Quotient q;
  for (const auto& v : z.vectors) {
    SparseVec r = e.reduce(v);
    if (r.empty()) continue;
    Scalar lead = r.front().second;
    r = scaled(r, 1 / lead);
    e.insert(r);
    q.reps.push_back(std::move(r));
  }
  q.dim = q.reps.size();
  return q;
}

// ---------------------------------------------------------------- span solver

SpanSolver::SpanSolver(std::size_t ambient, const std::vector<SparseVec>& vectors)
    : ambient_(ambient) {
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    VecAccumulator rem, combo;
    rem.add(vectors[k]);
    combo.add(k, 1);
    for (const auto& [i, c] : vectors[k]) {
      auto it = rows_.find(i);
      if (it == rows_.end()) continue;
      rem.add(it->second.vec, -c);
      combo.add(it->second.combo, -c);
    }
    SparseVec r = rem.finish();
    if (r.empty()) continue;
    std::size_t p = r.front().first;
    Scalar inv = 1 / r.front().second;
    Row row{scaled(r, inv), scaled(combo.finish(), inv)};
    for (auto& [q, other] : rows_) {
      Scalar c = coeff(other.vec, p);
      if (c == 0) continue;
      other.vec = axpy(other.vec, -c, row.vec);
      other.combo = axpy(other.combo, -c, row.combo);
    }
    rows_.emplace(p, std::move(row));
  }
}

std::optional<SparseVec> SpanSolver::solve(const SparseVec& target) const {
  VecAccumulator rem, combo;
  rem.add(target);
  for (const auto& [i, c] : target) {
    auto it = rows_.find(i);
    if (it == rows_.end()) continue;
    rem.add(it->second.vec, -c);
    combo.add(it->second.combo, c);
  }
  if (!rem.empty()) return std::nullopt;
  return combo.finish();
}

// ---------------------------------------------------------------- eigen

namespace {

using Dense = std::vector<std::vector<Scalar>>;

Dense to_dense(const SparseMatrix& m) {
  Dense d(m.rows(), std::vector<Scalar>(m.cols(), 0));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) d[r][c] = v;
  return d;
}

Scalar eval_poly(const std::vector<Scalar>& p, const Scalar& x) {
  Scalar acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<mpz_class> divisors(mpz_class a) {
  a = abs(a);
  std::vector<mpz_class> small, large;
  if (a == 0) return {};
  if (a > mpz_class("1000000000000"))
    throw NotSemisimpleError("coefficient too large for rational root search");
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    small.push_back(d);
    if (d * d != a) large.push_back(a / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Scalar> characteristic_polynomial(const SparseMatrix& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("matrix not square");
  Dense a = to_dense(m);
  // Faddeev-LeVerrier
  std::vector<Scalar> c(n + 1, 0);
  c[n] = 1;
  Dense mk(n, std::vector<Scalar>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    Dense next(n, std::vector<Scalar>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += a[i][l] * mk[l][j];
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Scalar tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * next[l][i];
    c[n - k] = -tr / static_cast<long>(k);
    mk = std::move(next);
  }
  return c;
}

std::vector<Scalar> rational_roots(const std::vector<Scalar>& poly) {
  std::vector<Scalar> p = poly;
  while (!p.empty() && p.back() == 0) p.pop_back();
  std::vector<Scalar> roots;
  if (p.size() <= 1) return roots;
  std::size_t shift = 0;
  while (p[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(0);
  std::vector<Scalar> q(p.begin() + static_cast<std::ptrdiff_t>(shift), p.end());
  if (q.size() <= 1) return roots;
  mpz_class l = 1;
  for (const auto& x : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& x : q) z.push_back(mpz_class(x * l));
  std::set<Scalar> found;
  for (const auto& num : divisors(z.front()))
    for (const auto& den : divisors(z.back()))
      for (int s : {1, -1}) {
        Scalar cand(mpz_class(s * num), den);
        cand.canonicalize();
        if (found.count(cand)) continue;
        if (eval_poly(q, cand) == 0) found.insert(cand);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<EigenPart> eigen_split(const SparseMatrix& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("matrix not square");
  std::vector<EigenPart> parts;
  if (n == 0) return parts;
  std::size_t total = 0;
  for (const auto& lambda : rational_roots(characteristic_polynomial(m))) {
    SparseMatrix shifted = m - SparseMatrix::identity(n).scaled(lambda);
    SubspaceBasis space = rank_kernel(shifted).kernel;
    total += space.dim();
    parts.push_back({lambda, std::move(space)});
  }
  if (total < n)
    throw NotSemisimpleError("eigenspaces span " + std::to_string(total) + " of " +
                             std::to_string(n) + " dimensions");
  return parts;
}

}  // namespace liebv
