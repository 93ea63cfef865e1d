#include "liebv/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "liebv/errors.hpp"

namespace liebv {

namespace {

GradedDims normalize(const GradedDims& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  std::map<int, int> merged;
  for (auto [deg, d] : dims) {
    if (d < 1) throw std::invalid_argument("dimensions must be positive");
    merged[deg] += d;
  }
  return GradedDims(merged.begin(), merged.end());
}

std::string line_pair_name(char prefix, std::size_t nlines, std::size_t i, std::size_t j) {
  std::string s(1, prefix);
  if (nlines < 10) return s + std::to_string(i + 1) + std::to_string(j + 1);
  return s + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

}  // namespace

std::vector<int> line_degrees(const GradedDims& dims) {
  std::vector<int> alpha;
  for (auto [deg, d] : normalize(dims))
    for (int k = 0; k < d; ++k) alpha.push_back(deg);
  return alpha;
}

std::size_t end_index(std::size_t nlines, std::size_t i, std::size_t j) {
  if (i == j) return i;
  return nlines + i * (nlines - 1) + (j < i ? j : j - 1);
}

GradedLie end_graded(const GradedDims& dims) {
  std::vector<int> alpha = line_degrees(dims);
  const std::size_t nl = alpha.size();
  const std::size_t dim = nl * nl;
  std::vector<BasisElement> basis(dim);
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j) {
      Weight w(nl, 0);
      w[i] += 1;
      w[j] -= 1;
      std::string name = i == j ? "a" + std::to_string(i + 1) : line_pair_name('e', nl, i, j);
      basis[end_index(nl, i, j)] = {name, alpha[j] - alpha[i], w};
    }
  StructureTensor t(dim);
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      for (std::size_t k = 0; k < nl; ++k)
        for (std::size_t l = 0; l < nl; ++l) {
          std::size_t x = end_index(nl, i, j), y = end_index(nl, k, l);
          if (j == k) t.add(x, y, end_index(nl, i, l), 1);
          if (l == i)
            t.add(x, y, end_index(nl, k, j),
                  -sign_of(parity(alpha[j] - alpha[i]) * parity(alpha[l] - alpha[k])));
        }
  return GradedLie(std::move(basis), std::move(t));
}

std::vector<SparseVec> end_part_vectors(const GradedDims& dims, EndPart part, bool traceless,
                                        std::vector<std::string>* names) {
  std::vector<int> alpha = line_degrees(dims);
  const std::size_t nl = alpha.size();
  auto keep = [&](std::size_t i, std::size_t j) {
    switch (part) {
      case EndPart::full: return true;
      case EndPart::q: return alpha[i] <= alpha[j];
      case EndPart::n: return alpha[i] < alpha[j];
      case EndPart::l: return alpha[i] == alpha[j];
    }
    return false;
  };
  std::vector<SparseVec> vecs;
  std::vector<std::string> nm;
  if (part != EndPart::n) {
    if (traceless) {
      for (std::size_t i = 0; i + 1 < nl; ++i) {
        VecAccumulator v;
        v.add(i, 1);
        v.add(i + 1, -sign_of(parity(alpha[i] - alpha[i + 1])));
        vecs.push_back(v.finish());
        nm.push_back("h" + std::to_string(i + 1));
      }
    } else {
      for (std::size_t i = 0; i < nl; ++i) {
        vecs.push_back(unit_vector(i));
        nm.push_back("a" + std::to_string(i + 1));
      }
    }
  }
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      if (i != j && keep(i, j)) {
        vecs.push_back(unit_vector(end_index(nl, i, j)));
        nm.push_back(line_pair_name('e', nl, i, j));
      }
  // keep basis order of End(V) for off-diagonal entries
  std::vector<std::size_t> order(vecs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    bool da = vecs[a].size() > 1 || vecs[a].front().first < nl;
    bool db = vecs[b].size() > 1 || vecs[b].front().first < nl;
    if (da != db) return da;
    return vecs[a].front().first < vecs[b].front().first;
  });
  std::vector<SparseVec> sv;
  std::vector<std::string> sn;
  for (auto k : order) {
    sv.push_back(vecs[k]);
    sn.push_back(nm[k]);
  }
  if (names) *names = sn;
  return sv;
}

GradedLie end_part(const GradedDims& dims, EndPart part, bool traceless) {
  std::vector<std::string> names;
  auto vecs = end_part_vectors(dims, part, traceless, &names);
  return subalgebra(end_graded(dims), vecs, names);
}

GradedLie parabolic_q(const GradedDims& dims) { return end_part(dims, EndPart::q); }
GradedLie nilradical_n(const GradedDims& dims) { return end_part(dims, EndPart::n); }
GradedLie levi_l(const GradedDims& dims) { return end_part(dims, EndPart::l); }
GradedLie trace_zero(const GradedDims& dims, EndPart part) { return end_part(dims, part, true); }

BilinearForm supertrace_form(const GradedDims& dims) {
  std::vector<int> alpha = line_degrees(dims);
  const std::size_t nl = alpha.size();
  BilinearForm f;
  f.dim = nl * nl;
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      f.entries[{end_index(nl, i, j), end_index(nl, j, i)}] = sign_of(alpha[i]);
  return f;
}

ManinTriple standard_triple(const GradedDims& dims) {
  GradedLie g = end_graded(dims);
  BilinearForm str = supertrace_form(dims);
  std::vector<int> alpha = line_degrees(dims);
  const std::size_t nl = alpha.size();
  const std::size_t d = g.dim();
  // p = g + g
  std::vector<BasisElement> pb;
  for (int copy = 1; copy <= 2; ++copy)
    for (const auto& e : g.basis()) pb.push_back({e.name + "." + std::to_string(copy), e.degree, e.weight});
  StructureTensor pt(2 * d);
  for (const auto& e : g.structure().entries()) {
    pt.add(e.i, e.j, e.k, e.value);
    pt.add(d + e.i, d + e.j, d + e.k, e.value);
  }
  GradedLie p(pb, pt);
  BilinearForm pf;
  pf.dim = 2 * d;
  for (const auto& [ij, v] : str.entries) {
    pf.entries[{ij.first, ij.second}] = v;
    pf.entries[{d + ij.first, d + ij.second}] = -v;
  }
  std::vector<SparseVec> vecs;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < d; ++a) {
    vecs.push_back({{a, 1}, {d + a, 1}});
    names.push_back(g.element(a).name);
  }
  for (std::size_t i = 0; i < nl; ++i) {
    vecs.push_back({{i, 1}, {d + i, -1}});
    names.push_back("a" + std::to_string(i + 1) + "-");
  }
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j) {
      if (i < j) {
        vecs.push_back(unit_vector(end_index(nl, i, j)));
        names.push_back(g.element(end_index(nl, i, j)).name + ".1");
      } else if (i > j) {
        vecs.push_back(unit_vector(d + end_index(nl, i, j)));
        names.push_back(g.element(end_index(nl, i, j)).name + ".2");
      }
    }
  ManinTriple t;
  t.total = subalgebra(p, vecs, names);
  t.form = pullback_form(pf, vecs);
  for (std::size_t a = 0; a < d; ++a) {
    t.plus.push_back(a);
    t.minus.push_back(d + a);
  }
  return t;
}

Bialgebra standard_bialgebra(const GradedDims& dims, Restriction restrict_to) {
  GradedDims nd = normalize(dims);
  Bialgebra b = manin_to_bialgebra(standard_triple(nd), Side::plus);
  std::string label = "End(";
  for (std::size_t k = 0; k < nd.size(); ++k)
    label += (k ? "," : "") + std::to_string(nd[k].first) + ":" + std::to_string(nd[k].second);
  label += ")";
  b.name = label + " standard";
  if (restrict_to == Restriction::full) {
    b.form = supertrace_form(nd);
    b.rmatrix = standard_r(nd);
    return b;
  }
  std::vector<std::string> names;
  std::vector<SparseVec> vecs;
  switch (restrict_to) {
    case Restriction::q: vecs = end_part_vectors(nd, EndPart::q, false, &names); break;
    case Restriction::q1: vecs = end_part_vectors(nd, EndPart::q, true, &names); break;
    case Restriction::sl: vecs = end_part_vectors(nd, EndPart::full, true, &names); break;
    case Restriction::full: break;
  }
  Bialgebra r = restrict_bialgebra(b, vecs, names);
  static const char* suffix[] = {"", " q", " q1", " sl"};
  r.name = b.name + suffix[static_cast<int>(restrict_to)];
  return r;
}

Bialgebra standard_bialgebra(int m, int n, Restriction restrict_to) {
  if (m < 0 || n < 0 || m + n < 1) throw std::invalid_argument("need m + n >= 1");
  GradedDims dims;
  if (m > 0) dims.emplace_back(0, m);
  if (n > 0) dims.emplace_back(1, n);
  Bialgebra b = standard_bialgebra(dims, restrict_to);
  b.name = "gl(" + std::to_string(m) + "|" + std::to_string(n) + ")" +
           b.name.substr(b.name.find(" standard"));
  return b;
}

RMatrix standard_r(const GradedDims& dims) {
  GradedLie g = end_graded(dims);
  std::vector<int> alpha = line_degrees(dims);
  const std::size_t nl = alpha.size();
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> w;
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j)
      w.emplace_back(end_index(nl, i, j), end_index(nl, j, i), Scalar(-sign_of(alpha[j]), 2));
  return RMatrix::from_wedges(g, w);
}

RMatrix standard_r_unsigned(const GradedDims& dims) {
  GradedLie g = end_graded(dims);
  const std::size_t nl = line_degrees(dims).size();
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> w;
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j)
      w.emplace_back(end_index(nl, i, j), end_index(nl, j, i), Scalar(1, 2));
  return RMatrix::from_wedges(g, w);
}

// ---------------------------------------------------------------- theta

ManinTriple theta_triple(int n, const std::vector<int>& theta) {
  if (n < 1 || static_cast<int>(theta.size()) != n)
    throw std::invalid_argument("theta must be a permutation of 1..n");
  std::vector<int> seen(n + 1, 0);
  for (int t : theta) {
    if (t < 1 || t > n || seen[t]) throw std::invalid_argument("theta must be a permutation of 1..n");
    seen[t] = 1;
  }
  GradedDims dims;
  for (int k = 0; k < 2 * n; ++k) dims.emplace_back(k, 1);
  GradedLie g = end_graded(dims);
  const std::size_t nl = 2 * n;
  std::vector<SparseVec> vecs;
  std::vector<std::string> names;
  auto hvec = [&](int i, int s) {
    // a_{2i-1} +/- a_{2 theta(i)}, 1-based lines
    std::size_t x = 2 * i - 2, y = 2 * theta[i - 1] - 1;
    return SparseVec{{std::min(x, y), std::min(x, y) == x ? Scalar(1) : Scalar(s)},
                     {std::max(x, y), std::max(x, y) == x ? Scalar(1) : Scalar(s)}};
  };
  for (int i = 1; i <= n; ++i) {
    vecs.push_back(hvec(i, 1));
    names.push_back("h" + std::to_string(i));
  }
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j) {
      vecs.push_back(unit_vector(end_index(nl, i, j)));
      names.push_back(g.element(end_index(nl, i, j)).name);
    }
  std::size_t half = vecs.size();
  for (int i = 1; i <= n; ++i) {
    vecs.push_back(hvec(i, -1));
    names.push_back("h" + std::to_string(i) + "-");
  }
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      vecs.push_back(unit_vector(end_index(nl, i, j)));
      names.push_back(g.element(end_index(nl, i, j)).name);
    }
  ManinTriple t;
  t.total = subalgebra(g, vecs, names);
  t.form = pullback_form(supertrace_form(dims), vecs);
  for (std::size_t a = 0; a < half; ++a) {
    t.plus.push_back(a);
    t.minus.push_back(half + a);
  }
  return t;
}

Bialgebra theta_bialgebra(int n, const std::vector<int>& theta) {
  ManinTriple t = theta_triple(n, theta);
  Report rep = validate_manin(t);
  for (const auto& name : {"plus isotropic", "minus isotropic", "perfect pairing"}) {
    const CheckResult* c = rep.find(name);
    if (!c || !c->passed) throw ValidationError(std::string("theta triple: ") + name + " fails");
  }
  Bialgebra b = manin_to_bialgebra(t, Side::plus);
  std::string label = "theta(" + std::to_string(n) + ";";
  for (std::size_t k = 0; k < theta.size(); ++k) label += (k ? "," : "") + std::to_string(theta[k]);
  b.name = label + ")";
  return b;
}

// ---------------------------------------------------------------- Frobenius

FrobeniusAlgebra FrobeniusAlgebra::matrix_algebra(int w) {
  if (w < 1) throw std::invalid_argument("matrix size must be positive");
  FrobeniusAlgebra a;
  const std::size_t n = static_cast<std::size_t>(w);
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.names.push_back(n == 1 ? "" : "E" + std::to_string(i + 1) + std::to_string(j + 1));
  a.mult.assign(n * n * n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          if (j == k) a.mult[idx(i, j) * n * n + idx(k, l)] = unit_vector(idx(i, l));
          if (j == k && l == i) a.form[{idx(i, j), idx(k, l)}] = 1;
        }
  return a;
}

void check_frobenius(const FrobeniusAlgebra& a) {
  const std::size_t n = a.dim();
  if (a.mult.size() != n * n) throw FrobeniusError("multiplication table has the wrong size");
  auto form = [&](const SparseVec& x, const SparseVec& y) {
    Scalar s = 0;
    for (const auto& [i, u] : x)
      for (const auto& [j, v] : y) {
        auto it = a.form.find({i, j});
        if (it != a.form.end()) s += u * v * it->second;
      }
    return s;
  };
  auto mul = [&](const SparseVec& x, const SparseVec& y) {
    VecAccumulator acc;
    for (const auto& [i, u] : x)
      for (const auto& [j, v] : y) acc.add(a.mult[i * n + j], u * v);
    return acc.finish();
  };
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec r;
    for (std::size_t j = 0; j < n; ++j) {
      Scalar v = form(unit_vector(i), unit_vector(j));
      if (v != form(unit_vector(j), unit_vector(i))) throw FrobeniusError("form is not symmetric");
      if (v != 0) r.emplace_back(j, v);
      for (std::size_t k = 0; k < n; ++k)
        if (form(mul(unit_vector(i), unit_vector(j)), unit_vector(k)) !=
            form(unit_vector(i), mul(unit_vector(j), unit_vector(k))))
          throw FrobeniusError("form is not invariant");
    }
    rows.push_back(r);
  }
  if (SpanSolver(n, rows).rank() != n) throw FrobeniusError("form is degenerate");
}

Bialgebra frobenius_loop(const FrobeniusAlgebra& a, int order) {
  if (order < 1) throw std::invalid_argument("truncation order must be >= 1");
  check_frobenius(a);
  const std::size_t da = a.dim();
  const std::size_t N = static_cast<std::size_t>(order);
  auto idx = [da](std::size_t c, std::size_t m) { return (m - 1) * da + c; };  // m in 1..N
  std::vector<BasisElement> basis(da * N);
  for (std::size_t m = 1; m <= N; ++m)
    for (std::size_t c = 0; c < da; ++c)
      basis[idx(c, m)] = {a.names[c] + "t" + (m > 1 ? "^" + std::to_string(m) : ""),
                          static_cast<int>(m), std::nullopt};
  auto mul = [&](const SparseVec& x, const SparseVec& y) {
    VecAccumulator acc;
    for (const auto& [i, u] : x)
      for (const auto& [j, v] : y) acc.add(a.mult[i * da + j], u * v);
    return acc.finish();
  };
  // a^vee with (a^vee, b) = delta
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < da; ++i) {
    SparseVec r;
    for (std::size_t j = 0; j < da; ++j) {
      auto it = a.form.find({i, j});
      if (it != a.form.end() && it->second != 0) r.emplace_back(j, it->second);
    }
    rows.push_back(r);
  }
  SpanSolver solver(da, rows);
  std::vector<SparseVec> vee;
  for (std::size_t i = 0; i < da; ++i) vee.push_back(*solver.solve(unit_vector(i)));
  auto pair_with = [&](const SparseVec& z, std::size_t c) {
    Scalar s = 0;
    for (const auto& [i, u] : z) {
      auto it = a.form.find({i, c});
      if (it != a.form.end()) s += u * it->second;
    }
    return s;
  };

  StructureTensor br(da * N), co(da * N);
  for (std::size_t m = 1; m <= N; ++m)
    for (std::size_t l = 1; l <= N; ++l)
      for (std::size_t x = 0; x < da; ++x)
        for (std::size_t y = 0; y < da; ++y) {
          int sg = sign_of(static_cast<int>(m * l));
          if (m + l <= N) {
            SparseVec z = axpy(a.mult[x * da + y], -sg, a.mult[y * da + x]);
            for (const auto& [c, v] : z) br.add(idx(x, m), idx(y, l), idx(c, m + l), v);
          }
          // [x^vee t^{1-m}, y^vee t^{1-l}] lands in t^{1-k}, k = m + l - 1
          std::size_t k = m + l - 1;
          if (k > N) continue;
          int sd = sign_of(static_cast<int>((1 - static_cast<long>(m)) * (1 - static_cast<long>(l))));
          SparseVec z = axpy(mul(vee[x], vee[y]), -sd, mul(vee[y], vee[x]));
          if (z.empty()) continue;
          for (std::size_t c = 0; c < da; ++c) {
            Scalar v = pair_with(z, c);
            if (v != 0) co.add(idx(x, m), idx(y, l), idx(c, k), v);
          }
        }
  Bialgebra b;
  b.name = "frobenius_loop(dim " + std::to_string(da) + ", N=" + std::to_string(N) + ")";
  b.algebra = GradedLie(std::move(basis), std::move(br));
  b.shift = -1;
  b.cobracket = std::move(co);
  return b;
}

}  // namespace liebv
