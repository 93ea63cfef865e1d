#include <random>

#include "doctest.h"
#include "liebv/errors.hpp"
#include "liebv/linalg.hpp"
#include "oracle.hpp"

using namespace liebv;

namespace {

SparseMatrix from_dense(const oracle::Mat& a) {
  std::vector<SparseMatrix::Entry> e;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0) e.push_back({i, j, a[i][j]});
  return SparseMatrix::from_entries(a.size(), a.empty() ? 0 : a[0].size(), e);
}

oracle::Mat random_dense(std::mt19937& rng, std::size_t r, std::size_t c, int density) {
  oracle::Mat a = oracle::zeros(r, c);
  for (auto& row : a)
    for (auto& x : row)
      if (static_cast<int>(rng() % 100) < density) {
        x = Scalar(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3);
        x.canonicalize();
      }
  return a;
}

}  // namespace

TEST_CASE("scalars parse as exact rationals") {
  CHECK(parse_scalar("3/6") == Scalar(1, 2));
  CHECK(parse_scalar("-4") == -4);
  CHECK(parse_scalar("+2/4") == Scalar(1, 2));
  CHECK(to_string(parse_scalar("-10/4")) == "-5/2");
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("0.5"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_scalar(""), ParseError);
  CHECK_THROWS_AS(parse_scalar("x"), ParseError);
}

TEST_CASE("sparse vectors") {
  SparseVec a = {{0, 1}, {3, 2}};
  SparseVec b = {{3, 1}, {5, 4}};
  SparseVec c = axpy(a, -2, b);
  CHECK(c == SparseVec{{0, 1}, {5, -8}});
  CHECK(dot(a, b) == 2);
  CHECK(coeff(c, 3) == 0);
  VecAccumulator acc;
  acc.add(b);
  acc.add(3, -1);
  acc.add(5, -4);
  CHECK(acc.empty());
}

TEST_CASE("rank and kernel agree with dense elimination on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    oracle::Mat a = random_dense(rng, r, c, 20 + static_cast<int>(rng() % 60));
    // plant a dependency now and then
    if (r > 2 && trial % 3 == 0)
      for (std::size_t j = 0; j < c; ++j) a[r - 1][j] = a[0][j] * 2 - a[1][j];
    SparseMatrix m = from_dense(a);
    RankKernel rk = rank_kernel(m);
    std::size_t expect = oracle::rank(a);
    REQUIRE(rk.rank == expect);
    CHECK(rank_of(m) == expect);
    CHECK(rk.kernel.dim() == c - expect);
    for (const auto& v : rk.kernel.vectors) CHECK(m.apply(v).empty());
    CHECK(column_space(m).dim() == expect);
    CHECK(rank_of(m.transpose()) == expect);
  }
}

TEST_CASE("matrix arithmetic matches the dense product") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_dense(rng, 4, 3, 50), b = random_dense(rng, 3, 5, 50);
    CHECK(from_dense(a) * from_dense(b) == from_dense(oracle::mul(a, b)));
    CHECK((from_dense(a) - from_dense(a)).is_zero());
    CHECK(from_dense(a).transpose().transpose() == from_dense(a));
  }
}

TEST_CASE("echelon rows are reduced") {
  Echelon e(4);
  CHECK(e.insert({{0, 2}, {1, 4}}));
  CHECK(e.insert({{1, 1}, {2, 1}}));
  CHECK_FALSE(e.insert({{0, 1}, {1, 3}, {2, 1}}));
  CHECK(e.rank() == 2);
  for (const auto& row : e.rows()) CHECK(row.front().second == 1);
  CHECK(e.pivots() == std::vector<std::size_t>{0, 1});
  CHECK(e.contains({{0, 1}, {2, -2}}));
}

TEST_CASE("quotients and containment") {
  auto z = SubspaceBasis::span(3, {{{0, 1}}, {{1, 1}}});
  auto bd = SubspaceBasis::span(3, {{{0, 1}, {1, 1}}});
  Quotient q = quotient_basis(z, bd);
  CHECK(q.dim == 1);
  auto bad = SubspaceBasis::span(3, {{{2, 1}}});
  CHECK_THROWS_AS(quotient_basis(z, bad), ContainmentError);
}

TEST_CASE("span solver") {
  SpanSolver s(3, {{{0, 1}, {1, 1}}, {{1, 1}}, {{0, 1}}});
  auto x = s.solve({{0, 3}, {1, 1}});
  REQUIRE(x);
  // recombine
  std::vector<SparseVec> vs = {{{0, 1}, {1, 1}}, {{1, 1}}, {{0, 1}}};
  VecAccumulator acc;
  for (const auto& [k, c] : *x) acc.add(vs[k], c);
  CHECK(acc.finish() == SparseVec{{0, 3}, {1, 1}});
  CHECK_FALSE(s.solve({{2, 1}}));
}

TEST_CASE("characteristic polynomial agrees with det(tI - A)") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto a = random_dense(rng, n, n, 60);
    auto p = characteristic_polynomial(from_dense(a));
    REQUIRE(p.size() == n + 1);
    for (long t = -2; t <= 2; ++t) {
      oracle::Mat m = a;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? Scalar(t) : Scalar(0)) - a[i][j];
      Scalar val = 0, pw = 1;
      for (const auto& c : p) {
        val += c * pw;
        pw *= t;
      }
      CHECK(val == oracle::det(m));
    }
  }
}

TEST_CASE("eigen_split recovers a conjugated diagonal matrix") {
  // P = I + N with N strictly upper triangular, P^-1 = I - N + N^2 - N^3
  const std::size_t n = 4;
  oracle::Mat nil = oracle::zeros(n, n);
  nil[0][1] = 1;
  nil[0][3] = -2;
  nil[1][2] = 3;
  nil[2][3] = 1;
  oracle::Mat p = nil, pinv = oracle::zeros(n, n), pw = oracle::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i][i] += 1;
    pw[i][i] = 1;
  }
  for (int k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pinv[i][j] += (k % 2 ? -1 : 1) * pw[i][j];
    pw = oracle::mul(pw, nil);
  }
  oracle::Mat d = oracle::zeros(n, n);
  d[0][0] = Scalar(1, 2);
  d[1][1] = -1;
  d[2][2] = Scalar(1, 2);
  d[3][3] = 0;
  auto parts = eigen_split(from_dense(oracle::mul(oracle::mul(p, d), pinv)));
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].eigenvalue == -1);
  CHECK(parts[1].eigenvalue == 0);
  CHECK(parts[2].eigenvalue == Scalar(1, 2));
  CHECK(parts[2].eigenspace.dim() == 2);
}

TEST_CASE("a Jordan block is not semisimple") {
  oracle::Mat j = {{1, 1}, {0, 1}};
  CHECK_THROWS_AS(eigen_split(from_dense(j)), NotSemisimpleError);
  oracle::Mat rot = {{0, -1}, {1, 0}};
  CHECK_THROWS_AS(eigen_split(from_dense(rot)), NotSemisimpleError);
}

TEST_CASE("rational roots") {
  // 2t^3 - 3t^2 - 3t + 2 = (t - 2)(2t - 1)(t + 1)
  auto r = rational_roots({2, -3, -3, 2});
  CHECK(r == std::vector<Scalar>{-1, Scalar(1, 2), 2});
  CHECK(rational_roots({1, 0, 1}).empty());
}
