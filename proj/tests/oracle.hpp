#pragma once

// Small dense helpers used as independent checks on the sparse engine.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<Q>(c, 0)); }

// plain row reduction, no pivot strategy
inline std::size_t rank(Mat a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// cofactor expansion; fine for n <= 6
inline Q det(const Mat& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Q out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Q> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[i][j]);
      minor.push_back(row);
    }
    out += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat out = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Mat unit(std::size_t n, std::size_t i, std::size_t j) {
  Mat m = zeros(n, n);
  m[i][j] = 1;
  return m;
}

// [A, B] = AB - (-1)^{ab} BA for homogeneous A, B of parities a, b
inline Mat supercommutator(const Mat& a, int pa, const Mat& b, int pb) {
  Mat ab = mul(a, b), ba = mul(b, a);
  int s = (pa * pb) % 2 ? -1 : 1;
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < ab[i].size(); ++j) ab[i][j] -= s * ba[i][j];
  return ab;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
