#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "liebv/scalar.hpp"

namespace liebv {

// Sorted by index, no zero coefficients.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

Scalar coeff(const SparseVec& v, std::size_t i);
SparseVec unit_vector(std::size_t i, const Scalar& c = 1);
// a + c*b
SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b);
SparseVec scaled(const SparseVec& v, const Scalar& c);
Scalar dot(const SparseVec& a, const SparseVec& b);

// Order-independent accumulation of sparse terms.
class VecAccumulator {
 public:
  void add(std::size_t i, const Scalar& c);
  void add(const SparseVec& v, const Scalar& c = 1);
  SparseVec finish() const;
  bool empty() const;

 private:
  std::map<std::size_t, Scalar> terms_;
};

class SparseMatrix {
 public:
  struct Entry {
    std::size_t row, col;
    Scalar value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols,
                                   const std::vector<Entry>& entries);
  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVec> cols);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const SparseVec& column(std::size_t c) const { return cols_[c]; }
  void set_column(std::size_t c, SparseVec v);
  Scalar at(std::size_t r, std::size_t c) const;
  std::vector<Entry> entries() const;  // sorted by (row, col)
  std::size_t nnz() const;
  bool is_zero() const;

  SparseVec apply(const SparseVec& v) const;
  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix operator-(const SparseMatrix& rhs) const;
  SparseMatrix scaled(const Scalar& c) const;
  bool operator==(const SparseMatrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> cols_;
};

// Reduced row echelon form built incrementally; rows have leading coefficient 1
// and vanish on every other pivot column.
class Echelon {
 public:
  explicit Echelon(std::size_t ambient = 0) : ambient_(ambient) {}
  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  // Remainder of v after elimination against the current rows.
  SparseVec reduce(const SparseVec& v) const;
  // Returns false when v already lies in the span.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  // Rows ordered by pivot.
  std::vector<SparseVec> rows() const;
  std::vector<std::size_t> pivots() const;

 private:
  std::size_t ambient_;
  std::map<std::size_t, SparseVec> rows_;  // pivot -> row
};

struct SubspaceBasis {
  std::size_t ambient = 0;
  std::vector<SparseVec> vectors;  // reduced echelon form, pivots increasing

  static SubspaceBasis span(std::size_t ambient, const std::vector<SparseVec>& spanning);
  std::size_t dim() const { return vectors.size(); }
  bool contains(const SparseVec& v) const;
  bool operator==(const SubspaceBasis&) const = default;
};

struct RankKernel {
  std::size_t rank = 0;
  SubspaceBasis kernel;
};

RankKernel rank_kernel(const SparseMatrix& m);
std::size_t rank_of(const SparseMatrix& m);
SubspaceBasis column_space(const SparseMatrix& m);

struct Quotient {
  std::vector<SparseVec> reps;
  std::size_t dim = 0;
};

// Throws ContainmentError unless bd is a subspace of z.
Quotient quotient_basis(const SubspaceBasis& z, const SubspaceBasis& bd);

// Coefficients expressing target in terms of the given (not necessarily
// independent) vectors, or nullopt if target is outside their span.
class SpanSolver {
 public:
  SpanSolver(std::size_t ambient, const std::vector<SparseVec>& vectors);
  std::optional<SparseVec> solve(const SparseVec& target) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    SparseVec vec;
    SparseVec combo;  // row = sum combo[k] * vectors[k]
  };
  std::size_t ambient_;
  std::map<std::size_t, Row> rows_;
};

struct EigenPart {
  Scalar eigenvalue;
  SubspaceBasis eigenspace;
};

// Characteristic polynomial coefficients, constant term first, monic.
std::vector<Scalar> characteristic_polynomial(const SparseMatrix& m);
std::vector<Scalar> rational_roots(const std::vector<Scalar>& poly);
// Throws NotSemisimpleError unless m is diagonalizable over the rationals.
std::vector<EigenPart> eigen_split(const SparseMatrix& m);

}  // namespace liebv
