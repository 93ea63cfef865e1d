#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liebv/linalg.hpp"
#include "liebv/report.hpp"
#include "liebv/scalar.hpp"

namespace liebv {

using Weight = std::vector<int>;

struct BasisElement {
  std::string name;
  int degree = 0;
  std::optional<Weight> weight;
  bool operator==(const BasisElement&) const = default;
};

// T(i, j) is a vector over the basis; used for c and for gamma.
class StructureTensor {
 public:
  struct Entry {
    std::size_t i, j, k;
    Scalar value;
  };

  StructureTensor() = default;
  explicit StructureTensor(std::size_t dim) : dim_(dim), table_(dim * dim) {}
  std::size_t dim() const { return dim_; }
  const SparseVec& at(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, SparseVec v) { table_.at(i * dim_ + j) = std::move(v); }
  void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c);
  std::vector<Entry> entries() const;  // sorted by (i, j, k)
  bool is_zero() const;
  bool operator==(const StructureTensor&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<SparseVec> table_;
};

class GradedLie {
 public:
  GradedLie() = default;
  GradedLie(std::vector<BasisElement> basis, StructureTensor bracket);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(std::size_t i) const { return basis_[i]; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  int par(std::size_t i) const { return parity(basis_[i].degree); }
  bool has_weights() const;
  const StructureTensor& structure() const { return bracket_; }
  const SparseVec& bracket(std::size_t i, std::size_t j) const { return bracket_.at(i, j); }
  SparseVec bracket(const SparseVec& a, const SparseVec& b) const;
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool operator==(const GradedLie&) const = default;

 private:
  std::vector<BasisElement> basis_;
  StructureTensor bracket_;
};

struct BilinearForm {
  std::size_t dim = 0;
  int shift = 0;  // valued in k[shift]
  std::map<std::pair<std::size_t, std::size_t>, Scalar> entries;

  Scalar at(std::size_t i, std::size_t j) const;
  Scalar eval(const SparseVec& a, const SparseVec& b) const;
  SparseMatrix gram() const;
  bool operator==(const BilinearForm&) const = default;
};

// Coefficients of the graded-antisymmetric tensor r = sum r^{ij} e_i (x) e_j.
struct RMatrix {
  std::map<std::pair<std::size_t, std::size_t>, Scalar> tensor;

  // sum c * e_i ^ e_j, where a ^ b = a (x) b - (-1)^{ab} b (x) a
  static RMatrix from_wedges(const GradedLie& g,
                             const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& w);
  bool operator==(const RMatrix&) const = default;
};

struct Bialgebra {
  std::string name;
  GradedLie algebra;
  int shift = 0;
  // cobracket.at(i, j) = sum_k gamma^{ij}_k e_k, i.e. [f^i, f^j] = gamma^{ij}_k f^k
  StructureTensor cobracket;
  std::optional<BilinearForm> form;
  std::optional<RMatrix> rmatrix;

  std::size_t dim() const { return algebra.dim(); }
  // degree of the shifted dual f^i[n]
  int dual_degree(std::size_t i) const { return -algebra.degree(i) - shift; }
};

struct ManinTriple {
  GradedLie total;
  std::vector<std::size_t> plus, minus;
  BilinearForm form;
};

enum class Side { plus, minus };

// Flattened two-tensor over g (x) g, index i * dim + j.
using Tensor2 = SparseVec;

// --------------------------------------------------------------- validation

Report validate_lie(const GradedLie& g);
Report validate_form(const GradedLie& g, const BilinearForm& form);
Report validate_structures(const Bialgebra& b);
Report validate_manin(const ManinTriple& t);

// Cocycle condition evaluated on tensors; returns the basis pairs where it fails.
std::vector<std::pair<std::size_t, std::size_t>> cocycle_defects(const GradedLie& g,
                                                                  const StructureTensor& gamma,
                                                                  int shift);
// The same condition written directly in the structure constants.
std::vector<std::pair<std::size_t, std::size_t>> cocycle_index_defects(
    const GradedLie& g, const StructureTensor& gamma, int shift);

// The cobracket read as a bracket on g*[n].
GradedLie dual_lie(const Bialgebra& b);
std::vector<Tensor2> phi_tensors(const GradedLie& g, const StructureTensor& gamma, int shift);
StructureTensor gamma_from_phi(const GradedLie& g, const std::vector<Tensor2>& phi, int shift);
Tensor2 ad_tensor(const GradedLie& g, std::size_t x, const Tensor2& t);

// --------------------------------------------------------------- constructions

// Subalgebra spanned by homogeneous vectors; throws NotClosedError.
GradedLie subalgebra(const GradedLie& g, const std::vector<SparseVec>& vectors,
                     const std::vector<std::string>& names);
BilinearForm pullback_form(const BilinearForm& form, const std::vector<SparseVec>& vectors);
// Restricts bracket and cobracket; throws NotClosedError if either fails to close.
Bialgebra restrict_bialgebra(const Bialgebra& b, const std::vector<SparseVec>& vectors,
                             const std::vector<std::string>& names);

Bialgebra manin_to_bialgebra(const ManinTriple& t, Side side = Side::plus);
ManinTriple double_of_bialgebra(const Bialgebra& b);
Bialgebra dual_bialgebra(const Bialgebra& b);
Bialgebra trivial_bialgebra(const GradedLie& g, int shift = 0, std::string name = "trivial");

bool same_structure(const Bialgebra& a, const Bialgebra& b);

// phi(x) = ad_x r; throws CoJacobiError if the result is not co-Jacobi.
Bialgebra coboundary_cobracket(const GradedLie& g, const RMatrix& r);
SparseVec delta_r(const GradedLie& g, const RMatrix& r);
bool involutivity_check(const Bialgebra& b);
// Matrix of ad_y^* on g* in the dual basis: entry (k, i) = ([y, e_k])_i.
SparseMatrix coadjoint_matrix(const GradedLie& g, const SparseVec& y);
bool is_central(const GradedLie& g, const SparseVec& y);

}  // namespace liebv
