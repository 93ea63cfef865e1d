#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "liebv/glie.hpp"
#include "liebv/linalg.hpp"
#include "liebv/report.hpp"

namespace liebv {

// Nondecreasing generator indices; odd generators occur at most once.
using Monomial = std::vector<std::uint32_t>;

struct Cochain {
  std::map<Monomial, Scalar> terms;  // no zero coefficients

  static Cochain constant(const Scalar& c);
  static Cochain monomial(Monomial m, const Scalar& c = 1);
  bool is_zero() const { return terms.empty(); }
  void add(const Monomial& m, const Scalar& c);
  void add(const Cochain& other, const Scalar& c = 1);
  Cochain scaled(const Scalar& c) const;
  bool operator==(const Cochain&) const = default;
};

// (degree, s) with s = length - degree, (degree, weight), or both.
struct BlockKey {
  int degree = 0;
  std::optional<int> s;
  std::optional<Weight> weight;

  auto operator<=>(const BlockKey&) const = default;
  std::string label() const;
};

struct Block {
  BlockKey key;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;

  std::size_t size() const { return basis.size(); }
  // Throws TruncationError if a term lies outside the block.
  SparseVec coords(const Cochain& c) const;
  Cochain cochain(const SparseVec& v) const;
};

struct BlockOperator {
  BlockKey from, to;
  SparseMatrix matrix;
};

// C(g) = S(g*[-1]) with d, the shifted bracket, B and Delta.
class CEAlgebra {
 public:
  explicit CEAlgebra(Bialgebra b);
  CEAlgebra(const CEAlgebra&) = delete;
  CEAlgebra& operator=(const CEAlgebra&) = delete;

  const Bialgebra& bialgebra() const { return b_; }
  int shift() const { return b_.shift; }
  std::size_t ngen() const { return b_.dim(); }
  int gen_degree(std::size_t i) const { return 1 - b_.algebra.degree(i); }
  int gen_parity(std::size_t i) const { return parity(gen_degree(i)); }
  std::optional<Weight> gen_weight(std::size_t i) const;
  std::string gen_name(std::size_t i) const;

  int degree(const Monomial& m) const;
  int s_value(const Monomial& m) const { return static_cast<int>(m.size()) - degree(m); }
  std::optional<Weight> weight(const Monomial& m) const;
  std::string name(const Monomial& m) const;
  std::string to_string(const Cochain& c) const;
  // homogeneous cochain degree; nullopt for zero or inhomogeneous input
  std::optional<int> degree(const Cochain& c) const;

  Cochain gen(std::size_t i) const { return Cochain::monomial({static_cast<std::uint32_t>(i)}); }
  // sign and normal-ordered product, nullopt if an odd generator repeats
  std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b) const;
  Cochain multiply(const Cochain& a, const Cochain& b) const;

  Cochain d(const Cochain& c) const;
  const Cochain& d_generator(std::size_t k) const { return dgen_[k]; }
  // (n+1)-shifted bracket generated by <x_i, x_j> = gamma^{ij}_k x_k
  Cochain bracket(const Cochain& u, const Cochain& v) const;
  int bracket_shift() const { return b_.shift + 1; }
  // Throws UnsupportedShiftError unless n = 0.
  Cochain bv(const Cochain& c) const;
  Cochain delta(const Cochain& c) const;

  std::shared_ptr<const Block> block(const BlockKey& key) const;
  // d: key -> (degree + 1, same s / weight); cached
  const SparseMatrix& d_matrix(const BlockKey& key) const;
  SparseMatrix op_matrix(const Block& from, const Block& to,
                         const std::function<Cochain(const Cochain&)>& op) const;
  bool has_negative_generator() const;

 private:
  std::vector<Monomial> enumerate(const BlockKey& key) const;
  const std::vector<int>& cone_functional() const;

  Bialgebra b_;
  std::vector<Cochain> dgen_;
  mutable std::mutex mu_;
  mutable std::map<BlockKey, std::shared_ptr<const Block>> blocks_;
  mutable std::map<BlockKey, std::shared_ptr<const SparseMatrix>> dmats_;
  mutable std::optional<std::vector<int>> cone_;
};

// Biderivation extension of a bracket on generators, shifted by nshift:
// <x, yz> = <x, y> z + (-1)^{(|x| - nshift)|y|} y <x, z>.
Cochain extend_bracket(const CEAlgebra& ce, int nshift,
                       const std::function<Cochain(std::size_t, std::size_t)>& on_generators,
                       const Cochain& u, const Cochain& v);

std::shared_ptr<const Block> enumerate_block(const CEAlgebra& ce, const BlockKey& key);
BlockOperator ce_differential(const CEAlgebra& ce, const BlockKey& key);
BlockOperator bv_operator(const CEAlgebra& ce, const BlockKey& key);
BlockOperator delta_operator(const CEAlgebra& ce, const BlockKey& key);
Cochain poisson_bracket(const CEAlgebra& ce, const Cochain& u, const Cochain& v);
// Column i holds the coefficients of Delta(x_i).
SparseMatrix delta_on_generators(const CEAlgebra& ce);
SparseMatrix delta_on_generators(const Bialgebra& b);

// ------------------------------------------------------------ modules

struct Module {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<std::vector<SparseVec>> action;  // action[i][a] = e_i . m_a
  std::size_t dim() const { return degrees.size(); }
};

Module trivial_module();
Module adjoint_module(const GradedLie& g);
// (g (x) g)[-n], basis index i * dim + j
Module adjoint_squared_module(const GradedLie& g, int shift);
// Throws NotAModuleError.
void check_module(const GradedLie& g, const Module& m);

using ModuleCochain = std::map<std::pair<Monomial, std::size_t>, Scalar>;

// d(w (x) m) = dw (x) m - (-1)^{|w|} sum_i w x_i (x) e_i . m
ModuleCochain module_differential(const CEAlgebra& ce, const Module& m, const ModuleCochain& c);
// Matrix of the module differential on cochains of the given length and total degree.
BlockOperator ce_differential_module(const CEAlgebra& ce, const Module& m, int length, int degree);
// phi as sum_k x_k (x) Phi_k in C^1(g, (g (x) g)[-n])
ModuleCochain cobracket_cochain(const Bialgebra& b);

// ------------------------------------------------------------ cohomology

struct Truncation {
  int deg_lo = 0, deg_hi = 0;
  std::optional<int> s_max;
  std::vector<Weight> weights;
  std::string describe() const;
};

struct BlockCohomology {
  BlockKey key;
  std::size_t dim = 0, rank_in = 0, rank_out = 0, betti = 0;
  std::vector<SparseVec> boundaries;  // basis of the image of d_in
  std::vector<SparseVec> reps;        // representatives of a basis of H
};

BlockCohomology block_cohomology(const CEAlgebra& ce, const BlockKey& key);
// Blocks selected by the truncation, in (degree, s / weight) order.
std::vector<BlockKey> blocks_in(const CEAlgebra& ce, const Truncation& t);

struct CohomologyTable {
  Truncation truncation;
  std::vector<BlockCohomology> blocks;

  std::map<int, std::size_t> betti_by_degree() const;
  const BlockCohomology* find(const BlockKey& key) const;
  Table to_table(const CEAlgebra& ce) const;
  Table totals_table() const;
};

CohomologyTable cohomology(const CEAlgebra& ce, const Truncation& t);

// Coordinates of the class of z over the reps of its block; throws NotACocycleError.
SparseVec class_of(const CEAlgebra& ce, const BlockCohomology& h, const Cochain& z);

struct BracketEntry {
  BlockKey left_block, right_block, target;
  std::size_t left = 0, right = 0;
  SparseVec classes;        // over the reps of target
  bool spot_check = true;   // bracket with a coboundary reduced to zero
};

std::vector<BracketEntry> cohomology_bracket(const CEAlgebra& ce, const CohomologyTable& h);
Table bracket_table(const CEAlgebra& ce, const CohomologyTable& h,
                    const std::vector<BracketEntry>& entries);

struct KerDeltaBlock {
  BlockKey key;
  std::size_t dim = 0, kernel_dim = 0, betti_full = 0, betti_kernel = 0;
};

struct KerDeltaResult {
  std::vector<EigenPart> eigen;  // of delta_on_generators
  std::vector<KerDeltaBlock> blocks;
  bool quasi_isomorphic() const;
  Table to_table() const;
};

// Throws NotSemisimpleError when Delta is not diagonalizable on generators.
KerDeltaResult ker_delta_complex(const CEAlgebra& ce, const Truncation& t);

// Cohomology Betti numbers of a (degree, s) block split by weight.
std::map<Weight, std::size_t> betti_by_weight(const CEAlgebra& ce, int degree, int s);

// p(a) = sum_j (a, e_j) x_j
Cochain linear_cochain(const BilinearForm& form, const SparseVec& a);
// {p(a), p(b)} = (-1)^{a} (a, b), extended with the (n+2)-shifted signs.
Cochain bg_poisson_bracket(const GradedLie& g, const BilinearForm& form, const Cochain& u,
                           const Cochain& v);

}  // namespace liebv
