#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "liebv/glie.hpp"

namespace liebv {

// (degree, dimension) pairs; merged and sorted by degree.
using GradedDims = std::vector<std::pair<int, int>>;

// Degrees alpha_1 <= ... <= alpha_N of the lines of V.
std::vector<int> line_degrees(const GradedDims& dims);

// End(V): diagonal a_1..a_N first, then e_ij (i != j) in lexicographic order.
GradedLie end_graded(const GradedDims& dims);
std::size_t end_index(std::size_t nlines, std::size_t i, std::size_t j);  // 0-based lines

enum class EndPart { full, q, n, l };
enum class Restriction { full, q, q1, sl };

std::vector<SparseVec> end_part_vectors(const GradedDims& dims, EndPart part, bool traceless,
                                        std::vector<std::string>* names);
GradedLie end_part(const GradedDims& dims, EndPart part, bool traceless = false);
GradedLie parabolic_q(const GradedDims& dims);
GradedLie nilradical_n(const GradedDims& dims);
GradedLie levi_l(const GradedDims& dims);
GradedLie trace_zero(const GradedDims& dims, EndPart part = EndPart::full);

BilinearForm supertrace_form(const GradedDims& dims);

// (g + g, diagonal, p_-) with form (x1,x2) - (y1,y2).
ManinTriple standard_triple(const GradedDims& dims);
Bialgebra standard_bialgebra(const GradedDims& dims, Restriction restrict_to = Restriction::full);
Bialgebra standard_bialgebra(int m, int n, Restriction restrict_to = Restriction::full);

// r generating the standard structure: -1/2 sum_{i<j} (-1)^{alpha_j} e_ij ^ e_ji.
RMatrix standard_r(const GradedDims& dims);
// 1/2 sum_{i<j} e_ij ^ e_ji.
RMatrix standard_r_unsigned(const GradedDims& dims);

// theta in one-line notation, 1-based.
ManinTriple theta_triple(int n, const std::vector<int>& theta);
Bialgebra theta_bialgebra(int n, const std::vector<int>& theta);

struct FrobeniusAlgebra {
  std::vector<std::string> names;
  std::vector<SparseVec> mult;  // mult[a * dim + b] = a b
  std::map<std::pair<std::size_t, std::size_t>, Scalar> form;

  std::size_t dim() const { return names.size(); }
  static FrobeniusAlgebra matrix_algebra(int w);
};

void check_frobenius(const FrobeniusAlgebra& a);
Bialgebra frobenius_loop(const FrobeniusAlgebra& a, int order);

}  // namespace liebv
