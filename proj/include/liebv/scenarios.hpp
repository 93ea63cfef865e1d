#pragma once

#include <map>
#include <string>
#include <vector>

#include "liebv/catalog.hpp"
#include "liebv/cochain.hpp"
#include "liebv/report.hpp"

namespace liebv {

struct ExpectedCheck {
  std::string name;
  std::string params;
};

enum class ScenarioKind { rcom, rcom_l1, rcom_theta, rpcom };

struct Scenario {
  std::string label;
  ScenarioKind kind = ScenarioKind::rcom;
  Bialgebra bialgebra;
  std::vector<ExpectedCheck> expected_checks;
  // parameters
  GradedDims dims;
  int n = 0;
  std::vector<int> theta;
  int dim_w = 0, order = 0;
};

Scenario rcom(const GradedDims& dims);
Scenario rcom_quotient_l1(const GradedDims& dims);
Scenario rcom_quotient_theta(int n, const std::vector<int>& theta);
Scenario rpcom(int dim_w, int order);

// Hilbert function of the classical variety of complexes by s, for chains of
// lines and for two graded pieces; nullopt when no oracle is available.
std::optional<std::vector<std::size_t>> classical_h0(const GradedDims& dims, int s_max);

struct H0Presentation {
  std::vector<std::string> generators;
  std::vector<Cochain> relations;  // a basis of the image of d from (-1, s = 2)
  Table brackets;
  int global_sign = 0;  // +1 or -1 relative to Kirillov-Kostant; 0 if all brackets vanish
  bool matches_kirillov_kostant = false;
};

// Throws TruncationError if the truncation order is below 2.
H0Presentation h0_presentation(const Scenario& s);

struct HochschildSerre {
  bool ok = false;
  std::map<int, std::size_t> betti_q, betti_l;
  std::string detail;
};

HochschildSerre hochschild_serre_check(const GradedDims& dims, int deg_lo, int deg_hi, int s_max);

struct Factorization {
  bool ok = false;
  Table table;  // block, betti, predicted
};

// H(g^theta) against Lambda(h^theta)* (x) H(n_+)^{h^theta}, blockwise.
Factorization theta_factorization(int n, const std::vector<int>& theta, int deg_lo, int deg_hi,
                                  int s_max);

// Betti numbers of k[x] (x) Lambda[t] and the bracket on the Borel of sl(1,1).
Report borel_checks(int s_max);

struct CatalogEntry {
  std::string label;
  Bialgebra bialgebra;
};

std::vector<CatalogEntry> catalog();

Report run_scenario(const Scenario& s);

}  // namespace liebv
