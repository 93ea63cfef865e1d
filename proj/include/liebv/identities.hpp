#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "liebv/cochain.hpp"
#include "liebv/report.hpp"

namespace liebv {

struct IdentityOptions {
  int deg_lo = -2, deg_hi = 4, s_max = 4;
  int random_pairs = 200;
  int random_triples = 200;
  int max_pair_length = 4;  // B-generated bracket on pairs up to this total length
  int mutations = 20;
  std::uint32_t seed = 20240531;
};

// Generator pairs where d<u,v> = <du,v> + (-1)^{|u|-n-1}<u,dv> fails.
std::vector<std::pair<std::size_t, std::size_t>> compatibility_defects(const CEAlgebra& ce);

// Agreement of compatibility failure with cocycle failure under random
// single-entry mutations of gamma.
CheckResult mutation_check(const Bialgebra& b, int count, std::uint32_t seed);

// d^2, B^2, derivation rules, bracket identities, Delta, compatibility, mutations.
Report identity_suite(const Bialgebra& b, const IdentityOptions& opt = {});

}  // namespace liebv
