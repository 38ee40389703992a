#pragma once

// Randomized exact property suites shared by the unit tests and the acceptance run.

#include <cstdint>
#include <string>

namespace props {

struct Result {
  bool pass = true;
  long checks = 0;
  std::string failure;  // first failing case
};

Result hilbert_product_formula(int pairs, std::uint64_t seed);
// Hasse invariants at every relevant place, and |Aut|, before and after random
// unimodular changes of basis.
Result hasse_invariance(int forms, int changes_per_form, std::uint64_t seed);
Result dirichlet_ring_laws(int trials, std::size_t bound, std::uint64_t seed);
Result ferrer_identity(unsigned long max_prime, int max_nu);

}  // namespace props
